#include <iostream>

#include "aluthge/cli.hpp"

int main(int argc, char** argv) { return aluthge::run_cli(argc, argv, std::cout, std::cerr); }
