#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aluthge/cli.hpp"
#include "aluthge/report.hpp"

using namespace aluthge;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "aluthge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

}  // namespace

TEST_CASE("symbols prints the first iterate at a = 1/2") {
  const Run r = run({"symbols", "--a", "0.5", "--alpha", "0", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "f(z) = (8/(-z + 9))^2\n"));
  CHECK(contains(r.out, "psi(z) = (3z + 5)/(-z + 9)\n"));
}

TEST_CASE("symbols at n = 0 prints C_phi") {
  const Run r = run({"symbols", "--a", "0.5", "--alpha", "0", "--n", "0"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "f(z) = 1\n"));
  CHECK(contains(r.out, "psi(z) = 0.5z + 0.5\n"));
}

TEST_CASE("symbols json output") {
  const Run r = run({"symbols", "--a", "0.5", "--alpha", "1", "--n", "1", "--json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["display"]["base"].get<double>() == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(j["display"]["psi"] == "(3z + 5)/(-z + 9)");
  CHECK(j["psi0"]["re"].get<double>() == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("symbols with the dual flag") {
  const Run r = run({"symbols", "--a", "0.5", "--alpha", "0", "--n", "0", "--dual"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "adjoint iterate"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"symbols", "--a", "0.5", "--alpha", "0", "--n", "1", "--bogus"}).code == 2);
  CHECK(run({"symbols", "--a", "1.5", "--alpha", "0", "--n", "1"}).code == 2);
  CHECK(run({"symbols", "--a", "x", "--alpha", "0", "--n", "1"}).code == 2);
  CHECK(run({"norms", "--a", "0.5", "--alpha", "0", "--Nlist", "64,32"}).code == 2);
  CHECK(run({"sot", "--a", "0.5", "--alpha", "0", "--omega", "1.2"}).code == 2);
  CHECK(run({"verify", "--a", "2"}).code == 2);
  CHECK(run({"verify", "--config", "/nonexistent.cfg"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("norms table shows the closed value") {
  const Run r = run({"norms", "--a", "0.5", "--alpha", "0", "--n", "3", "--Nlist", "16,32", "--angles", "32"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "N\tnorm\tnumerical_radius\texpected\tnorm/expected\n"));
  CHECK(contains(r.out, "\t2\t"));
}

TEST_CASE("iterate, sot and hardy tables") {
  const Run it = run({"iterate", "--a", "0.5", "--alpha", "0", "--nmax", "2", "--N", "32,64"});
  CHECK(it.code == 0);
  CHECK(contains(it.out, "n\tN\tcorner_error\tshrink\n"));
  const Run so = run({"sot", "--a", "0.5", "--alpha", "0", "--omega", "0,0.5i", "--nmax", "5", "--N", "64"});
  CHECK(so.code == 0);
  CHECK(contains(so.out, "omega\tn\tnorm\tclosed\tbound\ttruncated\tslack\n"));
  CHECK(contains(so.out, "0.5i\t5\t"));
  const Run hd = run({"hardy", "--a", "0.5", "--alpha", "0", "--nmax", "3", "--N", "32"});
  CHECK(hd.code == 0);
  CHECK(contains(hd.out, "residual_to_limit"));
}

TEST_CASE("verify writes the report and flags override the config file") {
  const auto dir = std::filesystem::temp_directory_path() / "aluthge_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto cfg_path = dir / "run.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "[grid]\na = 0.25\nalpha = 0\nexperiments = closed_form_iteration, semigroup\nnmax = 2\n";
  }
  const auto out_dir = dir / "out";
  const Run r = run({"verify", "--config", cfg_path.string(), "--a", "0.5", "--out", out_dir.string()});
  CHECK(r.code == 0);
  std::ifstream in(out_dir / "report.json");
  const Json j = Json::parse(in);
  CHECK(j["config"]["a"] == Json::array({0.5}));
  CHECK(j["config"]["nmax"] == 2);
  CHECK(j["experiments"].size() == 2);
  CHECK(std::filesystem::exists(out_dir / "semigroup.csv"));
  std::filesystem::remove_all(dir);
}
