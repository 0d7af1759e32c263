#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aluthge/config.hpp"
#include "aluthge/report.hpp"

using namespace aluthge;

TEST_CASE("complex values parse and print") {
  CHECK(parse_complex("0.3") == std::complex<double>(0.3, 0.0));
  CHECK(parse_complex("0.5i") == std::complex<double>(0.0, 0.5));
  CHECK(parse_complex("-0.5i") == std::complex<double>(0.0, -0.5));
  CHECK(parse_complex("0.2+0.1i") == std::complex<double>(0.2, 0.1));
  CHECK(parse_complex("1e-3-2i") == std::complex<double>(1e-3, -2.0));
  CHECK(parse_complex("-1e-3+i") == std::complex<double>(-1e-3, 1.0));
  CHECK(parse_complex(" -0.6 ") == std::complex<double>(-0.6, 0.0));
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex(""), ConfigError);
  for (std::complex<double> z : {std::complex<double>(0.3, 0.0), {0.0, 0.5}, {0.2, -0.1}, {-1e-3, 2.0}})
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("lists accept optional brackets") {
  CHECK(parse_double_list("[0.25, 0.5]") == std::vector<double>{0.25, 0.5});
  CHECK(parse_double_list("1,2,3") == std::vector<double>{1, 2, 3});
  CHECK(parse_double_list("[]").empty());
  CHECK(parse_size_list("64,128") == std::vector<std::size_t>{64, 128});
  CHECK_THROWS_AS(parse_size_list("64,-1"), ConfigError);
  CHECK(parse_complex_list("0, 0.5i").size() == 2);
}

TEST_CASE("config text with sections and comments") {
  ExperimentConfig cfg;
  apply_config_text(cfg, R"(# sweep
[grid]
a = 0.3, 0.6
alpha = [0]      # single weight
N = 32,64
[output]
omega = 0, 0.2+0.1i
experiments = polar, semigroup
out = "results"
)");
  CHECK(cfg.a_values == std::vector<double>{0.3, 0.6});
  CHECK(cfg.alpha_values == std::vector<double>{0.0});
  CHECK(cfg.N_values == std::vector<std::size_t>{32, 64});
  CHECK(cfg.omegas[1] == std::complex<double>(0.2, 0.1));
  CHECK(cfg.experiments == std::vector<std::string>{"polar", "semigroup"});
  CHECK(cfg.out == "results");
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS_AS(apply_config_text(cfg, "bogus = 1"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(cfg, "a 0.5"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(cfg, "[broken"), ConfigError);
  CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("config entries round trip through set_config_value") {
  ExperimentConfig cfg;
  cfg.omegas = {{0.1, -0.2}};
  cfg.experiments = {"sot"};
  ExperimentConfig copy;
  copy.a_values.clear();
  for (const auto& [key, value] : config_entries(cfg)) set_config_value(copy, key, value);
  CHECK(config_json(copy) == config_json(cfg));
  CHECK(config_entries(cfg).size() == config_keys().size());
}

TEST_CASE("config validation") {
  auto invalid = [](const char* key, const char* value) {
    ExperimentConfig cfg;
    set_config_value(cfg, key, value);
    return cfg;
  };
  CHECK_THROWS_AS(invalid("a", "1.0").validate(), ConfigError);
  CHECK_THROWS_AS(invalid("alpha", "-1").validate(), ConfigError);
  CHECK_THROWS_AS(invalid("N", "128,64").validate(), ConfigError);
  CHECK_THROWS_AS(invalid("omega", "1").validate(), ConfigError);
  CHECK_THROWS_AS(invalid("angles", "8").validate(), ConfigError);
  CHECK_THROWS_AS(invalid("cutoff", "0.5").validate(), ConfigError);
  CHECK_NOTHROW(invalid("a", "").validate());
}

TEST_CASE("json doubles keep 17 significant digits") {
  Json j{{"x", 0.1}, {"third", 1.0 / 3.0}, {"n", 3}, {"inf", INFINITY}, {"s", "t"}};
  const std::string text = dump_json(j, 0);
  CHECK(text == R"({"x":0.10000000000000001,"third":0.33333333333333331,"n":3,"inf":"inf","s":"t"})");
  CHECK(Json::parse(text)["third"].get<double>() == 1.0 / 3.0);
}

TEST_CASE("report layout and csv columns") {
  Report report;
  Experiment ex{"demo", {}};
  ex.add(Record{"claim_a", "m1", Json{{"a", 0.5}, {"n", 1}}, 1e-3, Json{{"max", 1e-2}}, Provenance::kPaper,
                Status::kPass, ""});
  ex.add(Record{"claim_b", "m2", Json{{"a", 0.5}, {"omega", to_json({0.0, 0.5})}}, Json{{"x", 1}}, nullptr,
                Provenance::kDerived, Status::kEvidence, "with, comma"});
  report.experiments.push_back(ex);
  report.meta.wall_seconds = 1.5;
  CHECK(report.count(Status::kPass) == 1);
  CHECK(report.all_passed());
  CHECK(report.find("demo") != nullptr);
  CHECK(report.find("none") == nullptr);

  const Json body = report_body(report);
  CHECK_FALSE(body.contains("meta"));
  const Json full = report_json(report);
  CHECK(full["meta"]["wall_seconds"] == 1.5);
  const auto& rec = full["experiments"][0]["records"][0];
  for (const char* key : {"inputs", "computed", "expected", "provenance", "status"}) CHECK(rec.contains(key));
  CHECK(rec["provenance"] == "PAPER");

  std::ostringstream csv;
  write_csv(csv, ex);
  std::istringstream lines(csv.str());
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == "a,n,omega,claim,metric,computed,expected,provenance,status,note");
  CHECK(row1 == "0.5,1,,claim_a,m1,0.001,\"{\"\"max\"\":0.01}\",PAPER,pass,");
  CHECK(row2 == "0.5,,0.5i,claim_b,m2,\"{\"\"x\"\":1}\",,DERIVED,evidence,\"with, comma\"");

  const auto dir = std::filesystem::temp_directory_path() / "aluthge_report_test";
  std::filesystem::remove_all(dir);
  write_report_files(report, dir.string());
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "demo.csv"));
  std::ifstream in(dir / "report.json");
  CHECK(Json::parse(in)["experiments"][0]["name"] == "demo");
  std::filesystem::remove_all(dir);
}
