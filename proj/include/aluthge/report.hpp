#pragma once

// Structured experiment output. A Report serialises to one JSON document
// {config, experiments: [{name, records: [...]}], meta} and to one CSV table
// per experiment. Everything outside meta is a pure function of the config.

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aluthge/config.hpp"

namespace aluthge {

using Json = nlohmann::ordered_json;

enum class Provenance { kPaper, kTrivial, kDerived };
enum class Status { kPass, kFail, kEvidence };

const char* to_string(Provenance p);
const char* to_string(Status s);

Json to_json(std::complex<double> z);

struct Record {
  std::string claim;   // content key of the stated result being exercised
  std::string metric;  // what was measured
  Json inputs = Json::object();
  Json computed;
  Json expected;
  Provenance provenance = Provenance::kDerived;
  Status status = Status::kEvidence;
  std::string note;
};

/// pass/fail from a boolean.
inline Status check(bool ok) { return ok ? Status::kPass : Status::kFail; }

struct Experiment {
  std::string name;
  std::vector<Record> records;

  Record& add(Record r) { return records.emplace_back(std::move(r)); }
  std::size_t count(Status s) const;
};

struct ReportMeta {
  std::string version;
  double wall_seconds = 0.0;
  unsigned threads = 1;
};

struct Report {
  ExperimentConfig config;
  std::vector<Experiment> experiments;
  ReportMeta meta;

  std::size_t count(Status s) const;
  bool all_passed() const { return count(Status::kFail) == 0; }
  const Experiment* find(const std::string& name) const;
};

Json config_json(const ExperimentConfig& cfg);

/// {config, experiments}; excludes meta so equal configs give equal bodies.
Json report_body(const Report& report);
Json report_json(const Report& report);

/// JSON text with every double written as %.17g. Non-finite doubles become
/// the strings "inf", "-inf" and "nan".
std::string dump_json(const Json& j, int indent = 2);

/// Columns: the union of input keys in first-seen order, then claim, metric,
/// computed, expected, provenance, status, note.
void write_csv(std::ostream& out, const Experiment& exp);

/// Writes report.json and <experiment>.csv into dir, creating it if needed.
void write_report_files(const Report& report, const std::string& dir);

}  // namespace aluthge
