#include "aluthge/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace aluthge {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kPaper: return "PAPER";
    case Provenance::kTrivial: return "TRIVIAL";
    case Provenance::kDerived: return "DERIVED";
  }
  return "DERIVED";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kEvidence: return "evidence";
  }
  return "evidence";
}

Json to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::size_t Experiment::count(Status s) const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.status == s;
  return n;
}

std::size_t Report::count(Status s) const {
  std::size_t n = 0;
  for (const auto& e : experiments) n += e.count(s);
  return n;
}

const Experiment* Report::find(const std::string& name) const {
  for (const auto& e : experiments)
    if (e.name == name) return &e;
  return nullptr;
}

Json config_json(const ExperimentConfig& cfg) {
  Json omegas = Json::array();
  for (const auto& w : cfg.omegas) omegas.push_back(to_json(w));
  return Json{{"a", cfg.a_values},
              {"alpha", cfg.alpha_values},
              {"nmax", cfg.n_max},
              {"nmax_numeric", cfg.n_max_numeric},
              {"nmax_sot", cfg.n_max_sot},
              {"N", cfg.N_values},
              {"omega", omegas},
              {"angles", cfg.angles},
              {"cutoff", cfg.cutoff},
              {"margin", cfg.margin},
              {"tol", cfg.tol},
              {"corner", cfg.corner},
              {"p", cfg.p_values},
              {"hypo_N", cfg.hypo_N},
              {"seed", cfg.seed},
              {"experiments", cfg.experiments}};
}

namespace {

Json record_json(const Record& r) {
  Json j{{"claim", r.claim},
         {"metric", r.metric},
         {"inputs", r.inputs},
         {"computed", r.computed},
         {"expected", r.expected},
         {"provenance", to_string(r.provenance)},
         {"status", to_string(r.status)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_into(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += sep;
        dump_into(out, it.value(), indent, depth + 1);
      }
      out += close_pad;
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        dump_into(out, v, indent, depth + 1);
      }
      out += close_pad;
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string csv_cell(const Json& v) {
  std::string s;
  switch (v.type()) {
    case Json::value_t::null: return "";
    case Json::value_t::number_float: s = format_double(v.get<double>()); break;
    case Json::value_t::string: s = v.get<std::string>(); break;
    case Json::value_t::object:
      if (v.size() == 2 && v.contains("re") && v.contains("im")) {
        s = format_complex({v["re"].get<double>(), v["im"].get<double>()});
      } else {
        s = v.dump();
      }
      break;
    case Json::value_t::array:
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += csv_cell(v[i]);
      }
      break;
    default: s = v.dump();
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"' && v.is_number()) s = s.substr(1, s.size() - 2);
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }
  return s;
}

}  // namespace

Json report_body(const Report& report) {
  Json exps = Json::array();
  for (const auto& e : report.experiments) {
    Json recs = Json::array();
    for (const auto& r : e.records) recs.push_back(record_json(r));
    exps.push_back(Json{{"name", e.name},
                        {"summary",
                         {{"pass", e.count(Status::kPass)},
                          {"fail", e.count(Status::kFail)},
                          {"evidence", e.count(Status::kEvidence)}}},
                        {"records", recs}});
  }
  return Json{{"config", config_json(report.config)}, {"experiments", exps}};
}

Json report_json(const Report& report) {
  Json j = report_body(report);
  j["meta"] = Json{{"version", report.meta.version},
                   {"wall_seconds", report.meta.wall_seconds},
                   {"threads", report.meta.threads},
                   {"summary",
                    {{"pass", report.count(Status::kPass)},
                     {"fail", report.count(Status::kFail)},
                     {"evidence", report.count(Status::kEvidence)}}}};
  return j;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  return out;
}

void write_csv(std::ostream& out, const Experiment& exp) {
  std::vector<std::string> input_keys;
  for (const auto& r : exp.records)
    for (auto it = r.inputs.begin(); it != r.inputs.end(); ++it)
      if (std::find(input_keys.begin(), input_keys.end(), it.key()) == input_keys.end())
        input_keys.push_back(it.key());

  for (const auto& k : input_keys) out << k << ',';
  out << "claim,metric,computed,expected,provenance,status,note\n";
  for (const auto& r : exp.records) {
    for (const auto& k : input_keys) out << (r.inputs.contains(k) ? csv_cell(r.inputs[k]) : "") << ',';
    out << csv_cell(r.claim) << ',' << csv_cell(r.metric) << ',' << csv_cell(r.computed) << ','
        << csv_cell(r.expected) << ',' << to_string(r.provenance) << ',' << to_string(r.status) << ','
        << csv_cell(r.note) << '\n';
  }
}

void write_report_files(const Report& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "report.json");
    out << dump_json(report_json(report)) << '\n';
  }
  for (const auto& e : report.experiments) {
    std::ofstream out(fs::path(dir) / (e.name + ".csv"));
    write_csv(out, e);
  }
}

}  // namespace aluthge
