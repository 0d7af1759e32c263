#include "aluthge/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace aluthge {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string body = trim(text);
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  if (trim(body).empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') item = item.substr(1, item.size() - 2);
    out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("not a number: '" + text + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("not a non-negative integer: '" + text + "'");
  return v;
}

std::string unquote(const std::string& text) {
  const std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') return t.substr(1, t.size() - 2);
  return t;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += f(xs[i]);
  }
  return out;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty complex value");
  if (t.back() != 'i') return {parse_double(t), 0.0};
  t.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.erase(0, 1);
    return parse_double(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(t)};
  return {parse_double(t.substr(0, split)), imag_of(t.substr(split))};
}

std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return fmt(z.real());
  if (z.real() == 0.0) return fmt(z.imag()) + "i";
  return fmt(z.real()) + (z.imag() < 0.0 ? "" : "+") + fmt(z.imag()) + "i";
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item));
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) out.push_back(static_cast<std::size_t>(parse_uint(item)));
  return out;
}

std::vector<std::complex<double>> parse_complex_list(const std::string& text) {
  std::vector<std::complex<double>> out;
  for (const auto& item : split_list(text)) out.push_back(parse_complex(item));
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "a",      "alpha",  "nmax", "nmax_numeric", "nmax_sot", "N",      "omega",       "angles",
      "cutoff", "margin", "tol",  "corner",       "p",        "hypo_N", "seed",        "experiments",
      "out"};
  return keys;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "a") cfg.a_values = parse_double_list(value);
  else if (key == "alpha") cfg.alpha_values = parse_double_list(value);
  else if (key == "nmax") cfg.n_max = parse_uint(value);
  else if (key == "nmax_numeric") cfg.n_max_numeric = parse_uint(value);
  else if (key == "nmax_sot") cfg.n_max_sot = parse_uint(value);
  else if (key == "N") cfg.N_values = parse_size_list(value);
  else if (key == "omega") cfg.omegas = parse_complex_list(value);
  else if (key == "angles") cfg.angles = static_cast<int>(parse_uint(value));
  else if (key == "cutoff") cfg.cutoff = parse_double(value);
  else if (key == "margin") cfg.margin = parse_double(value);
  else if (key == "tol") cfg.tol = parse_double(value);
  else if (key == "corner") cfg.corner = parse_uint(value);
  else if (key == "p") cfg.p_values = parse_double_list(value);
  else if (key == "hypo_N") cfg.hypo_N = parse_uint(value);
  else if (key == "seed") cfg.seed = parse_uint(value);
  else if (key == "experiments") cfg.experiments = split_list(value);
  else if (key == "out") cfg.out = unquote(value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      set_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  auto num = [](double v) { return fmt(v); };
  auto size = [](std::size_t v) { return std::to_string(v); };
  auto str = [](const std::string& s) { return s; };
  return {{"a", join(cfg.a_values, num)},
          {"alpha", join(cfg.alpha_values, num)},
          {"nmax", size(cfg.n_max)},
          {"nmax_numeric", size(cfg.n_max_numeric)},
          {"nmax_sot", size(cfg.n_max_sot)},
          {"N", join(cfg.N_values, size)},
          {"omega", join(cfg.omegas, format_complex)},
          {"angles", std::to_string(cfg.angles)},
          {"cutoff", fmt(cfg.cutoff)},
          {"margin", fmt(cfg.margin)},
          {"tol", fmt(cfg.tol)},
          {"corner", size(cfg.corner)},
          {"p", join(cfg.p_values, num)},
          {"hypo_N", size(cfg.hypo_N)},
          {"seed", std::to_string(cfg.seed)},
          {"experiments", join(cfg.experiments, str)},
          {"out", cfg.out}};
}

void ExperimentConfig::validate() const {
  for (double a : a_values)
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("a values must lie in (0, 1)");
  for (double al : alpha_values)
    if (!(al > -1.0)) throw ConfigError("alpha values must exceed -1");
  if (!std::is_sorted(N_values.begin(), N_values.end())) throw ConfigError("N values must be sorted ascending");
  for (std::size_t n : N_values)
    if (n < 2) throw ConfigError("N values must be at least 2");
  for (const auto& w : omegas)
    if (!(std::abs(w) < 1.0)) throw ConfigError("omega values must lie in the open unit disk");
  if (angles < 16) throw ConfigError("angles must be at least 16");
  if (!(cutoff > 0.0 && cutoff <= 1e-3)) throw ConfigError("cutoff must lie in (0, 1e-3]");
  if (!(margin >= 0.0)) throw ConfigError("margin must be non-negative");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (corner < 1) throw ConfigError("corner must be at least 1");
  for (double p : p_values)
    if (!(p > 0.0)) throw ConfigError("p values must be positive");
  if (hypo_N < 2) throw ConfigError("hypo_N must be at least 2");
}

}  // namespace aluthge
