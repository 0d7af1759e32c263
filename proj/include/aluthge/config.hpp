#pragma once

// Experiment configuration. The text format is flat `key = value` lines with
// optional `[section]` headers that only group keys; `#` starts a comment.
// Every key is also a command-line flag of the same name, and flags win.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aluthge {

struct ExperimentConfig {
  std::vector<double> a_values{0.25, 0.5, 0.75};
  std::vector<double> alpha_values{-0.5, 0.0, 1.0};
  std::size_t n_max = 12;          // symbolic iteration depth
  std::size_t n_max_numeric = 4;   // numeric matrix comparisons
  std::size_t n_max_sot = 30;      // strong-convergence curves
  std::vector<std::size_t> N_values{64, 128, 256};
  std::vector<std::complex<double>> omegas{{0.0, 0.0}, {0.3, 0.0}, {0.0, 0.5}, {0.7, 0.0}, {-0.6, 0.0}};
  int angles = 256;
  double cutoff = 1e-12;           // relative singular value cutoff for polar factors
  double margin = 1e-6;            // zero-in-interior margin
  double tol = 1e-11;              // symbolic generator agreement
  std::size_t corner = 8;
  std::vector<double> p_values{0.25, 0.5, 0.75, 1.0};
  std::size_t hypo_N = 64;
  std::uint64_t seed = 20240601;
  std::vector<std::string> experiments;  // empty runs all
  std::string out;                        // output directory; empty writes nothing

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Names accepted by set_config_value, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key from its textual value. Throws ConfigError on unknown keys or
/// malformed values.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Applies every assignment in a config text on top of cfg.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);

/// Reads a file and applies it. Throws ConfigError if unreadable.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

/// (key, textual value) pairs that reproduce cfg through set_config_value.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// "0.3", "-0.5i", "0.2+0.1i", "1e-3-2i".
std::complex<double> parse_complex(const std::string& text);
std::string format_complex(std::complex<double> z);

std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<std::complex<double>> parse_complex_list(const std::string& text);

}  // namespace aluthge
