#include "aluthge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aluthge/closed_forms.hpp"
#include "aluthge/config.hpp"
#include "aluthge/errors.hpp"
#include "aluthge/hardy.hpp"
#include "aluthge/harness.hpp"
#include "aluthge/matrix_engine.hpp"
#include "aluthge/report.hpp"
#include "aluthge/wlft.hpp"

namespace aluthge {

namespace {

// Raised for invalid argument values that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kSymbolTol = 1e-11;
constexpr double kBoundSlack = 1e-8;
constexpr double kExactTol = 1e-12;
constexpr double kCornerTol = 1e-8;

std::string g10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string g10(cplx z) {
  if (z.imag() == 0.0) return g10(z.real());
  if (z.real() == 0.0) return g10(z.imag()) + "i";
  return "(" + g10(z.real()) + (z.imag() < 0.0 ? "" : "+") + g10(z.imag()) + "i)";
}

// Snaps rounding residue (|x| below 1e−14 of the scale) to zero for display.
cplx snap(cplx z, double scale) {
  const double eps = 1e-14 * scale;
  return {std::abs(z.real()) <= eps ? 0.0 : z.real(), std::abs(z.imag()) <= eps ? 0.0 : z.imag()};
}

// c·z + d as text, e.g. "3z + 5", "-z + 9", "0.5z + 0.5".
std::string linear_text(cplx c, cplx d) {
  std::string out;
  if (c != 0.0) {
    const std::string cs = g10(c);
    out = cs == "1" ? "z" : cs == "-1" ? "-z" : cs + "z";
  }
  if (d != 0.0 || out.empty()) {
    if (out.empty()) return g10(d);
    if (d.imag() == 0.0 && d.real() < 0.0) out += " - " + g10(-d.real());
    else out += " + " + g10(d);
  }
  return out;
}

// Display gauge: positive rescaling so that ψ = (p'z+q')/(r'z+s') has smallest
// nonzero |coefficient| 1, or so that s' has modulus 1 when ψ is affine.
struct SymbolDisplay {
  double scale;
  cplx lambda;
  Mobius2 m;
  bool affine;
  std::optional<double> base;  // K with f = (K/(r'z+s'))^β, when λ' > 0
  std::string f_text;
  std::string psi_text;
};

SymbolDisplay display_symbols(const WeightedLFT& w) {
  const Mobius2 disk = w.disk_matrix();
  const double big = disk.max_abs();
  const double beta = w.space().exponent();
  const bool affine = std::abs(disk.c) <= 1e-14 * big;
  double k;
  if (affine) {
    k = 1.0 / std::abs(disk.d);
  } else {
    double smallest = big;
    for (cplx e : {disk.a, disk.b, disk.c, disk.d})
      if (std::abs(e) > 1e-14 * big) smallest = std::min(smallest, std::abs(e));
    k = 1.0 / smallest;
  }
  SymbolDisplay out{k, w.lambda() * std::pow(k, beta), disk.scaled(k), affine, std::nullopt, {}, {}};
  Mobius2& m = out.m;
  m = {snap(m.a, 1.0), snap(m.b, 1.0), snap(m.c, 1.0), snap(m.d, 1.0)};
  const std::string exponent = "^" + g10(beta);
  if (affine) {
    out.f_text = g10(out.lambda / std::pow(m.d, beta));
    out.psi_text = linear_text(m.a / m.d, m.b / m.d);
    return out;
  }
  const std::string den = linear_text(m.c, m.d);
  if (out.lambda.imag() == 0.0 && out.lambda.real() > 0.0) {
    out.base = std::pow(out.lambda.real(), 1.0 / beta);
    out.f_text = "(" + g10(*out.base) + "/(" + den + "))" + exponent;
  } else {
    out.f_text = g10(out.lambda) + "/(" + den + ")" + exponent;
  }
  out.psi_text = "(" + linear_text(m.a, m.b) + ")/(" + den + ")";
  return out;
}

Json matrix_json(const Mobius2& m) {
  return Json::array({Json::array({to_json(m.a), to_json(m.b)}), Json::array({to_json(m.c), to_json(m.d)})});
}

PaperScenario scenario(double a, double alpha, std::size_t n) {
  const PaperScenario sc{a, alpha, n};
  try {
    sc.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return sc;
}

template <class F>
auto parse_arg(F f, const std::string& text, const char* flag) {
  try {
    return f(text);
  } catch (const ConfigError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

void require_nonempty_sorted(const std::vector<std::size_t>& Ns, const char* flag) {
  if (Ns.empty()) throw UsageError(std::string(flag) + ": at least one size is required");
  if (!std::is_sorted(Ns.begin(), Ns.end())) throw UsageError(std::string(flag) + ": sizes must be ascending");
  for (std::size_t N : Ns)
    if (N < 2) throw UsageError(std::string(flag) + ": sizes must be at least 2");
}

// ---------------------------------------------------------------------------

struct SymbolsArgs {
  double a = 0.5, alpha = 0.0;
  std::size_t n = 1;
  bool dual = false, json = false;
};

int cmd_symbols(const SymbolsArgs& args, std::ostream& out) {
  const PaperScenario sc = scenario(args.a, args.alpha, args.n);
  const WeightedLFT w = args.dual ? adjoint_iterate_symbols(sc) : iterate_symbols(sc);
  const SymbolDisplay d = display_symbols(w);
  const SymbolValue at0 = symbol_eval(w, 0.0);
  const Mobius2 disk = w.disk_matrix();
  if (args.json) {
    Json j{{"a", args.a},
           {"alpha", args.alpha},
           {"n", args.n},
           {"dual", args.dual},
           {"lambda", to_json(w.lambda())},
           {"disk", matrix_json(disk)},
           {"display",
            {{"scale", d.scale},
             {"lambda", to_json(d.lambda)},
             {"matrix", matrix_json(d.m)},
             {"base", d.base ? Json(*d.base) : Json(nullptr)},
             {"f", d.f_text},
             {"psi", d.psi_text}}},
           {"f0", to_json(at0.weight)},
           {"psi0", to_json(at0.map)}};
    out << dump_json(j) << '\n';
    return 0;
  }
  out << (args.dual ? "adjoint iterate" : "iterate") << " n=" << args.n << " a=" << g10(args.a)
      << " alpha=" << g10(args.alpha) << '\n';
  out << "lambda = " << g10(w.lambda()) << '\n';
  out << "M = [[" << g10(disk.a) << ", " << g10(disk.b) << "], [" << g10(disk.c) << ", " << g10(disk.d) << "]]\n";
  out << "f(z) = " << d.f_text << '\n';
  out << "psi(z) = " << d.psi_text << '\n';
  out << "f(0) = " << g10(at0.weight) << '\n';
  out << "psi(0) = " << g10(at0.map) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct IterateArgs {
  double a = 0.5, alpha = 0.0;
  std::size_t n_max = 3;
  std::string N = "64,128,256";
  double cutoff = 1e-12;
  std::size_t corner = 8;
};

int cmd_iterate(const IterateArgs& args, std::ostream& out) {
  const PaperScenario base = scenario(args.a, args.alpha, 0);
  const auto Ns = parse_arg(parse_size_list, args.N, "--N");
  require_nonempty_sorted(Ns, "--N");
  if (!(args.cutoff > 0.0 && args.cutoff <= 1e-3)) throw UsageError("--cutoff must lie in (0, 1e-3]");
  if (args.corner < 1) throw UsageError("--corner must be at least 1");
  bool ok = true;

  out << "symbolic iteration vs closed form\n";
  out << "n\tscaled_entry_error\n";
  WeightedLFT w = c_phi(base);
  for (std::size_t n = 1; n <= args.n_max; ++n) {
    w = aluthge_step(w);
    PaperScenario sc = base;
    sc.n = n;
    const double d = distance(w, iterate_symbols(sc));
    ok = ok && d <= kSymbolTol;
    out << n << '\t' << g10(d) << (d <= kSymbolTol ? "" : "\tFAIL") << '\n';
  }

  out << "numeric Aluthge iteration vs truncated closed form, leading " << args.corner << "x" << args.corner
      << " corner\n";
  out << "n\tN\tcorner_error\tshrink\n";
  std::map<std::size_t, std::vector<double>> errors;
  for (std::size_t N : Ns) {
    TruncatedOperator A = truncate(c_phi(base), N);
    for (std::size_t n = 1; n <= args.n_max; ++n) {
      A = aluthge_numeric(A, args.cutoff);
      PaperScenario sc = base;
      sc.n = n;
      errors[n].push_back(
          corner_distance(A.entries, truncate(iterate_symbols(sc), N).entries, static_cast<Eigen::Index>(args.corner)));
    }
  }
  for (std::size_t n = 1; n <= args.n_max; ++n) {
    const auto& e = errors[n];
    for (std::size_t i = 0; i < e.size(); ++i)
      out << n << '\t' << Ns[i] << '\t' << g10(e[i]) << '\t' << (i ? g10(e[i - 1] / e[i]) : "-") << '\n';
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct NormsArgs {
  double a = 0.5, alpha = 0.0;
  std::size_t n = 0;
  std::string Nlist = "64,128,256";
  int angles = 256;
};

int cmd_norms(const NormsArgs& args, std::ostream& out) {
  const PaperScenario sc = scenario(args.a, args.alpha, args.n);
  const auto Ns = parse_arg(parse_size_list, args.Nlist, "--Nlist");
  require_nonempty_sorted(Ns, "--Nlist");
  if (args.angles < 16) throw UsageError("--angles must be at least 16");
  const double expected = norm_value(sc);
  const WeightedLFT w = iterate_symbols(sc);
  bool ok = true;
  double prev_norm = 0.0, prev_radius = 0.0;
  out << "N\tnorm\tnumerical_radius\texpected\tnorm/expected\n";
  for (std::size_t N : Ns) {
    const TruncatedOperator T = truncate(w, N);
    const double nrm = operator_norm(T.entries);
    const double rad = numerical_radius(T.entries, args.angles);
    const bool bounded = nrm <= expected * (1.0 + kBoundSlack) && rad <= expected * (1.0 + kBoundSlack);
    const bool monotone = nrm >= prev_norm * (1.0 - 1e-12) && rad >= prev_radius * (1.0 - 1e-12);
    ok = ok && bounded && monotone;
    out << N << '\t' << g10(nrm) << '\t' << g10(rad) << '\t' << g10(expected) << '\t' << g10(nrm / expected)
        << (bounded ? "" : "\tBOUND VIOLATED") << (monotone ? "" : "\tNOT MONOTONE") << '\n';
    prev_norm = nrm;
    prev_radius = rad;
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct SotArgs {
  double a = 0.5, alpha = 0.0;
  std::string omega = "0,0.3,0.5i";
  std::size_t n_max = 30;
  std::size_t N = 0;
};

int cmd_sot(const SotArgs& args, std::ostream& out) {
  scenario(args.a, args.alpha, 0);
  const auto omegas = parse_arg(parse_complex_list, args.omega, "--omega");
  if (omegas.empty()) throw UsageError("--omega: at least one point is required");
  for (const auto& w : omegas)
    if (!(std::abs(w) < 1.0)) throw UsageError("--omega: points must lie in the open unit disk");
  if (args.N == 1) throw UsageError("--N must be 0 or at least 2");
  const auto rows = sot_decay_curve({{args.a}, {args.alpha}, omegas, args.n_max, args.N});
  bool ok = true;
  out << "omega\tn\tnorm\tclosed\tbound" << (args.N ? "\ttruncated\tslack" : "") << '\n';
  for (const auto& r : rows) {
    const double exact = std::sqrt(r.exact_norm_sq);
    const double closed = std::sqrt(r.closed_norm_sq);
    const double bound = std::sqrt(r.bound_norm_sq);
    const bool agrees = std::abs(exact - closed) <= kExactTol * std::max(1.0, closed);
    const bool bounded = exact <= bound * (1.0 + kExactTol);
    ok = ok && agrees && bounded;
    out << format_complex(r.omega) << '\t' << r.n << '\t' << g10(exact) << '\t' << g10(closed) << '\t' << g10(bound);
    if (r.truncated_norm_sq) out << '\t' << g10(std::sqrt(*r.truncated_norm_sq)) << '\t' << g10(r.truncation_slack);
    out << (agrees ? "" : "\tMISMATCH") << (bounded ? "" : "\tBOUND VIOLATED") << '\n';
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct HardyArgs {
  double a = 0.5, alpha = 0.0;
  std::size_t n_max = 30;
  std::size_t N = 256;
  std::size_t corner = 8;
};

int cmd_hardy(const HardyArgs& args, std::ostream& out) {
  const PaperScenario base = scenario(args.a, args.alpha, 0);
  if (args.N < 2) throw UsageError("--N must be at least 2");
  if (args.corner < 1 || args.corner > args.N) throw UsageError("--corner must lie in [1, N]");
  const auto k = static_cast<Eigen::Index>(args.corner);
  bool ok = true;

  const double base_corner =
      corner_distance(sigma_iterate_block(base, args.N).entries, direct_c_sigma(args.a, args.alpha, args.N).entries, k);
  const bool base_ok = base_corner <= kCornerTol;
  ok = ok && base_ok;
  out << "block construction vs direct C_sigma, corner error = " << g10(base_corner) << (base_ok ? "" : "  FAIL")
      << '\n';

  const Eigen::MatrixXcd limit = sigma_sot_limit(base, args.N).entries;
  const Eigen::MatrixXcd rank_one = constants_projection(args.N, args.alpha).entries;
  const double normal = (limit * limit.adjoint() - limit.adjoint() * limit).topLeftCorner(k, k).norm();
  ok = ok && normal <= kCornerTol;
  out << "limit commutator corner = " << g10(normal) << (normal <= kCornerTol ? "" : "  FAIL") << '\n';

  const double bound = std::max(1.0, std::pow(args.a, -0.5 * args.alpha));
  out << "n\tblock_norm\tbound\tresidual_to_limit\tadjoint_residual_to_K0xK0\n";
  for (std::size_t n = 0; n <= args.n_max; ++n) {
    PaperScenario sc = base;
    sc.n = n;
    const Eigen::MatrixXcd T = sigma_iterate_block(sc, args.N).entries;
    const double nrm = operator_norm(T);
    const bool bounded = nrm <= bound * (1.0 + kBoundSlack);
    ok = ok && bounded;
    out << n << '\t' << g10(nrm) << '\t' << g10(bound) << '\t' << g10(column_residual(T, limit, k)) << '\t'
        << g10(column_residual(sigma_adjoint_block(sc, args.N).entries, rank_one, k))
        << (bounded ? "" : "\tBOUND VIOLATED") << '\n';
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string config_file;
  std::map<std::string, std::string> values;
};

int cmd_verify(const VerifyArgs& args, const std::vector<std::string>& given, std::ostream& out) {
  ExperimentConfig cfg;
  try {
    if (!args.config_file.empty()) apply_config_file(cfg, args.config_file);
    for (const auto& key : given) set_config_value(cfg, key, args.values.at(key));
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  Report report;
  try {
    report = run_all(cfg);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  for (const auto& e : report.experiments) {
    out << e.name << ": pass=" << e.count(Status::kPass) << " fail=" << e.count(Status::kFail)
        << " evidence=" << e.count(Status::kEvidence) << '\n';
    for (const auto& r : e.records)
      if (r.status == Status::kFail)
        out << "  FAIL " << r.claim << " / " << r.metric << " " << r.inputs.dump() << " computed=" << r.computed.dump()
            << '\n';
  }
  out << "total: pass=" << report.count(Status::kPass) << " fail=" << report.count(Status::kFail)
      << " evidence=" << report.count(Status::kEvidence) << " (" << g10(report.meta.wall_seconds) << " s, "
      << report.meta.threads << " threads)\n";
  if (!cfg.out.empty()) {
    write_report_files(report, cfg.out);
    out << "wrote " << cfg.out << "/report.json\n";
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Aluthge iterates of linear-fractional composition operators", "aluthge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ALUTHGE_VERSION);

  SymbolsArgs sym;
  auto* s_sym = app.add_subcommand("symbols", "closed-form symbols of the n-th iterate");
  s_sym->add_option("--a", sym.a, "parameter a in (0, 1)")->required();
  s_sym->add_option("--alpha", sym.alpha, "weight alpha > -1")->required();
  s_sym->add_option("--n", sym.n, "iterate index")->required();
  s_sym->add_flag("--dual", sym.dual, "iterate of the adjoint instead");
  s_sym->add_flag("--json", sym.json, "machine-readable output with 17 significant digits");

  IterateArgs it;
  auto* s_it = app.add_subcommand("iterate", "symbolic and numeric iteration compared");
  s_it->add_option("--a", it.a)->required();
  s_it->add_option("--alpha", it.alpha)->required();
  s_it->add_option("--nmax", it.n_max)->capture_default_str();
  s_it->add_option("--N", it.N, "ascending truncation sizes")->capture_default_str();
  s_it->add_option("--cutoff", it.cutoff, "relative singular value cutoff")->capture_default_str();
  s_it->add_option("--corner", it.corner)->capture_default_str();

  NormsArgs nm;
  auto* s_nm = app.add_subcommand("norms", "truncated norms and numerical radii");
  s_nm->add_option("--a", nm.a)->required();
  s_nm->add_option("--alpha", nm.alpha)->required();
  s_nm->add_option("--n", nm.n)->capture_default_str();
  s_nm->add_option("--Nlist", nm.Nlist)->capture_default_str();
  s_nm->add_option("--angles", nm.angles)->capture_default_str();

  SotArgs so;
  auto* s_so = app.add_subcommand("sot", "kernel decay table with its upper bound");
  s_so->add_option("--a", so.a)->required();
  s_so->add_option("--alpha", so.alpha)->required();
  s_so->add_option("--omega", so.omega, "comma separated points, e.g. 0,0.3,0.5i")->capture_default_str();
  s_so->add_option("--nmax", so.n_max)->capture_default_str();
  s_so->add_option("--N", so.N, "truncation size for an extra column; 0 skips it")->capture_default_str();

  HardyArgs hd;
  auto* s_hd = app.add_subcommand("hardy", "induced operators on the weighted Hardy space");
  s_hd->add_option("--a", hd.a)->required();
  s_hd->add_option("--alpha", hd.alpha)->required();
  s_hd->add_option("--nmax", hd.n_max)->capture_default_str();
  s_hd->add_option("--N", hd.N)->capture_default_str();
  s_hd->add_option("--corner", hd.corner)->capture_default_str();

  VerifyArgs vf;
  auto* s_vf = app.add_subcommand("verify", "run every experiment and emit the report");
  s_vf->add_option("--config", vf.config_file, "key = value file; flags override it");
  std::vector<std::pair<std::string, CLI::Option*>> key_opts;
  for (const auto& key : config_keys())
    key_opts.emplace_back(key, s_vf->add_option("--" + key, vf.values[key], "config key '" + key + "'"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*s_sym) return cmd_symbols(sym, out);
    if (*s_it) return cmd_iterate(it, out);
    if (*s_nm) return cmd_norms(nm, out);
    if (*s_so) return cmd_sot(so, out);
    if (*s_hd) return cmd_hardy(hd, out);
    if (*s_vf) {
      std::vector<std::string> given;
      for (const auto& [key, opt] : key_opts)
        if (opt->count() > 0) given.push_back(key);
      return cmd_verify(vf, given, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace aluthge
