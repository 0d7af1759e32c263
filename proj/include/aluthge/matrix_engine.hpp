#pragma once

// Finite compressions P_N W P_N in orthonormal coordinates, and the dense
// numerics run on them: polar factors, Aluthge transforms, norms, numerical
// radii and fractional-power hyponormality probes.
//
// Compressions give one-sided information. Norms and numerical radii of
// P_N W P_N are lower bounds for those of W and nondecreasing in N. Spectra of
// compressions are not used: the diagonal of truncate(C_φ) is 1, a, a², ...
// and says nothing about r(C_φ).

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "aluthge/closed_forms.hpp"
#include "aluthge/wlft.hpp"

namespace aluthge {

enum class SpaceKind { kBergman, kHardy };

/// A²_α, or H²(β_α) for the same α.
struct SpaceTag {
  SpaceKind kind = SpaceKind::kBergman;
  double alpha = 0.0;

  friend bool operator==(const SpaceTag&, const SpaceTag&) = default;
};

const char* to_string(SpaceKind kind);

struct TruncatedOperator {
  SpaceTag space;
  Eigen::MatrixXcd entries;

  Eigen::Index dim() const { return entries.rows(); }
};

/// Entry (i, j) = (bc(j)/bc(i))·[zⁱ](f·ψʲ), bc = basis_coeff. Columns are built
/// by repeatedly multiplying by pz+q and dividing by rz+s, both exact on
/// truncated power series. Throws DomainError for N < 2.
TruncatedOperator truncate(const WeightedLFT& w, std::size_t N);

struct PolarFactors {
  TruncatedOperator modulus;           // V Σ V*
  TruncatedOperator partial_isometry;  // W_r V_r*, singular values above the cutoff
  double cutoff_used;                  // absolute threshold rel_cutoff·σ_max
  Eigen::Index rank;
};

/// Polar factors from a singular value decomposition A = WΣV*. Singular values
/// at or below rel_cutoff·σ_max are treated as zero. Throws DomainError unless
/// rel_cutoff ∈ (0, 1e−3], SolverError if the decomposition fails.
PolarFactors polar_decompose(const TruncatedOperator& A, double rel_cutoff = 1e-12);

/// |A|^{1/2}·U·|A|^{1/2} with |A|^{1/2} = VΣ^{1/2}V*.
TruncatedOperator aluthge_numeric(const TruncatedOperator& A, double rel_cutoff = 1e-12);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& A);

/// Smallest and largest eigenvalue of a Hermitian matrix.
struct SpectralBounds {
  double min;
  double max;
};

/// Extremal eigenvalues by Lanczos with full reorthogonalisation; falls back to
/// a dense solve when the Ritz residuals do not settle. Ritz values lie inside
/// the spectrum, so an unconverged result can only under-report |λ|.
SpectralBounds hermitian_extremes(const Eigen::MatrixXcd& H);

struct NumericalRangeSample {
  double radius;       // max_θ λ_max(Re(e^{iθ}A))
  double min_support;  // min_θ λ_max(Re(e^{iθ}A))
};

/// Support function of W(A) sampled at θ_k = 2πk/K. Throws DomainError for K < 16.
NumericalRangeSample numerical_range_sample(const Eigen::MatrixXcd& A, int K = 256);

double numerical_radius(const Eigen::MatrixXcd& A, int K = 256);

/// min_θ λ_max(Re(e^{iθ}A)) > margin: 0 is inside W(A), hence inside W(T).
bool zero_in_interior(const Eigen::MatrixXcd& A, int K = 256, double margin = 1e-6);

/// λ_min((A*A)^p − (AA*)^p). Negative values show the compression is not
/// p-hyponormal. Throws DomainError for p ≤ 0.
double hyponormality_probe(const Eigen::MatrixXcd& A, double p);

/// Largest entrywise-Frobenius distance of the leading k×k corners.
double corner_distance(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, Eigen::Index k = 8);

struct SotRow {
  double a;
  double alpha;
  cplx omega;
  std::size_t n;
  double exact_norm_sq;      // ‖C̃⁽ⁿ⁾K_ω‖² through the kernel action of T_F C_Ψ
  double closed_norm_sq;     // explicit rational expression in t = 2a/(1+a)
  double bound_norm_sq;      // upper bound from the same expression
  std::optional<double> truncated_norm_sq;  // ‖P_N C̃⁽ⁿ⁾ P_N K_ω‖², when N > 0
  double truncation_slack;   // bound on |‖P W P K‖ − ‖W K‖|
};

struct SotRequest {
  std::vector<double> a_values;
  std::vector<double> alpha_values;
  std::vector<cplx> omegas;
  std::size_t n_max = 30;
  std::size_t N = 0;  // 0 skips the truncated column
};

/// Rows ordered by (a, α, ω, n).
std::vector<SotRow> sot_decay_curve(const SotRequest& request);

}  // namespace aluthge
