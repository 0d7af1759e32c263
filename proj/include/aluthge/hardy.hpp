#pragma once

// The weighted Hardy space H²(β_α) with β_α(0) = 1, β_α(j) = 1/γ_α(j−1), where
// γ_α(j) = ‖zʲ‖ in A²_α. Vectors use orthonormal coordinates wⱼ = zʲ/β_α(j),
// so V: A²_α → zH²(β_α), uⱼ ↦ wⱼ₊₁ is a pure shift and 1 ⊕ V X V* is the
// (N+1)×(N+1) matrix with 1 in the corner and X one index down.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "aluthge/closed_forms.hpp"
#include "aluthge/matrix_engine.hpp"

namespace aluthge {

class HardyWeights {
 public:
  HardyWeights(double alpha, std::size_t n_max);

  double alpha() const { return alpha_; }
  std::size_t n_max() const { return log_gamma_.size() - 1; }

  /// log γ_α(j) = −½·log_gamma_ratio(j).
  double log_gamma(std::size_t j) const { return log_gamma_.at(j); }
  /// log β_α(j); 0 at j = 0, −log γ_α(j−1) after.
  double log_beta(std::size_t j) const { return log_beta_.at(j); }
  double gamma(std::size_t j) const;
  double beta(std::size_t j) const;

 private:
  double alpha_;
  std::vector<double> log_gamma_;
  std::vector<double> log_beta_;
};

/// (N+1)×N matrix of V in orthonormal coordinates: ones on the subdiagonal.
TruncatedOperator shift_V(std::size_t N, double alpha);

/// 1 ⊕ V·X·V* for an N×N block X.
TruncatedOperator embed_block(const Eigen::MatrixXcd& block, double alpha);

/// (N+1)×(N+1) matrix of C_σ on H²(β_α), σ(z) = az/(1−(1−a)z), built from
/// σʲ = aʲzʲ(1−(1−a)z)^{−j}; entry (i, j) = β(i)/β(j)·[zⁱ]σʲ.
TruncatedOperator direct_c_sigma(double a, double alpha, std::size_t N);

/// 1 ⊕ V(a·(C_φ*)~⁽ⁿ⁾)V*, the n-th Aluthge iterate of C_σ.
TruncatedOperator sigma_iterate_block(const PaperScenario& sc, std::size_t N);

/// 1 ⊕ V(a·C̃_φ⁽ⁿ⁾)V*, the n-th Aluthge iterate of C_σ*.
TruncatedOperator sigma_adjoint_block(const PaperScenario& sc, std::size_t N);

/// (K_0⊗K_0) ⊕ V(a^{−α/2}U′)V*.
TruncatedOperator sigma_sot_limit(const PaperScenario& sc, std::size_t N);

/// K_0⊗K_0 alone: the projection onto constants.
TruncatedOperator constants_projection(std::size_t N, double alpha);

/// max_{j ≤ j_max} ‖(A − B)wⱼ‖.
double column_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, Eigen::Index j_max);

struct SigmaProbe {
  double binormal_commutator_corner;  // ‖[P_N, Q_N]‖_F on the leading corner, P = T*T, Q = TT*
  bool binormal_symbolic;             // exact commutation of the A²_α factors
  double g0_n;                        // ⟨C̃⁽ⁿ⁾K_0, K_0⟩ of the C_φ* factor
  double g0_next;                     // the same at n+1
  double block_norm;                  // ‖truncation‖
  double norm_bound;                  // sup{1, a^{−α/2}}
  double min_support;                 // min_θ λ_max(Re(e^{iθ}T_N))
  bool zero_in_interior;
};

SigmaProbe sigma_properties_probe(const PaperScenario& sc, std::size_t N, int K = 256,
                                  double margin = 1e-6);

}  // namespace aluthge
