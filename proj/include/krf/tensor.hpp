#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "krf/errors.hpp"
#include "krf/numerics.hpp"

#include <json.hpp>

// Pointwise complex-geometry algebra: Hermitian metrics, Kahler curvature
// tensors, traces and holomorphic sectional curvature.
//
// Index convention (fixed once for the whole project):
//   * A metric is the matrix G with G(i,j) = g_{i jbar}; Hermitian positive
//     definite. The inverse metric is g^{i jbar} = (G^{-1})(j,i), so that
//     g^{i jbar} ghat_{i jbar} = tr(G^{-1} Ghat).
//   * A curvature tensor R stores R_{i jbar k lbar} at (i, j, k, l):
//     holomorphic slots 1 and 3, anti-holomorphic slots 2 and 4.
//   * Sign convention: the space form of holomorphic sectional curvature -c
//     is R_{i jbar k lbar} = -(c/2)(g_{i jbar} g_{k lbar} +
//     g_{i lbar} g_{k jbar}); hyperbolic metrics have H = -1.
namespace krf {

using Complex = std::complex<double>;

// A tangent vector of type (1,0); must be nonzero wherever a sectional
// curvature is evaluated.
using TangentVector = Eigen::VectorXcd;

class HermitianForm {
 public:
  // Symmetrizes the input and validates. Deviations from Hermitian symmetry
  // beyond 1e-10 relative, or a non-positive spectrum, are construction
  // errors.
  explicit HermitianForm(const Eigen::MatrixXcd& entries);

  static HermitianForm identity(int dim);
  static HermitianForm diagonal(const Eigen::VectorXd& diag);

  int dim() const { return int(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  double min_eigenvalue() const;
  double max_abs_entry() const;

  // g^{i jbar}; throws NonPositiveDefinite when the spectrum is within
  // tolerance of singular.
  HermitianForm inverse() const;

  // |xi|_g^2 = g_{i jbar} xi^i conj(xi^j), real and positive.
  double squared_norm(const TangentVector& xi) const;

 private:
  Eigen::MatrixXcd entries_;
};

class KahlerCurvature {
 public:
  // Entries flat in row-major (i, j, k, l) order, length dim^4. The input is
  // projected onto the Kahler-symmetric subspace; a projection distance
  // beyond 1e-10 relative is a construction error.
  KahlerCurvature(int dim, std::vector<Complex> entries);

  static KahlerCurvature zero(int dim);

  int dim() const { return dim_; }
  Complex at(int i, int j, int k, int l) const {
    return entries_[std::size_t(((i * dim_ + j) * dim_ + k) * dim_ + l)];
  }
  const std::vector<Complex>& flat() const { return entries_; }
  double max_abs_entry() const;

  // View as the n^2 x n^2 matrix R[(i,j),(k,l)], the bilinear form used by
  // the contraction routines.
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
  as_matrix() const;

 private:
  int dim_;
  std::vector<Complex> entries_;
};

// tr_omega(omega_hat) = g^{i jbar} ghat_{i jbar}; strictly positive.
double trace_ratio(const HermitianForm& omega, const HermitianForm& omega_hat);

// H(xi) = R(xi, bar xi, xi, bar xi) / |xi|_g^4; invariant under xi -> c xi.
double hsc(const KahlerCurvature& R, const HermitianForm& g,
           const TangentVector& xi);

struct HscSupBudget {
  int restarts = 64;
  int iterations = 200;
  std::uint64_t seed = 0x6b7266u;  // fixed default: results are deterministic
};

// Estimated sup over directions of H(xi): multi-start projected gradient
// ascent on the unit sphere. The returned value is attained by a sampled
// direction, hence always a valid lower bound for the true sup. Exact for
// dim 1.
double hsc_sup(const KahlerCurvature& R, const HermitianForm& g,
               const HscSupBudget& budget = {});

// g^{i jbar} g^{k lbar} Rhat_{i jbar k lbar}, the Schwarz-lemma curvature
// term. Real for any Kahler-symmetric Rhat.
double bicontraction(const HermitianForm& omega, const KahlerCurvature& R_hat);

// Space-form tensor -(c/2)(g (x) g + swap); its HSC is identically -c.
KahlerCurvature constant_hsc_tensor(const HermitianForm& g, double c);

// JSON fixture format: {"dim": n, "entries": [[re, im], ...]} flat row-major.
void to_json(nlohmann::json& j, const HermitianForm& g);
void to_json(nlohmann::json& j, const KahlerCurvature& R);
HermitianForm hermitian_from_json(const nlohmann::json& j);
KahlerCurvature curvature_from_json(const nlohmann::json& j);

}  // namespace krf
