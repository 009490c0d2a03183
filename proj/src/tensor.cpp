#include "krf/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace krf {

namespace {

constexpr double kSymmetryTol = 1e-10;  // construction-error threshold
constexpr double kSingularTol = 1e-12;  // relative eigenvalue floor

double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace

HermitianForm::HermitianForm(const Eigen::MatrixXcd& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw DimensionMismatch("HermitianForm: matrix must be square, nonempty");
  }
  const double scale = std::max(max_abs(entries), 1e-300);
  const double dev = max_abs(entries - entries.adjoint());
  if (dev > kSymmetryTol * scale) {
    throw SymmetryViolation("HermitianForm: input is not Hermitian (|G - G^H| = " +
                            std::to_string(dev) + ")");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_,
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw NonPositiveDefinite("HermitianForm: smallest eigenvalue is " +
                              std::to_string(es.eigenvalues().minCoeff()));
  }
}

HermitianForm HermitianForm::identity(int dim) {
  return HermitianForm(Eigen::MatrixXcd::Identity(dim, dim));
}

HermitianForm HermitianForm::diagonal(const Eigen::VectorXd& diag) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(diag.size(), diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return HermitianForm(m);
}

double HermitianForm::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double HermitianForm::max_abs_entry() const { return max_abs(entries_); }

HermitianForm HermitianForm::inverse() const {
  if (min_eigenvalue() <= kSingularTol * max_abs_entry()) {
    throw NonPositiveDefinite("inverse: metric is singular to tolerance");
  }
  return HermitianForm(entries_.inverse());
}

double HermitianForm::squared_norm(const TangentVector& xi) const {
  if (xi.size() != dim()) {
    throw DimensionMismatch("squared_norm: vector/metric dimension mismatch");
  }
  return (xi.adjoint() * entries_ * xi).value().real();
}

KahlerCurvature::KahlerCurvature(int dim, std::vector<Complex> entries)
    : dim_(dim) {
  if (dim < 1) throw DimensionMismatch("KahlerCurvature: dim must be >= 1");
  const std::size_t want = std::size_t(dim) * dim * dim * dim;
  if (entries.size() != want) {
    throw DimensionMismatch("KahlerCurvature: expected dim^4 entries");
  }
  const int n = dim;
  auto idx = [n](int i, int j, int k, int l) {
    return std::size_t(((i * n + j) * n + k) * n + l);
  };
  // Project onto the invariant subspace: average the index symmetries
  // (i<->k and jbar<->lbar), then impose reality R = conj(R circ swap-pairs).
  // The grouping below keeps every stored identity exact in floating point.
  std::vector<Complex> sym(want);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Complex a = entries[idx(i, j, k, l)] + entries[idx(k, j, i, l)];
          const Complex b = entries[idx(i, l, k, j)] + entries[idx(k, l, i, j)];
          sym[idx(i, j, k, l)] = 0.25 * (a + b);
        }
  std::vector<Complex> fixed(want);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          fixed[idx(i, j, k, l)] =
              0.5 * (sym[idx(i, j, k, l)] + std::conj(sym[idx(j, i, l, k)]));
        }
  double scale = 1e-300, dev = 0.0;
  for (std::size_t p = 0; p < want; ++p) {
    scale = std::max(scale, std::abs(entries[p]));
    dev = std::max(dev, std::abs(entries[p] - fixed[p]));
  }
  if (dev > kSymmetryTol * scale) {
    throw SymmetryViolation(
        "KahlerCurvature: input violates Kahler symmetry (deviation " +
        std::to_string(dev) + ")");
  }
  entries_ = std::move(fixed);
}

KahlerCurvature KahlerCurvature::zero(int dim) {
  return KahlerCurvature(
      dim, std::vector<Complex>(std::size_t(dim) * dim * dim * dim));
}

double KahlerCurvature::max_abs_entry() const {
  double m = 0.0;
  for (const auto& v : entries_) m = std::max(m, std::abs(v));
  return m;
}

Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>
KahlerCurvature::as_matrix() const {
  const int n2 = dim_ * dim_;
  return {entries_.data(), n2, n2};
}

double trace_ratio(const HermitianForm& omega,
                   const HermitianForm& omega_hat) {
  if (omega.dim() != omega_hat.dim()) {
    throw DimensionMismatch("trace_ratio: dimension mismatch");
  }
  // tr(G^{-1} Ghat) = sum of eigenvalues of G^{-1} Ghat, real positive.
  const Eigen::MatrixXcd sol =
      omega.entries().partialPivLu().solve(omega_hat.entries());
  return sol.trace().real();
}

namespace {

// w[(i,j)] = g^{i jbar} = (G^{-1})(j, i), flattened to match as_matrix().
Eigen::VectorXcd inverse_metric_vector(const HermitianForm& omega) {
  const int n = omega.dim();
  const Eigen::MatrixXcd inv = omega.entries().inverse();
  Eigen::VectorXcd w(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i * n + j] = inv(j, i);
  return w;
}

// q[(i,j)] = xi^i conj(xi^j).
Eigen::VectorXcd direction_vector(const TangentVector& xi) {
  const int n = int(xi.size());
  Eigen::VectorXcd q(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i * n + j] = xi[i] * std::conj(xi[j]);
  return q;
}

}  // namespace

double hsc(const KahlerCurvature& R, const HermitianForm& g,
           const TangentVector& xi) {
  if (R.dim() != g.dim() || xi.size() != g.dim()) {
    throw DimensionMismatch("hsc: dimension mismatch");
  }
  const double norm2 = g.squared_norm(xi);
  if (!(norm2 > 0.0) || xi.squaredNorm() == 0.0) {
    throw ZeroVector("hsc: direction must be nonzero");
  }
  const Eigen::VectorXcd q = direction_vector(xi);
  const Complex numer = (q.transpose() * R.as_matrix() * q).value();
  return numer.real() / (norm2 * norm2);
}

namespace {

struct HscEval {
  double value;
  Eigen::VectorXcd grad;  // Wirtinger gradient dH/d(conj xi)
};

HscEval hsc_with_grad(const KahlerCurvature& R, const HermitianForm& g,
                      const TangentVector& xi) {
  const int n = int(xi.size());
  const Eigen::VectorXcd q = direction_vector(xi);
  const Eigen::VectorXcd rq = R.as_matrix() * q;  // A[(i,m)] = sum R q
  const Complex numer = (q.transpose() * rq).value();
  const double d = g.squared_norm(xi);
  const double h = numer.real() / (d * d);
  // dN/d(conj xi)_m = 2 sum_i xi_i rq[(i,m)];  dD/d(conj xi) = G^T xi.
  Eigen::VectorXcd nbar = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m) nbar[m] += xi[i] * rq[i * n + m];
  nbar *= 2.0;
  const Eigen::VectorXcd dbar = g.entries().transpose() * xi;
  HscEval out;
  out.value = h;
  out.grad = (nbar - (2.0 * numer.real() / d) * dbar) / (d * d);
  return out;
}

}  // namespace

double hsc_sup(const KahlerCurvature& R, const HermitianForm& g,
               const HscSupBudget& budget) {
  if (R.dim() != g.dim()) throw DimensionMismatch("hsc_sup: dimension mismatch");
  const int n = g.dim();
  if (n == 1) {
    // One complex direction: H = R_{1 1bar 1 1bar} / g^2 exactly.
    const double gg = g.entries()(0, 0).real();
    return R.at(0, 0, 0, 0).real() / (gg * gg);
  }
  Rng rng(budget.seed);
  double best = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < budget.restarts; ++restart) {
    TangentVector xi(n);
    do {
      for (int i = 0; i < n; ++i) xi[i] = rng.uniform_complex(1.0);
    } while (xi.norm() < 1e-3);
    xi.normalize();
    double step = 0.3;
    HscEval cur = hsc_with_grad(R, g, xi);
    for (int it = 0; it < budget.iterations; ++it) {
      // Tangential ascent direction (H is 0-homogeneous, so the gradient is
      // already nearly tangent; project for safety).
      Eigen::VectorXcd dir = cur.grad;
      dir -= xi.dot(dir).real() * xi;
      const double dn = dir.norm();
      if (dn < 1e-18 * (1.0 + std::abs(cur.value))) break;
      bool moved = false;
      while (step > 1e-14) {
        TangentVector trial = (xi + step * dir).normalized();
        HscEval t = hsc_with_grad(R, g, trial);
        if (t.value > cur.value) {
          xi = trial;
          cur = t;
          step *= 1.4;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    best = std::max(best, cur.value);
  }
  return best;
}

double bicontraction(const HermitianForm& omega,
                     const KahlerCurvature& R_hat) {
  if (omega.dim() != R_hat.dim()) {
    throw DimensionMismatch("bicontraction: dimension mismatch");
  }
  const Eigen::VectorXcd w = inverse_metric_vector(omega);
  const Complex b = (w.transpose() * R_hat.as_matrix() * w).value();
  return b.real();
}

KahlerCurvature constant_hsc_tensor(const HermitianForm& g, double c) {
  const int n = g.dim();
  const Eigen::MatrixXcd& G = g.entries();
  std::vector<Complex> e(std::size_t(n) * n * n * n);
  std::size_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          e[p++] = -0.5 * c * (G(i, j) * G(k, l) + G(i, l) * G(k, j));
  return KahlerCurvature(n, std::move(e));
}

void to_json(nlohmann::json& j, const HermitianForm& g) {
  nlohmann::json entries = nlohmann::json::array();
  const auto& m = g.entries();
  for (int i = 0; i < g.dim(); ++i)
    for (int k = 0; k < g.dim(); ++k)
      entries.push_back({m(i, k).real(), m(i, k).imag()});
  j = {{"dim", g.dim()}, {"entries", entries}};
}

void to_json(nlohmann::json& j, const KahlerCurvature& R) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& v : R.flat()) entries.push_back({v.real(), v.imag()});
  j = {{"dim", R.dim()}, {"entries", entries}};
}

HermitianForm hermitian_from_json(const nlohmann::json& j) {
  const int n = j.at("dim").get<int>();
  const auto& e = j.at("entries");
  if (int(e.size()) != n * n) {
    throw DimensionMismatch("hermitian_from_json: wrong entry count");
  }
  Eigen::MatrixXcd m(n, n);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k, ++p)
      m(i, k) = Complex(e[p][0].get<double>(), e[p][1].get<double>());
  return HermitianForm(m);
}

KahlerCurvature curvature_from_json(const nlohmann::json& j) {
  const int n = j.at("dim").get<int>();
  const auto& e = j.at("entries");
  std::vector<Complex> entries(e.size());
  for (std::size_t p = 0; p < e.size(); ++p) {
    entries[p] = Complex(e[p][0].get<double>(), e[p][1].get<double>());
  }
  return KahlerCurvature(n, std::move(entries));
}

}  // namespace krf
