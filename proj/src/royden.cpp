#include "krf/royden.hpp"

#include <cmath>
#include <string>

namespace krf {

double royden_bound(double kappa, int n, double trace) {
  if (kappa < 0.0) throw NegativeKappa("royden_bound: kappa must be >= 0");
  if (!(trace > 0.0)) {
    throw NonPositiveTrace("royden_bound: trace must be > 0");
  }
  return -kappa * double(n + 1) / (2.0 * n) * trace * trace;
}

RoydenReport check_royden(const HermitianForm& omega,
                          const HermitianForm& omega_hat,
                          const KahlerCurvature& R_hat, double kappa,
                          double rel_tol, const HscSupBudget& budget) {
  if (kappa < 0.0) throw NegativeKappa("check_royden: kappa must be >= 0");
  const double sup = hsc_sup(R_hat, omega_hat, budget);
  const double hyp_tol = 1e-9 * std::max(1.0, kappa);
  if (sup > -kappa + hyp_tol) {
    throw HypothesisViolated("check_royden: sampled sup " +
                             std::to_string(sup) + " exceeds -kappa = " +
                             std::to_string(-kappa));
  }
  RoydenReport rep;
  rep.kappa = kappa;
  rep.trace = trace_ratio(omega, omega_hat);
  rep.lhs = bicontraction(omega, R_hat);
  rep.rhs = royden_bound(kappa, omega.dim(), rep.trace);
  rep.margin = rep.rhs - rep.lhs;
  rep.holds = rep.lhs <= rep.rhs + rel_tol * std::abs(rep.rhs) + 1e-14;
  return rep;
}

HermitianForm random_hermitian_pd(Rng& rng, int n) {
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform_complex(1.0);
  Eigen::MatrixXcd g = a * a.adjoint() / double(n);
  // Keep the spectrum away from zero, then randomize the overall scale.
  g += 0.2 * Eigen::MatrixXcd::Identity(n, n);
  g *= rng.uniform(0.5, 2.0);
  return HermitianForm(g);
}

KahlerCurvature random_kahler_symmetric(Rng& rng, int n, double scale) {
  std::vector<Complex> e(std::size_t(n) * n * n * n);
  for (auto& v : e) v = scale * rng.uniform_complex(1.0);
  // The constructor projects onto the symmetric subspace; raw uniform input
  // is far from symmetric, so project here first.
  const int nn = n;
  auto idx = [nn](int i, int j, int k, int l) {
    return std::size_t(((i * nn + j) * nn + k) * nn + l);
  };
  std::vector<Complex> sym(e.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Complex a = e[idx(i, j, k, l)] + e[idx(k, j, i, l)];
          const Complex b = e[idx(i, l, k, j)] + e[idx(k, l, i, j)];
          sym[idx(i, j, k, l)] = 0.25 * (a + b);
        }
  std::vector<Complex> fixed(e.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          fixed[idx(i, j, k, l)] =
              0.5 * (sym[idx(i, j, k, l)] + std::conj(sym[idx(j, i, l, k)]));
  return KahlerCurvature(n, std::move(fixed));
}

NegativeTensor random_negative_tensor(std::uint64_t seed, int n, double kappa,
                                      double perturbation,
                                      const NegativeTensorOptions& opts) {
  if (!(kappa > 0.0)) {
    throw NegativeKappa("random_negative_tensor: kappa must be > 0");
  }
  if (perturbation < 0.0) {
    throw Error("random_negative_tensor: perturbation must be >= 0");
  }
  const HermitianForm ghat =
      opts.omega_hat ? *opts.omega_hat : HermitianForm::identity(n);
  Rng rng(seed);
  const double accept_at = -kappa * (1.0 + opts.guard);
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const double kappa_prime = kappa * rng.uniform(1.25, 1.75);
    KahlerCurvature base = constant_hsc_tensor(ghat, kappa_prime);
    if (perturbation > 0.0) {
      const double scale = perturbation * kappa_prime / double(n * n);
      const KahlerCurvature noise = random_kahler_symmetric(rng, n, scale);
      std::vector<Complex> sum(base.flat());
      for (std::size_t p = 0; p < sum.size(); ++p) sum[p] += noise.flat()[p];
      base = KahlerCurvature(n, std::move(sum));
    }
    const double sup = hsc_sup(base, ghat, opts.budget);
    if (sup <= accept_at) {
      return NegativeTensor{std::move(base), sup, kappa_prime};
    }
  }
  throw GenerationFailed(
      "random_negative_tensor: no admissible tensor after " +
      std::to_string(opts.max_attempts) +
      " attempts; shrink the perturbation");
}

}  // namespace krf
