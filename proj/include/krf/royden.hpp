#pragma once

#include <cstdint>
#include <optional>

#include "krf/tensor.hpp"

// Numerical verification of Royden's inequality: whenever the holomorphic
// sectional curvature of omega_hat is bounded above by -kappa <= 0,
//
//   g^{i jbar} g^{k lbar} Rhat_{i jbar k lbar}
//       <= -kappa (n+1)/(2n) (tr_omega(omega_hat))^2  <= 0
//
// for every Kahler form omega. The module also generates curvature test data
// satisfying the hypothesis, with the measured sup recorded.
namespace krf {

struct RoydenReport {
  double lhs = 0.0;     // bicontraction value
  double rhs = 0.0;     // Royden bound
  double kappa = 0.0;   // hypothesis constant, >= 0
  double trace = 0.0;   // tr_omega(omega_hat)
  double margin = 0.0;  // rhs - lhs
  bool holds = false;   // lhs <= rhs + tol |rhs|
};

// -kappa (n+1)/(2n) trace^2.
double royden_bound(double kappa, int n, double trace);

// Evaluates both sides. The hypothesis hsc_sup(R_hat, omega_hat) <= -kappa is
// re-verified by sampled extremization; test data that fails it by more than
// tolerance raises HypothesisViolated (bad data, not a theorem failure). The
// guarantee is relative to the sampled sup.
RoydenReport check_royden(const HermitianForm& omega,
                          const HermitianForm& omega_hat,
                          const KahlerCurvature& R_hat, double kappa,
                          double rel_tol = 1e-9,
                          const HscSupBudget& budget = {});

struct NegativeTensorOptions {
  std::optional<HermitianForm> omega_hat;  // reference metric; identity if unset
  int max_attempts = 1000;
  // Accept only when the sampled sup clears -kappa by this relative guard
  // band, compensating for sampled (rather than exact) extremization.
  double guard = 0.02;
  HscSupBudget budget = {};
};

struct NegativeTensor {
  KahlerCurvature tensor;
  double measured_sup = 0.0;  // sampled hsc_sup of the returned tensor
  double kappa_prime = 0.0;   // constant-HSC level of the unperturbed part
};

// Constant-HSC(kappa') tensor, kappa' in [1.25, 1.75] kappa, plus a random
// Kahler-symmetric perturbation of relative size `perturbation`,
// rejection-sampled until the sampled sup is <= -kappa (1 + guard). Fixed
// seed -> bit-identical output.
NegativeTensor random_negative_tensor(std::uint64_t seed, int n, double kappa,
                                      double perturbation,
                                      const NegativeTensorOptions& opts = {});

// Test-data helpers, deterministic in the rng stream.
HermitianForm random_hermitian_pd(Rng& rng, int n);
KahlerCurvature random_kahler_symmetric(Rng& rng, int n, double scale);

}  // namespace krf
