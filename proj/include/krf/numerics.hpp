#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace krf {

// Deterministic RNG used everywhere randomness is needed. Doubles are
// produced from raw engine output, so streams are reproducible across
// standard libraries (std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  std::complex<double> uniform_complex(double half_width) {
    double re = uniform(-half_width, half_width);
    double im = uniform(-half_width, half_width);
    return {re, im};
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// log(x) for x > 0, accurate to ~1 ulp over the normal range, written so the
// compiler can vectorize grid-sized loops (no branches, no libm call). The
// velocity kernels of the grid flow spend most of their time here.
inline double fast_log(double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  const std::int64_t e = std::int64_t((bits >> 52) & 0x7ff) - 1023;
  double m = std::bit_cast<double>((bits & 0x000fffffffffffffULL) |
                                   0x3ff0000000000000ULL);
  // Range-reduce the mantissa to [sqrt(1/2), sqrt(2)).
  const double big = (m > 1.4142135623730951) ? 1.0 : 0.0;
  m -= big * 0.5 * m;
  const double ee = double(e) + big;
  // log(m) = 2 atanh(r) with r = (m-1)/(m+1), |r| <= 0.1716.
  const double r = (m - 1.0) / (m + 1.0);
  const double s = r * r;
  double p = 2.0 / 17.0;
  p = p * s + 2.0 / 15.0;
  p = p * s + 2.0 / 13.0;
  p = p * s + 2.0 / 11.0;
  p = p * s + 2.0 / 9.0;
  p = p * s + 2.0 / 7.0;
  p = p * s + 2.0 / 5.0;
  p = p * s + 2.0 / 3.0;
  p = p * s + 2.0;
  return r * p + ee * 0.6931471805599453;
}

// Compensated accumulator for long step sums (keeps integrator order
// measurements out of round-off noise).
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  explicit KahanSum(double v = 0.0) : sum(v) {}

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

// Finite-difference weights for the m-th derivative at x0 from arbitrary
// nodes (Fornberg's recursion). Used by the Schwarz monitor to differentiate
// the trace along a trajectory whose steps may be non-uniform.
std::vector<double> fd_weights(double x0, std::span<const double> nodes,
                               int deriv_order);

// Least-squares slope of y over x.
double ls_slope(std::span<const double> x, std::span<const double> y);

}  // namespace krf
