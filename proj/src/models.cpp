#include "krf/models.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace krf {

namespace {

constexpr double kDegenerationFactor = 1e-8;

int grid_n(const ModelManifold& m) { return std::get<TorusGrid>(m).resolution; }

// Velocity of the scale factor under d/dt omega = -Ric(omega) - omega with
// omega = f omega_hat and Ric(omega) = Ric(omega_hat) = r omega_hat:
// f' = -r - f.
double scale_velocity(const ModelManifold& m, double f) {
  if (std::holds_alternative<HyperbolicSurface>(m)) return 1.0 - f;
  if (std::holds_alternative<FlatTorus>(m)) return -f;
  return -2.0 - f;  // ProjectiveLine
}

// phi_{z zbar} = (phi_xx + phi_yy) / 4, periodic centered differences,
// written into lap. Row-major layout: node (ix, iy) at ix * N + iy.
void grid_zzbar(int N, const double* phi, double* lap) {
  const double inv4h2 = 0.25 * double(N) * double(N);
  for (int ix = 0; ix < N; ++ix) {
    const double* rm = phi + std::size_t((ix == 0 ? N - 1 : ix - 1)) * N;
    const double* rp = phi + std::size_t((ix == N - 1 ? 0 : ix + 1)) * N;
    const double* rc = phi + std::size_t(ix) * N;
    double* out = lap + std::size_t(ix) * N;
    // Interior columns vectorize; the two wrap columns are done by hand.
    out[0] = (rm[0] + rp[0] + rc[N - 1] + rc[1] - 4.0 * rc[0]) * inv4h2;
#pragma omp simd
    for (int iy = 1; iy < N - 1; ++iy) {
      out[iy] =
          (rm[iy] + rp[iy] + rc[iy - 1] + rc[iy + 1] - 4.0 * rc[iy]) * inv4h2;
    }
    out[N - 1] =
        (rm[N - 1] + rp[N - 1] + rc[N - 2] + rc[0] - 4.0 * rc[N - 1]) * inv4h2;
  }
}

}  // namespace

bool is_grid(const ModelManifold& m) {
  return std::holds_alternative<TorusGrid>(m);
}

int complex_dim(const ModelManifold& m) {
  if (const auto* t = std::get_if<FlatTorus>(&m)) return t->dim;
  return 1;
}

std::string model_name(const ModelManifold& m) {
  if (const auto* t = std::get_if<FlatTorus>(&m)) {
    return "flat_torus(n=" + std::to_string(t->dim) + ")";
  }
  if (const auto* h = std::get_if<HyperbolicSurface>(&m)) {
    return "hyperbolic_surface(g=" + std::to_string(h->genus) + ")";
  }
  if (std::holds_alternative<ProjectiveLine>(m)) return "projective_line";
  const auto& g = std::get<TorusGrid>(m);
  return "torus_grid(N=" + std::to_string(g.resolution) + ")";
}

double FlowState::scale() const {
  if (is_grid(model)) {
    throw NoClosedForm("scale(): TorusGrid has no single scale factor");
  }
  return data[0];
}

FlowState initial_state(const ModelManifold& m, double f0) {
  if (is_grid(m)) {
    throw ConfigError("TorusGrid needs an initial potential, not a scale");
  }
  if (!(f0 > 0.0)) {
    throw NonPositiveInitialMetric("initial_state: f0 must be > 0");
  }
  FlowState s;
  s.t = 0.0;
  s.model = m;
  s.data = Eigen::ArrayXd::Constant(1, f0);
  s.initial_min_coeff = f0;
  return s;
}

FlowState initial_state(const ModelManifold& m, const Eigen::ArrayXd& phi0) {
  if (!is_grid(m)) {
    throw ConfigError("potential initial data is only for TorusGrid");
  }
  const auto& grid = std::get<TorusGrid>(m);
  const int N = grid.resolution;
  if (N < 4) throw ConfigError("TorusGrid resolution must be >= 4");
  if (phi0.size() != Eigen::Index(N) * N) {
    throw DimensionMismatch("initial_state: potential must be N*N");
  }
  FlowState s;
  s.t = 0.0;
  s.model = m;
  s.data = phi0;
  Eigen::ArrayXd h = metric_coefficients(s);
  const double hmin = h.minCoeff();
  if (!(hmin > 0.0)) {
    throw NonPositiveInitialMetric(
        "initial_state: g_flat + phi_{z zbar} must be positive at every node "
        "(min = " +
        std::to_string(hmin) + ")");
  }
  s.initial_min_coeff = hmin;
  return s;
}

Eigen::ArrayXd cosine_potential(int resolution, double amplitude, int kx,
                                int ky) {
  const int N = resolution;
  Eigen::ArrayXd phi(Eigen::Index(N) * N);
  for (int ix = 0; ix < N; ++ix) {
    for (int iy = 0; iy < N; ++iy) {
      const double x = double(ix) / N;
      const double y = double(iy) / N;
      phi[Eigen::Index(ix) * N + iy] =
          amplitude * std::cos(2.0 * std::numbers::pi * (kx * x + ky * y));
    }
  }
  return phi;
}

Eigen::ArrayXd metric_coefficients(const FlowState& s) {
  if (!is_grid(s.model)) return s.data;
  const auto& grid = std::get<TorusGrid>(s.model);
  const int N = grid.resolution;
  Eigen::ArrayXd h(s.data.size());
  grid_zzbar(N, s.data.data(), h.data());
  h += std::exp(-s.t) * grid.g_flat;
  return h;
}

double min_metric_coefficient(const FlowState& s) {
  if (!is_grid(s.model)) return s.data[0];
  return metric_coefficients(s).minCoeff();
}

double positivity_floor(const FlowState& s, double t) {
  return kDegenerationFactor * std::exp(-t) * s.initial_min_coeff;
}

void reduced_velocity_into(const ModelManifold& m, double t,
                           const Eigen::ArrayXd& data, Eigen::ArrayXd& out,
                           Eigen::ArrayXd& h_scratch) {
  if (!is_grid(m)) {
    out.resize(1);
    h_scratch.resize(1);
    h_scratch[0] = data[0];
    out[0] = scale_velocity(m, data[0]);
    return;
  }
  const auto& grid = std::get<TorusGrid>(m);
  const int N = grid.resolution;
  const Eigen::Index nn = Eigen::Index(N) * N;
  out.resize(nn);
  h_scratch.resize(nn);
  grid_zzbar(N, data.data(), h_scratch.data());
  const double flat = std::exp(-t) * grid.g_flat;
  double hmin = std::numeric_limits<double>::infinity();
  {
    const double* lap = h_scratch.data();
    double* h = h_scratch.data();
#pragma omp simd reduction(min : hmin)
    for (Eigen::Index i = 0; i < nn; ++i) {
      h[i] = flat + lap[i];
      hmin = std::min(hmin, h[i]);
    }
  }
  if (!(hmin > 0.0)) {
    throw PositivityLost(t, "grid metric non-positive at a node (min = " +
                                std::to_string(hmin) + ")");
  }
  const double inv_g = 1.0 / grid.g_flat;
  {
    const double* h = h_scratch.data();
    const double* phi = data.data();
    double* v = out.data();
#pragma omp simd
    for (Eigen::Index i = 0; i < nn; ++i) {
      v[i] = fast_log(h[i] * inv_g) - phi[i];
    }
  }
}

Eigen::ArrayXd reduced_velocity(const FlowState& s) {
  Eigen::ArrayXd out, h;
  reduced_velocity_into(s.model, s.t, s.data, out, h);
  return out;
}

double exact_solution(const ModelManifold& m, double f0, double t) {
  if (is_grid(m)) throw NoClosedForm("exact_solution: TorusGrid");
  if (std::holds_alternative<HyperbolicSurface>(m)) {
    return 1.0 + (f0 - 1.0) * std::exp(-t);
  }
  if (std::holds_alternative<FlatTorus>(m)) return f0 * std::exp(-t);
  return (f0 + 2.0) * std::exp(-t) - 2.0;  // ProjectiveLine
}

ModelReference model_reference(const ModelManifold& m) {
  const int n = complex_dim(m);
  const HermitianForm ghat = HermitianForm::identity(n);
  if (std::holds_alternative<HyperbolicSurface>(m)) {
    return {ghat, constant_hsc_tensor(ghat, 1.0), 1.0, true};
  }
  if (std::holds_alternative<ProjectiveLine>(m)) {
    // HSC(omega_FS) = +2 under the area-2pi normalization; the trace
    // monitors do not apply.
    return {ghat, constant_hsc_tensor(ghat, -2.0), 0.0, false};
  }
  return {ghat, KahlerCurvature::zero(n), 0.0, true};  // flat models
}

LatticePtr model_lattice(const ModelManifold& m) {
  if (std::holds_alternative<HyperbolicSurface>(m)) {
    return lattice_hyperbolic_curve(std::get<HyperbolicSurface>(m).genus);
  }
  if (std::holds_alternative<ProjectiveLine>(m)) return lattice_p1();
  return lattice_torus();
}

CohomClass class_of(const ModelManifold& m, WhichClass which, double f0) {
  static const LatticePtr torus = lattice_torus();
  static const LatticePtr p1 = lattice_p1();
  const double two_pi = 2.0 * std::numbers::pi;
  LatticePtr lattice;
  double ghat_degree = 0.0;  // degree of [omega_hat]
  double k_degree = 0.0;     // degree of 2 pi c1(K_X) = 2 pi (2g - 2)
  if (const auto* h = std::get_if<HyperbolicSurface>(&m)) {
    lattice = lattice_hyperbolic_curve(h->genus);
    ghat_degree = two_pi * (2.0 * h->genus - 2.0);
    k_degree = ghat_degree;
  } else if (std::holds_alternative<ProjectiveLine>(m)) {
    lattice = p1;
    ghat_degree = two_pi;
    k_degree = -2.0 * two_pi;
  } else if (const auto* g = std::get_if<TorusGrid>(&m)) {
    lattice = torus;
    ghat_degree = g->g_flat;  // mean-coefficient degree convention
    k_degree = 0.0;
  } else {
    lattice = torus;
    ghat_degree = 1.0;  // unit total volume
    k_degree = 0.0;
  }
  if (which == WhichClass::Canonical) return make_class(lattice, k_degree);
  return make_class(lattice, f0 * ghat_degree);
}

NodeStats node_stats(const FlowState& s) {
  const int n = complex_dim(s.model);
  NodeStats st;
  if (!is_grid(s.model)) {
    const double f = s.data[0];
    st.max_trace = double(n) / f;
    st.min_ratio = f;
    st.max_ratio = f;
    st.max_volume_ratio = std::pow(f, n);
    return st;
  }
  const auto& grid = std::get<TorusGrid>(s.model);
  const Eigen::ArrayXd h = metric_coefficients(s);
  const double hmin = h.minCoeff();
  const double hmax = h.maxCoeff();
  st.max_trace = grid.g_flat / hmin;
  st.min_ratio = hmin / grid.g_flat;
  st.max_ratio = hmax / grid.g_flat;
  st.max_volume_ratio = st.max_ratio;  // n = 1
  return st;
}

Eigen::ArrayXd log_trace_field(const FlowState& s) {
  const int n = complex_dim(s.model);
  if (!is_grid(s.model)) {
    Eigen::ArrayXd out(1);
    out[0] = std::log(double(n) / s.data[0]);
    return out;
  }
  const auto& grid = std::get<TorusGrid>(s.model);
  Eigen::ArrayXd h = metric_coefficients(s);
  const double inv_g = 1.0 / grid.g_flat;
  const Eigen::Index nn = h.size();
  double* p = h.data();
#pragma omp simd
  for (Eigen::Index i = 0; i < nn; ++i) p[i] = -fast_log(p[i] * inv_g);
  return h;
}

Eigen::ArrayXd metric_laplacian(const FlowState& s, const Eigen::ArrayXd& u) {
  if (!is_grid(s.model)) return Eigen::ArrayXd::Zero(1);
  const auto& grid = std::get<TorusGrid>(s.model);
  if (u.size() != s.data.size()) {
    throw DimensionMismatch("metric_laplacian: field has wrong size");
  }
  Eigen::ArrayXd lap(u.size());
  grid_zzbar(grid.resolution, u.data(), lap.data());
  return lap / metric_coefficients(s);
}

}  // namespace krf
