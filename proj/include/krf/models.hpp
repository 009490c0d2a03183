#pragma once

#include <string>
#include <variant>

#include <Eigen/Dense>

#include "krf/cone.hpp"
#include "krf/errors.hpp"
#include "krf/tensor.hpp"

// Symmetry-reduced model manifolds on which the normalized flow becomes an
// ODE (homogeneous models, state = scale factor f with omega_t = f omega_hat)
// or a 2D periodic grid PDE (TorusGrid, state = potential phi with metric
// coefficient h = e^{-t} g_flat + phi_{z zbar}).
//
// Normalizations (frozen here, used consistently by the cone module):
//   * FlatTorus(n):        omega_hat flat, HSC = 0, total volume 1.
//   * HyperbolicSurface(g): omega_hat of constant HSC -1, area 2 pi (2g - 2).
//   * ProjectiveLine:      Fubini-Study with area 2 pi, so Ric = 2 omega_FS.
//   * TorusGrid(N):        fundamental domain [0,1)^2, lattice Z + iZ,
//                          phi_{z zbar} = (phi_xx + phi_yy)/4 by centered
//                          second differences; degree of a form = mean
//                          coefficient over nodes.
namespace krf {

struct FlatTorus {
  int dim = 1;
  bool operator==(const FlatTorus&) const = default;
};

struct HyperbolicSurface {
  int genus = 2;
  bool operator==(const HyperbolicSurface&) const = default;
};

struct ProjectiveLine {
  bool operator==(const ProjectiveLine&) const = default;
};

struct TorusGrid {
  int resolution = 64;
  double g_flat = 1.0;
  bool operator==(const TorusGrid&) const = default;
};

using ModelManifold =
    std::variant<FlatTorus, HyperbolicSurface, ProjectiveLine, TorusGrid>;

bool is_grid(const ModelManifold& m);
int complex_dim(const ModelManifold& m);
std::string model_name(const ModelManifold& m);

struct FlowState {
  double t = 0.0;
  ModelManifold model;
  // Homogeneous models: size-1 array holding the scale factor f.
  // TorusGrid: the potential phi, row-major N*N.
  Eigen::ArrayXd data;
  // Smallest metric coefficient at t = 0; the degeneration threshold scales
  // from it (see positivity_floor).
  double initial_min_coeff = 0.0;

  double scale() const;  // homogeneous models only
};

// State at t = 0 for homogeneous models (f0 > 0).
FlowState initial_state(const ModelManifold& m, double f0);
// State at t = 0 for TorusGrid from an initial potential; positivity of
// g_flat + phi_{z zbar} is checked node-wise.
FlowState initial_state(const ModelManifold& m, const Eigen::ArrayXd& phi0);

// amplitude * cos(2 pi (kx x + ky y)) sampled on the N x N grid.
Eigen::ArrayXd cosine_potential(int resolution, double amplitude, int kx = 1,
                                int ky = 0);

// Metric coefficient per node: f for homogeneous models (coefficient against
// omega_hat), h = e^{-t} g_flat + phi_{z zbar} for the grid.
Eigen::ArrayXd metric_coefficients(const FlowState& s);
double min_metric_coefficient(const FlowState& s);

// Degeneration threshold at time t. The flow's built-in homothety already
// shrinks c1 = 0 metrics like e^{-t}, so the floor tracks that factor;
// genuine finite-time singularities still cross it.
double positivity_floor(const FlowState& s, double t);

// Right-hand side of the reduced flow (same shape as data):
//   HyperbolicSurface: f' = 1 - f        (Ric(omega_hat) = -omega_hat)
//   FlatTorus:        f' = -f            (Ric = 0)
//   ProjectiveLine:   f' = -2 - f        (Ric(omega_FS) = 2 omega_FS)
//   TorusGrid:        phi' = log(h / g_flat) - phi
// Throws PositivityLost if the grid metric is non-positive at any node.
Eigen::ArrayXd reduced_velocity(const FlowState& s);

// Allocation-free velocity kernel used by the integrator; h_scratch receives
// the metric coefficients of the evaluated configuration.
void reduced_velocity_into(const ModelManifold& m, double t,
                           const Eigen::ArrayXd& data, Eigen::ArrayXd& out,
                           Eigen::ArrayXd& h_scratch);

// Closed-form scale of the homogeneous flows; NoClosedForm for TorusGrid.
//   HyperbolicSurface: f(t) = 1 + (f0 - 1) e^{-t}
//   FlatTorus:         f(t) = f0 e^{-t}
//   ProjectiveLine:    f(t) = (f0 + 2) e^{-t} - 2
double exact_solution(const ModelManifold& m, double f0, double t);

// Reference data for the monitors: omega_hat at a point, its curvature
// tensor, and the HSC bound kappa it satisfies.
struct ModelReference {
  HermitianForm ghat;
  KahlerCurvature rhat;
  double kappa = 0.0;          // largest kappa with HSC <= -kappa (0 if none)
  bool hsc_semi_negative = false;  // trace monitors apply only when true
};
ModelReference model_reference(const ModelManifold& m);

// Cohomology of the model on its rank-1 lattice.
enum class WhichClass { Initial, Canonical };
CohomClass class_of(const ModelManifold& m, WhichClass which, double f0 = 1.0);
LatticePtr model_lattice(const ModelManifold& m);

// Per-node monitor statistics against the model reference.
struct NodeStats {
  double max_trace = 0.0;       // max over nodes of tr_{omega_t}(omega_hat)
  double min_ratio = 0.0;       // min over nodes of h / h_hat
  double max_ratio = 0.0;       // max over nodes of h / h_hat
  double max_volume_ratio = 0.0;  // max over nodes of omega_t^n / omega_hat^n
};
NodeStats node_stats(const FlowState& s);

// log tr_{omega_t}(omega_hat) per node (single entry for homogeneous models).
Eigen::ArrayXd log_trace_field(const FlowState& s);

// Discrete omega_t-Laplacian of a node field u: (u_xx + u_yy) / (4 h),
// with the same stencil as the flow. Zero for homogeneous models.
Eigen::ArrayXd metric_laplacian(const FlowState& s, const Eigen::ArrayXd& u);

}  // namespace krf
