#pragma once

#include <optional>
#include <vector>

#include "krf/models.hpp"

// Time integration of the normalized Kahler-Ricci flow on the model
// manifolds, with monitors for the a priori estimates: the trace bounds in
// their nef (tr <= e^t max tr_0) and ample (tr <= C) forms, the parabolic
// Schwarz inequality, the volume/sandwich constants, and the
// Kahler-Einstein residual.
namespace krf {

struct MonitorConfig {
  bool trace_nef = true;
  bool trace_ample = true;
  bool schwarz = true;
  bool volume = true;
  bool ke = true;
  // Trace-bound margins are accepted down to -trace_rel_tol * trace (nef)
  // and -ample_margin_tol (ample).
  double trace_rel_tol = 1e-6;
  double ample_margin_tol = 1e-9;
  // Schwarz residual tolerance: a dt^2 + b h^2 (h = grid spacing; the h term
  // drops out for homogeneous models).
  double schwarz_tol_a = 1.0;
  double schwarz_tol_b = 1.0;
  double volume_ceiling = 1e8;
  // Hard errors on violation (test mode) vs recorded warnings (exploration).
  bool fatal = false;
  // Window for the KE residual decay fit.
  double ke_fit_t0 = 2.0;
  double ke_fit_t1 = 8.0;
};

struct FlowParams {
  double dt = 1e-3;
  double t_end = 10.0;
  // Keep every k-th state (first and last always kept). Reports follow the
  // same stride; monitor aggregates always cover every accepted step.
  int store_every = 1;
  // Grid models only: cap dt at cfl_safety * 2.785 / |lambda_max| of the
  // diffusion operator. Explicit RK4 is unstable beyond that.
  bool adaptive_cfl = true;
  double cfl_safety = 0.85;
  // Optional step halving when a step changes the data by more than
  // halving_trigger (relative).
  bool halving = false;
  double halving_trigger = 0.1;
  int max_halvings = 30;
  MonitorConfig monitors;
};

struct EstimateReport {
  double t = 0.0;
  double trace = 0.0;        // max over nodes of tr_{omega_t}(omega_hat)
  double trace_bound = 0.0;  // active bound: ample C if kappa > 0, else e^t tr0
  double nef_margin_rel = 0.0;    // (e^t tr0 - trace) / trace
  double ample_margin = 0.0;      // C - trace (NaN when kappa = 0)
  double schwarz_residual = 0.0;  // max node LHS - RHS (NaN until computable)
  double volume_ratio_max = 0.0;  // max node omega_t^n / omega_hat^n
  double ke_residual = 0.0;       // NaN for models without ample K_X
  double sandwich_low = 0.0;      // smallest C with (1/C) omega_hat <= omega_s, s <= t
  double sandwich_high = 0.0;     // smallest C' with omega_s <= C' omega_hat, s <= t
  bool all_pass = true;
};

enum class TerminationKind { ReachedTEnd, SingularAt };

struct Termination {
  TerminationKind kind = TerminationKind::ReachedTEnd;
  double t = 0.0;  // singular time when kind == SingularAt, else final time
};

struct RunSummary {
  Termination termination;
  long steps = 0;
  double min_nef_margin_rel = 0.0;
  double min_ample_margin = 0.0;
  double max_schwarz_residual = 0.0;
  double max_volume_ratio = 0.0;
  double sandwich_C = 0.0;
  double sandwich_C_prime = 0.0;
  double max_trace = 0.0;
  double ample_C = 0.0;            // the explicit constant when kappa > 0
  double final_ke_residual = 0.0;  // NaN when not applicable
  double ke_decay_slope = 0.0;     // NaN when the fit window was not covered
  bool any_violation = false;
};

struct Trajectory {
  std::vector<FlowState> states;       // strided by store_every
  std::vector<EstimateReport> reports;  // aligned one-to-one with states
  Termination termination;
  RunSummary summary;
};

// One classical RK4 step; positivity of the result (and of every stage the
// velocity is evaluated at, for grid models) is validated.
FlowState step(const FlowState& s, double dt);

// Integrates to t_end or to the detected singular time. Every accepted step
// is monitored; the singular time is sharpened by bisection between the last
// good and first bad step.
Trajectory run(const FlowState& s0, const FlowParams& p);

// |Ric(omega_t) + omega_t| relative to omega_t; for the hyperbolic scale
// reduction this is |f - 1|. Requires a model with ample canonical bundle.
double ke_residual(const FlowState& s);

// Standalone per-state monitors over the stored states of a trajectory
// (run with store_every = 1 for exact per-step coverage).
//
// Nef trace bound (kappa = 0 hypothesis): margins e^t tr0 - tr(t), and the
// equivalent lower sandwich (1/C) omega_hat <= omega_t with C = e^{T0} tr0.
std::vector<double> monitor_trace_nef(const Trajectory& traj,
                                      const ModelReference& ref, double T0,
                                      bool strict = false,
                                      double rel_tol = 1e-6);
// Ample trace bound (kappa > 0): margins C - tr(t) with
// C = max(2n / (kappa (n+1)), max tr_0).
std::vector<double> monitor_trace_ample(const Trajectory& traj,
                                        const ModelReference& ref,
                                        double kappa, bool strict = false,
                                        double tol = 1e-9);
// Parabolic Schwarz residual max node (d/dt - Lap) log tr - 1 - B / tr,
// time derivative by five-point finite differences along the trajectory.
std::vector<double> monitor_schwarz(const Trajectory& traj,
                                    const ModelReference& ref,
                                    bool strict = false,
                                    double tol_a = 1.0, double tol_b = 1.0);
// Smallest sandwich constants (C, C') accumulated along the trajectory.
std::vector<std::pair<double, double>> monitor_volume_and_sandwich(
    const Trajectory& traj, const ModelReference& ref, bool strict = false,
    double ceiling = 1e8);

// Least-squares decay exponent of log ke_residual over t in [t0, t1].
double fit_ke_decay(const Trajectory& traj, double t0, double t1);

// The ample-theorem constant C = max(2n / (kappa (n+1)), tr0_max).
double ample_constant(double kappa, int n, double tr0_max);

}  // namespace krf
