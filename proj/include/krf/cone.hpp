#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "krf/errors.hpp"

// Cohomology-level engine. Classes live in a fixed basis of H^{1,1} with an
// explicit intersection form; nef/ample certification is by finite
// Nakai-type checks against the declared generators of the dual cone, which
// is complete on the built-in polyhedral models.
namespace krf {

struct SurfaceLattice {
  std::string name;
  int dim = 1;                          // complex dimension of the space
  Eigen::MatrixXd form;                 // rank x rank symmetric pairing
  std::vector<Eigen::VectorXd> curves;  // effective generators of the dual cone
  std::vector<std::string> curve_names;

  int rank() const { return int(form.rows()); }
};

using LatticePtr = std::shared_ptr<const SurfaceLattice>;

// Built-in models. Curves are rank-1 with the degree pairing; surfaces carry
// their standard intersection forms and cone generators.
LatticePtr lattice_p1();
LatticePtr lattice_torus();
LatticePtr lattice_hyperbolic_curve(int genus);
LatticePtr lattice_p2();
LatticePtr lattice_p1xp1();
LatticePtr lattice_custom(std::string name, int dim, Eigen::MatrixXd form,
                          std::vector<Eigen::VectorXd> curves,
                          std::vector<std::string> curve_names);

struct CohomClass {
  Eigen::VectorXd coords;
  LatticePtr lattice;
};

CohomClass make_class(LatticePtr lattice, Eigen::VectorXd coords);
CohomClass make_class(LatticePtr lattice, double degree);  // rank-1 shortcut

// alpha_t = e^{-t} [omega0] + (1 - e^{-t}) 2 pi c1(K_X). t = +infinity gives
// the canonical class itself.
CohomClass class_at_time(const CohomClass& omega0, const CohomClass& kclass,
                         double t);

enum class ConeStatus { Kahler, NefBoundary, Outside };

const char* to_string(ConeStatus s);

struct ConeVerdict {
  ConeStatus status = ConeStatus::Outside;
  // (subvariety, intersection value) pairs backing the verdict.
  std::vector<std::pair<std::string, double>> witnesses;
};

// Subvariety selector for intersection numbers: a curve generator by index,
// or the total space.
inline constexpr int kTotalSpace = -1;

// integral over the subvariety of the product of the given classes; the list
// length must equal the subvariety dimension.
double intersection_number(const std::vector<CohomClass>& classes,
                           int subvariety);

// Nakai-type test of cls against its lattice's witnesses: cls^2 > 0 on
// surfaces and cls . C > 0 for every generator (degree > 0 on curves).
// Values within zero_tol (scaled by the class size) count as zero.
ConeVerdict is_kahler(const CohomClass& cls, double zero_tol = 1e-9);

// The >= 0 variant of the same checks.
bool is_nef(const CohomClass& cls, double zero_tol = 1e-9);

// T = sup { t > 0 : alpha_t is Kahler }, solved in closed form from the
// finitely many defining inequalities (linear or quadratic in e^{-t}).
// Returns +infinity exactly when the canonical class is nef.
double maximal_time(const CohomClass& omega0, const CohomClass& kclass);

struct LimitBound {
  double C = 1.0;              // flow-derived constant with (1/C) omega_hat <= omega_t
  CohomClass omega_hat_class;  // class of the reference form
};

// Executable form of the limiting argument: checks, for every subvariety V,
//   integral_V alpha_{T0}^{dim V} >= (1/C^{dim V}) integral_V omega_hat^{dim V},
// then classifies alpha_{T0}. BoundViolated signals an inconsistency between
// the flow-derived constant and the cohomological limit.
ConeVerdict certify_limit(const CohomClass& omega0, const CohomClass& kclass,
                          double T0,
                          const std::optional<LimitBound>& lower_bound,
                          double rel_tol = 1e-9);

}  // namespace krf
