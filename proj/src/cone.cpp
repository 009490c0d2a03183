#include "krf/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace krf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LatticePtr make_lattice(std::string name, int dim, Eigen::MatrixXd form,
                        std::vector<Eigen::VectorXd> curves,
                        std::vector<std::string> curve_names) {
  auto l = std::make_shared<SurfaceLattice>();
  l->name = std::move(name);
  l->dim = dim;
  l->form = std::move(form);
  l->curves = std::move(curves);
  l->curve_names = std::move(curve_names);
  if (l->form.rows() != l->form.cols()) {
    throw DimensionMismatch("lattice: intersection form must be square");
  }
  if ((l->form - l->form.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, l->form.cwiseAbs().maxCoeff())) {
    throw SymmetryViolation("lattice: intersection form must be symmetric");
  }
  for (const auto& c : l->curves) {
    if (c.size() != l->form.rows()) {
      throw DimensionMismatch("lattice: curve generator has wrong rank");
    }
  }
  return l;
}

Eigen::VectorXd scalar_coords(double v) {
  Eigen::VectorXd c(1);
  c[0] = v;
  return c;
}

double pair_with(const CohomClass& a, const Eigen::VectorXd& b) {
  return a.coords.dot(a.lattice->form * b);
}

double tolerance_scale(const CohomClass& cls) {
  return std::max(1.0, cls.coords.cwiseAbs().maxCoeff());
}

}  // namespace

LatticePtr lattice_p1() {
  return make_lattice("P1", 1, Eigen::MatrixXd::Identity(1, 1), {}, {});
}

LatticePtr lattice_torus() {
  return make_lattice("Torus", 1, Eigen::MatrixXd::Identity(1, 1), {}, {});
}

LatticePtr lattice_hyperbolic_curve(int genus) {
  if (genus < 2) throw ConfigError("hyperbolic curve needs genus >= 2");
  return make_lattice("HyperbolicCurve(g=" + std::to_string(genus) + ")", 1,
                      Eigen::MatrixXd::Identity(1, 1), {}, {});
}

LatticePtr lattice_p2() {
  return make_lattice("P2", 2, Eigen::MatrixXd::Identity(1, 1),
                      {scalar_coords(1.0)}, {"line"});
}

LatticePtr lattice_p1xp1() {
  Eigen::MatrixXd q(2, 2);
  q << 0, 1, 1, 0;
  Eigen::VectorXd c1(2), c2(2);
  c1 << 1, 0;
  c2 << 0, 1;
  return make_lattice("P1xP1", 2, q, {c1, c2}, {"ruling_a", "ruling_b"});
}

LatticePtr lattice_custom(std::string name, int dim, Eigen::MatrixXd form,
                          std::vector<Eigen::VectorXd> curves,
                          std::vector<std::string> curve_names) {
  return make_lattice(std::move(name), dim, std::move(form), std::move(curves),
                      std::move(curve_names));
}

CohomClass make_class(LatticePtr lattice, Eigen::VectorXd coords) {
  if (!lattice) throw LatticeMismatch("make_class: null lattice");
  if (coords.size() != lattice->rank()) {
    throw DimensionMismatch("make_class: coords length must equal rank");
  }
  return CohomClass{std::move(coords), std::move(lattice)};
}

CohomClass make_class(LatticePtr lattice, double degree) {
  if (!lattice || lattice->rank() != 1) {
    throw LatticeMismatch("make_class(degree): rank-1 lattice required");
  }
  return CohomClass{scalar_coords(degree), std::move(lattice)};
}

CohomClass class_at_time(const CohomClass& omega0, const CohomClass& kclass,
                         double t) {
  if (omega0.lattice != kclass.lattice) {
    throw LatticeMismatch("class_at_time: classes on different lattices");
  }
  const double u = std::isinf(t) ? 0.0 : std::exp(-t);
  return CohomClass{u * omega0.coords + (1.0 - u) * kclass.coords,
                    omega0.lattice};
}

const char* to_string(ConeStatus s) {
  switch (s) {
    case ConeStatus::Kahler: return "Kahler";
    case ConeStatus::NefBoundary: return "NefBoundary";
    case ConeStatus::Outside: return "Outside";
  }
  return "?";
}

namespace {

// All (name, value) pairs whose positivity defines the Kahler cone.
std::vector<std::pair<std::string, double>> cone_witnesses(
    const CohomClass& cls) {
  const auto& lat = *cls.lattice;
  std::vector<std::pair<std::string, double>> w;
  if (lat.dim == 1) {
    w.emplace_back("X", cls.coords[0]);  // degree against the total space
    return w;
  }
  w.emplace_back("X.X", pair_with(cls, cls.coords));
  for (std::size_t i = 0; i < lat.curves.size(); ++i) {
    w.emplace_back(lat.curve_names[i], pair_with(cls, lat.curves[i]));
  }
  return w;
}

}  // namespace

double intersection_number(const std::vector<CohomClass>& classes,
                           int subvariety) {
  if (classes.empty()) throw DimensionMismatch("intersection_number: no classes");
  const auto& lat = *classes.front().lattice;
  for (const auto& c : classes) {
    if (c.lattice != classes.front().lattice) {
      throw LatticeMismatch("intersection_number: mixed lattices");
    }
  }
  if (subvariety == kTotalSpace) {
    if (int(classes.size()) != lat.dim) {
      throw DimensionMismatch(
          "intersection_number: need dim(X) classes for the total space");
    }
    if (lat.dim == 1) return classes[0].coords[0];
    return pair_with(classes[0], classes[1].coords);
  }
  if (subvariety < 0 || subvariety >= int(lat.curves.size())) {
    throw DimensionMismatch("intersection_number: no such curve");
  }
  if (classes.size() != 1) {
    throw DimensionMismatch(
        "intersection_number: need exactly one class for a curve");
  }
  return pair_with(classes[0], lat.curves[std::size_t(subvariety)]);
}

ConeVerdict is_kahler(const CohomClass& cls, double zero_tol) {
  const double tol = zero_tol * tolerance_scale(cls);
  ConeVerdict v;
  v.witnesses = cone_witnesses(cls);
  bool any_zero = false;
  bool any_negative = false;
  for (const auto& [name, value] : v.witnesses) {
    if (value < -tol) {
      any_negative = true;
    } else if (value <= tol) {
      any_zero = true;
    }
  }
  v.status = any_negative ? ConeStatus::Outside
             : any_zero  ? ConeStatus::NefBoundary
                         : ConeStatus::Kahler;
  return v;
}

bool is_nef(const CohomClass& cls, double zero_tol) {
  return is_kahler(cls, zero_tol).status != ConeStatus::Outside;
}

double maximal_time(const CohomClass& omega0, const CohomClass& kclass) {
  if (omega0.lattice != kclass.lattice) {
    throw LatticeMismatch("maximal_time: classes on different lattices");
  }
  if (is_kahler(omega0).status != ConeStatus::Kahler) {
    throw InitialClassNotKahler("maximal_time: [omega0] is not Kahler");
  }
  const auto& lat = *omega0.lattice;

  // Each witness is positive at u = e^{-t} = 1; find the largest u in (0,1)
  // where some witness vanishes. No crossing means T = +infinity.
  double u_cross = 0.0;  // largest zero-crossing found so far
  bool crossed = false;

  auto note_linear = [&](double a /* value on omega0 */,
                         double b /* value on kclass */) {
    // value(u) = b + u (a - b); a > 0.
    if (b >= 0.0) return;  // stays positive on (0,1]
    const double u = b / (b - a);
    if (u > 0.0 && u < 1.0) {
      u_cross = std::max(u_cross, u);
      crossed = true;
    }
  };

  if (lat.dim == 1) {
    note_linear(omega0.coords[0], kclass.coords[0]);
  } else {
    for (const auto& c : lat.curves) {
      note_linear(pair_with(omega0, c), pair_with(kclass, c));
    }
    // Self-intersection: q(u) = A u^2 + B u + C with q(1) > 0.
    const double q00 = pair_with(omega0, omega0.coords);
    const double q0k = pair_with(omega0, kclass.coords);
    const double qkk = pair_with(kclass, kclass.coords);
    const double A = q00 - 2.0 * q0k + qkk;
    const double B = 2.0 * (q0k - qkk);
    const double C = qkk;
    auto note_root = [&](double u) {
      if (u > 0.0 && u < 1.0) {
        u_cross = std::max(u_cross, u);
        crossed = true;
      }
    };
    if (std::abs(A) < 1e-300) {
      if (std::abs(B) > 0.0) note_root(-C / B);
    } else {
      const double disc = B * B - 4.0 * A * C;
      if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        note_root((-B + s) / (2.0 * A));
        note_root((-B - s) / (2.0 * A));
      }
    }
  }
  if (!crossed) return kInf;
  return std::log(1.0 / u_cross);
}

ConeVerdict certify_limit(const CohomClass& omega0, const CohomClass& kclass,
                          double T0,
                          const std::optional<LimitBound>& lower_bound,
                          double rel_tol) {
  const CohomClass alpha = class_at_time(omega0, kclass, T0);
  const auto& lat = *alpha.lattice;
  if (lower_bound) {
    if (lower_bound->omega_hat_class.lattice != alpha.lattice) {
      throw LatticeMismatch("certify_limit: omega_hat on a different lattice");
    }
    const double C = lower_bound->C;
    if (!(C > 0.0)) throw BoundViolated("certify_limit: need C > 0");
    const auto& ghat = lower_bound->omega_hat_class;

    auto require = [&](const std::string& name, double lhs, double rhs) {
      const double slack = rel_tol * std::max(1.0, std::abs(rhs));
      if (lhs < rhs - slack) {
        throw BoundViolated("certify_limit: on " + name + ", limit value " +
                            std::to_string(lhs) +
                            " undercuts flow-derived bound " +
                            std::to_string(rhs));
      }
    };

    if (lat.dim == 1) {
      require("X", alpha.coords[0], ghat.coords[0] / C);
    } else {
      for (std::size_t i = 0; i < lat.curves.size(); ++i) {
        require(lat.curve_names[i], pair_with(alpha, lat.curves[i]),
                pair_with(ghat, lat.curves[i]) / C);
      }
      require("X.X", pair_with(alpha, alpha.coords),
              pair_with(ghat, ghat.coords) / (C * C));
    }
  }
  return is_kahler(alpha);
}

}  // namespace krf
