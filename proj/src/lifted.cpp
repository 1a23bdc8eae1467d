#include "cotlift/lifted.hpp"

#include <cmath>

namespace cotlift {

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::NaturalDiagonal: return "natural_diagonal";
    case StructureKind::CruceanuP: return "cruceanu_p";
    case StructureKind::CruceanuQ: return "cruceanu_q";
  }
  return "unknown";
}

LiftedStructure::LiftedStructure(StructureSpec spec, SpaceForm m, StructureKind kind, Unchecked)
    : spec_(std::move(spec)), m_(std::move(m)), kind_(kind) {}

LiftedStructure::LiftedStructure(StructureSpec spec, SpaceForm m, StructureKind kind)
    : LiftedStructure(std::move(spec), std::move(m), kind, Unchecked{}) {
  if (kind_ == StructureKind::NaturalDiagonal) {
    const double d = almost_product_defect(spec_);
    if (!(d <= 1e-10))
      throw ContractError("natural diagonal structure does not satisfy the almost product relations (defect " +
                          std::to_string(d) + ")");
  }
}

LiftedStructure LiftedStructure::unchecked(StructureSpec spec, SpaceForm m, StructureKind kind) {
  return LiftedStructure(std::move(spec), std::move(m), kind, Unchecked{});
}

void LiftedStructure::require_range(double t) const {
  // Slack admits finite-difference stencils around points sampled at t_max.
  if (t > spec_.t_max + 1e-6 * std::max(1.0, spec_.t_max))
    throw RangeError("energy density " + std::to_string(t) + " exceeds t_max = " + std::to_string(spec_.t_max));
}

void LiftedStructure::require_para_hermitian() const {
  if (spec_.epsilon != -1) throw ContractError("the 2-form G(X, PY) is only antisymmetric for epsilon = -1");
}

Mat<double> p_adapted(const LiftedStructure& ls, const CotangentPoint& pt) {
  ls.require_range(pt.t);
  return ls.p_adapted(pt);
}

Mat<double> p_coordinate(const LiftedStructure& ls, const CotangentPoint& pt) {
  return ls.p_coordinate(pt.q, pt.p);
}

Mat<double> g_adapted(const LiftedStructure& ls, const CotangentPoint& pt) {
  ls.require_range(pt.t);
  return ls.g_adapted(pt);
}

Mat<double> omega_adapted(const LiftedStructure& ls, const CotangentPoint& pt) {
  ls.require_para_hermitian();
  ls.require_range(pt.t);
  return ls.g_adapted(pt) * ls.p_adapted(pt);
}

Mat<double> omega_coordinate(const LiftedStructure& ls, const CotangentPoint& pt) {
  return ls.omega_coordinate(pt.q, pt.p);
}

}  // namespace cotlift
