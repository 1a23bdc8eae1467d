#include "cotlift/phase.hpp"

#include <stdexcept>

namespace cotlift {

CotangentPoint make_point(const SpaceForm& m, std::span<const double> q, std::span<const double> p) {
  if (q.size() != static_cast<std::size_t>(m.dim()))
    throw ChartDomainError("make_point: q has the wrong dimension");
  return make_state<double>(m, Vec<double>(q.begin(), q.end()), Vec<double>(p.begin(), p.end()));
}

FrameBasis adapted_basis(const CotangentPoint& pt) {
  return {adapted_to_coordinate(pt.gamma0), coordinate_to_adapted(pt.gamma0)};
}

AdaptedVector horizontal_lift(const CotangentPoint& pt, std::span<const double> x) {
  const std::size_t n = pt.dim();
  if (x.size() != n) throw std::invalid_argument("horizontal_lift: wrong vector length");
  AdaptedVector v{std::vector<double>(2 * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) v.c[i] = x[i];
  return v;
}

AdaptedVector vertical_lift(const CotangentPoint& pt, std::span<const double> alpha) {
  const std::size_t n = pt.dim();
  if (alpha.size() != n) throw std::invalid_argument("vertical_lift: wrong covector length");
  AdaptedVector v{std::vector<double>(2 * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) v.c[n + i] = alpha[i];
  return v;
}

std::vector<double> flat(const CotangentPoint& pt, std::span<const double> x) {
  return pt.g * Vec<double>(x.begin(), x.end());
}

std::vector<double> sharp(const CotangentPoint& pt, std::span<const double> alpha) {
  return pt.ginv * Vec<double>(alpha.begin(), alpha.end());
}

AdaptedVector liouville(const CotangentPoint& pt) { return vertical_lift(pt, pt.p); }

AdaptedVector spray(const CotangentPoint& pt) { return horizontal_lift(pt, sharp(pt, pt.p)); }

}  // namespace cotlift
