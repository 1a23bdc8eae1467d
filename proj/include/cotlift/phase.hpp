#pragma once

// Points of T*M in the induced chart (q, p), the adapted frame {δ_i, ∂^i}
// and the classical lifts.
//
// Axis order on T*M, in both frames: slots 0..n-1 are horizontal / q
// directions, slots n..2n-1 are vertical / p directions.

#include <cstddef>
#include <span>
#include <vector>

#include "cotlift/dense.hpp"
#include "cotlift/spaceform.hpp"

namespace cotlift {

/// Base point data plus the contractions used throughout: t = ½ g^{ik} p_i p_k,
/// g0^i = g^{ih} p_h and Γ⁰_ih = p_k Γ^k_ih.
template <class S>
struct PhaseState {
  Vec<S> q;
  Vec<S> p;
  Mat<S> g;
  Mat<S> ginv;
  Tensor3<S> gamma;
  S t{};
  Vec<S> g0;
  Mat<S> gamma0;

  std::size_t dim() const { return q.size(); }
};

using CotangentPoint = PhaseState<double>;

template <class S>
PhaseState<S> make_state(const SpaceForm& m, Vec<S> q, Vec<S> p) {
  if (p.size() != q.size()) throw std::invalid_argument("make_state: q and p have different lengths");
  const std::size_t n = q.size();
  PhaseState<S> s;
  s.g = m.metric(q);
  s.ginv = inverse(s.g);
  s.gamma = m.christoffel(q);
  s.g0 = s.ginv * p;
  s.t = S(0.0);
  for (std::size_t i = 0; i < n; ++i) s.t += 0.5 * p[i] * s.g0[i];
  s.gamma0 = Mat<S>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < n; ++h) {
      S acc(0.0);
      for (std::size_t k = 0; k < n; ++k) acc += p[k] * s.gamma(k, i, h);
      s.gamma0(i, h) = acc;
    }
  s.q = std::move(q);
  s.p = std::move(p);
  return s;
}

CotangentPoint make_point(const SpaceForm& m, std::span<const double> q, std::span<const double> p);

// Columns of B are δ_j = ∂/∂q^j + Γ⁰_jh ∂/∂p_h and ∂^j = ∂/∂p_j in coordinate components.
template <class S>
Mat<S> adapted_to_coordinate(const Mat<S>& gamma0) {
  const std::size_t n = gamma0.rows();
  Mat<S> b = Mat<S>::identity(2 * n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j) b(n + h, j) = gamma0(j, h);
  return b;
}

// Closed-form inverse of the block lower-triangular B; its rows are the
// coframe dq^i, Dp_j = dp_j − Γ⁰_jh dq^h.
template <class S>
Mat<S> coordinate_to_adapted(const Mat<S>& gamma0) {
  const std::size_t n = gamma0.rows();
  Mat<S> b = Mat<S>::identity(2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t h = 0; h < n; ++h) b(n + j, h) = -gamma0(j, h);
  return b;
}

enum class Frame { Adapted, Coordinate };

/// 2n components of a tangent vector to T*M, tagged with their frame.
template <Frame F>
struct BundleVector {
  std::vector<double> c;
};

using AdaptedVector = BundleVector<Frame::Adapted>;
using CoordinateVector = BundleVector<Frame::Coordinate>;

struct FrameBasis {
  Mat<double> b;
  Mat<double> binv;

  CoordinateVector to_coordinate(const AdaptedVector& v) const { return {b * v.c}; }
  AdaptedVector to_adapted(const CoordinateVector& v) const { return {binv * v.c}; }
};

FrameBasis adapted_basis(const CotangentPoint& pt);

/// X^H: adapted components (X, 0).
AdaptedVector horizontal_lift(const CotangentPoint& pt, std::span<const double> x);
/// α^V: adapted components (0, α).
AdaptedVector vertical_lift(const CotangentPoint& pt, std::span<const double> alpha);
/// X^♭ = g·X.
std::vector<double> flat(const CotangentPoint& pt, std::span<const double> x);
/// α^♯ = g⁻¹·α.
std::vector<double> sharp(const CotangentPoint& pt, std::span<const double> alpha);
/// p^V, the Liouville field.
AdaptedVector liouville(const CotangentPoint& pt);
/// (p^♯)^H, the geodesic spray.
AdaptedVector spray(const CotangentPoint& pt);

}  // namespace cotlift
