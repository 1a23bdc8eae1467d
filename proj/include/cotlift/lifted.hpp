#pragma once

// Component matrices of the lifted tensors P, G and Ω on T*M.
//
// Adapted-frame layout, rows/columns (δ_1..δ_n, ∂^1..∂^n):
//
//        P = | 0    P2 |      G = | G1  0  |      Ω = G·P
//            | P1   0  |          | 0   G2 |
//
// P δ_i = P1_ij ∂^j fills column i of the lower-left block and
// P ∂^i = P2^ij δ_j fills column n+i of the upper-right block, with
//   P1_ij = a1 g_ij + b1 p_i p_j,  P2^ij = a2 g^ij + b2 g0^i g0^j,
//   G1_ij = c1 g_ij + d1 p_i p_j,  G2^ij = c2 g^ij + d2 g0^i g0^j.
// Both P blocks are symmetric, so the transposition ambiguity of the mixed
// indices does not arise. The P² = I and eigenvalue tests pin this down.

#include <cstddef>
#include <string>

#include "cotlift/coefficients.hpp"
#include "cotlift/phase.hpp"

namespace cotlift {

enum class StructureKind { NaturalDiagonal, CruceanuP, CruceanuQ };

std::string to_string(StructureKind k);

class LiftedStructure {
 public:
  /// Validated construction: NaturalDiagonal requires the almost product relations.
  LiftedStructure(StructureSpec spec, SpaceForm m, StructureKind kind = StructureKind::NaturalDiagonal);

  /// No validation; used to build deliberately broken structures for necessity tests.
  static LiftedStructure unchecked(StructureSpec spec, SpaceForm m,
                                   StructureKind kind = StructureKind::NaturalDiagonal);

  const StructureSpec& spec() const { return spec_; }
  const SpaceForm& base() const { return m_; }
  StructureKind kind() const { return kind_; }
  int dim() const { return m_.dim(); }

  template <class S>
  PhaseState<S> state(const Vec<S>& q, const Vec<S>& p) const {
    PhaseState<S> s = make_state(m_, q, p);
    require_range(primal(s.t));
    return s;
  }

  template <class S>
  Mat<S> p_adapted(const PhaseState<S>& s) const;

  template <class S>
  Mat<S> g_adapted(const PhaseState<S>& s) const;

  /// λ δ_i^j + μ p_i g0^j, the mixed block Ω(δ_i, ∂^j).
  template <class S>
  Mat<S> omega_mixed(const PhaseState<S>& s) const;

  /// Ω in the adapted frame assembled from the mixed block alone.
  template <class S>
  Mat<S> omega_from_mixed(const PhaseState<S>& s) const;

  /// B · P_adapted · B⁻¹ as a function of raw (q, p).
  template <class S>
  Mat<S> p_coordinate(const Vec<S>& q, const Vec<S>& p) const {
    const PhaseState<S> s = state(q, p);
    return adapted_to_coordinate(s.gamma0) * p_adapted(s) * coordinate_to_adapted(s.gamma0);
  }

  /// Ω = Ω_i^j dq^i ∧ Dp_j with Dp_j = dp_j − Γ⁰_jh dq^h, in coordinate components.
  template <class S>
  Mat<S> omega_coordinate(const Vec<S>& q, const Vec<S>& p) const {
    require_para_hermitian();
    const PhaseState<S> s = state(q, p);
    const Mat<S> coframe = coordinate_to_adapted(s.gamma0);
    return transpose(coframe) * omega_from_mixed(s) * coframe;
  }

  template <class S>
  Mat<S> g_coordinate(const Vec<S>& q, const Vec<S>& p) const {
    const PhaseState<S> s = state(q, p);
    const Mat<S> coframe = coordinate_to_adapted(s.gamma0);
    return transpose(coframe) * g_adapted(s) * coframe;
  }

  void require_range(double t) const;
  void require_para_hermitian() const;

 private:
  struct Unchecked {};
  LiftedStructure(StructureSpec spec, SpaceForm m, StructureKind kind, Unchecked);

  StructureSpec spec_;
  SpaceForm m_;
  StructureKind kind_;
};

Mat<double> p_adapted(const LiftedStructure& ls, const CotangentPoint& pt);
Mat<double> p_coordinate(const LiftedStructure& ls, const CotangentPoint& pt);
Mat<double> g_adapted(const LiftedStructure& ls, const CotangentPoint& pt);
/// Ω(X, Y) = G(X, PY), i.e. G_adapted · P_adapted. Requires ε = −1.
Mat<double> omega_adapted(const LiftedStructure& ls, const CotangentPoint& pt);
Mat<double> omega_coordinate(const LiftedStructure& ls, const CotangentPoint& pt);

// ---------------------------------------------------------------------------

template <class S>
Mat<S> LiftedStructure::p_adapted(const PhaseState<S>& s) const {
  const std::size_t n = s.dim();
  Mat<S> out(2 * n, 2 * n);
  switch (kind_) {
    case StructureKind::CruceanuP:
      for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = S(-1.0);
        out(n + i, n + i) = S(1.0);
      }
      return out;
    case StructureKind::CruceanuQ:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          out(n + j, i) = s.g(i, j);
          out(j, n + i) = s.ginv(i, j);
        }
      return out;
    case StructureKind::NaturalDiagonal: break;
  }
  const S a1 = spec_.a1(s.t), b1 = spec_.b1(s.t), a2 = spec_.a2(s.t), b2 = spec_.b2(s.t);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(n + j, i) = a1 * s.g(i, j) + b1 * s.p[i] * s.p[j];
      out(j, n + i) = a2 * s.ginv(i, j) + b2 * s.g0[i] * s.g0[j];
    }
  return out;
}

template <class S>
Mat<S> LiftedStructure::g_adapted(const PhaseState<S>& s) const {
  const std::size_t n = s.dim();
  const S c1 = spec_.c1(s.t), d1 = spec_.d1(s.t), c2 = spec_.c2(s.t), d2 = spec_.d2(s.t);
  Mat<S> out(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = c1 * s.g(i, j) + d1 * s.p[i] * s.p[j];
      out(n + i, n + j) = c2 * s.ginv(i, j) + d2 * s.g0[i] * s.g0[j];
    }
  return out;
}

template <class S>
Mat<S> LiftedStructure::omega_mixed(const PhaseState<S>& s) const {
  const std::size_t n = s.dim();
  const S lam = spec_.lambda(s.t), mu = spec_.mu(s.t);
  Mat<S> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = (i == j ? lam : S(0.0)) + mu * s.p[i] * s.g0[j];
  return out;
}

template <class S>
Mat<S> LiftedStructure::omega_from_mixed(const PhaseState<S>& s) const {
  const std::size_t n = s.dim();
  const Mat<S> w = omega_mixed(s);
  Mat<S> out(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, n + j) = w(i, j);
      out(n + j, i) = -w(i, j);
    }
  return out;
}

}  // namespace cotlift
