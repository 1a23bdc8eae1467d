#include "doctest.h"

#include <cmath>
#include <type_traits>

#include "cotlift/phase.hpp"
#include "helpers.hpp"

using namespace cotlift;
using testing::random_in_ball;
using testing::to_eigen;

TEST_CASE("make_point: zero covector and the origin") {
  const auto flat = SpaceForm::flat(2);
  const std::vector<double> q{0.4, -0.3}, p0{0.0, 0.0};
  const CotangentPoint a = make_point(flat, q, p0);
  CHECK(a.t == 0.0);
  CHECK(a.g0 == std::vector<double>{0.0, 0.0});

  const auto ball = SpaceForm::conformal_ball(3, 1.0);
  const std::vector<double> origin{0, 0, 0}, e1{1, 0, 0};
  const CotangentPoint b = make_point(ball, origin, e1);
  CHECK(b.t == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.g0[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.g0[1] == 0.0);
  CHECK(b.g0[2] == 0.0);
}

TEST_CASE("make_point: energy density against an independent evaluation") {
  const auto ball = SpaceForm::conformal_ball(2, 1.0);
  const std::vector<double> q{0.3, 0.1}, p{1.0, 2.0};
  const CotangentPoint pt = make_point(ball, q, p);
  // g = δ/(1 + |q|²/4)², so g⁻¹ = (1 + |q|²/4)² δ.
  const double w = 1.0 + 0.25 * (0.09 + 0.01);
  CHECK(pt.t == doctest::Approx(0.5 * w * w * 5.0).epsilon(1e-14));
  const Eigen::VectorXd pe = Eigen::Vector2d(1.0, 2.0);
  const double t_eigen = 0.5 * pe.dot(to_eigen(metric_at(ball, q)).inverse() * pe);
  CHECK(std::abs(pt.t - t_eigen) < 1e-13);
}

TEST_CASE("CotangentPoint invariants at random points") {
  std::mt19937_64 rng(11);
  for (const auto& m : {SpaceForm::conformal_ball(3, 1.0), SpaceForm::conformal_ball(3, -1.0),
                        SpaceForm::perturbed_conformal(3, 1.0, 0.2)}) {
    for (int k = 0; k < 20; ++k) {
      const auto q = random_in_ball(rng, 3, 0.8);
      const auto p = random_in_ball(rng, 3, 2.0);
      const CotangentPoint pt = make_point(m, q, p);
      CHECK(pt.t > 0.0);
      const Eigen::VectorXd g0 = to_eigen(metric_at(m, q)).inverse() * Eigen::Map<const Eigen::VectorXd>(p.data(), 3);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(pt.g0[i] - g0(i)) < 1e-13);
      const Tensor3<double> gam = christoffel_at(m, q);
      for (int i = 0; i < 3; ++i)
        for (int h = 0; h < 3; ++h) {
          double s = 0;
          for (int c = 0; c < 3; ++c) s += p[c] * gam(c, i, h);
          CHECK(std::abs(pt.gamma0(i, h) - s) < 1e-14);
        }
    }
  }
}

TEST_CASE("adapted_basis: identity where Γ vanishes, inverse in closed form") {
  const std::vector<double> q{0.3, 0.1}, p{1.0, 2.0}, origin{0.0, 0.0};
  const auto flat = SpaceForm::flat(2);
  const auto ball = SpaceForm::conformal_ball(2, 1.0);
  CHECK(max_abs(adapted_basis(make_point(flat, q, p)).b - Mat<double>::identity(4)) == 0.0);
  CHECK(max_abs(adapted_basis(make_point(ball, origin, p)).b - Mat<double>::identity(4)) == 0.0);

  const FrameBasis fb = adapted_basis(make_point(ball, q, p));
  CHECK(max_abs(fb.b * fb.binv - Mat<double>::identity(4)) < 1e-13);
  CHECK(testing::max_abs(to_eigen(fb.b).inverse() - to_eigen(fb.binv)) < 1e-13);

  // δ_j column: ∂/∂q^j + Γ⁰_jh ∂/∂p_h.
  const CotangentPoint pt = make_point(ball, q, p);
  for (int j = 0; j < 2; ++j)
    for (int h = 0; h < 2; ++h) {
      CHECK(fb.b(h, j) == (h == j ? 1.0 : 0.0));
      CHECK(fb.b(2 + h, j) == pt.gamma0(j, h));
      CHECK(fb.b(h, 2 + j) == 0.0);
    }
}

TEST_CASE("frame change round trip") {
  static_assert(!std::is_convertible_v<AdaptedVector, CoordinateVector>);
  static_assert(!std::is_convertible_v<CoordinateVector, AdaptedVector>);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto ball = SpaceForm::conformal_ball(3, -1.0);
  for (int k = 0; k < 10; ++k) {
    const FrameBasis fb = adapted_basis(make_point(ball, random_in_ball(rng, 3, 0.8), random_in_ball(rng, 3, 2.0)));
    AdaptedVector v{std::vector<double>(6)};
    for (auto& x : v.c) x = u(rng);
    const AdaptedVector back = fb.to_adapted(fb.to_coordinate(v));
    for (int i = 0; i < 6; ++i) CHECK(std::abs(back.c[i] - v.c[i]) < 1e-12);
  }
}

TEST_CASE("derivative of t in p is g0") {
  std::mt19937_64 rng(17);
  const auto m = SpaceForm::conformal_ball(3, 1.0);
  for (int k = 0; k < 10; ++k) {
    const auto q = random_in_ball(rng, 3, 0.8);
    const auto p = random_in_ball(rng, 3, 2.0);
    const CotangentPoint pt = make_point(m, q, p);
    for (std::size_t i = 0; i < 3; ++i) {
      Vec<Dual<double>> qd(q.begin(), q.end());
      const Vec<Dual<double>> pd = seed_direction(p, i);
      const auto s = make_state(m, qd, pd);
      CHECK(std::abs(s.t.eps - pt.g0[i]) < 1e-10);
    }
  }
}

TEST_CASE("lifts") {
  std::mt19937_64 rng(23);
  const auto ball = SpaceForm::conformal_ball(2, 1.0);
  const std::vector<double> q{0.3, 0.1};
  const CotangentPoint pt = make_point(ball, q, std::vector<double>{1.0, 2.0});
  for (int k = 0; k < 10; ++k) {
    const auto x = random_in_ball(rng, 2, 5.0);
    const auto back = sharp(pt, flat(pt, x));
    for (int i = 0; i < 2; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-12);
  }

  const auto euclid = SpaceForm::flat(2);
  const CotangentPoint fp = make_point(euclid, q, std::vector<double>{1.0, 2.0});
  CHECK(spray(fp).c == std::vector<double>{1.0, 2.0, 0.0, 0.0});
  CHECK(liouville(fp).c == std::vector<double>{0.0, 0.0, 1.0, 2.0});

  const std::vector<double> x{0.7, -1.1}, alpha{0.2, 0.9};
  CHECK(horizontal_lift(pt, x).c == std::vector<double>{0.7, -1.1, 0.0, 0.0});
  CHECK(vertical_lift(pt, alpha).c == std::vector<double>{0.0, 0.0, 0.2, 0.9});

  // Spray in coordinates is B·(g0, 0): the q part is g0 and the p part is Γ⁰ g0.
  const CoordinateVector sc = adapted_basis(pt).to_coordinate(spray(pt));
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(sc.c[i] - pt.g0[i]) < 1e-14);
    double s = 0;
    for (int j = 0; j < 2; ++j) s += pt.gamma0(j, i) * pt.g0[j];
    CHECK(std::abs(sc.c[2 + i] - s) < 1e-14);
  }
}

TEST_CASE("make_point outside the chart") {
  const auto hyp = SpaceForm::conformal_ball(2, -1.0, 1.0);
  CHECK_THROWS_AS(make_point(hyp, std::vector<double>{1.5, 0.0}, std::vector<double>{1.0, 0.0}), ChartDomainError);
}
