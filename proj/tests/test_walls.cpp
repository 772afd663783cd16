#include <doctest.h>

#include <cmath>
#include <random>

#include "lochmf/modeval.hpp"
#include "lochmf/special.hpp"
#include "lochmf/walls.hpp"

using namespace lochmf;

namespace {

EvalParams fast() {
  EvalParams p;
  p.a_max = 1500;
  return p;
}

// Off-wall sample points for D, at least `gap` away from every wall.
std::vector<Point> clear_points(const Discriminant& D, int n, double gap, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-0.6, 0.6), uy(0.15, 1.3);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < n) {
    const Point p(ux(rng), uy(rng));
    if (walls_near(D, p, gap).empty()) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("c_inf closed form") {
  const auto D5 = fundamental_factor(5);
  const double z2 = kPi * kPi / 6, z4 = std::pow(kPi, 4) / 90;
  const double L = dirichlet_L({5, 2.0, 2000000}).value;
  const double want = -2.0 / 24.0 * (z2 / z4) * L;
  CHECK(c_inf(D5, 2, fast()).value == doctest::Approx(want).epsilon(1e-9));
  CHECK(c_inf(D5, 2, fast()).value == doctest::Approx(-1.0 / (5.0 * std::sqrt(5.0))).epsilon(1e-12));
  for (i64 D : {5, 8, 12, 13, 20, 21})
    for (int k : {2, 4, 6}) CHECK(c_inf(fundamental_factor(D), k, fast()).value < 0.0);
  const auto e = eval_F(2, D5, Point(0, 2), fast());
  CHECK(std::abs(e.value - c_inf(D5, 2, fast()).value) <= e.error() + 1e-12);
}

TEST_CASE("class constants") {
  EvalParams p = fast();
  p.a_max = 20000;
  const auto D5 = fundamental_factor(5);
  const auto A5 = narrow_class_reps(D5)[0];
  const auto cc = c_inf_class(A5, 2, p);
  const auto cf = c_inf(D5, 2, p);
  CHECK(std::fabs(cc.value - cf.value) <= cc.error + cf.error);
  CHECK(c_inf_class(A5, 3, p).value == 0.0);
  const auto D12 = fundamental_factor(12);
  double sum = 0.0, err = 0.0;
  for (const auto& A : narrow_class_reps(D12)) {
    const auto c = c_inf_class(A, 2, p);
    sum += c.value;
    err += c.error;
  }
  CHECK(std::fabs(sum - c_inf(D12, 2, p).value) <= err);
  // the tail bound tightens as a_max grows
  EvalParams q = p;
  q.a_max = 2000;
  CHECK(c_inf_class(A5, 4, q).error > c_inf_class(A5, 4, p).error);
  // odd k: numeric class sum, agrees with the harmonic form above the walls
  const auto c3 = c_inf(fundamental_factor(12), 3, p);
  CHECK_FALSE(c3.closed_form);
  const auto e3 = eval_F(3, fundamental_factor(12), Point(0.2, 2.5), p);
  CHECK(std::abs(e3.value - c3.value) <= e3.error() + c3.error);
}

TEST_CASE("local polynomial above the walls is the constant") {
  for (i64 D : {5, 8, 12, 13}) {
    const auto Dd = fundamental_factor(D);
    for (int k : {2, 4, 6}) {
      const CPoly p = local_poly(k, Dd, Point(0, 2), fast());
      CHECK(p.degree() <= 0);
      CHECK(p.coeff(0).real() == doctest::Approx(c_inf(Dd, k, fast()).value).epsilon(1e-15));
    }
  }
}

TEST_CASE("local polynomial near the origin, binomial oracle") {
  const auto D5 = fundamental_factor(5);
  const CPoly p = local_poly(6, D5, Point(0, 0.05), fast());
  // (-X^2 + X + 1)^5 + (-X^2 - X + 1)^5 expanded by hand through the binomial theorem
  std::vector<double> bracket(11, 0.0);
  for (int sgn : {1, -1})
    for (int i = 0; i <= 5; ++i)
      for (int j = 0; i + j <= 5; ++j) {
        // multinomial term (-X^2)^i (sgn X)^j 1^{5-i-j}
        const double m = binomial(5, i) * binomial(5 - i, j) * ((i % 2) ? -1.0 : 1.0) * ((j % 2 && sgn < 0) ? -1.0 : 1.0);
        bracket[2 * i + j] += m;
      }
  CHECK(bracket[10] == -2.0);
  CHECK(bracket[0] == 2.0);
  const double scale = std::ldexp(1.0, -9) * std::pow(5.0, -5.5);
  const double c0 = c_inf(D5, 6, fast()).value;
  for (int i = 0; i <= 10; ++i) {
    const double want = scale * bracket[i] + (i == 0 ? c0 : 0.0);
    CHECK(std::abs(p.coeff(i) - want) <= 1e-15 * (std::fabs(want) + scale));
    if (i % 2) CHECK(std::abs(p.coeff(i)) == 0.0);
  }
}

TEST_CASE("local polynomial numerators are integers") {
  for (i64 D : {5, 8, 13}) {
    const auto Dd = fundamental_factor(D);
    for (int k : {2, 4, 6})
      for (const Point& tau : clear_points(Dd, 8, 1e-3, 3)) {
        const CPoly p = local_poly(k, Dd, tau, fast());
        const double unit = 2.0 * std::ldexp(1.0, 2 - 2 * k) * std::pow(static_cast<double>(D), 0.5 - k);
        const double c0 = c_inf(Dd, k, fast()).value;
        for (int i = 0; i <= 2 * k - 2; ++i) {
          const double v = (p.coeff(i).real() - (i == 0 ? c0 : 0.0)) / unit;
          CHECK(std::fabs(v - std::round(v)) < 1e-6);
          CHECK(p.coeff(i).imag() == 0.0);
        }
      }
  }
}

TEST_CASE("local polynomial matches the harmonic form when no cusp form exists") {
  for (i64 D : {5, 8, 13}) {
    const auto Dd = fundamental_factor(D);
    for (int k : {2, 4})
      for (const Point& tau : clear_points(Dd, 10, 1e-3, 5)) {
        const auto e = eval_F(k, Dd, tau, fast());
        const cplx lp = local_poly(k, Dd, tau, fast())(tau.tau());
        CHECK(std::abs(e.value - lp) <= e.error() + 1e-12 * std::abs(lp));
      }
  }
}

TEST_CASE("local polynomial is constant on components") {
  const auto D5 = fundamental_factor(5);
  const Point a = clear_points(D5, 1, 0.02, 17).front();
  const Point b(a.x + 0.01, a.y - 0.01);
  REQUIRE(interior_forms(D5, a) == interior_forms(D5, b));
  REQUIRE_FALSE(interior_forms(D5, a).interior_forms.empty());
  const CPoly pa = local_poly(6, D5, a, fast()), pb = local_poly(6, D5, b, fast());
  for (int i = 0; i <= 10; ++i) CHECK(pa.coeff(i) == pb.coeff(i));
  const Point on(-0.5, std::sqrt(1.25));
  CHECK_THROWS_AS(local_poly(2, D5, on, fast()), WallCollision);
  CHECK_NOTHROW(wall_report(2, D5, a, fast()));
}

TEST_CASE("wall jump against two-sided limits") {
  const auto D5 = fundamental_factor(5);
  const QForm Q{1, 1, -1};
  const Point tau(-0.5, std::sqrt(1.25));
  const cplx jump = wall_jump(2, D5, Q, tau);
  // Neville extrapolation of F(tau - iw) - F(tau + iw) to w = 0
  std::vector<double> ws;
  std::vector<cplx> diffs;
  for (int j = 0; j < 4; ++j) {
    const double w = 1e-2 * std::ldexp(1.0, -j);
    ws.push_back(w);
    diffs.push_back(eval_F(2, D5, Point(tau.x, tau.y - w), fast()).value -
                    eval_F(2, D5, Point(tau.x, tau.y + w), fast()).value);
  }
  std::vector<cplx> t = diffs;
  for (std::size_t m = 1; m < t.size(); ++m)
    for (std::size_t i = t.size() - 1; i >= m; --i) t[i] = (ws[i - m] * t[i] - ws[i] * t[i - 1]) / (ws[i - m] - ws[i]);
  CHECK(std::abs(t.back() - jump) < 1e-3 * std::abs(jump));
  // the pair is crossed together
  CHECK(std::abs(wall_jump(2, D5, -Q, tau) - jump) < 1e-15 * std::abs(jump));
  // difference of the adjacent local polynomials
  const cplx below = local_poly(2, D5, Point(tau.x, tau.y - 1e-3), fast())(tau.tau());
  const cplx above = local_poly(2, D5, Point(tau.x, tau.y + 1e-3), fast())(tau.tau());
  CHECK(std::abs((below - above) - jump) < 1e-13);
  // odd k cancels
  CHECK(std::abs(wall_jump(3, D5, Q, tau)) == 0.0);
  CHECK_THROWS_AS(wall_jump(2, D5, Q, Point(0, 1)), DomainError);
  CHECK_THROWS_AS(wall_jump(2, D5, QForm{1, 0, -2}, tau), DomainError);
}

TEST_CASE("jump scales with Q(tau)^{k-1}") {
  const auto D5 = fundamental_factor(5);
  const QForm Q{1, 1, -1};
  const double r = std::sqrt(5.0) / 2;
  for (double th : {0.4, 1.1, 2.0}) {
    const Point tau(-0.5 + r * std::cos(th), r * std::sin(th));
    if (walls_near(D5, tau, 1e-6).size() != 1) continue;
    const cplx j2 = wall_jump(2, D5, Q, tau), j4 = wall_jump(4, D5, Q, tau);
    const cplx q = q_eval(Q, tau);
    const double k2 = -2.0 * std::pow(5.0, -1.5) / (binomial(2, 1) * kPi) * beta_complete(2);
    const double k4 = -2.0 * std::pow(5.0, -3.5) / (binomial(6, 3) * kPi) * beta_complete(4);
    CHECK(std::abs(j2 - k2 * q) < 1e-14);
    CHECK(std::abs(j4 - k4 * q * q * q) < 1e-14);
  }
}

TEST_CASE("I integral identity") {
  const auto D5 = fundamental_factor(5);
  const auto r = ival_check(1, D5, 2, 2.0, EvalParams{});
  CHECK(r.closed_form == doctest::Approx(-std::pow(5.0, 1.5) * kPi / 12).epsilon(1e-14));
  CHECK(std::fabs(r.quadrature - r.closed_form) < 1e-5 * std::fabs(r.closed_form));
  CHECK(std::fabs(r.quadrature - r.closed_form) <= r.error);
  for (int k : {2, 3, 6})
    for (i64 a : {1, 2, 5}) {
      double prev = 0.0;
      for (double y : {1.5, 2.0, 3.0}) {
        const auto v = ival_check(a, D5, k, y, EvalParams{});
        CHECK(std::fabs(v.quadrature - v.closed_form) <= v.error);
        if (prev != 0.0) CHECK(std::fabs(v.quadrature - prev) <= 2 * v.error);
        prev = v.quadrature;
      }
    }
  CHECK_THROWS_AS(ival_check(1, D5, 2, 1.0, EvalParams{}), DomainError);
}
