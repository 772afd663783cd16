#include <doctest.h>

#include <cmath>

#include "lochmf/hecke.hpp"
#include "lochmf/modeval.hpp"

using namespace lochmf;

namespace {

EvalParams fast() {
  EvalParams p;
  p.a_max = 1500;
  return p;
}

Evaluator constant(cplx c, int weight) {
  return {[c](const Point&, const EvalParams&, double* err) {
            if (err) *err = 0.0;
            return c;
          },
          weight, "const"};
}

// T-invariant test function: e^{2 pi i tau} + 3 e^{4 pi i tau}
Evaluator waves(int weight) {
  return {[](const Point& t, const EvalParams&, double* err) {
            if (err) *err = 0.0;
            const cplx q = std::exp(cplx(0, 2 * kPi) * t.tau());
            return q + 3.0 * q * q;
          },
          weight, "waves"};
}

}  // namespace

TEST_CASE("Hecke operator arithmetic") {
  CHECK(std::abs(hecke_Tp(constant(1.0, -2), 2, Point(0, 1), EvalParams{}) - 1.125) < 1e-15);
  // linearity
  const Point tau(0.17, 0.83);
  const cplx a = hecke_Tp(waves(-2), 3, tau, EvalParams{});
  const cplx b = hecke_Tp(constant(2.0, -2), 3, tau, EvalParams{});
  Evaluator sum{[](const Point& t, const EvalParams& p, double* err) {
                  return waves(-2)(t, p, err) + 2.0;
                },
                -2, "sum"};
  CHECK(std::abs(hecke_Tp(sum, 3, tau, EvalParams{}) - (a + b)) < 1e-13);
  // commutes with translation
  const cplx s = hecke_Tp(waves(-2), 3, Point(tau.x + 1, tau.y), EvalParams{});
  CHECK(std::abs(s - a) < 1e-13);
  // for a single q-mode of weight w, T_p picks out the p-th coefficient:
  // sum_r e^{2 pi i n (tau + r)/p} / p vanishes unless p | n
  const cplx t2 = hecke_Tp(waves(4), 2, tau, EvalParams{});
  const cplx q = std::exp(cplx(0, 2 * kPi) * tau.tau());
  const cplx want = 8.0 * (q * q + 3.0 * q * q * q * q) + 3.0 * q;
  CHECK(std::abs(t2 - want) < 1e-13);
  CHECK_THROWS_AS(hecke_Tp(waves(4), 4, tau, EvalParams{}), DomainError);
}

TEST_CASE("sample points and screening") {
  const auto pts = hecke_sample_points(5, 2, Point(0, 4));
  CHECK(pts.size() == 5);
  bool nudged = true;
  const Point s = hecke_screen(5, 2, Point(0, 3), 1e-4, 1e-3, &nudged);
  CHECK_FALSE(nudged);
  CHECK(s.y == 3.0);
  // [1,4,-16] of discriminant 80 passes through 4i
  const Point n = hecke_screen(20, 2, Point(0, 4), 1e-4, 1e-3, &nudged);
  CHECK(nudged);
  CHECK(n.y > 4.0);
  CHECK(n.y < 4.01);
}

TEST_CASE("Hecke relation, worked cases") {
  const auto r1 = verify_hecke(2, fundamental_factor(5), 2, Point(0, 3), fast());
  CHECK(r1.pass());
  CHECK(kronecker(5, 2) == -1);
  const auto r2 = verify_hecke(2, fundamental_factor(20), 2, Point(0, 4), fast());
  CHECK(r2.nudged);
  CHECK(r2.pass());
  CHECK(kronecker(13, 3) == 1);
  const auto r3 = verify_hecke(2, fundamental_factor(13), 3, Point(0, 4), fast());
  CHECK(r3.pass());
  CHECK_THROWS_AS(verify_hecke(2, fundamental_factor(5), 4, Point(0, 4), fast()), DomainError);
}

TEST_CASE("Hecke relation over the parameter grid") {
  for (int k : {2, 6})
    for (i64 D : {5, 8, 13})
      for (i64 p : {2, 3}) {
        const auto r = verify_hecke(k, fundamental_factor(D), p, Point(0, 4), fast());
        INFO("k=" << k << " D=" << D << " p=" << p << " residual=" << r.residual() << " budget=" << r.budget);
        CHECK(r.pass());
      }
}

TEST_CASE("primitive Hecke relation") {
  for (i64 D : {5, 8, 20})
    for (int k : {2, 6}) {
      const auto r = verify_hecke_primitive(k, fundamental_factor(D), 2, Point(0, 4), fast());
      INFO("k=" << k << " D=" << D << " residual=" << r.residual() << " budget=" << r.budget);
      CHECK(r.pass());
    }
}

TEST_CASE("cusp form Hecke relation") {
  const auto r = verify_hecke_cusp(6, fundamental_factor(5), 2, Point(0, 1.1), fast());
  INFO("residual=" << r.residual() << " budget=" << r.budget);
  CHECK(r.pass());
  CHECK(std::abs(r.lhs) > 1e3 * r.budget);
}
