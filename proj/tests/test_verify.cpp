#include <doctest.h>

#include <cmath>

#include "lochmf/verify.hpp"

using namespace lochmf;

namespace {

EvalParams fast() {
  EvalParams p;
  p.a_max = 1500;
  return p;
}

}  // namespace

TEST_CASE("record semantics") {
  CheckRecord r;
  r.residual = 1.0;
  r.budget = 2.0;
  r.finalize();
  CHECK(r.pass);
  r.tolerance = 0.1;
  r.metric = 0.2;
  r.finalize();
  CHECK_FALSE(r.pass);
  r.residual = 3.0;
  r.metric = 0.0;
  r.finalize();
  CHECK_FALSE(r.pass);
  const auto j = to_json(r);
  CHECK(j.at("residual").get<double>() == 3.0);
  CHECK(j.at("pass").get<bool>() == false);
}

TEST_CASE("modularity checks") {
  const auto D5 = fundamental_factor(5);
  const Point tau(0.3, 1.0);
  for (const IMat2& g : {kMatS, kMatT, kMatS * kMatT}) {
    const auto r = check_modularity(2, D5, g, tau, fast());
    CHECK(r.pass);
  }
  CHECK(check_modularity(6, D5, kMatS, tau, fast()).pass);
  CHECK(check_modularity(6, D5, kMatT, tau, fast()).residual < 1e-12);
}

TEST_CASE("xi check") {
  const auto D5 = fundamental_factor(5);
  const auto r6 = check_xi(6, D5, Point(0, 1.5), fast());
  CHECK(r6.pass);
  CHECK(r6.metric < 1e-2);
  CHECK(r6.detail.at("trend_ok").get<bool>());
  const auto r2 = check_xi(2, D5, Point(0, 1.5), fast());
  CHECK(r2.pass);
  CHECK_THROWS_AS(check_xi(2, D5, Point(-0.5, std::sqrt(1.25)), fast()), WallCollision);
}

TEST_CASE("expansion check") {
  const auto D5 = fundamental_factor(5);
  const auto r2 = check_expansion(2, D5, Point(0, 2), fast());
  CHECK(r2.pass);
  const auto r6 = check_expansion(6, D5, Point(0, 1.6), fast());
  CHECK(r6.pass);
  CHECK(r6.metric < 1e-3);
  const auto r6b = check_expansion(6, D5, Point(0.2, 1.7), fast());
  CHECK(r6b.pass);
  CHECK_THROWS_AS(check_expansion(6, D5, Point(0, 1.0), fast()), DomainError);
}

TEST_CASE("Laplacian check") {
  const auto D5 = fundamental_factor(5);
  const auto r2 = check_laplacian(2, D5, Point(0.3, 0.8), fast());
  CHECK(r2.pass);
  const auto r6 = check_laplacian(6, D5, Point(0.3, 1.0), fast());
  CHECK(r6.pass);
  CHECK(r6.metric < 1e-3);
  // straddling a wall: reported, the residual grows
  const Point near(-0.5, std::sqrt(1.25) + 2e-4);
  const auto w = check_laplacian(6, D5, near, fast());
  CHECK(w.detail.at("straddles_wall").get<bool>());
  CHECK(w.metric > r6.metric);
}

TEST_CASE("growth and wall checks") {
  const auto D5 = fundamental_factor(5);
  CHECK(check_growth(2, D5, fast()).pass);
  const auto w = check_wall(2, D5, QForm{1, 1, -1}, Point(-0.5, std::sqrt(1.25)), fast());
  REQUIRE(w.size() == 2);
  for (const auto& r : w) CHECK(r.pass);
}

TEST_CASE("run_all selection and determinism") {
  VerifyConfig empty = default_config();
  empty.criteria.clear();
  CHECK(run_all(empty).empty());
  CHECK(default_config().criteria.size() == 11);
  CHECK(criterion_count() == 11);
  for (int c = 1; c <= 11; ++c) CHECK_FALSE(criterion_title(c).empty());
  VerifyConfig one = default_config();
  one.criteria = {11};
  one.samples = 200;
  const auto a = run_all(one);
  REQUIRE_FALSE(a.empty());
  for (const auto& r : a) CHECK(r.criterion == 11);
  const auto b = run_all(one);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].residual == b[i].residual);
    CHECK(a[i].pass == b[i].pass);
  }
  VerifyConfig two = default_config();
  two.criteria = {10, 10, 6};
  const auto c = run_all(two);
  REQUIRE_FALSE(c.empty());
  CHECK(c.front().criterion == 6);
  CHECK(c.back().criterion == 10);
  CHECK_THROWS_AS(run_criterion(12, default_config()), DomainError);
}
