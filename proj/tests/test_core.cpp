#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>

#include "lochmf/core.hpp"
#include "lochmf/error.hpp"
#include "lochmf/parallel.hpp"
#include "lochmf/poly.hpp"
#include "lochmf/residues.hpp"

using namespace lochmf;

namespace {

// Legendre symbol by scanning squares; the 2-adic case by Delta mod 8.
int kronecker_oracle_prime(i64 delta, i64 p) {
  if (p == 2) {
    if (delta % 2 == 0) return 0;
    const i64 r = ((delta % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const i64 r = ((delta % p) + p) % p;
  if (r == 0) return 0;
  for (i64 x = 1; x < p; ++x)
    if ((x * x) % p == r) return 1;
  return -1;
}

int moebius_oracle(i64 n) {
  int sgn = 1;
  for (i64 d = 2; d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    sgn = -sgn;
  }
  return sgn;
}

double sigma_oracle(double s, i64 n) {
  double acc = 0.0;
  for (i64 d = 1; d <= n; ++d)
    if (n % d == 0) acc += std::pow(static_cast<double>(d), s);
  return acc;
}

bool squarefree(i64 n) {
  for (i64 d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

bool fundamental_oracle(i64 d) {
  if (d % 4 == 1) return squarefree(d);
  if (d % 4 == 0) {
    const i64 m = d / 4;
    return (m % 4 == 2 || m % 4 == 3) && squarefree(m);
  }
  return false;
}

}  // namespace

TEST_CASE("kronecker examples and primes") {
  CHECK(kronecker(5, 1) == 1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(5, 5) == 0);
  for (i64 delta : {5, 8, 12, 13, 17, 21, 24, 28, 33, 40})
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
      CHECK(kronecker(delta, p) == kronecker_oracle_prime(delta, p));
}

TEST_CASE("kronecker is completely multiplicative") {
  for (i64 delta : {5, 8, 12, 13, 24})
    for (i64 m = 1; m <= 100; ++m)
      for (i64 n = 1; n <= 100; n += 7) CHECK(kronecker(delta, m * n) == kronecker(delta, m) * kronecker(delta, n));
}

TEST_CASE("moebius and sigma") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
  for (i64 n = 1; n <= 300; ++n) CHECK(moebius(n) == moebius_oracle(n));
  CHECK(sigma(0, 6) == 4.0);
  CHECK(sigma(1, 6) == 12.0);
  CHECK(sigma(-3, 2) == doctest::Approx(1.125).epsilon(1e-15));
  for (i64 n = 1; n <= 200; ++n) CHECK(sigma(-3, n) == doctest::Approx(sigma_oracle(-3, n)).epsilon(1e-14));
}

TEST_CASE("fundamental_factor") {
  auto d = fundamental_factor(5);
  CHECK(d.delta == 5);
  CHECK(d.f == 1);
  d = fundamental_factor(20);
  CHECK(d.delta == 5);
  CHECK(d.f == 2);
  d = fundamental_factor(45);
  CHECK(d.delta == 5);
  CHECK(d.f == 3);
  CHECK_THROWS_AS(fundamental_factor(4), DomainError);
  CHECK_THROWS_AS(fundamental_factor(-5), DomainError);
  CHECK_THROWS_AS(fundamental_factor(6), DomainError);
  CHECK_THROWS_AS(fundamental_factor(7), DomainError);
  // brute-force oracle: the unique fundamental delta with D = delta f^2
  for (i64 D = 5; D <= 400; ++D) {
    if ((D % 4 != 0 && D % 4 != 1) || is_square(D)) continue;
    i64 want_delta = 0, want_f = 0;
    for (i64 f = 1; f * f <= D; ++f)
      if (D % (f * f) == 0 && fundamental_oracle(D / (f * f))) {
        want_delta = D / (f * f);
        want_f = f;
      }
    const auto got = fundamental_factor(D);
    CHECK(got.delta == want_delta);
    CHECK(got.f == want_f);
    CHECK(is_fundamental(got.delta));
  }
}

TEST_CASE("pell_fundamental against brute force") {
  auto s = pell_fundamental(fundamental_factor(5));
  CHECK(s.t == 3);
  CHECK(s.u == 1);
  s = pell_fundamental(fundamental_factor(8));
  CHECK(s.t == 6);
  CHECK(s.u == 2);
  s = pell_fundamental(fundamental_factor(12));
  CHECK(s.t == 4);
  CHECK(s.u == 1);
  for (i64 D = 5; D <= 200; ++D) {
    if ((D % 4 != 0 && D % 4 != 1) || is_square(D)) continue;
    const auto got = pell_fundamental(fundamental_factor(D));
    CHECK(static_cast<__int128>(got.t) * got.t - static_cast<__int128>(D) * got.u * got.u == 4);
    if (got.u > 100000) continue;
    i64 u = 1;
    for (; u <= got.u; ++u)
      if (is_square(D * u * u + 4)) break;
    CHECK(u == got.u);
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(10, 5) == 252.0);
  CHECK(binomial_int(14, 7) == 3432);
  for (int n = 0; n <= 20; ++n) {
    i64 row = 0;
    for (int k = 0; k <= n; ++k) row += binomial_int(n, k);
    CHECK(row == (i64{1} << n));
  }
}

TEST_CASE("cocycle examples") {
  const cplx i(0, 1);
  auto r = cocycle(IMat2{}, cplx(0.3, 0.7), 6);
  CHECK(std::abs(r.image - cplx(0.3, 0.7)) == 0.0);
  CHECK(std::abs(r.factor - 1.0) == 0.0);
  r = cocycle(kMatS, i, -2);
  CHECK(std::abs(r.image - i) < 1e-15);
  CHECK(std::abs(r.factor + 1.0) < 1e-15);
  r = cocycle(kMatT, i, 4);
  CHECK(std::abs(r.image - cplx(1, 1)) < 1e-15);
  CHECK(std::abs(r.factor - 1.0) < 1e-15);
}

TEST_CASE("cocycle composes") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 3);
  const IMat2 gens[] = {kMatS, kMatT, IMat2{1, -1, 0, 1}, IMat2{1, 0, 1, 1}};
  std::uniform_real_distribution<double> ux(-1, 1), uy(0.2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    IMat2 g1, g2;
    for (int j = 0; j < 4; ++j) g1 = g1 * gens[pick(rng)];
    for (int j = 0; j < 4; ++j) g2 = g2 * gens[pick(rng)];
    REQUIRE(g1.det() == 1);
    const cplx tau(ux(rng), uy(rng));
    for (int w : {-10, -2, 4, 12}) {
      const auto a = cocycle(g1, tau, w);
      const auto b = cocycle(g2, a.image, w);
      const auto ab = cocycle(g2 * g1, tau, w);
      CHECK(std::abs(b.image - ab.image) <= 1e-12 * std::abs(ab.image));
      CHECK(std::abs(b.factor * a.factor - ab.factor) <= 1e-12 * std::abs(ab.factor));
      CHECK(ab.image.imag() > 0.0);
    }
  }
}

TEST_CASE("poly_mod_reduce") {
  auto [q, c] = poly_mod_reduce(CPoly::monomial(10) - CPoly::constant(1.0), 6);
  CHECK(q.is_zero());
  CHECK(c == cplx(1.0));
  std::tie(q, c) = poly_mod_reduce(CPoly{}, 6);
  CHECK(q.is_zero());
  CHECK(c == cplx(0.0));
  std::tie(q, c) = poly_mod_reduce(CPoly::monomial(10, 3.0) + CPoly::constant(2.0), 6);
  CHECK(c == cplx(3.0));
  CHECK(q.degree() == 0);
  CHECK(q.coeff(0) == cplx(5.0));
  // round trip
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 2; k <= 8; ++k) {
    std::vector<cplx> cs(2 * k - 1);
    for (auto& v : cs) v = cplx(u(rng), u(rng));
    const CPoly p(cs);
    const auto [q2, c2] = poly_mod_reduce(p, k);
    CHECK(q2.coeff(2 * k - 2) == cplx(0.0));
    const CPoly back = q2 + (CPoly::monomial(2 * k - 2) - CPoly::constant(1.0)) * c2;
    for (int i = 0; i <= 2 * k - 2; ++i) CHECK(std::abs(back.coeff(i) - p.coeff(i)) < 1e-14);
  }
  CHECK_THROWS(poly_mod_reduce(CPoly::monomial(12), 6));
  const auto [iq, ic] = poly_mod_reduce(IPoly{4, 0, -4}, 2);
  CHECK(ic == -4);
  CHECK(std::all_of(iq.begin(), iq.end(), [](auto v) { return v == 0; }));
}

TEST_CASE("polynomial arithmetic") {
  const CPoly p = CPoly::quadratic(-1, 1, 1);
  CPoly acc = CPoly::constant(1.0);
  for (int e = 0; e < 5; ++e) acc = acc * p;
  const CPoly pw = p.pow(5);
  for (int i = 0; i <= 10; ++i) CHECK(std::abs(pw.coeff(i) - acc.coeff(i)) == 0.0);
  const cplx x(0.3, -0.2);
  CHECK(std::abs(pw(x) - std::pow(p(x), 5)) < 1e-14);
  CHECK_THROWS(ipoly_pow(IPoly{0, 1 << 20}, 4));
  CHECK(ipoly_pow(IPoly{1, 1}, 4) == IPoly{1, 4, 6, 4, 1});
}

TEST_CASE("EvalParams and Point validation") {
  EvalParams p;
  CHECK_NOTHROW(p.validate());
  p.a_max = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.n_max = -1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.tol = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_THROWS_AS(Point(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(Point(0.0, -1.0), DomainError);
}

TEST_CASE("residue table against brute force") {
  for (i64 D : {5, 8, 12, 13, 20, 21, 45, 60, 80, 117, 180}) {
    const ResidueTable t(D, 400);
    for (i64 a = 1; a <= 400; ++a) {
      std::vector<i64> want;
      for (i64 b = 0; b < 2 * a; ++b)
        if (((b * b - D) % (4 * a) + 4 * a) % (4 * a) == 0) want.push_back(b);
      const auto got = t.roots(a);
      REQUIRE(static_cast<std::size_t>(got.size()) == want.size());
      CHECK(std::equal(got.begin(), got.end(), want.begin()));
      CHECK(t.count(a) == count_roots_brute(D, a));
    }
  }
}

TEST_CASE("parallel_for visits each index once and sums deterministically") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  std::vector<double> v(777);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i));
  const double a = pairwise_sum(v), b = pairwise_sum(v);
  CHECK(a == b);
  CHECK(a == doctest::Approx(std::accumulate(v.begin(), v.end(), 0.0)).epsilon(1e-14));
  CHECK_THROWS(parallel_for(10, 2, [](std::size_t i) {
    if (i == 5) throw DomainError("x");
  }));
  CHECK(worker_count(3) == 3);
}
