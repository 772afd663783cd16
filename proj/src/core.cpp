#include "lochmf/core.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "lochmf/detail/reduction.hpp"

namespace lochmf {

double Discriminant::sqrtD() const { return std::sqrt(static_cast<double>(D)); }

Point::Point(double x_, double y_) : x(x_), y(y_) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw DomainError("Point: need finite x and y > 0");
}

void EvalParams::validate() const {
  if (a_max < 1 || n_max < 0) throw DomainError("EvalParams: need a_max >= 1 and n_max >= 0");
  if (!(tol > 0.0)) throw DomainError("EvalParams: tol must be positive");
  if (quad_points < 1) throw DomainError("EvalParams: quad_points must be >= 1");
  if (!(y_cut > 0.0)) throw DomainError("EvalParams: y_cut must be positive");
  if (threads < 0) throw DomainError("EvalParams: threads must be >= 0");
}

i64 isqrt(i64 n) {
  if (n < 0) throw DomainError("isqrt of negative");
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  const i64 r = isqrt(n);
  return r * r == n;
}

namespace {

int jacobi(i64 a, i64 n) {  // n odd positive
  a %= n;
  if (a < 0) a += n;
  int r = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const i64 m = n % 8;
      if (m == 3 || m == 5) r = -r;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) r = -r;
    a %= n;
  }
  return n == 1 ? r : 0;
}

bool squarefree(i64 n) {
  n = std::llabs(n);
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

}  // namespace

int kronecker(i64 delta, i64 n) {
  if (n == 0) return (delta == 1 || delta == -1) ? 1 : 0;
  int r = 1;
  if (n < 0) {
    n = -n;
    if (delta < 0) r = -r;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (delta % 2 == 0) return 0;
    const i64 m = ((delta % 8) + 8) % 8;
    if (m == 3 || m == 5) r = -r;
  }
  if (n == 1) return r;
  return r * jacobi(delta, n);
}

int moebius(i64 n) {
  if (n < 1) throw DomainError("moebius: n must be >= 1");
  int r = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  }
  if (n > 1) r = -r;
  return r;
}

double sigma(double s, i64 n) {
  if (n < 1) throw DomainError("sigma: n must be >= 1");
  double acc = 0.0;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    acc += std::pow(static_cast<double>(d), s);
    const i64 e = n / d;
    if (e != d) acc += std::pow(static_cast<double>(e), s);
  }
  return acc;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

i64 binomial_int(int n, int k) {
  if (k < 0 || k > n) return 0;
  i64 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool is_fundamental(i64 d) {
  if (d == 1) return true;
  const i64 m4 = ((d % 4) + 4) % 4;
  if (m4 == 1) return squarefree(d);
  if (m4 == 0) {
    const i64 m = d / 4;
    const i64 mm = ((m % 4) + 4) % 4;
    return (mm == 2 || mm == 3) && squarefree(m);
  }
  return false;
}

Discriminant fundamental_factor(i64 D) {
  if (D <= 0) throw DomainError("discriminant must be positive, got " + std::to_string(D));
  if (D % 4 != 0 && D % 4 != 1)
    throw DomainError("discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
  if (is_square(D)) throw DomainError("discriminant must not be a square, got " + std::to_string(D));
  for (i64 f = isqrt(D); f >= 1; --f) {
    if (D % (f * f) != 0) continue;
    const i64 d = D / (f * f);
    if (is_fundamental(d)) return {D, d, f};
  }
  throw DomainError("no fundamental factorisation for " + std::to_string(D));
}

namespace detail {

bool is_reduced(const Triple& q, std::int64_t s) {
  const i64 a = std::llabs(q[0]), b = q[1];
  return b > 0 && b <= s && 2 * a + b >= s + 1 && 2 * a - b <= s;
}

NeighbourStep rho(const Triple& q, std::int64_t D, std::int64_t s) {
  const i64 b = q[1], c = q[2];
  const i64 ac = std::llabs(c), m = 2 * ac;
  // lower end of the admissible window for b'
  const i64 lo = (ac * ac > D) ? -ac + 1 : s - m + 1;
  i64 r = ((-b - lo) % m + m) % m;
  const i64 bn = lo + r;
  const i64 num = bn * bn - D;
  if (num % (4 * c) != 0) throw DomainError("rho: non-integral neighbour");
  const i64 t = (bn + b) / (2 * c);
  return {{c, bn, num / (4 * c)}, t};
}

}  // namespace detail

PellSolution pell_fundamental(const Discriminant& disc) {
  const i64 D = disc.D;
  if (D <= 0 || is_square(D)) throw DomainError("pell_fundamental: need non-square D > 0");
  const i64 s = isqrt(D);
  const i64 b0 = D % 2;
  detail::Triple q{1, b0, (b0 * b0 - D) / 4};
  for (int guard = 0; !detail::is_reduced(q, s); ++guard) {
    if (guard > 10000) throw DomainError("pell_fundamental: reduction did not terminate");
    q = detail::rho(q, D, s).form;
  }
  const detail::Triple start = q;
  __int128 m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  const __int128 lim = static_cast<__int128>(1) << 62;
  do {
    const auto st = detail::rho(q, D, s);
    // M <- M * [[0,-1],[1,t]]
    const __int128 n00 = m01, n01 = -m00 + m01 * st.t;
    const __int128 n10 = m11, n11 = -m10 + m11 * st.t;
    m00 = n00, m01 = n01, m10 = n10, m11 = n11;
    if (m00 > lim || m00 < -lim || m01 > lim || m01 < -lim || m10 > lim || m10 < -lim ||
        m11 > lim || m11 < -lim)
      throw DomainError("pell_fundamental: solution exceeds 64-bit range");
    q = st.form;
  } while (q != start);
  __int128 t = m00 + m11;
  if (t < 0) t = -t;
  __int128 u = m10 / start[0];
  if (u < 0) u = -u;
  PellSolution sol{static_cast<i64>(t), static_cast<i64>(u)};
  if (static_cast<__int128>(sol.t) * sol.t - static_cast<__int128>(D) * sol.u * sol.u != 4)
    throw DomainError("pell_fundamental: internal consistency failure");
  return sol;
}

}  // namespace lochmf
