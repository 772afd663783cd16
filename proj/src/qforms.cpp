#include "lochmf/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>

#include "lochmf/detail/reduction.hpp"
#include "lochmf/residues.hpp"

namespace lochmf {

namespace {

detail::Triple tri(const QForm& q) { return {q.a, q.b, q.c}; }
QForm from_tri(const detail::Triple& t) { return {t[0], t[1], t[2]}; }

void require_indefinite(i64 D) {
  if (D <= 0 || is_square(D)) throw DomainError("form discriminant must be positive and non-square");
}

}  // namespace

std::string QForm::str() const {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

i64 disc(const QForm& Q) { return Q.b * Q.b - 4 * Q.a * Q.c; }

QForm q_apply(const QForm& Q, const IMat2& g) {
  // Q(aX + bY, cX + dY)
  const i64 A = Q.a * g.a * g.a + Q.b * g.a * g.c + Q.c * g.c * g.c;
  const i64 B = 2 * Q.a * g.a * g.b + Q.b * (g.a * g.d + g.b * g.c) + 2 * Q.c * g.c * g.d;
  const i64 C = Q.a * g.b * g.b + Q.b * g.b * g.d + Q.c * g.d * g.d;
  return {A, B, C};
}

cplx q_eval(const QForm& Q, cplx tau) {
  return (static_cast<double>(Q.a) * tau + static_cast<double>(Q.b)) * tau + static_cast<double>(Q.c);
}

double geodesic_value(const QForm& Q, const Point& p) {
  return static_cast<double>(Q.a) * (p.x * p.x + p.y * p.y) + static_cast<double>(Q.b) * p.x +
         static_cast<double>(Q.c);
}

CPoly q_poly(const QForm& Q) {
  return CPoly::quadratic(static_cast<double>(Q.a), static_cast<double>(Q.b), static_cast<double>(Q.c));
}

IPoly q_ipoly(const QForm& Q) { return {Q.c, Q.b, Q.a}; }

bool is_reduced(const QForm& Q) {
  const i64 D = disc(Q);
  if (D <= 0 || is_square(D)) return false;
  return detail::is_reduced(tri(Q), isqrt(D));
}

Reduction reduce(const QForm& Q) {
  const i64 D = disc(Q);
  require_indefinite(D);
  const i64 s = isqrt(D);
  detail::Triple q = tri(Q);
  IMat2 g{1, 0, 0, 1};
  for (int guard = 0; !detail::is_reduced(q, s); ++guard) {
    if (guard > 100000) throw DomainError("reduce: no convergence for " + Q.str());
    const auto st = detail::rho(q, D, s);
    g = g * IMat2{0, -1, 1, st.t};
    q = st.form;
  }
  return {from_tri(q), g};
}

bool NarrowClass::contains(const QForm& Q) const {
  if (disc(Q) != D) return false;
  const QForm r = reduce(Q).form;
  return std::find(cycle.begin(), cycle.end(), r) != cycle.end();
}

NarrowClass reduce_cycle(const QForm& Q) {
  const i64 D = disc(Q);
  require_indefinite(D);
  const i64 s = isqrt(D);
  const QForm start = reduce(Q).form;
  std::vector<QForm> cyc{start};
  detail::Triple q = tri(start);
  for (;;) {
    q = detail::rho(q, D, s).form;
    const QForm f = from_tri(q);
    if (f == start) break;
    cyc.push_back(f);
    if (cyc.size() > 1000000) throw DomainError("reduce_cycle: runaway cycle");
  }
  const auto it = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), it, cyc.end());
  return {cyc.front(), cyc, D};
}

bool equivalent(const QForm& Q1, const QForm& Q2) {
  if (disc(Q1) != disc(Q2)) throw DomainError("equivalent: discriminants differ");
  return reduce_cycle(Q1).contains(Q2);
}

std::vector<NarrowClass> narrow_class_reps(const Discriminant& Dd) {
  const i64 D = Dd.D;
  require_indefinite(D);
  const i64 s = isqrt(D);
  std::set<QForm> reduced;
  for (i64 b = 1; b <= s; ++b) {
    if ((b - D) % 2 != 0) continue;
    const i64 N = (D - b * b) / 4;
    for (i64 d = 1; d <= N; ++d) {
      if (N % d != 0) continue;
      for (int sg : {1, -1}) {
        const QForm q{sg * d, b, -sg * (N / d)};
        if (detail::is_reduced(tri(q), s)) reduced.insert(q);
      }
    }
  }
  std::vector<NarrowClass> out;
  while (!reduced.empty()) {
    NarrowClass nc = reduce_cycle(*reduced.begin());
    for (const auto& q : nc.cycle) reduced.erase(q);
    out.push_back(std::move(nc));
  }
  std::sort(out.begin(), out.end(),
            [](const NarrowClass& x, const NarrowClass& y) { return x.representative < y.representative; });
  return out;
}

void for_each_truncated_form(const Discriminant& D, const EvalParams& params,
                             const std::function<void(const QForm&)>& fn) {
  params.validate();
  const auto table = ResidueTable::get(D.D, params.a_max);
  for (i64 a = 1; a <= params.a_max; ++a) {
    for (i64 b0 : table->roots(a)) {
      for (i64 n = -params.n_max; n <= params.n_max; ++n) {
        const i64 b = b0 + 2 * a * n;
        const QForm q{a, b, (b * b - D.D) / (4 * a)};
        fn(q);
        fn(-q);
      }
    }
  }
}

std::vector<QForm> forms_truncated(const Discriminant& D, const EvalParams& params) {
  std::vector<QForm> out;
  for_each_truncated_form(D, params, [&](const QForm& q) { out.push_back(q); });
  return out;
}

std::uint64_t ComponentSignature::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](i64 v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (const auto& q : interior_forms) mix(q.a), mix(q.b), mix(q.c);
  return h;
}

ComponentSignature interior_forms(const Discriminant& Dd, const Point& tau) {
  const i64 D = Dd.D;
  const double sD = std::sqrt(static_cast<double>(D));
  ComponentSignature sig;
  for (i64 A = 1; static_cast<double>(A) < sD / (2.0 * tau.y); ++A) {
    const double r2 = static_cast<double>(D) / (4.0 * A * A) - tau.y * tau.y;
    if (r2 <= 0) continue;
    const double half = std::sqrt(r2);
    const i64 blo = static_cast<i64>(std::floor(2.0 * A * (tau.x - half))) - 1;
    const i64 bhi = static_cast<i64>(std::ceil(2.0 * A * (tau.x + half))) + 1;
    for (i64 b = blo; b <= bhi; ++b) {
      const i64 num = D - b * b;
      if (num % (4 * A) != 0) continue;
      const QForm q{-A, b, num / (4 * A)};
      if (geodesic_value(q, tau) > 0.0) sig.interior_forms.push_back(q);
    }
  }
  std::sort(sig.interior_forms.begin(), sig.interior_forms.end());
  return sig;
}

std::vector<QForm> forms_a_neg_c_pos(const Discriminant& Dd) {
  const i64 D = Dd.D;
  std::vector<QForm> out;
  const i64 s = isqrt(D);
  for (i64 b = -s; b <= s; ++b) {
    if (((b - D) % 2) != 0) continue;
    const i64 N = (D - b * b) / 4;
    if (N <= 0) continue;
    for (i64 A = 1; A <= N; ++A)
      if (N % A == 0) out.push_back({-A, b, N / A});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WallHit> walls_near(const Discriminant& Dd, const Point& tau, double margin) {
  const i64 D = Dd.D;
  const double sD = std::sqrt(static_cast<double>(D));
  std::vector<WallHit> out;
  const double reach = tau.y - margin;
  const i64 amax = reach <= 0 ? std::numeric_limits<i64>::max()
                              : static_cast<i64>(std::floor(sD / (2.0 * reach))) + 1;
  if (amax == std::numeric_limits<i64>::max()) throw DomainError("walls_near: margin exceeds height");
  for (i64 a = 1; a <= amax; ++a) {
    const double r = sD / (2.0 * a);
    const i64 blo = static_cast<i64>(std::floor(-2.0 * a * (tau.x + r + margin))) - 1;
    const i64 bhi = static_cast<i64>(std::ceil(-2.0 * a * (tau.x - r - margin))) + 1;
    for (i64 b = blo; b <= bhi; ++b) {
      if (((b * b - D) % (4 * a)) != 0) continue;
      const double cx = -static_cast<double>(b) / (2.0 * a);
      const double dist = std::fabs(std::hypot(tau.x - cx, tau.y) - r);
      if (dist <= margin) out.push_back({QForm{a, b, (b * b - D) / (4 * a)}, dist});
    }
  }
  std::sort(out.begin(), out.end(), [](const WallHit& u, const WallHit& v) {
    return u.distance < v.distance || (u.distance == v.distance && u.Q < v.Q);
  });
  return out;
}

double nearest_wall_distance(const Discriminant& D, const Point& tau) {
  const double cap = 0.5 * tau.y;
  const auto hits = walls_near(D, tau, cap);
  return hits.empty() ? cap : hits.front().distance;
}

RMat2 matrix_AQ(const QForm& Q) {
  const i64 D = disc(Q);
  require_indefinite(D);
  const double sD = std::sqrt(static_cast<double>(D));
  const double a = static_cast<double>(Q.a), b = static_cast<double>(Q.b);
  const double eta = (-b + sD) / (2 * a), etap = (-b - sD) / (2 * a);
  const double s = Q.a > 0 ? 1.0 : -1.0;
  const double nrm = 1.0 / std::sqrt(std::fabs(eta - etap));
  return {nrm, -etap * nrm, -s * nrm, s * eta * nrm};
}

int r_ab(const NarrowClass& A, i64 a, i64 b, int k) {
  if (a <= 0) throw DomainError("r_ab: a must be positive");
  const i64 num = b * b - A.D;
  if (num % (4 * a) != 0) throw DomainError("r_ab: b^2 != D mod 4a");
  const QForm q{a, b, num / (4 * a)};
  const int in_p = A.contains(q) ? 1 : 0;
  const int in_m = A.contains(-q) ? 1 : 0;
  return in_p + ((k % 2 == 0) ? in_m : -in_m);
}

}  // namespace lochmf
