#include "lochmf/walls.hpp"

#include <cmath>
#include <limits>

#include "lochmf/detail/quad.hpp"
#include "lochmf/residues.hpp"
#include "lochmf/special.hpp"

namespace lochmf {

namespace {

// 1 / (2^{2k-2} (2k-1) C(2k-2, k-1))
double kconst(int k) { return 1.0 / (std::ldexp(1.0, 2 * k - 2) * (2 * k - 1) * binomial(2 * k - 2, k - 1)); }

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void require_off_wall(const Discriminant& D, const Point& tau) {
  const double margin = 1e-12 * (1.0 + std::abs(tau.tau()));
  if (!walls_near(D, tau, margin).empty()) throw WallCollision("local polynomial requested on a wall");
}

}  // namespace

ConstantValue c_inf(const Discriminant& D, int k, const EvalParams& params) {
  if (k < 2) throw DomainError("c_inf: k must be >= 2");
  if (k % 2 != 0) {
    ConstantValue acc;
    for (const auto& A : narrow_class_reps(D)) {
      const auto c = c_inf_class(A, k, params);
      acc.value += c.value;
      acc.error += c.error;
    }
    acc.value *= parity(k);
    return acc;
  }
  // Each (a, b) pair carries r = 1 + (-1)^k = 2 once all classes are summed,
  // so the constant is twice K times Zagier's zeta value.
  const auto Z = zagier_closed(D, static_cast<double>(k));
  const double K = kconst(k);
  return {-2.0 * K * Z.value, 2.0 * K * Z.error, true};
}

ConstantValue c_inf_class(const NarrowClass& A, int k, const EvalParams& params) {
  if (k < 2) throw DomainError("c_inf_class: k must be >= 2");
  params.validate();
  const Discriminant D = fundamental_factor(A.D);
  const auto table = ResidueTable::get(D.D, params.a_max);
  double acc = 0.0, partial = 0.0;
  for (i64 a = params.a_max; a >= 1; --a) {
    const auto roots = table->roots(a);
    if (roots.empty()) continue;
    int r = 0;
    for (i64 b : roots) r += r_ab(A, a, b, k);
    const double ak = std::pow(static_cast<double>(a), -k);
    acc += r * ak;
    partial += static_cast<double>(roots.size()) * ak;
  }
  const auto Z = zagier_closed(D, static_cast<double>(k));
  const double K = kconst(k);
  const double rest = std::max(Z.value + Z.error - partial, 0.0) + 1e-15 * Z.value;
  return {-K * acc, K * 2.0 * rest, false};
}

CPoly local_poly(int k, const Discriminant& D, const Point& tau, const EvalParams& params) {
  require_off_wall(D, tau);
  const auto sig = interior_forms(D, tau);
  const double c0 = c_inf(D, k, params).value;
  CPoly sum;
  for (const auto& q : sig.interior_forms) sum += q_poly(q).pow(k - 1);
  const double scale = (1.0 + parity(k)) * std::ldexp(1.0, 2 - 2 * k) * std::pow(static_cast<double>(D.D), 0.5 - k);
  return sum * scale + CPoly::constant(c0);
}

CPoly local_poly_class(int k, const NarrowClass& A, const Point& tau, const EvalParams& params) {
  const Discriminant D = fundamental_factor(A.D);
  require_off_wall(D, tau);
  const auto sig = interior_forms(D, tau);
  const double c0 = c_inf_class(A, k, params).value;
  CPoly sum;
  for (const auto& q : sig.interior_forms) {
    const double w = (A.contains(q) ? 1.0 : 0.0) + parity(k) * (A.contains(-q) ? 1.0 : 0.0);
    if (w != 0.0) sum += q_poly(q).pow(k - 1) * w;
  }
  const double scale = parity(k) * std::ldexp(1.0, 2 - 2 * k) * std::pow(static_cast<double>(D.D), 0.5 - k);
  return sum * scale + CPoly::constant(c0);
}

WallReport wall_report(int k, const Discriminant& D, const Point& tau, const EvalParams& params) {
  WallReport r;
  r.tau = tau;
  r.signature = interior_forms(D, tau);
  r.poly = local_poly(k, D, tau, params);
  r.c_inf_part = c_inf(D, k, params).value;
  return r;
}

cplx wall_jump(int k, const Discriminant& D, const QForm& Q, const Point& tau) {
  if (k < 2) throw DomainError("wall_jump: k must be >= 2");
  if (disc(Q) != D.D) throw DomainError("wall_jump: form has the wrong discriminant");
  const double scale = std::fabs(static_cast<double>(Q.a)) * (tau.x * tau.x + tau.y * tau.y) +
                       std::fabs(static_cast<double>(Q.b) * tau.x) + std::fabs(static_cast<double>(Q.c));
  if (std::fabs(geodesic_value(Q, tau)) > 1e-9 * scale) throw DomainError("wall_jump: point is not on S_Q");
  const QForm qp = Q.a > 0 ? Q : -Q;
  for (const auto& h : walls_near(D, tau, 1e-9 * (1.0 + std::abs(tau.tau()))))
    if (h.Q != qp) throw DomainError("wall_jump: point lies on several walls");
  const double sgn = Q.a > 0 ? 1.0 : -1.0;
  const cplx qv = q_eval(Q, tau.tau());
  cplx p = 1.0;
  for (int e = 1; e < k; ++e) p *= qv;
  // both Q and -Q are crossed; their contributions carry 1 and (-1)^k
  const double pre = -(1.0 + parity(k)) * std::pow(static_cast<double>(D.D), 0.5 - k) /
                     (binomial(2 * k - 2, k - 1) * kPi) * beta_complete(k);
  return pre * sgn * p;
}

IvalResult ival_check(i64 a, const Discriminant& D, int k, double y, const EvalParams& params) {
  if (a < 1 || k < 2) throw DomainError("ival_check: need a >= 1, k >= 2");
  const double ad = static_cast<double>(a), Dd = static_cast<double>(D.D);
  const double sD = std::sqrt(Dd);
  if (!(y > sD / (2 * ad))) throw DomainError("ival_check: y must exceed sqrt(D)/(2a)");
  const double Dq = Dd / (4 * ad);
  auto integrand = [&](double w) {
    const cplx z(w, y);
    const cplx Q = ad * z * z - Dq;
    cplx p = 1.0;
    for (int e = 1; e < k; ++e) p *= Q;
    const double g = ad * (w * w + y * y) - Dq;
    return (p * phi(std::atan2(sD * y, g), k)).real();
  };
  // algebraic tail beyond W: g >= a w^2, |Q|^2 <= g^2 (1 + D y^2 / (a^2 W^4))
  const double closed = ((k + 1) % 2 == 0 ? 1.0 : -1.0) * std::pow(Dd, k - 0.5) /
                        (std::pow(ad, k) * std::ldexp(1.0, 2 * k - 2) * (2 * k - 1)) * kPi;
  const double target = std::min(params.tol, 1e-13) * std::fabs(closed);
  double W = 8.0 * (y + sD);
  double tail = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double kap = 1.0 + Dd * y * y / (ad * ad * W * W * W * W);
    tail = 2.0 * std::pow(kap, 0.5 * (k - 1)) * std::pow(sD * y, 2 * k - 1) * std::pow(ad, -k) *
           std::pow(W, 1.0 - 2 * k) / ((2.0 * k - 1) * (2.0 * k - 1));
    if (tail < 0.1 * target) break;
    W *= 2.0;
  }
  const double split = 4.0 * (y + sD);
  const auto q1 = detail::integrate(integrand, 0.0, split, 1e-14);
  const auto q2 = detail::integrate(integrand, split, W, 1e-14);
  // the integrand oscillates in sign; rounding scales with its absolute integral
  auto magnitude = [&](double w) { return std::fabs(integrand(w)); };
  const double mass = 2.0 * (detail::integrate(magnitude, 0.0, split, 1e-6, 8).value.real() +
                             detail::integrate(magnitude, split, W, 1e-6, 8).value.real());
  IvalResult r;
  r.quadrature = 2.0 * (q1.value.real() + q2.value.real());
  r.closed_form = closed;
  // rounding in the quadrature sum and in the closed form's powers
  const double eps = std::numeric_limits<double>::epsilon();
  r.error = 2.0 * (q1.error + q2.error) + tail + 64.0 * eps * mass + 16.0 * eps * std::fabs(closed);
  if (!std::isfinite(r.error) || r.error > 1e-3 * std::fabs(r.closed_form))
    throw BudgetInfeasible("ival_check: quadrature error budget not met");
  return r;
}

}  // namespace lochmf
