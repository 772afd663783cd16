#include "lochmf/hecke.hpp"

#include <cmath>

#include "lochmf/error.hpp"
#include "lochmf/modeval.hpp"
#include "lochmf/qforms.hpp"

namespace lochmf {

namespace {

bool valid_disc(i64 d) {
  return d > 0 && (d % 4 == 0 || d % 4 == 1) && !is_square(d);
}

// D/p^2 when it is again a discriminant, otherwise 0
i64 lower_disc(i64 D, i64 p) {
  if (D % (p * p) != 0) return 0;
  const i64 q = D / (p * p);
  return valid_disc(q) ? q : 0;
}

bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_args(const Discriminant& D, i64 p) {
  if (!is_prime(p)) throw DomainError("hecke: p must be prime");
  if (!valid_disc(D.D)) throw DomainError("hecke: invalid discriminant");
}

struct Term {
  cplx value;
  double err;
};

Term eval_at(const Evaluator& e, const Point& t, const EvalParams& params) {
  double err = 0.0;
  const cplx v = e(t, params, &err);
  return {v, err};
}

}  // namespace

Evaluator evaluator_F(int k, const Discriminant& D) {
  return {[k, D](const Point& t, const EvalParams& prm, double* err) {
            const auto ev = eval_F(k, D, t, prm);
            *err = ev.error();
            return ev.value;
          },
          2 - 2 * k, "F_{1-" + std::to_string(k) + "," + std::to_string(D.D) + "}"};
}

Evaluator evaluator_F_primitive(int k, const Discriminant& D) {
  return {[k, D](const Point& t, const EvalParams& prm, double* err) {
            const auto ev = eval_F_primitive(k, D, t, prm);
            *err = ev.error();
            return ev.value;
          },
          2 - 2 * k, "F'_{1-" + std::to_string(k) + "," + std::to_string(D.D) + "}"};
}

Evaluator evaluator_fkD(int k, const Discriminant& D) {
  return {[k, D](const Point& t, const EvalParams& prm, double* err) {
            const auto ev = eval_fkD(k, D, t, prm);
            *err = ev.error();
            return ev.value;
          },
          2 * k, "f_{" + std::to_string(k) + "," + std::to_string(D.D) + "}"};
}

cplx hecke_Tp(const Evaluator& e, i64 p, const Point& tau, const EvalParams& params, double* err) {
  if (!is_prime(p)) throw DomainError("hecke_Tp: p must be prime");
  const double pd = static_cast<double>(p);
  const double lead = std::pow(pd, e.weight - 1);
  auto [v0, e0] = eval_at(e, Point(pd * tau.x, pd * tau.y), params);
  cplx sum = 0.0;
  double esum = 0.0;
  for (i64 r = 0; r < p; ++r) {
    auto [v, er] = eval_at(e, Point((tau.x + static_cast<double>(r)) / pd, tau.y / pd), params);
    sum += v;
    esum += er;
  }
  if (err) *err = lead * e0 + esum / pd;
  return lead * v0 + sum / pd;
}

std::vector<std::pair<Point, i64>> hecke_sample_points(i64 D, i64 p, const Point& tau) {
  const double pd = static_cast<double>(p);
  std::vector<std::pair<Point, i64>> pts;
  pts.emplace_back(Point(pd * tau.x, pd * tau.y), D);
  for (i64 r = 0; r < p; ++r)
    pts.emplace_back(Point((tau.x + static_cast<double>(r)) / pd, tau.y / pd), D);
  pts.emplace_back(tau, D * p * p);
  pts.emplace_back(tau, D);
  if (const i64 q = lower_disc(D, p)) pts.emplace_back(tau, q);
  return pts;
}

Point hecke_screen(i64 D, i64 p, const Point& tau, double margin, double step, bool* nudged) {
  Point t = tau;
  if (nudged) *nudged = false;
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool clear = true;
    for (const auto& [pt, d] : hecke_sample_points(D, p, t)) {
      if (!walls_near(fundamental_factor(d), pt, margin).empty()) {
        clear = false;
        break;
      }
    }
    if (clear) return t;
    t = Point(t.x, t.y + step);
    if (nudged) *nudged = true;
  }
  throw WallCollision("hecke: no wall-free sample point found near tau");
}

namespace {

constexpr double kScreenMargin = 1e-4;
constexpr double kNudge = 1e-3;

HeckeResult assemble(const Evaluator& lhs_e, i64 D, i64 p, const Point& tau, const EvalParams& params,
                     const std::vector<std::pair<double, Evaluator>>& rhs_terms) {
  HeckeResult r;
  r.tau = hecke_screen(D, p, tau, kScreenMargin, kNudge, &r.nudged);
  double e = 0.0;
  r.lhs = hecke_Tp(lhs_e, p, r.tau, params, &e);
  r.budget = e;
  for (const auto& [c, ev] : rhs_terms) {
    if (c == 0.0) continue;
    auto [v, er] = eval_at(ev, r.tau, params);
    r.rhs += c * v;
    r.budget += std::abs(c) * er;
  }
  return r;
}

}  // namespace

HeckeResult verify_hecke(int k, const Discriminant& D, i64 p, const Point& tau, const EvalParams& params) {
  check_args(D, p);
  const double pd = static_cast<double>(p);
  std::vector<std::pair<double, Evaluator>> rhs;
  rhs.emplace_back(1.0, evaluator_F(k, fundamental_factor(D.D * p * p)));
  rhs.emplace_back(std::pow(pd, -k) * kronecker(D.D, p), evaluator_F(k, D));
  if (const i64 q = lower_disc(D.D, p))
    rhs.emplace_back(std::pow(pd, 1 - 2 * k), evaluator_F(k, fundamental_factor(q)));
  return assemble(evaluator_F(k, D), D.D, p, tau, params, rhs);
}

HeckeResult verify_hecke_primitive(int k, const Discriminant& D, i64 p, const Point& tau,
                                   const EvalParams& params) {
  check_args(D, p);
  const double pk = std::pow(static_cast<double>(p), -k);
  std::vector<std::pair<double, Evaluator>> rhs;
  rhs.emplace_back(pk, evaluator_F_primitive(k, fundamental_factor(D.D * p * p)));
  // the branch is decided by D/p^2 being a discriminant (D = 8, p = 2 takes the first)
  if (const i64 q = lower_disc(D.D, p)) {
    rhs.emplace_back(pk * (static_cast<double>(p) - kronecker(q, p)),
                     evaluator_F_primitive(k, fundamental_factor(q)));
  } else {
    rhs.emplace_back(pk * (1 + kronecker(D.D, p)), evaluator_F_primitive(k, D));
  }
  return assemble(evaluator_F_primitive(k, D), D.D, p, tau, params, rhs);
}

HeckeResult verify_hecke_cusp(int k, const Discriminant& D, i64 p, const Point& tau,
                              const EvalParams& params) {
  check_args(D, p);
  const double pd = static_cast<double>(p);
  std::vector<std::pair<double, Evaluator>> rhs;
  rhs.emplace_back(1.0, evaluator_fkD(k, fundamental_factor(D.D * p * p)));
  rhs.emplace_back(std::pow(pd, k - 1) * kronecker(D.D, p), evaluator_fkD(k, D));
  if (const i64 q = lower_disc(D.D, p))
    rhs.emplace_back(std::pow(pd, 2 * k - 1), evaluator_fkD(k, fundamental_factor(q)));
  HeckeResult r;
  r.tau = tau;
  double e = 0.0;
  r.lhs = hecke_Tp(evaluator_fkD(k, D), p, tau, params, &e);
  r.budget = e;
  for (const auto& [c, ev] : rhs) {
    if (c == 0.0) continue;
    auto [v, er] = eval_at(ev, tau, params);
    r.rhs += c * v;
    r.budget += std::abs(c) * er;
  }
  return r;
}

}  // namespace lochmf
