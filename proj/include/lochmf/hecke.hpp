#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lochmf/core.hpp"

namespace lochmf {

// A translation-invariant function with its slash weight and an error bound.
struct Evaluator {
  std::function<cplx(const Point&, const EvalParams&, double* err)> fn;
  int weight = 0;
  std::string label;

  cplx operator()(const Point& tau, const EvalParams& params, double* err = nullptr) const {
    double e = 0.0;
    const cplx v = fn(tau, params, &e);
    if (err) *err = e;
    return v;
  }
};

Evaluator evaluator_F(int k, const Discriminant& D);
Evaluator evaluator_F_primitive(int k, const Discriminant& D);
Evaluator evaluator_fkD(int k, const Discriminant& D);

// p^{w-1} f(p tau) + p^{-1} sum_{r mod p} f((tau + r)/p); err accumulates the
// scaled error bounds of the p+1 evaluations.
cplx hecke_Tp(const Evaluator& e, i64 p, const Point& tau, const EvalParams& params,
              double* err = nullptr);

struct HeckeResult {
  cplx lhs;
  cplx rhs;
  double budget = 0.0;  // sum of the scaled tail and rounding bounds
  Point tau;            // point actually used
  bool nudged = false;
  double residual() const { return std::abs(lhs - rhs); }
  bool pass() const { return residual() <= budget; }
};

// The p+2 sample points with the discriminant each one is evaluated at.
std::vector<std::pair<Point, i64>> hecke_sample_points(i64 D, i64 p, const Point& tau);

// Moves tau upward in steps of `step` until every sample point is at least
// `margin` away from the walls of its discriminant.
Point hecke_screen(i64 D, i64 p, const Point& tau, double margin, double step, bool* nudged);

// F_D | T_p against F_{Dp^2} + p^{-k} (D/p) F_D + p^{1-2k} F_{D/p^2}.
HeckeResult verify_hecke(int k, const Discriminant& D, i64 p, const Point& tau,
                         const EvalParams& params);
// Primitive-form relation:
//   D/p^2 not a discriminant: F'_D | T_p = p^{-k} F'_{Dp^2} + p^{-k} (1 + (D/p)) F'_D
//   D/p^2 a discriminant:     F'_D | T_p = p^{-k} F'_{Dp^2} + p^{-k} (p - (D/p^2 / p)) F'_{D/p^2}
HeckeResult verify_hecke_primitive(int k, const Discriminant& D, i64 p, const Point& tau,
                                   const EvalParams& params);
// Weight 2k analogue: f_D | T_p = f_{Dp^2} + p^{k-1} (D/p) f_D + p^{2k-1} f_{D/p^2}.
HeckeResult verify_hecke_cusp(int k, const Discriminant& D, i64 p, const Point& tau,
                              const EvalParams& params);

}  // namespace lochmf
