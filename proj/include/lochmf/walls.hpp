#pragma once

#include "lochmf/core.hpp"
#include "lochmf/qforms.hpp"

namespace lochmf {

struct ConstantValue {
  double value = 0.0;
  double error = 0.0;
  bool closed_form = false;
};

// Constant term of F_{1-k,D} on the component containing i*infinity.
// Closed form for even k; for odd k the class sum is evaluated numerically.
ConstantValue c_inf(const Discriminant& D, int k, const EvalParams& params);
// Class constant -K sum_a a^{-k} sum_b r_{a,b}(A), truncated at params.a_max.
ConstantValue c_inf_class(const NarrowClass& A, int k, const EvalParams& params);

struct WallReport {
  Point tau;
  ComponentSignature signature;
  CPoly poly;
  double c_inf_part = 0.0;
};

// Local polynomial of F_{1-k,D} on the component of tau.
CPoly local_poly(int k, const Discriminant& D, const Point& tau, const EvalParams& params);
// Same for the class object F_{1-k,D,A}.
CPoly local_poly_class(int k, const NarrowClass& A, const Point& tau, const EvalParams& params);
WallReport wall_report(int k, const Discriminant& D, const Point& tau, const EvalParams& params);

// lim_{w->0+} F(tau - iw) - F(tau + iw) for tau on S_Q only.
cplx wall_jump(int k, const Discriminant& D, const QForm& Q, const Point& tau_on_wall);

struct IvalResult {
  double quadrature = 0.0;
  double closed_form = 0.0;
  double error = 0.0;  // quadrature error plus the algebraic tail
};
IvalResult ival_check(i64 a, const Discriminant& D, int k, double y, const EvalParams& params);

}  // namespace lochmf
