#pragma once

#include <cstdint>

#include "lochmf/core.hpp"

namespace lochmf {

struct SeriesValue {
  double value = 0.0;
  double error = 0.0;  // bound on |value - exact|
};

// phi(v) = int_0^v sin(u)^{2k-2} du
double phi(double v, int k);
// psi(t) = (1/2) B(t; k - 1/2, 1/2) = phi(arcsin sqrt t)
double psi(double t, int k);
// psi(D y^2 / |Q|^2) from num = sqrt(D) y and g = a|tau|^2 + bx + c, so that
// |Q|^2 = num^2 + g^2 and the angle atan(num/|g|) is resolved without cancellation.
double psi_geo(double num, double g, int k);
// B(k - 1/2, 1/2) = C(2k-2, k-1) 2^{2-2k} pi
double beta_complete(int k);

SeriesValue zeta(double s, std::int64_t terms);

struct LSeriesSpec {
  std::int64_t delta = 1;
  double s = 2.0;
  std::int64_t terms = 1000000;
};
SeriesValue dirichlet_L(const LSeriesSpec& series);

// Right-hand side of Zagier's identity:
// zeta(s)/zeta(2s) L_delta(s) sum_{d|f} mu(d) chi(d) d^{-s} sigma_{1-2s}(f/d).
SeriesValue zagier_closed(const Discriminant& D, double s);
// sum_{a <= a_max} N(a) a^{-s}, N(a) = #{b mod 2a : b^2 = D mod 4a}
double zagier_partial(const Discriminant& D, double s, std::int64_t a_max);

struct ZagierCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rhs_error = 0.0;
};
ZagierCheck zagier_zeta_check(const Discriminant& D, double s, std::int64_t a_max);

// Gamma(s, x) for integer s >= 1
double upper_incomplete_gamma(int s, double x);
// Gamma(s, x) e^{shift}, evaluated as (s-1)! e^{shift - x} sum_{j<s} x^j / j!
double upper_incomplete_gamma_scaled(int s, double x, double shift);

}  // namespace lochmf
