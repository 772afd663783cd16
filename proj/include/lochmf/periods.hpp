#pragma once

#include <vector>

#include "lochmf/core.hpp"
#include "lochmf/modeval.hpp"

namespace lochmf {

struct PeriodSet {
  int k = 0;
  std::vector<double> r;       // r_0 .. r_{2k-2}
  std::vector<double> err;     // per-entry error budget
  std::vector<double> imag;    // imaginary parts, should vanish
};

// Coefficient count and height used by periods(k, D, params).
struct PeriodPlan {
  int m_max = 6;
  double y = 0.0;  // <= 0: default_coeff_height(m_max)
};

PeriodSet periods(const CoeffSeries& f, const EvalParams& params);
PeriodSet periods(int k, const Discriminant& D, const EvalParams& params, PeriodPlan plan = {});

CPoly even_period_poly(const PeriodSet& p);
IPoly rational_rhs_exact(int k, const Discriminant& D);
CPoly rational_rhs(int k, const Discriminant& D);

struct RationalityResult {
  double residual = 0.0;        // max |coeff| of the reduced difference
  double fitted_constant = 0.0; // multiple of X^{2k-2} - 1 absorbed by the reduction
  double budget = 0.0;          // propagated period error
  CPoly reduced;                // reduced difference
  // r+ + rational_rhs reduced the same way; this orientation is the one the
  // numerics satisfy for k >= 6, reported for diagnosis only
  double residual_opposite = 0.0;
  double fitted_constant_opposite = 0.0;
};

RationalityResult check_rationality(int k, const Discriminant& D, const EvalParams& params,
                                    PeriodPlan plan = {});
RationalityResult check_rationality(const PeriodSet& p, const Discriminant& D);

}  // namespace lochmf
