#include "lochmf/periods.hpp"

#include <cmath>

#include "lochmf/detail/quad.hpp"
#include "lochmf/qforms.hpp"
#include "lochmf/special.hpp"

namespace lochmf {

namespace {

// int_T^inf e^{-c t} t^n dt = c^{-n-1} Gamma(n+1, cT)
double exp_moment(double c, int n, double T) {
  return std::pow(c, -n - 1.0) * upper_incomplete_gamma(n + 1, c * T);
}

}  // namespace

PeriodSet periods(const CoeffSeries& f, const EvalParams& params) {
  const int k = f.k;
  if (k < 2) throw DomainError("periods: k must be >= 2");
  const int M = f.m_max();
  const int top = 2 * k - 2;
  const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
  PeriodSet out;
  out.k = k;
  out.r.assign(top + 1, 0.0);
  out.err.assign(top + 1, 0.0);
  out.imag.assign(top + 1, 0.0);
  if (M == 0) return out;
  const double T = std::max(params.y_cut, 12.0);
  // growth constant for coefficients beyond the series
  double A1 = 0.0;
  for (int m = 1; m <= M; ++m) A1 = std::max(A1, std::abs(f.coeffs[m - 1]) / std::pow(m, k));
  for (int n = 0; n <= top; ++n) {
    auto integrand = [&](double t) {
      cplx acc;
      const double e1 = std::exp(-2 * kPi * t);
      double em = e1;
      for (int m = 1; m <= M; ++m, em *= e1) acc += f.coeffs[m - 1] * em;
      return acc * (std::pow(t, n) + sgn * std::pow(t, top - n));
    };
    const auto q = detail::integrate(integrand, 1.0, T, 1e-14);
    double tail = 0.0, cerr = 0.0, trunc = 0.0;
    for (int m = 1; m <= M + 40; ++m) {
      const double c = 2 * kPi * m;
      const double whole = exp_moment(c, n, 1.0) + exp_moment(c, top - n, 1.0);
      if (m <= M) {
        tail += std::abs(f.coeffs[m - 1]) * (exp_moment(c, n, T) + exp_moment(c, top - n, T));
        if (!f.coeff_error.empty()) cerr += f.coeff_error[m - 1] * whole;
      } else {
        trunc += A1 * std::pow(m, k) * whole;
      }
    }
    out.r[n] = q.value.real();
    out.imag[n] = q.value.imag();
    out.err[n] = q.error + tail + cerr + trunc + 1e-15 * std::abs(q.value);
  }
  return out;
}

PeriodSet periods(int k, const Discriminant& D, const EvalParams& params, PeriodPlan plan) {
  const auto cs = fourier_coeffs(k, D, plan.m_max, plan.y, params);
  return periods(cs, params);
}

CPoly even_period_poly(const PeriodSet& p) {
  const int top = 2 * p.k - 2;
  std::vector<cplx> c(top + 1);
  for (int n = 0; n <= top && n < static_cast<int>(p.r.size()); n += 2) {
    const double s = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
    c[top - n] = s * binomial(top, n) * p.r[n];
  }
  return CPoly(std::move(c));
}

IPoly rational_rhs_exact(int k, const Discriminant& D) {
  if (k < 2) throw DomainError("rational_rhs: k must be >= 2");
  IPoly acc;
  for (const auto& q : forms_a_neg_c_pos(D)) acc = ipoly_add(acc, ipoly_pow(q_ipoly(q), k - 1));
  for (auto& v : acc) v *= 2;
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return acc;
}

CPoly rational_rhs(int k, const Discriminant& D) { return to_cpoly(rational_rhs_exact(k, D)); }

RationalityResult check_rationality(const PeriodSet& p, const Discriminant& D) {
  const int k = p.k;
  const CPoly diff = even_period_poly(p) - rational_rhs(k, D);
  const auto [q, c] = poly_mod_reduce(diff, k);
  RationalityResult r;
  r.reduced = q;
  r.residual = q.max_abs_coeff();
  r.fitted_constant = c.real();
  const auto [q2, c2] = poly_mod_reduce(even_period_poly(p) + rational_rhs(k, D), k);
  r.residual_opposite = q2.max_abs_coeff();
  r.fitted_constant_opposite = c2.real();
  // each coefficient of r+ is a binomial multiple of one period; the reduced
  // constant term also absorbs the top coefficient
  const int top = 2 * k - 2;
  double b = 0.0;
  for (int n = 0; n <= top; n += 2) b = std::max(b, binomial(top, n) * p.err[n]);
  r.budget = 2.0 * b;
  return r;
}

RationalityResult check_rationality(int k, const Discriminant& D, const EvalParams& params, PeriodPlan plan) {
  if (k % 2 != 0) throw DomainError("check_rationality: k must be even");
  return check_rationality(periods(k, D, params, plan), D);
}

}  // namespace lochmf
