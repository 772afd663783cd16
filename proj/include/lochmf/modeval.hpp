#pragma once

#include <vector>

#include "lochmf/core.hpp"
#include "lochmf/qforms.hpp"

namespace lochmf {

struct Evaluation {
  cplx value;
  double tail = 0.0;      // bound on the discarded part of the lattice sum
  double rounding = 0.0;  // floating-point accumulation estimate
  i64 a_used = 0;
  i64 n_used = 0;
  double error() const { return tail + rounding; }
};

enum class Kind { Holomorphic, Harmonic };

struct TailBound {
  double a_tail = 0.0;  // forms with a > a_used
  double n_tail = 0.0;  // forms with a <= a_used outside the n window
  i64 a_used = 0;
  i64 n_used = 0;
  double total() const { return a_tail + n_tail; }
};

// Effective truncation for `kind` at tau; a_max and n_max are raised when the
// requested values are too small for the bounds to apply.
TailBound tail_estimate(Kind kind, int k, const Discriminant& D, const Point& tau,
                        const EvalParams& params);

// weight 2k cusp form
Evaluation eval_fkD(int k, const Discriminant& D, const Point& tau, const EvalParams& params);
Evaluation eval_fkDA(int k, const NarrowClass& A, const Point& tau, const EvalParams& params);
// weight 2-2k locally harmonic form
Evaluation eval_F(int k, const Discriminant& D, const Point& tau, const EvalParams& params);
Evaluation eval_FA(int k, const NarrowClass& A, const Point& tau, const EvalParams& params);
// sum over primitive forms only, normalised by D^{(1-k)/2}
Evaluation eval_F_primitive(int k, const Discriminant& D, const Point& tau, const EvalParams& params);

struct CoeffSeries {
  int k = 0;
  std::vector<cplx> coeffs;  // coeffs[n-1] = a_n
  double y_used = 0.0;
  double est_error = 0.0;
  std::vector<double> coeff_error;

  int m_max() const { return static_cast<int>(coeffs.size()); }
};

// Extraction height used when fourier_coeffs is called with y <= 0.
double default_coeff_height(int m_max);

CoeffSeries fourier_coeffs(int k, const Discriminant& D, int m_max, double y, const EvalParams& params);

// f(tau) = sum a_n q^n from the truncated series
cplx series_eval(const CoeffSeries& s, const Point& tau);
// sum a_n n^{1-2k} q^n
cplx eichler_holo(const CoeffSeries& s, const Point& tau);

struct EichlerValue {
  cplx value;
  double error = 0.0;
};
// Non-holomorphic Eichler integral normalised so that xi_{2-2k} f* = f.
// Quadrature along the vertical path from -conj(tau) plus the exact tail above y_cut.
EichlerValue eichler_nonholo(const CoeffSeries& s, const Point& tau, const EvalParams& params);
// Same object from the termwise incomplete-gamma series.
cplx eichler_nonholo_series(const CoeffSeries& s, const Point& tau);

}  // namespace lochmf
