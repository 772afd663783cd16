#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "lochmf/error.hpp"
#include "lochmf/poly.hpp"

namespace lochmf {

using cplx = std::complex<double>;
using i64 = std::int64_t;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// D = delta * f^2 with delta fundamental.
struct Discriminant {
  i64 D = 0;
  i64 delta = 0;
  i64 f = 1;
  double sqrtD() const;
};

struct Point {
  double x = 0.0;
  double y = 1.0;

  Point() = default;
  Point(double x_, double y_);
  explicit Point(cplx tau) : Point(tau.real(), tau.imag()) {}
  cplx tau() const { return {x, y}; }
};

template <class T>
struct Mat2 {
  T a{1}, b{0}, c{0}, d{1};

  T det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const Mat2&) const = default;
};

using IMat2 = Mat2<i64>;
using RMat2 = Mat2<double>;

inline const IMat2 kMatS{0, -1, 1, 0};
inline const IMat2 kMatT{1, 1, 0, 1};

struct PellSolution {
  i64 t = 0;
  i64 u = 0;
};

// Truncation radii and tolerances shared by every lattice sum and quadrature.
struct EvalParams {
  i64 a_max = 2000;
  i64 n_max = 64;
  double tol = 1e-10;
  int quad_points = 64;
  double y_cut = 8.0;
  int threads = 0;  // 0: LOCHMF_THREADS or hardware concurrency
  // Fixes the truncation window (n-centres, minimal a_max) to a reference
  // point so nearby evaluations share one finite sum. Used by finite differences.
  std::optional<Point> anchor;

  void validate() const;
};

int kronecker(i64 delta, i64 n);
int moebius(i64 n);
double sigma(double s, i64 n);
i64 isqrt(i64 n);
bool is_square(i64 n);
bool is_fundamental(i64 d);
double binomial(int n, int k);
i64 binomial_int(int n, int k);

Discriminant fundamental_factor(i64 D);
PellSolution pell_fundamental(const Discriminant& D);

struct CocycleResult {
  cplx image;   // gamma * tau
  cplx factor;  // (c tau + d)^(-weight)
};

template <class T>
CocycleResult cocycle(const Mat2<T>& g, cplx tau, int weight) {
  const cplx j = static_cast<double>(g.c) * tau + static_cast<double>(g.d);
  const cplx img = (static_cast<double>(g.a) * tau + static_cast<double>(g.b)) / j;
  cplx jp(1.0, 0.0);
  const int e = weight < 0 ? -weight : weight;
  for (int i = 0; i < e; ++i) jp *= j;
  return {img, weight < 0 ? jp : cplx(1.0, 0.0) / jp};
}

}  // namespace lochmf
