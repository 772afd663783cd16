#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>

namespace lochmf::detail {

struct QuadResult {
  std::complex<double> value;
  double error;
};

// Adaptive 31-point Gauss-Kronrod on [a, b] (either end may be infinite).
template <class F>
QuadResult integrate(F&& f, double a, double b, double tol = 1e-13, unsigned depth = 18) {
  double err = 0.0;
  auto g = [&](double t) { return std::complex<double>(f(t)); };
  const auto v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, depth, tol, &err);
  return {v, err};
}

}  // namespace lochmf::detail
