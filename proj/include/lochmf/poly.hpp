#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace lochmf {

// Dense polynomial in X with complex coefficients; coeffs[i] multiplies X^i.
class CPoly {
 public:
  using value_type = std::complex<double>;

  CPoly() = default;
  explicit CPoly(std::vector<value_type> c) : c_(std::move(c)) { trim(); }
  static CPoly constant(value_type v) { return CPoly({v}); }
  static CPoly monomial(int n, value_type v = 1.0);
  static CPoly quadratic(double a, double b, double c) { return CPoly({c, b, a}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  value_type coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : value_type{};
  }
  const std::vector<value_type>& coeffs() const { return c_; }
  value_type operator()(value_type x) const;

  CPoly& operator+=(const CPoly& o);
  CPoly& operator-=(const CPoly& o);
  CPoly& operator*=(value_type s);
  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator*(CPoly a, value_type s) { return a *= s; }
  friend CPoly operator*(value_type s, CPoly a) { return a *= s; }
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  CPoly pow(int e) const;

  double max_abs_coeff() const;

 private:
  void trim();
  std::vector<value_type> c_;
};

// Integer polynomial used where exactness matters.
using IPoly = std::vector<std::int64_t>;

IPoly ipoly_mul(const IPoly& a, const IPoly& b);
IPoly ipoly_pow(const IPoly& a, int e);
IPoly ipoly_add(const IPoly& a, const IPoly& b);
CPoly to_cpoly(const IPoly& p);

// p = q + c (X^{2k-2} - 1) with q's X^{2k-2} coefficient zeroed.
std::pair<CPoly, std::complex<double>> poly_mod_reduce(const CPoly& p, int k);
std::pair<IPoly, std::int64_t> poly_mod_reduce(const IPoly& p, int k);

}  // namespace lochmf
