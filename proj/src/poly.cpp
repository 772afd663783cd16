#include "lochmf/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lochmf/error.hpp"

namespace lochmf {

CPoly CPoly::monomial(int n, value_type v) {
  std::vector<value_type> c(n + 1);
  c[n] = v;
  return CPoly(std::move(c));
}

void CPoly::trim() {
  while (!c_.empty() && c_.back() == value_type{}) c_.pop_back();
}

CPoly::value_type CPoly::operator()(value_type x) const {
  value_type r{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

CPoly& CPoly::operator+=(const CPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

CPoly& CPoly::operator*=(value_type s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<CPoly::value_type> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return CPoly(std::move(r));
}

CPoly CPoly::pow(int e) const {
  CPoly r = CPoly::constant(1.0);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

double CPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::int64_t t;
      if (__builtin_mul_overflow(a[i], b[j], &t) || __builtin_add_overflow(r[i + j], t, &r[i + j]))
        throw DomainError("integer polynomial overflow");
    }
  return r;
}

IPoly ipoly_pow(const IPoly& a, int e) {
  IPoly r{1};
  for (int i = 0; i < e; ++i) r = ipoly_mul(r, a);
  return r;
}

IPoly ipoly_add(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

CPoly to_cpoly(const IPoly& p) {
  std::vector<std::complex<double>> c(p.begin(), p.end());
  return CPoly(std::move(c));
}

std::pair<CPoly, std::complex<double>> poly_mod_reduce(const CPoly& p, int k) {
  const int top = 2 * k - 2;
  if (k < 2) throw DomainError("poly_mod_reduce: k must be >= 2");
  if (p.degree() > top)
    throw DomainError("poly_mod_reduce: degree " + std::to_string(p.degree()) + " exceeds " +
                      std::to_string(top));
  const auto c = p.coeff(top);
  std::vector<std::complex<double>> q(p.coeffs());
  if (!q.empty()) {
    if (static_cast<int>(q.size()) > top) q[top] = 0.0;
    q[0] += c;
  }
  return {CPoly(std::move(q)), c};
}

std::pair<IPoly, std::int64_t> poly_mod_reduce(const IPoly& p, int k) {
  const int top = 2 * k - 2;
  if (k < 2) throw DomainError("poly_mod_reduce: k must be >= 2");
  IPoly q(p);
  while (!q.empty() && q.back() == 0) q.pop_back();
  if (static_cast<int>(q.size()) - 1 > top) throw DomainError("poly_mod_reduce: degree overflow");
  std::int64_t c = static_cast<int>(q.size()) > top ? q[top] : 0;
  if (c != 0) {
    q[top] = 0;
    q[0] += c;
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  return {q, c};
}

}  // namespace lochmf
