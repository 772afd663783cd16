#include "lochmf/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "lochmf/residues.hpp"

namespace lochmf {

namespace {

double phi_closed(double v, int k) {
  const int m = k - 1;
  double acc = binomial(2 * m, m) * v;
  for (int j = 0; j < m; ++j) {
    const int d = m - j;
    const double term = binomial(2 * m, j) * std::sin(2.0 * d * v) / d;
    acc += (d % 2 == 0) ? term : -term;
  }
  return std::ldexp(acc, -2 * m);
}

// (1/2) sum_j (1/2)_j / j! t^{k-1/2+j} / (k-1/2+j), t <= 1/2
double psi_series(double t, int k) {
  if (t <= 0.0) return 0.0;
  const double h = k - 0.5;
  double coef = 1.0, tp = std::pow(t, h), acc = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double term = coef * tp / (h + j);
    acc += term;
    if (term < 1e-18 * acc) break;
    coef *= (0.5 + j) / (j + 1.0);
    tp *= t;
  }
  return 0.5 * acc;
}

void check_k(int k) {
  if (k < 2) throw DomainError("weight parameter k must be >= 2, got " + std::to_string(k));
}

}  // namespace

double phi(double v, int k) {
  check_k(k);
  const double half_pi = 0.5 * kPi;
  if (!(v >= 0.0) || v > half_pi * (1.0 + 1e-15)) throw DomainError("phi: v outside [0, pi/2]");
  if (v > half_pi) v = half_pi;
  if (v < 0.25 * kPi) {
    const double s = std::sin(v);
    return psi_series(s * s, k);
  }
  return phi_closed(v, k);
}

double psi(double t, int k) {
  check_k(k);
  if (!(t >= 0.0) || t > 1.0) throw DomainError("psi: argument outside (0, 1]");
  if (t <= 0.5) return psi_series(t, k);
  return phi_closed(std::asin(std::sqrt(t)), k);
}

double psi_geo(double num, double g, int k) {
  const double ag = std::fabs(g);
  const double v = std::atan2(num, ag);
  if (v < 0.25 * kPi) {
    const double r = ag / num;
    return psi_series(1.0 / (1.0 + r * r), k);
  }
  return phi_closed(v, k);
}

double beta_complete(int k) {
  check_k(k);
  return binomial(2 * k - 2, k - 1) * std::ldexp(kPi, 2 - 2 * k);
}

SeriesValue zeta(double s, std::int64_t terms) {
  if (!(s > 1.0)) throw DomainError("zeta: need s > 1");
  if (terms < 1) throw DomainError("zeta: need terms >= 1");
  double acc = 0.0;
  for (std::int64_t n = terms; n >= 1; --n) acc += std::pow(static_cast<double>(n), -s);
  // Euler-Maclaurin remainder for n > N
  const double N = static_cast<double>(terms);
  const double ns = std::pow(N, -s);
  const double tail = N * ns / (s - 1.0) - 0.5 * ns + s * ns / (12.0 * N) -
                      s * (s + 1) * (s + 2) * ns / (720.0 * N * N * N);
  const double err = s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * ns / (30240.0 * std::pow(N, 5.0));
  return {acc + tail, err + 1e-16 * (acc + tail)};
}

SeriesValue dirichlet_L(const LSeriesSpec& series) {
  if (!(series.s > 1.0)) throw DomainError("dirichlet_L: need s > 1");
  if (series.terms < 1) throw DomainError("dirichlet_L: need terms >= 1");
  if (series.delta == 1) return zeta(series.s, series.terms);
  const std::int64_t m = series.delta < 0 ? -series.delta : series.delta;
  std::vector<int> chi(m);
  int run = 0, M = 0;
  for (std::int64_t r = 0; r < m; ++r) {
    chi[r] = kronecker(series.delta, r);
    run += chi[r];
    M = std::max(M, std::abs(run));
  }
  double acc = 0.0;
  for (std::int64_t n = series.terms; n >= 1; --n) {
    const int c = chi[n % m];
    if (c != 0) acc += c * std::pow(static_cast<double>(n), -series.s);
  }
  // Abel summation: |sum_{n>N} chi(n) n^{-s}| <= 2 max|partial sums| (N+1)^{-s}
  const double err = 2.0 * M * std::pow(static_cast<double>(series.terms + 1), -series.s);
  return {acc, err + 1e-16 * std::fabs(acc) * 4};
}

SeriesValue zagier_closed(const Discriminant& D, double s) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, double>, SeriesValue> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({D.D, s});
    if (it != memo.end()) return it->second;
  }
  const auto z1 = zeta(s, 2000);
  const auto z2 = zeta(2 * s, 2000);
  const auto L = dirichlet_L({D.delta, s, 2000000});
  double fac = 0.0;
  for (std::int64_t d = 1; d <= D.f; ++d) {
    if (D.f % d != 0) continue;
    fac += moebius(d) * kronecker(D.delta, d) * std::pow(static_cast<double>(d), -s) *
           sigma(1.0 - 2.0 * s, D.f / d);
  }
  const double v = z1.value / z2.value * L.value * fac;
  const double rel = z1.error / z1.value + z2.error / z2.value + L.error / std::fabs(L.value) + 1e-15;
  const SeriesValue out{v, std::fabs(v) * rel};
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(D.D, s), out);
  return out;
}

double zagier_partial(const Discriminant& D, double s, std::int64_t a_max) {
  const auto table = ResidueTable::get(D.D, a_max);
  double acc = 0.0;
  for (std::int64_t a = a_max; a >= 1; --a) {
    const auto n = table->count(a);
    if (n) acc += static_cast<double>(n) * std::pow(static_cast<double>(a), -s);
  }
  return acc;
}

ZagierCheck zagier_zeta_check(const Discriminant& D, double s, std::int64_t a_max) {
  if (!(s > 1.0)) throw DomainError("zagier_zeta_check: need s > 1");
  const auto rhs = zagier_closed(D, s);
  return {zagier_partial(D, s, a_max), rhs.value, rhs.error};
}

double upper_incomplete_gamma(int s, double x) { return upper_incomplete_gamma_scaled(s, x, 0.0); }

double upper_incomplete_gamma_scaled(int s, double x, double shift) {
  if (s < 1) throw DomainError("upper_incomplete_gamma: s must be a positive integer");
  if (x < 0.0) throw DomainError("upper_incomplete_gamma: x must be >= 0");
  double term = 1.0, acc = 0.0;
  for (int j = 0; j < s; ++j) {
    acc += term;
    term *= x / (j + 1);
  }
  return std::tgamma(static_cast<double>(s)) * std::exp(shift - x) * acc;
}

}  // namespace lochmf
