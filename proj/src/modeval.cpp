#include "lochmf/modeval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

#include "lochmf/detail/quad.hpp"
#include "lochmf/parallel.hpp"
#include "lochmf/residues.hpp"
#include "lochmf/special.hpp"

namespace lochmf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr i64 kChunk = 64;

void check_k(int k) {
  if (k < 2) throw DomainError("weight parameter k must be >= 2");
}

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double holo_prefactor(int k, i64 D) {
  return std::pow(static_cast<double>(D), k - 0.5) / (binomial(2 * k - 2, k - 1) * kPi);
}

double harm_prefactor(int k, i64 D) {
  return std::pow(static_cast<double>(D), 0.5 - k) / (binomial(2 * k - 2, k - 1) * kPi);
}

struct Truncation {
  i64 a_used;
  i64 n_used;
  double x0;  // window anchor
};

Truncation truncation(const Discriminant& D, const Point& tau, const EvalParams& params) {
  const Point p0 = params.anchor.value_or(tau);
  const double sD = D.sqrtD();
  const i64 a_need = static_cast<i64>(std::ceil(2.2 * sD / p0.y));
  const double w_need = std::max(std::sqrt(0.5 * D.D), 1.1 * std::pow(8.0 * D.D * p0.y * p0.y, 0.25));
  const i64 n_need = static_cast<i64>(std::ceil(w_need)) + 2;
  return {std::max(params.a_max, a_need), std::max(params.n_max, n_need), p0.x};
}

// sum_{a <= A} N(a) a^{-k}
double weighted_count(const ResidueTable& t, i64 A, int k) {
  double acc = 0.0;
  for (i64 a = A; a >= 1; --a) {
    const auto n = t.count(a);
    if (n) acc += static_cast<double>(n) * std::pow(static_cast<double>(a), -k);
  }
  return acc;
}

// prefactor_abs: |constant in front of the lattice sum|
TailBound tail_core(Kind kind, int k, const Discriminant& D, const Point& tau, const Truncation& tr,
                    double prefactor_abs) {
  TailBound tb;
  tb.a_used = tr.a_used;
  tb.n_used = tr.n_used;
  const double y = tau.y, sD = D.sqrtD();
  const auto table = ResidueTable::get(D.D, tr.a_used);
  const double partial = weighted_count(*table, tr.a_used, k);
  const auto Z = zagier_closed(D, static_cast<double>(k));
  const double R = std::max(Z.value + Z.error - partial, 0.0) + 4 * kEps * Z.value;

  const double dy2 = static_cast<double>(D.D) * y * y;
  double Ka, Kn;
  if (kind == Kind::Holomorphic) {
    Ka = Kn = prefactor_abs;
  } else {
    // psi(t) <= t^{k-1/2} / ((2k-1) sqrt(1-t)); t <= 4/9 resp. 1/2 in the two regimes
    const double base = prefactor_abs * std::pow(dy2, k - 0.5) / (2 * k - 1);
    Ka = base * std::sqrt(9.0 / 5.0);
    Kn = base * std::sqrt(2.0);
  }

  if (static_cast<double>(tr.a_used) < 2.0 * sD / y) {
    tb.a_tail = kInf;
  } else {
    // a > A: |Q| >= g >= a (u^2 + 3y^2/4); n-sum bounded by max + integral
    const double c2 = 0.75 * y * y, c = std::sqrt(c2);
    const double Sn = std::pow(c, -2.0 * k) +
                      std::pow(c, 1.0 - 2.0 * k) * std::sqrt(kPi) * std::tgamma(k - 0.5) / std::tgamma(k);
    tb.a_tail = Ka * Sn * 2.0 * R;
  }

  const double U = static_cast<double>(tr.n_used) + 0.5 - std::fabs(tau.x - tr.x0);
  if (U <= 0 || U * U < 0.5 * D.D || U * U * U * U < 8.0 * dy2) {
    tb.n_tail = kInf;
  } else {
    // |u| >= U: |Q| >= a u^2 / 2
    const double T = std::pow(U, -2.0 * k) + std::pow(U, 1.0 - 2.0 * k) / (2 * k - 1);
    tb.n_tail = Kn * std::pow(2.0, k) * 2.0 * T * 2.0 * partial;
  }
  return tb;
}

i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)); }

struct Kernel {
  Kind kind;
  int k;
  const Discriminant* D;
  Point tau;
  Truncation tr;
  const ResidueTable* table;
  const std::vector<double>* weights;  // per flat root index, or null
  double uniform_weight;
  bool primitive;
};

struct Partial {
  cplx sum;
  double abs = 0.0;
  Partial operator+(const Partial& o) const { return {sum + o.sum, abs + o.abs}; }
};

template <Kind K>
Partial run_chunk(const Kernel& kn, i64 a_lo, i64 a_hi) {
  Partial out;
  const double x = kn.tau.x, y = kn.tau.y;
  const double Dd = static_cast<double>(kn.D->D);
  const double num = std::sqrt(Dd) * y;
  const int k = kn.k;
  const i64 W = kn.tr.n_used;
  for (i64 a = a_lo; a <= a_hi; ++a) {
    const double ad = static_cast<double>(a);
    const double Dq = Dd / (4.0 * ad);
    const auto roots = kn.table->roots(a);
    const i64 off = kn.table->offset(a);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      const double w = kn.weights ? (*kn.weights)[off + j] : kn.uniform_weight;
      if (w == 0.0) continue;
      const i64 b0 = roots[j];
      const double shift = static_cast<double>(b0) / (2.0 * ad);
      // every n with |n - c| <= W + 1/2; symmetric under b -> -b when x0 = 0,
      // so half-integer centres keep both end terms
      const double c = -kn.tr.x0 - shift;
      const i64 nlo = static_cast<i64>(std::ceil(c - static_cast<double>(W) - 0.5));
      const i64 nhi = static_cast<i64>(std::floor(c + static_cast<double>(W) + 0.5));
      for (i64 n = nlo; n <= nhi; ++n) {
        if (kn.primitive) {
          const i64 b = b0 + 2 * a * n;
          if (gcd3(a, b, (b * b - kn.D->D) / (4 * a)) != 1) continue;
        }
        const double u = (x + static_cast<double>(n)) + shift;
        const double au2 = ad * u * u, ay2 = ad * y * y;
        const cplx Q(au2 - ay2 - Dq, 2.0 * ad * u * y);
        cplx term;
        if constexpr (K == Kind::Holomorphic) {
          const cplx iq = 1.0 / Q;
          term = iq;
          for (int e = 1; e < k; ++e) term *= iq;
        } else {
          const double g = au2 + ay2 - Dq;
          if (std::fabs(g) <= 8 * kEps * (au2 + ay2 + Dq)) continue;
          term = Q;
          for (int e = 2; e < k; ++e) term *= Q;
          term *= psi_geo(num, g, k) * (g > 0 ? 1.0 : -1.0);
        }
        term *= w;
        out.sum += term;
        out.abs += std::abs(term);
      }
    }
  }
  return out;
}

Evaluation run_kernel(const Kernel& kn, double prefactor, int threads) {
  const i64 A = kn.tr.a_used;
  const std::size_t nchunks = static_cast<std::size_t>((A + kChunk - 1) / kChunk);
  std::vector<Partial> parts(nchunks);
  parallel_for(nchunks, threads, [&](std::size_t c) {
    const i64 lo = static_cast<i64>(c) * kChunk + 1;
    const i64 hi = std::min(A, lo + kChunk - 1);
    parts[c] = kn.kind == Kind::Holomorphic ? run_chunk<Kind::Holomorphic>(kn, lo, hi)
                                            : run_chunk<Kind::Harmonic>(kn, lo, hi);
  });
  const Partial tot = pairwise_sum(parts);
  Evaluation ev;
  ev.value = prefactor * tot.sum;
  ev.rounding = 16 * kEps * std::fabs(prefactor) * tot.abs;
  ev.a_used = A;
  ev.n_used = kn.tr.n_used;
  return ev;
}

// r_{a,b}(A) for every root in the table up to A
std::shared_ptr<const std::vector<double>> class_weights(const NarrowClass& A, int k,
                                                         const ResidueTable& table, i64 a_used) {
  static std::mutex mu;
  static std::map<std::tuple<i64, i64, i64, i64, int, i64>, std::shared_ptr<const std::vector<double>>> memo;
  const auto key = std::make_tuple(A.D, A.representative.a, A.representative.b, A.representative.c,
                                   k % 2, a_used);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  auto w = std::make_shared<std::vector<double>>(table.offset(a_used + 1), 0.0);
  for (i64 a = 1; a <= a_used; ++a) {
    const auto roots = table.roots(a);
    for (std::size_t j = 0; j < roots.size(); ++j)
      (*w)[table.offset(a) + j] = r_ab(A, a, roots[j], k);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, w);
  return w;
}

Evaluation evaluate(Kind kind, int k, const Discriminant& D, const Point& tau, const EvalParams& params,
                    const NarrowClass* cls, bool primitive) {
  check_k(k);
  params.validate();
  const Truncation tr = truncation(D, tau, params);
  const auto table = ResidueTable::get(D.D, tr.a_used);
  double pre = kind == Kind::Holomorphic ? holo_prefactor(k, D.D) : harm_prefactor(k, D.D);
  if (primitive) pre = std::pow(static_cast<double>(D.D), 0.5 * (1 - k)) / (binomial(2 * k - 2, k - 1) * kPi);
  std::shared_ptr<const std::vector<double>> w;
  if (cls) {
    w = class_weights(*cls, k, *table, tr.a_used);
    pre *= parity(k);
  }
  Kernel kn{kind, k, &D, tau, tr, table.get(), w.get(), 1.0 + parity(k), primitive};
  Evaluation ev = run_kernel(kn, pre, params.threads);
  const TailBound tb = tail_core(kind, k, D, tau, tr, std::fabs(pre));
  ev.tail = tb.total();
  return ev;
}

}  // namespace

TailBound tail_estimate(Kind kind, int k, const Discriminant& D, const Point& tau, const EvalParams& params) {
  check_k(k);
  params.validate();
  const double pre = kind == Kind::Holomorphic ? holo_prefactor(k, D.D) : harm_prefactor(k, D.D);
  return tail_core(kind, k, D, tau, truncation(D, tau, params), pre);
}

Evaluation eval_fkD(int k, const Discriminant& D, const Point& tau, const EvalParams& params) {
  return evaluate(Kind::Holomorphic, k, D, tau, params, nullptr, false);
}

Evaluation eval_fkDA(int k, const NarrowClass& A, const Point& tau, const EvalParams& params) {
  const Discriminant D = fundamental_factor(A.D);
  return evaluate(Kind::Holomorphic, k, D, tau, params, &A, false);
}

Evaluation eval_F(int k, const Discriminant& D, const Point& tau, const EvalParams& params) {
  return evaluate(Kind::Harmonic, k, D, tau, params, nullptr, false);
}

Evaluation eval_FA(int k, const NarrowClass& A, const Point& tau, const EvalParams& params) {
  const Discriminant D = fundamental_factor(A.D);
  return evaluate(Kind::Harmonic, k, D, tau, params, &A, false);
}

Evaluation eval_F_primitive(int k, const Discriminant& D, const Point& tau, const EvalParams& params) {
  return evaluate(Kind::Harmonic, k, D, tau, params, nullptr, true);
}

// ---------------------------------------------------------------------------
// Fourier coefficients and Eichler integrals

double default_coeff_height(int m_max) { return std::min(1.2, 2.5 / std::max(1, m_max)); }

CoeffSeries fourier_coeffs(int k, const Discriminant& D, int m_max, double y, const EvalParams& params) {
  check_k(k);
  params.validate();
  if (m_max < 1) throw DomainError("fourier_coeffs: m_max must be >= 1");
  if (y <= 0.0) y = default_coeff_height(m_max);
  // e^{2 pi m y} eps beyond ~1e-3 leaves no correct digit in a_{m_max}
  if (2 * kPi * m_max * y > 31.0)
    throw BudgetInfeasible("fourier_coeffs: amplification e^{2 pi m y} too large for m_max=" +
                           std::to_string(m_max) + ", y=" + std::to_string(y));
  const int N = params.quad_points;
  if (N < 2 * m_max + 1) throw DomainError("fourier_coeffs: quad_points must exceed 2 m_max");
  std::vector<Evaluation> samples(N);
  EvalParams inner = params;
  inner.threads = 1;
  inner.anchor.reset();
  parallel_for(N, params.threads, [&](std::size_t j) {
    samples[j] = eval_fkD(k, D, Point(static_cast<double>(j) / N, y), inner);
  });
  double err_f = 0.0, fmax = 0.0;
  for (const auto& s : samples) {
    err_f = std::max(err_f, s.error());
    fmax = std::max(fmax, std::abs(s.value));
  }
  CoeffSeries out;
  out.k = k;
  out.y_used = y;
  out.coeffs.resize(m_max);
  out.coeff_error.resize(m_max);
  for (int m = 1; m <= m_max; ++m) {
    cplx acc;
    for (int j = 0; j < N; ++j) {
      const double ang = -2.0 * kPi * m * static_cast<double>(j) / N;
      acc += samples[j].value * cplx(std::cos(ang), std::sin(ang));
    }
    out.coeffs[m - 1] = std::exp(2 * kPi * m * y) * acc / static_cast<double>(N);
  }
  // aliasing from a_{m+N}, assuming |a_n| <= A1 n^k
  double A1 = 0.0;
  for (int m = 1; m <= m_max; ++m) A1 = std::max(A1, std::abs(out.coeffs[m - 1]) / std::pow(m, k));
  for (int m = 1; m <= m_max; ++m) {
    const double amp = std::exp(2 * kPi * m * y);
    const double alias = A1 * std::pow(m + N, k) * std::exp(-2 * kPi * N * y);
    out.coeff_error[m - 1] = amp * err_f + alias + amp * kEps * fmax;
    if (!std::isfinite(out.coeff_error[m - 1]))
      throw BudgetInfeasible("fourier_coeffs: non-finite error budget");
    out.est_error = std::max(out.est_error, out.coeff_error[m - 1]);
  }
  return out;
}

cplx series_eval(const CoeffSeries& s, const Point& tau) {
  cplx acc;
  const cplx q = std::exp(cplx(0, 2 * kPi) * tau.tau());
  cplx qn = q;
  for (int n = 1; n <= s.m_max(); ++n, qn *= q) acc += s.coeffs[n - 1] * qn;
  return acc;
}

cplx eichler_holo(const CoeffSeries& s, const Point& tau) {
  cplx acc;
  const cplx q = std::exp(cplx(0, 2 * kPi) * tau.tau());
  cplx qn = q;
  for (int n = 1; n <= s.m_max(); ++n, qn *= q)
    acc += s.coeffs[n - 1] * std::pow(static_cast<double>(n), 1.0 - 2 * s.k) * qn;
  return acc;
}

cplx eichler_nonholo_series(const CoeffSeries& s, const Point& tau) {
  const int k = s.k;
  cplx acc;
  for (int n = 1; n <= s.m_max(); ++n) {
    const double g = upper_incomplete_gamma_scaled(2 * k - 1, 4 * kPi * n * tau.y, 2 * kPi * n * tau.y);
    const cplx phase = std::exp(cplx(0, -2 * kPi * n * tau.x));
    acc += std::conj(s.coeffs[n - 1]) * std::pow(static_cast<double>(n), 1.0 - 2 * k) * g * phase;
  }
  return -std::pow(4 * kPi, 1.0 - 2 * k) * acc;
}

EichlerValue eichler_nonholo(const CoeffSeries& s, const Point& tau, const EvalParams& params) {
  const int k = s.k;
  const double x = tau.x, y = tau.y;
  const int M = s.m_max();
  if (M == 0) return {};
  const double ycut = std::max(params.y_cut, y + 1.0);
  std::vector<cplx> cc(M);
  for (int n = 1; n <= M; ++n) cc[n - 1] = std::conj(s.coeffs[n - 1]) * std::exp(cplx(0, -2 * kPi * n * x));
  // f^c(-x + i h) (h + y)^{2k-2}
  auto integrand = [&](double h) {
    cplx acc;
    const double e1 = std::exp(-2 * kPi * h);
    double en = e1;
    for (int n = 1; n <= M; ++n, en *= e1) acc += cc[n - 1] * en;
    return acc * std::pow(h + y, 2 * k - 2);
  };
  const auto q = detail::integrate(integrand, y, ycut, 1e-14);
  // exact remainder above ycut
  cplx tail;
  for (int n = 1; n <= M; ++n)
    tail += cc[n - 1] * std::pow(2 * kPi * n, 1.0 - 2 * k) *
            upper_incomplete_gamma_scaled(2 * k - 1, 2 * kPi * n * (ycut + y), 2 * kPi * n * y);
  const double scale = std::ldexp(1.0, 1 - 2 * k);
  double cerr = 0.0;
  for (int n = 1; n <= M; ++n) {
    const double basis = std::pow(2 * kPi * n, 1.0 - 2 * k) *
                         upper_incomplete_gamma_scaled(2 * k - 1, 4 * kPi * n * y, 2 * kPi * n * y);
    const double ce = s.coeff_error.empty() ? 0.0 : s.coeff_error[n - 1];
    cerr += ce * basis;
  }
  EichlerValue out;
  out.value = -scale * (q.value + tail);
  out.error = scale * (q.error + cerr) + 8 * kEps * std::abs(out.value);
  return out;
}

}  // namespace lochmf
