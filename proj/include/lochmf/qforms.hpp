#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lochmf/core.hpp"

namespace lochmf {

struct QForm {
  i64 a = 0, b = 0, c = 0;

  QForm operator-() const { return {-a, -b, -c}; }
  auto operator<=>(const QForm&) const = default;
  std::string str() const;
};

i64 disc(const QForm& Q);
QForm q_apply(const QForm& Q, const IMat2& g);
cplx q_eval(const QForm& Q, cplx tau);
inline cplx q_eval(const QForm& Q, const Point& p) { return q_eval(Q, p.tau()); }
double geodesic_value(const QForm& Q, const Point& p);
CPoly q_poly(const QForm& Q);  // a X^2 + b X + c
IPoly q_ipoly(const QForm& Q);

bool is_reduced(const QForm& Q);

struct Reduction {
  QForm form;  // reduced
  IMat2 gamma;  // Q o gamma == form
};
Reduction reduce(const QForm& Q);

struct NarrowClass {
  QForm representative;  // lexicographically least reduced form of the cycle
  std::vector<QForm> cycle;  // right-neighbour orbit starting at representative
  i64 D = 0;

  bool contains(const QForm& Q) const;
};

NarrowClass reduce_cycle(const QForm& Q);
bool equivalent(const QForm& Q1, const QForm& Q2);
std::vector<NarrowClass> narrow_class_reps(const Discriminant& D);

// Visits [a, b0 + 2 a n, c] and its negative for 1 <= a <= a_max,
// b0 ranging over roots of D mod 4a in [0, 2a), |n| <= n_max.
// Order: a, then b0, then n, then sign (+ before -).
void for_each_truncated_form(const Discriminant& D, const EvalParams& params,
                             const std::function<void(const QForm&)>& fn);
std::vector<QForm> forms_truncated(const Discriminant& D, const EvalParams& params);

struct ComponentSignature {
  std::vector<QForm> interior_forms;  // a < 0, geodesic_value > 0; sorted
  bool operator==(const ComponentSignature&) const = default;
  std::uint64_t hash() const;
};

ComponentSignature interior_forms(const Discriminant& D, const Point& tau);
std::vector<QForm> forms_a_neg_c_pos(const Discriminant& D);

// Forms whose geodesic passes within hyperbolic-free Euclidean distance
// `margin` of tau, paired with that distance. Each +-pair is listed once (a > 0).
struct WallHit {
  QForm Q;
  double distance;
};
std::vector<WallHit> walls_near(const Discriminant& D, const Point& tau, double margin);
double nearest_wall_distance(const Discriminant& D, const Point& tau);

RMat2 matrix_AQ(const QForm& Q);
int r_ab(const NarrowClass& A, i64 a, i64 b, int k);

}  // namespace lochmf
