#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lochmf/core.hpp"
#include "lochmf/qforms.hpp"

namespace lochmf {

// residual is compared with a budget assembled from tail, quadrature and
// finite-difference error estimates. When a criterion also fixes a tolerance,
// metric (the quantity the criterion names) must stay below it as well.
struct CheckRecord {
  int criterion = 0;  // acceptance criterion number, 0 for ad hoc checks
  std::string name;
  nlohmann::json params;
  double residual = 0.0;
  double budget = 0.0;
  double metric = 0.0;
  double tolerance = 0.0;  // <= 0: none
  bool pass = false;
  double runtime = 0.0;  // seconds
  nlohmann::json detail;

  void finalize() {
    pass = residual <= budget && (tolerance <= 0.0 || metric <= tolerance);
  }
};

nlohmann::json to_json(const CheckRecord& r);

// |(c tau + d)^{2k-2} F(gamma tau) - F(tau)|
CheckRecord check_modularity(int k, const Discriminant& D, const IMat2& gamma, const Point& tau,
                             const EvalParams& params);
// xi_{2-2k} F by central differences with one Richardson level against
// D^{1/2-k} f_{k,D}; the O(h^2) trend over three coarse steps goes into detail.
CheckRecord check_xi(int k, const Discriminant& D, const Point& tau, const EvalParams& params,
                     double h = 1e-4);
// F against c_inf + D^{1/2-k} f* - D^{1/2-k} (2k-2)!/(4 pi)^{2k-1} E_f on the
// component containing i*infinity. metric is residual / |F - c_inf|.
CheckRecord check_expansion(int k, const Discriminant& D, const Point& tau, const EvalParams& params,
                            int m_max = 6);
// Hyperbolic Laplacian of weight 2-2k by central differences; metric is the
// residual relative to the sum of the magnitudes of its terms and |F|.
CheckRecord check_laplacian(int k, const Discriminant& D, const Point& tau, const EvalParams& params,
                            double h = 1e-3);
// |F(iy) - c_inf| on y in [3, 30] against the cusp-form part predicted by the
// expansion plus all error bounds.
CheckRecord check_growth(int k, const Discriminant& D, const EvalParams& params);
// Two-sided limits at tau0 on S_Q, extrapolated from w = w0 2^{-j}: the jump
// against wall_jump and the average against the on-wall value.
std::vector<CheckRecord> check_wall(int k, const Discriminant& D, const QForm& Q, const Point& tau0,
                                    const EvalParams& params, double w0 = 1e-2, int levels = 6);

struct VerifyConfig {
  std::vector<int> criteria;  // acceptance criteria to run, 1..11
  EvalParams params;
  unsigned seed = 20240607;
  int samples = 1000;  // random samples for the cocycle identity
};

// All eleven criteria.
VerifyConfig default_config();

int criterion_count();
std::string criterion_title(int c);

// Records in ascending criterion order.
std::vector<CheckRecord> run_all(const VerifyConfig& config);
std::vector<CheckRecord> run_criterion(int c, const VerifyConfig& config);

}  // namespace lochmf
