// One line per acceptance criterion. Tolerances live in verify.cpp and are
// echoed per record; a criterion passes only when every record passes.
#include <cstdio>
#include <map>
#include <vector>

#include "lochmf/verify.hpp"

int main() {
  using namespace lochmf;
  const VerifyConfig cfg = default_config();
  std::map<int, std::vector<CheckRecord>> by;
  for (int c : cfg.criteria) by[c];
  for (auto& r : run_all(cfg)) by[r.criterion].push_back(std::move(r));
  int failed = 0;
  for (const auto& [c, recs] : by) {
    bool pass = !recs.empty();
    // the record closest to its tolerance
    double ratio = -1.0, worst = 0.0, tol = 0.0, runtime = 0.0;
    for (const auto& r : recs) {
      pass = pass && r.pass;
      runtime += r.runtime;
      if (r.tolerance > 0.0 && r.metric / r.tolerance > ratio) {
        ratio = r.metric / r.tolerance;
        worst = r.metric;
        tol = r.tolerance;
      }
    }
    std::printf("%s  %2d  %-44s records=%zu", pass ? "PASS" : "FAIL", c, criterion_title(c).c_str(), recs.size());
    if (tol > 0.0) std::printf("  worst_metric=%.3g tolerance=%.3g", worst, tol);
    std::printf("  runtime=%.2fs\n", runtime);
    for (const auto& r : recs) {
      if (r.pass) continue;
      std::printf("      failed: %s %s residual=%.4g budget=%.4g metric=%.4g tolerance=%.3g\n", r.name.c_str(),
                  r.params.dump().c_str(), r.residual, r.budget, r.metric, r.tolerance);
      if (r.detail.is_object() && r.detail.contains("residual_opposite_sign"))
        std::printf("      diagnostic: residual with the sum added instead of subtracted = %.4g\n",
                    r.detail["residual_opposite_sign"].get<double>());
    }
    if (!pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(by.size()) - failed, by.size());
  return failed == 0 ? 0 : 1;
}
