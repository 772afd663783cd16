#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace lochmf {

// All b in [0, 2a) with b^2 = D (mod 4a), for every 1 <= a <= a_max.
// Built multiplicatively: Tonelli-Shanks plus Hensel lifting on odd prime
// powers coprime to D, brute force on the rest, glued by CRT.
class ResidueTable {
 public:
  ResidueTable(std::int64_t D, std::int64_t a_max);

  std::int64_t D() const { return D_; }
  std::int64_t a_max() const { return a_max_; }
  std::span<const std::int64_t> roots(std::int64_t a) const {
    return {flat_.data() + offsets_[a], flat_.data() + offsets_[a + 1]};
  }
  std::int64_t offset(std::int64_t a) const { return offsets_[a]; }
  std::int64_t count(std::int64_t a) const { return offsets_[a + 1] - offsets_[a]; }

  // Shared, lock-protected cache keyed by D; grows on demand.
  static std::shared_ptr<const ResidueTable> get(std::int64_t D, std::int64_t a_max);

 private:
  std::int64_t D_, a_max_;
  std::vector<std::int64_t> offsets_;
  std::vector<std::int64_t> flat_;
};

// #{b mod 2a : b^2 = D mod 4a} by brute force; test oracle and small-a helper.
std::int64_t count_roots_brute(std::int64_t D, std::int64_t a);

}  // namespace lochmf
