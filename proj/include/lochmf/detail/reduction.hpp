#pragma once

#include <array>
#include <cstdint>

namespace lochmf::detail {

using Triple = std::array<std::int64_t, 3>;

// One Gauss right-neighbour step for an indefinite form of discriminant D
// (s = floor(sqrt D)). Returns the neighbour and the integer t of the
// transformation [[0,-1],[1,t]].
struct NeighbourStep {
  Triple form;
  std::int64_t t;
};
NeighbourStep rho(const Triple& q, std::int64_t D, std::int64_t s);

bool is_reduced(const Triple& q, std::int64_t s);

}  // namespace lochmf::detail
