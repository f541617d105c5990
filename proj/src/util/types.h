#pragma once

#include <cstdint>
#include <limits>

namespace mmhp {

using NodeID = std::uint32_t;
using EdgeID = std::uint32_t;
using BlockID = std::int32_t;
using Weight = std::int64_t;
using Gain = std::int64_t;

inline constexpr BlockID kInvalidBlock = -1;
inline constexpr NodeID kInvalidNode = std::numeric_limits<NodeID>::max();

}  // namespace mmhp
