#pragma once

#include <cstdint>

namespace netmode {

// Dense node identifier. Valid ids are in [0, node_count).
using NodeId = std::int32_t;

inline constexpr NodeId kNoNode = -1;

// Side of the bipartite split of a directed graph: every node v owns an
// out-copy (tail of its out-edges) and an in-copy (head of its in-edges).
enum class BipSide : std::uint8_t { Out, In };

struct BipCopy {
    BipSide side;
    NodeId node;

    friend bool operator==(const BipCopy&, const BipCopy&) = default;
};

}  // namespace netmode
