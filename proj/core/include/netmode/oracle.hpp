#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netmode/graph.hpp"
#include "netmode/types.hpp"

namespace netmode {

/// Search limits for the exhaustive enumerator. An instance is accepted
/// when it satisfies max_nodes OR max_edges; max_steps bounds the DFS.
struct OracleBudget {
    NodeId max_nodes = 12;
    std::int64_t max_edges = 24;
    std::int64_t max_steps = 100'000'000;
};

struct OracleResult {
    std::int64_t max_size = 0;
    /// All maximum matchings (each a sorted pair list), canonically
    /// sorted, truncated at the requested cap.
    std::vector<std::vector<std::pair<NodeId, NodeId>>> matchings;
    /// Nodes left with an unmatched in-copy by at least one maximum
    /// matching; exact even when the stored list was truncated.
    std::vector<NodeId> input_nodes;
    bool truncated = false;
};

/// Depth-first enumeration of every maximum matching of the bipartite
/// view, with conflict pruning. Throws TooLarge beyond the budget.
OracleResult enumerate_maximum_matchings(const DirectedGraph& graph, std::int64_t cap,
                                         const OracleBudget& budget = {});

struct OracleClassification {
    std::vector<NodeId> input;
    std::vector<NodeId> redundant;
    std::int64_t n_d = 1;
    std::int64_t max_size = 0;
};

/// First-principles node classification: a node is input iff some
/// maximum matching leaves its in-copy unmatched. Throws TooLarge.
OracleClassification oracle_classification(const DirectedGraph& graph,
                                           const OracleBudget& budget = {});

}  // namespace netmode
