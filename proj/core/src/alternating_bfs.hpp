#pragma once

// Internal alternating-BFS shared by classification and rewiring. Not
// installed. The optional (skip_from, skip_to) pair makes the traversal
// ignore one bipartite edge, used to evaluate predicates on a graph
// "as if" an in-edge had already been removed.

#include "netmode/classification.hpp"
#include "netmode/graph.hpp"
#include "netmode/matching.hpp"

namespace netmode::detail {

inline AlternatingReach alternating_reach_impl(const DirectedGraph& graph, const Matching& m,
                                               ReachSide side, bool include_sources,
                                               NodeId skip_from = kNoNode,
                                               NodeId skip_to = kNoNode) {
    const NodeId n = graph.node_count();
    std::vector<std::uint8_t> vis_in(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> vis_out(static_cast<std::size_t>(n), 0);
    AlternatingReach reach;
    reach.in_copies.assign(static_cast<std::size_t>(n), 0);
    reach.out_copies.assign(static_cast<std::size_t>(n), 0);

    std::vector<std::pair<bool, NodeId>> queue;  // (true = in-copy, node)

    if (side == ReachSide::FromUnmatchedIn) {
        for (NodeId v = 0; v < n; ++v) {
            if (m.in_matched(v)) continue;
            vis_in[v] = 1;
            reach.sources.push_back(v);
            if (include_sources) reach.in_copies[v] = 1;
            queue.emplace_back(true, v);
        }
    } else {
        for (NodeId u = 0; u < n; ++u) {
            if (m.out_matched(u)) continue;
            vis_out[u] = 1;
            reach.sources.push_back(u);
            if (include_sources) reach.out_copies[u] = 1;
            queue.emplace_back(false, u);
        }
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto [at_in, x] = queue[head];
        if (side == ReachSide::FromUnmatchedIn) {
            if (at_in) {
                // Leave an in-copy along its non-matched edges.
                for (NodeId u : graph.in_neighbors(x)) {
                    if (u == m.in_partner(x) || vis_out[u]) continue;
                    if (u == skip_from && x == skip_to) continue;
                    vis_out[u] = 1;
                    reach.out_copies[u] = 1;
                    queue.emplace_back(false, u);
                }
            } else {
                // Leave an out-copy only along its matched edge.
                const NodeId w = m.out_partner(x);
                if (w == kNoNode || vis_in[w]) continue;
                if (x == skip_from && w == skip_to) continue;
                vis_in[w] = 1;
                reach.in_copies[w] = 1;
                queue.emplace_back(true, w);
            }
        } else {
            if (!at_in) {
                for (NodeId v : graph.out_neighbors(x)) {
                    if (v == m.out_partner(x) || vis_in[v]) continue;
                    if (x == skip_from && v == skip_to) continue;
                    vis_in[v] = 1;
                    reach.in_copies[v] = 1;
                    queue.emplace_back(true, v);
                }
            } else {
                const NodeId w = m.in_partner(x);
                if (w == kNoNode || vis_out[w]) continue;
                if (w == skip_from && x == skip_to) continue;
                vis_out[w] = 1;
                reach.out_copies[w] = 1;
                queue.emplace_back(false, w);
            }
        }
    }
    return reach;
}

}  // namespace netmode::detail
