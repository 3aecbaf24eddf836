#include "netmode/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "netmode/errors.hpp"
#include "netmode/rng.hpp"

namespace netmode {

Matching::Matching(NodeId node_count, std::span<const std::pair<NodeId, NodeId>> pairs)
    : out_partner_(node_count, kNoNode), in_partner_(node_count, kNoNode) {
    for (const auto& [u, v] : pairs) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count)
            throw InvalidMatching("matched pair outside node range", {u, v});
        if (out_partner_[u] != kNoNode)
            throw InvalidMatching("out-copy " + std::to_string(u) + " used twice", {u, v});
        if (in_partner_[v] != kNoNode)
            throw InvalidMatching("in-copy " + std::to_string(v) + " used twice", {u, v});
        out_partner_[u] = v;
        in_partner_[v] = u;
        ++size_;
    }
}

Matching Matching::from_partners(std::vector<NodeId> out_partner,
                                 std::vector<NodeId> in_partner) {
    if (out_partner.size() != in_partner.size())
        throw InvalidMatching("partner maps of different length");
    const NodeId n = static_cast<NodeId>(out_partner.size());
    std::int64_t size = 0;
    for (NodeId u = 0; u < n; ++u) {
        const NodeId v = out_partner[u];
        if (v == kNoNode) continue;
        if (v < 0 || v >= n || in_partner[v] != u)
            throw InvalidMatching("partner maps are not mutually inverse", {u, v});
        ++size;
    }
    for (NodeId v = 0; v < n; ++v) {
        const NodeId u = in_partner[v];
        if (u != kNoNode && (u < 0 || u >= n || out_partner[u] != v))
            throw InvalidMatching("partner maps are not mutually inverse", {u, v});
    }
    Matching m;
    m.out_partner_ = std::move(out_partner);
    m.in_partner_ = std::move(in_partner);
    m.size_ = size;
    return m;
}

std::vector<std::pair<NodeId, NodeId>> Matching::pairs() const {
    std::vector<std::pair<NodeId, NodeId>> result;
    result.reserve(static_cast<std::size_t>(size_));
    for (NodeId u = 0; u < node_count(); ++u)
        if (out_partner_[u] != kNoNode) result.emplace_back(u, out_partner_[u]);
    return result;
}

namespace {

constexpr std::int32_t kInfDist = std::numeric_limits<std::int32_t>::max();

// Phased augmenting search over an adjacency view. `order` is the scan
// order of the out-side; adjacency lists are scanned as given.
Matching run_matching(NodeId n, const std::vector<std::vector<NodeId>>& adj,
                      const std::vector<NodeId>& order) {
    std::vector<NodeId> match_out(n, kNoNode), match_in(n, kNoNode);

    // Greedy seed pass.
    for (NodeId u : order) {
        for (NodeId v : adj[u]) {
            if (match_in[v] == kNoNode) {
                match_in[v] = u;
                match_out[u] = v;
                break;
            }
        }
    }

    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> queue(n);
    std::vector<std::uint32_t> cursor(n);
    // Explicit DFS stack: (out-copy, in-copy chosen to reach it).
    std::vector<std::pair<NodeId, NodeId>> stack;

    for (;;) {
        // BFS layering from unmatched out-copies.
        std::size_t head = 0, tail = 0;
        std::fill(dist.begin(), dist.end(), kInfDist);
        for (NodeId u : order) {
            if (match_out[u] == kNoNode) {
                dist[u] = 0;
                queue[tail++] = u;
            }
        }
        bool reachable_free_in = false;
        while (head < tail) {
            const NodeId u = queue[head++];
            for (NodeId v : adj[u]) {
                const NodeId w = match_in[v];
                if (w == kNoNode) {
                    reachable_free_in = true;
                } else if (dist[w] == kInfDist) {
                    dist[w] = dist[u] + 1;
                    queue[tail++] = w;
                }
            }
        }
        if (!reachable_free_in) break;

        // Layered DFS augmentation; one adjacency cursor per out-copy
        // keeps each phase linear in the edge count.
        std::fill(cursor.begin(), cursor.end(), 0u);
        for (NodeId root : order) {
            if (match_out[root] != kNoNode) continue;
            stack.clear();
            stack.emplace_back(root, kNoNode);
            while (!stack.empty()) {
                const NodeId u = stack.back().first;
                bool descended = false;
                while (cursor[u] < adj[u].size()) {
                    const NodeId v = adj[u][cursor[u]++];
                    const NodeId w = match_in[v];
                    if (w == kNoNode) {
                        // Augment along the stack.
                        NodeId carry = v;
                        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                            const NodeId su = it->first;
                            const NodeId prev = match_out[su];
                            match_out[su] = carry;
                            match_in[carry] = su;
                            carry = it->second;
                            (void)prev;
                        }
                        stack.clear();
                        descended = true;
                        break;
                    }
                    if (dist[w] == dist[u] + 1) {
                        stack.emplace_back(w, v);
                        descended = true;
                        break;
                    }
                }
                if (!descended) {
                    dist[u] = kInfDist;  // dead end for this phase
                    stack.pop_back();
                }
            }
        }
    }

    return Matching::from_partners(std::move(match_out), std::move(match_in));
}

}  // namespace

Matching maximum_matching(const DirectedGraph& graph) {
    const NodeId n = graph.node_count();
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId u = 0; u < n; ++u) adj[u] = graph.out_neighbors(u);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    return run_matching(n, adj, order);
}

Matching maximum_matching(const DirectedGraph& graph, std::uint64_t shuffle_seed) {
    const NodeId n = graph.node_count();
    std::mt19937_64 gen(shuffle_seed);
    std::vector<std::vector<NodeId>> adj(n);
    for (NodeId u = 0; u < n; ++u) {
        adj[u] = graph.out_neighbors(u);
        rng::shuffle(gen, adj[u]);
    }
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    rng::shuffle(gen, order);
    return run_matching(n, adj, order);
}

namespace {

MatchingDiagnostics check_and_search(const DirectedGraph& graph, const Matching& m) {
    MatchingDiagnostics d;
    const NodeId n = graph.node_count();

    if (m.node_count() != n) {
        d.status = MatchingDiagnostics::Status::Invalid;
        d.detail = "matching node count differs from graph";
        return d;
    }
    for (NodeId u = 0; u < n; ++u) {
        const NodeId v = m.out_partner(u);
        if (v == kNoNode) continue;
        if (!graph.has_edge(u, v)) {
            d.status = MatchingDiagnostics::Status::Invalid;
            d.detail = "matched pair is not an edge of the graph";
            d.violation = {u, v};
            return d;
        }
    }

    // Alternate from unmatched out-copies: non-matched edge to an in-copy,
    // then that in-copy's matched edge back to an out-copy. Reaching an
    // unmatched in-copy yields an augmenting path.
    std::vector<NodeId> parent_in(n, kNoNode);   // in-copy -> out-copy it was reached from
    std::vector<std::uint8_t> visited_out(n, 0);
    std::vector<NodeId> queue;
    for (NodeId u = 0; u < n; ++u) {
        if (!m.out_matched(u)) {
            visited_out[u] = 1;
            queue.push_back(u);
        }
    }
    std::vector<std::uint8_t> visited_in(n, 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId v : graph.out_neighbors(u)) {
            if (m.out_partner(u) == v) continue;  // matched edge: wrong parity
            if (visited_in[v]) continue;
            visited_in[v] = 1;
            parent_in[v] = u;
            const NodeId w = m.in_partner(v);
            if (w == kNoNode) {
                // Witness path: in-copy end first, back to the free out-copy.
                NodeId cv = v;
                for (;;) {
                    d.augmenting_path.push_back({BipSide::In, cv});
                    const NodeId pu = parent_in[cv];
                    d.augmenting_path.push_back({BipSide::Out, pu});
                    if (!m.out_matched(pu)) break;
                    cv = m.out_partner(pu);
                }
                d.status = MatchingDiagnostics::Status::NotMaximum;
                d.detail = "augmenting path of " +
                           std::to_string(d.augmenting_path.size() - 1) + " edges";
                return d;
            }
            if (!visited_out[w]) {
                visited_out[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return d;
}

}  // namespace

MatchingDiagnostics verify_maximum_matching(const DirectedGraph& graph, const Matching& m) {
    return check_and_search(graph, m);
}

MatchingDiagnostics verify_maximum_matching(const DirectedGraph& graph,
                                            std::span<const std::pair<NodeId, NodeId>> pairs) {
    try {
        const Matching m(graph.node_count(), pairs);
        return check_and_search(graph, m);
    } catch (const InvalidMatching& e) {
        MatchingDiagnostics d;
        d.status = MatchingDiagnostics::Status::Invalid;
        d.detail = e.what();
        if (e.has_pair()) d.violation = e.pair();
        return d;
    }
}

void require_matching_of(const DirectedGraph& graph, const Matching& m) {
    if (m.node_count() != graph.node_count())
        throw InvalidMatching("matching node count differs from graph");
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        const NodeId v = m.out_partner(u);
        if (v != kNoNode && !graph.has_edge(u, v))
            throw InvalidMatching("matched pair is not an edge of the graph", {u, v});
    }
}

UnmatchedSets extract_unmatched(const DirectedGraph& graph, const Matching& m) {
    require_matching_of(graph, m);
    UnmatchedSets sets;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (!m.in_matched(v)) sets.drivers.push_back(v);
        if (!m.out_matched(v)) sets.unsaturated.push_back(v);
    }
    sets.n_d = std::max<std::int64_t>(1, static_cast<std::int64_t>(sets.drivers.size()));
    return sets;
}

}  // namespace netmode
