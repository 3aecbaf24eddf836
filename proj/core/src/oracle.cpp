#include "netmode/oracle.hpp"

#include <algorithm>

#include "netmode/errors.hpp"

namespace netmode {

namespace {

struct SearchState {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::uint8_t> used_out, used_in;
    std::vector<std::pair<NodeId, NodeId>> current;
    std::int64_t steps = 0;
    std::int64_t step_limit = 0;

    std::int64_t best = 0;
    // Union of unmatched in-copies over all matchings of size `best`,
    // tracked as a bitmap and rebuilt whenever `best` improves.
    std::vector<std::uint8_t> in_matched_always;
    bool any_best = false;

    std::int64_t cap = 0;
    bool collect = false;
    bool truncated = false;
    std::vector<std::vector<std::pair<NodeId, NodeId>>> collected;

    void record() {
        const auto size = static_cast<std::int64_t>(current.size());
        if (size < best) return;
        if (size > best) {
            best = size;
            any_best = false;
            collected.clear();
            truncated = false;
        }
        if (!any_best) {
            in_matched_always.assign(used_in.begin(), used_in.end());
            any_best = true;
        } else {
            for (std::size_t v = 0; v < used_in.size(); ++v)
                in_matched_always[v] &= used_in[v];
        }
        if (collect) {
            if (static_cast<std::int64_t>(collected.size()) < cap)
                collected.push_back(current);
            else
                truncated = true;
        }
    }

    void dfs(std::size_t next) {
        if (++steps > step_limit) throw TooLarge("matching enumeration exceeded step budget");
        // Bound: even matching every remaining edge cannot beat `best`.
        if (static_cast<std::int64_t>(current.size() + (edges.size() - next)) < best) return;
        if (next == edges.size()) {
            record();
            return;
        }
        const auto [u, v] = edges[next];
        if (!used_out[u] && !used_in[v]) {
            used_out[u] = used_in[v] = 1;
            current.push_back(edges[next]);
            dfs(next + 1);
            current.pop_back();
            used_out[u] = used_in[v] = 0;
        }
        dfs(next + 1);
    }
};

SearchState run_search(const DirectedGraph& graph, bool collect, std::int64_t cap,
                       const OracleBudget& budget) {
    if (graph.node_count() > budget.max_nodes && graph.edge_count() > budget.max_edges)
        throw TooLarge("graph exceeds oracle budget (" + std::to_string(graph.node_count()) +
                       " nodes, " + std::to_string(graph.edge_count()) + " edges)");

    SearchState s;
    s.edges = graph.edges();
    s.used_out.assign(static_cast<std::size_t>(graph.node_count()), 0);
    s.used_in.assign(static_cast<std::size_t>(graph.node_count()), 0);
    s.step_limit = budget.max_steps;
    s.cap = cap;
    s.collect = collect;
    s.dfs(0);
    return s;
}

}  // namespace

OracleResult enumerate_maximum_matchings(const DirectedGraph& graph, std::int64_t cap,
                                         const OracleBudget& budget) {
    SearchState s = run_search(graph, true, cap, budget);
    OracleResult result;
    result.max_size = s.best;
    result.matchings = std::move(s.collected);
    std::sort(result.matchings.begin(), result.matchings.end());
    result.truncated = s.truncated;
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (!s.in_matched_always[static_cast<std::size_t>(v)]) result.input_nodes.push_back(v);
    return result;
}

OracleClassification oracle_classification(const DirectedGraph& graph,
                                           const OracleBudget& budget) {
    SearchState s = run_search(graph, false, 0, budget);
    OracleClassification c;
    c.max_size = s.best;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        if (!s.in_matched_always[static_cast<std::size_t>(v)])
            c.input.push_back(v);
        else
            c.redundant.push_back(v);
    }
    c.n_d = std::max<std::int64_t>(1, graph.node_count() - s.best);
    return c;
}

}  // namespace netmode
