#include "netmode/classification.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "alternating_bfs.hpp"
#include "json_builders.hpp"
#include "netmode/errors.hpp"

namespace netmode {

namespace {

struct UnionFind {
    std::vector<NodeId> parent;

    explicit UnionFind(NodeId n) : parent(static_cast<std::size_t>(n)) {
        for (NodeId i = 0; i < n; ++i) parent[i] = i;
    }

    NodeId find(NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];  // path halving
            x = parent[x];
        }
        return x;
    }

    void unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // smaller id wins: stable component roots
        parent[b] = a;
    }
};

}  // namespace

AlternatingReach alternating_reach(const DirectedGraph& graph, const Matching& m,
                                   ReachSide side, bool include_sources) {
    require_matching_of(graph, m);
    return detail::alternating_reach_impl(graph, m, side, include_sources);
}

ControlClassification classify_nodes(const DirectedGraph& graph, const Matching& m) {
    require_matching_of(graph, m);
    const NodeId n = graph.node_count();

    AlternatingReach in_side =
        detail::alternating_reach_impl(graph, m, ReachSide::FromUnmatchedIn, false);
    AlternatingReach out_side =
        detail::alternating_reach_impl(graph, m, ReachSide::FromUnmatchedOut, false);

    ControlClassification cls;
    cls.labels.assign(static_cast<std::size_t>(n), NodeLabel::Redundant);
    cls.is_driver.assign(static_cast<std::size_t>(n), 0);
    cls.reach_in = std::move(in_side.in_copies);
    cls.reach_out = std::move(out_side.out_copies);
    for (NodeId v = 0; v < n; ++v) {
        const bool driver = !m.in_matched(v);
        cls.is_driver[v] = driver ? 1 : 0;
        if (driver || cls.reach_in[v]) {
            cls.labels[v] = NodeLabel::Input;
            ++cls.input_count;
        }
    }
    cls.perfect_matching = (m.size() == n);
    return cls;
}

std::vector<AlternatingComponent> alternating_components(const DirectedGraph& graph,
                                                         const Matching& m) {
    require_matching_of(graph, m);
    const NodeId n = graph.node_count();

    UnionFind uf(n);
    // One move: v_in --non-matched (u,v)--> u_out --matched (u,w)--> w_in.
    for (NodeId u = 0; u < n; ++u) {
        const NodeId w = m.out_partner(u);
        if (w == kNoNode) continue;
        for (NodeId v : graph.out_neighbors(u))
            if (v != w) uf.unite(v, w);
    }

    std::vector<std::int32_t> comp_index(static_cast<std::size_t>(n), -1);
    std::vector<AlternatingComponent> components;
    for (NodeId v = 0; v < n; ++v) {
        const NodeId root = uf.find(v);
        if (comp_index[root] == -1) {
            comp_index[root] = static_cast<std::int32_t>(components.size());
            components.emplace_back();
            components.back().id = comp_index[root];
        }
        AlternatingComponent& c = components[static_cast<std::size_t>(comp_index[root])];
        c.members.push_back(v);
        if (!m.in_matched(v)) c.drivers.push_back(v);
    }

    std::vector<std::int32_t> span_stamp(static_cast<std::size_t>(n), -1);
    for (auto& c : components) {
        c.kind = c.drivers.empty() ? ComponentKind::Matched : ComponentKind::Input;
        for (NodeId v : c.members)
            for (NodeId u : graph.in_neighbors(v))
                if (span_stamp[u] != c.id) {
                    span_stamp[u] = c.id;
                    c.out_span.push_back(u);
                }
        std::sort(c.out_span.begin(), c.out_span.end());
    }
    return components;
}

const AlternatingComponent& largest_input_component(
    std::span<const AlternatingComponent> components) {
    const AlternatingComponent* best = nullptr;
    for (const auto& c : components) {
        if (c.kind != ComponentKind::Input) continue;
        // Components come ordered by smallest member, so strict > is the
        // required tie-break.
        if (best == nullptr || c.size() > best->size()) best = &c;
    }
    if (best == nullptr) throw NoInputComponent("no input component (no unmatched in-copy)");
    return *best;
}

ControlReport control_report(const DirectedGraph& graph, const Matching& m,
                             double mode_threshold) {
    const ControlClassification cls = classify_nodes(graph, m);
    const auto components = alternating_components(graph, m);

    ControlReport report;
    report.n = graph.node_count();
    report.l = graph.edge_count();
    report.n_d = std::max<std::int64_t>(1, graph.node_count() - m.size());
    report.in_fraction = report.n == 0 ? 0.0
                                       : static_cast<double>(cls.input_count) /
                                             static_cast<double>(report.n);
    report.perfect_matching = cls.perfect_matching;

    std::int64_t largest_input = 0;
    std::map<std::int64_t, std::int64_t> histogram;
    for (const auto& c : components) {
        ++histogram[c.size()];
        if (c.kind == ComponentKind::Input) largest_input = std::max(largest_input, c.size());
    }
    report.ic_max = report.n == 0 ? 0.0
                                  : static_cast<double>(largest_input) /
                                        static_cast<double>(report.n);
    report.component_sizes.assign(histogram.begin(), histogram.end());

    if (report.in_fraction > mode_threshold)
        report.mode = ControlMode::Distributed;
    else if (report.in_fraction < mode_threshold)
        report.mode = ControlMode::Centralized;
    else
        report.mode = ControlMode::Neutral;
    return report;
}

std::string to_string(ControlMode mode) {
    switch (mode) {
        case ControlMode::Distributed: return "distributed";
        case ControlMode::Centralized: return "centralized";
        case ControlMode::Neutral: return "neutral";
    }
    return "unknown";
}

std::string to_string(NodeLabel label) {
    return label == NodeLabel::Input ? "input" : "redundant";
}

namespace detail {

nlohmann::json report_to_json(const ControlReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["l"] = report.l;
    j["n_d"] = report.n_d;
    j["in_fraction"] = report.in_fraction;
    j["ic_max"] = report.ic_max;
    j["mode"] = to_string(report.mode);
    j["perfect_matching"] = report.perfect_matching;
    auto sizes = nlohmann::json::array();
    for (const auto& [size, count] : report.component_sizes)
        sizes.push_back(nlohmann::json::array({size, count}));
    j["component_sizes"] = std::move(sizes);
    return j;
}

nlohmann::json component_to_json(const AlternatingComponent& component) {
    nlohmann::json j;
    j["id"] = component.id;
    j["kind"] = component.kind == ComponentKind::Input ? "input" : "matched";
    j["members"] = component.members;
    j["drivers"] = component.drivers;
    j["out_span"] = component.out_span;
    return j;
}

}  // namespace detail

std::string report_json(const ControlReport& report) {
    return detail::report_to_json(report).dump(2);
}

std::string report_json(const ControlReport& report, const ControlClassification& cls,
                        const DirectedGraph* names_from) {
    nlohmann::json j = detail::report_to_json(report);
    auto labels = nlohmann::json::array();
    for (NodeLabel label : cls.labels) labels.push_back(to_string(label));
    j["labels"] = std::move(labels);
    if (names_from != nullptr && names_from->has_labels())
        j["node_names"] = names_from->labels();
    return j.dump(2);
}

}  // namespace netmode
