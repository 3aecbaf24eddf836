#include "netmode/rewiring.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "alternating_bfs.hpp"
#include "json_builders.hpp"
#include "netmode/errors.hpp"

namespace netmode {

namespace {

// Reach from the unmatched in-copies that survive the detachment (those
// outside `excluded_sources`). This set is invariant across the whole
// run: a removed edge is an in-edge of a detached driver and could only
// ever start a path at that driver's own in-copy, and an added reversed
// edge is gated on its head being outside this very set, so no surviving
// path crosses it either. Computing it once up front is therefore exact.
std::vector<std::uint8_t> surviving_reach(const DirectedGraph& g, const Matching& m,
                                          const std::vector<std::uint8_t>& excluded_sources) {
    const NodeId n = g.node_count();
    std::vector<std::uint8_t> vis_in(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> vis_out(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<bool, NodeId>> queue;
    for (NodeId v = 0; v < n; ++v) {
        if (m.in_matched(v) || excluded_sources[v]) continue;
        vis_in[v] = 1;
        queue.emplace_back(true, v);
    }
    std::vector<std::uint8_t> reach(static_cast<std::size_t>(n), 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto [at_in, x] = queue[head];
        if (at_in) {
            for (NodeId u : g.in_neighbors(x)) {
                if (u == m.in_partner(x) || vis_out[u]) continue;
                vis_out[u] = 1;
                queue.emplace_back(false, u);
            }
        } else {
            const NodeId w = m.out_partner(x);
            if (w != kNoNode && !vis_in[w]) {
                vis_in[w] = 1;
                reach[w] = 1;
                queue.emplace_back(true, w);
            }
        }
    }
    return reach;
}

std::vector<std::uint8_t> mask_of(NodeId n, std::span<const NodeId> nodes) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
    for (NodeId v : nodes) mask[v] = 1;
    return mask;
}

// Live view of which out-copies an unmatched out-copy can reach by an
// alternating path. During a detachment run this set only grows: the
// removed edges are in-edges of unmatched in-copies, which are dead ends
// for this traversal direction, while every added edge may extend it.
// Feeding additions in as they happen keeps out-copy reachability exact
// for the whole run at linear total cost.
struct OutReachTracker {
    const Matching& m;
    std::vector<std::uint8_t> out_vis, in_vis;
    std::vector<std::pair<bool, NodeId>> queue;

    OutReachTracker(const DirectedGraph& g, const Matching& match) : m(match) {
        const auto n = static_cast<std::size_t>(g.node_count());
        out_vis.assign(n, 0);
        in_vis.assign(n, 0);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (!m.out_matched(u)) {
                out_vis[u] = 1;
                queue.emplace_back(false, u);
            }
        }
        expand(g);
    }

    void on_edge_added(const DirectedGraph& g, NodeId from, NodeId to) {
        if (!out_vis[from] || in_vis[to]) return;
        in_vis[to] = 1;
        queue.emplace_back(true, to);
        expand(g);
    }

    void expand(const DirectedGraph& g) {
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto [at_in, x] = queue[head];
            if (!at_in) {
                for (NodeId v : g.out_neighbors(x)) {
                    if (v == m.out_partner(x) || in_vis[v]) continue;
                    in_vis[v] = 1;
                    queue.emplace_back(true, v);
                }
            } else {
                const NodeId w = m.in_partner(x);
                if (w != kNoNode && !out_vis[w]) {
                    out_vis[w] = 1;
                    queue.emplace_back(false, w);
                }
            }
        }
        queue.clear();
    }
};

// Detachment loop for one driver: snapshot of its in-edges in ascending
// source order; each is removed and then either reversed or left
// removed. `skip` and `tag_of` see the post-removal graph.
std::vector<RewireOp> detach_loop(DirectedGraph& g, NodeId driver,
                                  const std::function<bool(NodeId)>& skip,
                                  const std::function<CaseTag(NodeId)>& tag_of,
                                  const std::function<void(NodeId)>& on_removed,
                                  const std::function<void(NodeId)>& on_reversed) {
    std::vector<RewireOp> ops;
    const std::vector<NodeId> sources = g.in_neighbors(driver);
    ops.reserve(sources.size());
    for (NodeId src : sources) {
        g.remove_edge(src, driver);
        if (on_removed) on_removed(src);
        if (skip(src) || g.has_edge(driver, src)) {
            ops.push_back({EdgeOp::remove(src, driver), CaseTag::Case4});
            continue;
        }
        const CaseTag tag = tag_of(src);
        g.add_edge(driver, src);
        if (on_reversed) on_reversed(src);
        ops.push_back({EdgeOp::reverse(src, driver), tag});
    }
    return ops;
}

bool contains(const std::vector<NodeId>& sorted, NodeId x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

bool skip_add_condition(const DirectedGraph& graph, const Matching& m, NodeId source) {
    require_matching_of(graph, m);
    if (!m.in_matched(source)) return true;
    const AlternatingReach reach =
        detail::alternating_reach_impl(graph, m, ReachSide::FromUnmatchedIn, false);
    return reach.in_copies[static_cast<std::size_t>(source)] != 0;
}

bool skip_add_condition(const DirectedGraph& graph, const Matching& m, NodeId source,
                        std::span<const NodeId> detaching) {
    require_matching_of(graph, m);
    if (!m.in_matched(source)) return true;
    const auto reach =
        surviving_reach(graph, m, mask_of(graph.node_count(), detaching));
    return reach[static_cast<std::size_t>(source)] != 0;
}

CaseTag classify_reversal_case(const DirectedGraph& graph, const Matching& m,
                               const AlternatingComponent& component, NodeId source,
                               NodeId driver) {
    require_matching_of(graph, m);
    if (!contains(component.drivers, driver))
        throw NotADriver("node " + std::to_string(driver) +
                         " is not a driver of the component");
    if (!graph.has_edge(source, driver))
        throw EdgeNotFound("edge " + std::to_string(source) + "->" + std::to_string(driver) +
                           " not found");

    // All predicates below treat the edge (source -> driver) as removed;
    // the surviving reach never traverses it anyway (it could only start
    // a path at the driver's unmatched in-copy, which is not a source).
    if (!m.in_matched(source)) return CaseTag::Case4;
    const auto reach =
        surviving_reach(graph, m, mask_of(graph.node_count(), component.drivers));
    if (reach[static_cast<std::size_t>(source)]) return CaseTag::Case4;

    bool span = false;
    for (NodeId w : graph.out_neighbors(driver)) {
        if (contains(component.members, w)) {
            span = true;
            break;
        }
    }
    if (!contains(component.members, source) && !span) return CaseTag::Case1;
    if (!m.out_matched(driver)) return CaseTag::Case3;
    const AlternatingReach out_reach = detail::alternating_reach_impl(
        graph, m, ReachSide::FromUnmatchedOut, false, source, driver);
    return out_reach.out_copies[static_cast<std::size_t>(driver)] ? CaseTag::Case3
                                                                  : CaseTag::Case2;
}

std::vector<RewireOp> detach_driver(DirectedGraph& graph, const Matching& m,
                                    const AlternatingComponent& component, NodeId driver) {
    require_matching_of(graph, m);
    if (!contains(component.drivers, driver))
        throw NotADriver("node " + std::to_string(driver) +
                         " is not a driver of the component");

    const auto excluded = mask_of(graph.node_count(), component.drivers);
    auto skip = [&](NodeId src) {
        if (!m.in_matched(src)) return true;
        const auto reach = surviving_reach(graph, m, excluded);
        return reach[static_cast<std::size_t>(src)] != 0;
    };
    auto tag_of = [&](NodeId src) {
        bool span = false;
        for (NodeId w : graph.out_neighbors(driver)) {
            if (contains(component.members, w)) {
                span = true;
                break;
            }
        }
        if (!contains(component.members, src) && !span) return CaseTag::Case1;
        if (!m.out_matched(driver)) return CaseTag::Case3;
        const AlternatingReach reach =
            detail::alternating_reach_impl(graph, m, ReachSide::FromUnmatchedOut, false);
        return reach.out_copies[static_cast<std::size_t>(driver)] ? CaseTag::Case3
                                                                  : CaseTag::Case2;
    };
    return detach_loop(graph, driver, skip, tag_of, nullptr, nullptr);
}

RewireOutcome alter_to_centralized(DirectedGraph& graph, const AlterOptions& options) {
    if (graph.node_count() == 0) throw EmptyGraph("cannot rewire an empty graph");

    const Matching m = maximum_matching(graph);
    const ControlClassification before_cls = classify_nodes(graph, m);
    const auto components = alternating_components(graph, m);

    RewireOutcome out;
    out.report_before = control_report(graph, m, options.mode_threshold);

    const AlternatingComponent* target = nullptr;
    for (const auto& c : components)
        if (c.kind == ComponentKind::Input && (target == nullptr || c.size() > target->size()))
            target = &c;
    if (target == nullptr) {
        out.report_after = out.report_before;
        return out;
    }
    out.target_component = *target;

    const NodeId n = graph.node_count();
    std::vector<std::uint8_t> member_mask(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> dn_mask(static_cast<std::size_t>(n), 0);
    for (NodeId v : target->members) member_mask[v] = 1;
    for (NodeId d : target->drivers) dn_mask[d] = 1;
    const std::vector<NodeId>& dn = target->drivers;  // ascending order

    std::vector<std::uint8_t> reach = surviving_reach(graph, m, dn_mask);
    OutReachTracker out_reach(graph, m);

    for (NodeId driver : dn) {
        if (options.refresh == ReachRefresh::PerDriver)
            reach = surviving_reach(graph, m, dn_mask);

        std::int64_t span_count = 0;
        for (NodeId w : graph.out_neighbors(driver))
            if (member_mask[w]) ++span_count;

        auto skip = [&](NodeId src) -> bool {
            if (!m.in_matched(src)) return true;
            if (options.refresh == ReachRefresh::PerEdge)
                reach = surviving_reach(graph, m, dn_mask);
            return reach[static_cast<std::size_t>(src)] != 0;
        };
        auto tag_of = [&](NodeId src) -> CaseTag {
            if (!member_mask[src] && span_count == 0) return CaseTag::Case1;
            return out_reach.out_vis[static_cast<std::size_t>(driver)] ? CaseTag::Case3
                                                                       : CaseTag::Case2;
        };
        // A removed self-loop also leaves the driver's out-adjacency.
        auto on_removed = [&](NodeId src) {
            if (src == driver) --span_count;
        };
        auto on_reversed = [&](NodeId src) {
            if (member_mask[src]) ++span_count;
            out_reach.on_edge_added(graph, driver, src);
        };

        auto ops = detach_loop(graph, driver, skip, tag_of, on_removed, on_reversed);
        out.ops.insert(out.ops.end(), ops.begin(), ops.end());
    }

    for (const auto& rop : out.ops) {
        if (rop.op.kind == EdgeOp::Kind::Reverse)
            ++out.num_reversed;
        else
            ++out.num_removed;
    }
    out.num_modified = out.num_reversed + out.num_removed;

    const Matching m_after = maximum_matching(graph);
    const ControlClassification after_cls = classify_nodes(graph, m_after);
    out.report_after = control_report(graph, m_after, options.mode_threshold);

    std::vector<NodeId> violations;
    for (NodeId v : target->members) {
        if (dn_mask[v]) {
            if (!graph.in_neighbors(v).empty() || after_cls.labels[v] != NodeLabel::Input)
                violations.push_back(v);
        } else if (after_cls.labels[v] != NodeLabel::Redundant) {
            violations.push_back(v);
        }
    }
    if (!violations.empty())
        throw PostConditionViolation("detached component members kept or gained input status",
                                     violations);
    if (out.report_after.n_d != out.report_before.n_d)
        throw PostConditionViolation("driver count changed by rewiring", {});

    if (out.report_before.l > 0)
        out.p_m = static_cast<double>(out.num_modified) /
                  static_cast<double>(out.report_before.l);
    if (out.num_modified > 0)
        out.p_r = static_cast<double>(out.num_reversed) /
                  static_cast<double>(out.num_modified);
    out.delta_nd = static_cast<double>(before_cls.input_count - after_cls.input_count) /
                   static_cast<double>(n);

    std::int64_t flipped = 0;
    for (NodeId v : target->members)
        if (before_cls.labels[v] == NodeLabel::Input &&
            after_cls.labels[v] == NodeLabel::Redundant)
            ++flipped;
    out.delta_ic =
        static_cast<double>(flipped) / static_cast<double>(target->members.size());
    return out;
}

TableRecord rewire_metrics(const ControlReport& before, const ControlReport& after,
                           const RewireOutcome& outcome) {
    if (before.n != after.n)
        throw MismatchedGraphs("reports cover different node sets (" +
                               std::to_string(before.n) + " vs " + std::to_string(after.n) +
                               ")");
    TableRecord record;
    record.n = before.n;
    record.l = before.l;
    record.ic_max_before = before.ic_max;
    record.p_m = outcome.p_m;
    record.p_r = outcome.p_r;
    record.delta_nd = outcome.delta_nd;
    record.delta_ic = outcome.delta_ic;
    return record;
}

std::string outcome_json(const RewireOutcome& outcome) {
    nlohmann::json j;
    auto ops = nlohmann::json::array();
    for (const auto& rop : outcome.ops) {
        nlohmann::json entry;
        entry["op"] = rop.op.kind == EdgeOp::Kind::Reverse ? "reverse" : "remove";
        entry["from"] = rop.op.from;
        entry["to"] = rop.op.to;
        entry["case"] = static_cast<int>(rop.tag);
        ops.push_back(std::move(entry));
    }
    j["ops"] = std::move(ops);
    j["report_before"] = detail::report_to_json(outcome.report_before);
    j["report_after"] = detail::report_to_json(outcome.report_after);
    j["target_component"] = outcome.target_component.has_value()
                                ? detail::component_to_json(*outcome.target_component)
                                : nlohmann::json(nullptr);
    j["num_modified"] = outcome.num_modified;
    j["num_reversed"] = outcome.num_reversed;
    j["num_removed"] = outcome.num_removed;
    j["p_m"] = outcome.p_m;
    j["p_r"] = outcome.p_r;
    j["delta_nd"] = outcome.delta_nd;
    j["delta_ic"] = outcome.delta_ic;
    return j.dump(2);
}

std::string record_json(const TableRecord& record) {
    nlohmann::json j;
    j["n"] = record.n;
    j["l"] = record.l;
    j["ic_max_before"] = record.ic_max_before;
    j["p_m"] = record.p_m;
    j["p_r"] = record.p_r;
    j["delta_nd"] = record.delta_nd;
    j["delta_ic"] = record.delta_ic;
    return j.dump(2);
}

}  // namespace netmode
