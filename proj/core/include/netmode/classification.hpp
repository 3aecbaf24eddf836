#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netmode/graph.hpp"
#include "netmode/matching.hpp"
#include "netmode/types.hpp"

namespace netmode {

enum class NodeLabel : std::uint8_t { Input, Redundant };

enum class ReachSide : std::uint8_t { FromUnmatchedIn, FromUnmatchedOut };

/// Copies reachable by alternating paths from the unmatched copies of one
/// side. Bitmaps are indexed by node id; sources are listed separately
/// and excluded from the bitmaps unless include_sources is set.
struct AlternatingReach {
    std::vector<std::uint8_t> in_copies;
    std::vector<std::uint8_t> out_copies;
    std::vector<NodeId> sources;
};

/// Multi-source alternating traversal. FromUnmatchedIn starts at unmatched
/// in-copies, leaves an in-copy only along non-matched edges and an
/// out-copy only along its matched edge; FromUnmatchedOut is the mirror.
AlternatingReach alternating_reach(const DirectedGraph& graph, const Matching& m,
                                   ReachSide side, bool include_sources = false);

struct ControlClassification {
    std::vector<NodeLabel> labels;
    std::vector<std::uint8_t> is_driver;
    std::vector<std::uint8_t> reach_in;   // in-copy reachable from an unmatched in-copy
    std::vector<std::uint8_t> reach_out;  // out-copy reachable from an unmatched out-copy
    std::int64_t input_count = 0;
    bool perfect_matching = false;

    bool is_input(NodeId v) const { return labels[static_cast<std::size_t>(v)] == NodeLabel::Input; }
};

/// A node is Input iff its in-copy is unmatched or alternating-reachable
/// from an unmatched in-copy; otherwise Redundant.
ControlClassification classify_nodes(const DirectedGraph& graph, const Matching& m);

enum class ComponentKind : std::uint8_t { Input, Matched };

/// A maximal set of in-copies connected through chains of alternating
/// paths. Input kind iff it contains a driver.
struct AlternatingComponent {
    std::int32_t id = 0;
    std::vector<NodeId> members;   // nodes whose in-copy belongs to the component
    std::vector<NodeId> out_span;  // nodes whose out-copy touches a member in-copy
    std::vector<NodeId> drivers;   // members with unmatched in-copy
    ComponentKind kind = ComponentKind::Matched;

    std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
};

/// Partitions all in-copies; two in-copies are joined whenever some
/// out-copy carries a non-matched edge to one and its matched edge to the
/// other. Components are ordered (and ids assigned) by smallest member.
std::vector<AlternatingComponent> alternating_components(const DirectedGraph& graph,
                                                         const Matching& m);

/// Input component with the most members; ties break to the smallest
/// minimum member id. Throws NoInputComponent.
const AlternatingComponent& largest_input_component(
    std::span<const AlternatingComponent> components);

enum class ControlMode : std::uint8_t { Distributed, Centralized, Neutral };

struct ControlReport {
    std::int64_t n = 0;
    std::int64_t l = 0;
    std::int64_t n_d = 1;
    double in_fraction = 0.0;
    double ic_max = 0.0;
    ControlMode mode = ControlMode::Neutral;
    std::vector<std::pair<std::int64_t, std::int64_t>> component_sizes;  // (size, count)
    bool perfect_matching = false;
};

/// Summary metrics; mode compares in_fraction against the threshold
/// (above: distributed, below: centralized, equal: neutral).
ControlReport control_report(const DirectedGraph& graph, const Matching& m,
                             double mode_threshold = 0.5);

std::string to_string(ControlMode mode);
std::string to_string(NodeLabel label);

/// JSON object with keys n, l, n_d, in_fraction, ic_max, mode,
/// component_sizes, perfect_matching; per-node labels when cls is given.
std::string report_json(const ControlReport& report);
std::string report_json(const ControlReport& report, const ControlClassification& cls,
                        const DirectedGraph* names_from = nullptr);

}  // namespace netmode
