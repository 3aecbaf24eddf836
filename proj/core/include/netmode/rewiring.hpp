#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netmode/classification.hpp"
#include "netmode/graph.hpp"
#include "netmode/matching.hpp"
#include "netmode/types.hpp"

namespace netmode {

/// Outcome tag for one processed in-edge of a driver. Case4 means the
/// edge was removed without adding its reversal; Case1-3 describe how a
/// reversed edge relates to the target component (diagnostic only).
enum class CaseTag : std::uint8_t { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

struct RewireOp {
    EdgeOp op;       // Reverse(m,n) or Remove(m,n) of the original in-edge
    CaseTag tag;

    friend bool operator==(const RewireOp&, const RewireOp&) = default;
};

struct RewireOutcome {
    std::vector<RewireOp> ops;
    ControlReport report_before;
    ControlReport report_after;
    /// Snapshot of the component that was detached; empty when the graph
    /// had no input component.
    std::optional<AlternatingComponent> target_component;
    std::int64_t num_modified = 0;
    std::int64_t num_reversed = 0;
    std::int64_t num_removed = 0;
    double p_m = 0.0;       // num_modified / L
    double p_r = 0.0;       // num_reversed / num_modified (0 when no ops)
    double delta_nd = 0.0;  // (input count before - after) / N
    double delta_ic = 0.0;  // members flipped Input->Redundant / |members|
};

/// True when adding the reversed edge towards `source` would break
/// matching maximality or re-extend driver reachability: source's in-copy
/// is unmatched or alternating-reachable from an unmatched in-copy.
/// Evaluate on the graph state after the in-edge at hand was removed.
bool skip_add_condition(const DirectedGraph& graph, const Matching& m, NodeId source);

/// Variant used while detaching a driver set: reachability is taken only
/// from the unmatched in-copies that are NOT about to be detached. Reach
/// from the detached drivers dies with their in-edges, so counting it
/// would only force needless removals; reach from the surviving drivers
/// is what the final graph will still see.
bool skip_add_condition(const DirectedGraph& graph, const Matching& m, NodeId source,
                        std::span<const NodeId> detaching);

/// Diagnostic tag for reversing in-edge (source -> driver) of a component
/// driver. The edge must still be present; predicates are evaluated as if
/// it had just been removed. Throws NotADriver / EdgeNotFound.
CaseTag classify_reversal_case(const DirectedGraph& graph, const Matching& m,
                               const AlternatingComponent& component, NodeId source,
                               NodeId driver);

/// Processes every in-edge of `driver` (snapshot, ascending source id):
/// removes it, then either adds the reversed edge (Reverse, Case1-3) or
/// leaves it removed (Remove, Case4) when the skip condition (taken
/// against the component's driver set) holds or the reversed edge already
/// exists. The matching is never modified and stays maximum on the final
/// graph. Throws NotADriver.
std::vector<RewireOp> detach_driver(DirectedGraph& graph, const Matching& m,
                                    const AlternatingComponent& component, NodeId driver);

/// How often the surviving-driver reach consulted by the skip decision is
/// recomputed. It provably never changes during the run (removed edges
/// only ever started paths at the detached drivers' own in-copies, and
/// added edges are gated so no reach path crosses them), so all three
/// cadences produce identical op logs; the slower ones exist to check
/// exactly that.
enum class ReachRefresh : std::uint8_t { PerRun, PerDriver, PerEdge };

struct AlterOptions {
    double mode_threshold = 0.5;
    ReachRefresh refresh = ReachRefresh::PerRun;
};

/// Detaches every driver of the largest input component by reversing (or,
/// when unsafe, removing) its in-edges, in ascending driver id order.
/// Afterwards reclassifies from scratch and asserts that every former
/// member outside the component's driver set is Redundant, that the
/// drivers are isolated in-copies still labeled Input, and that the
/// driver count is unchanged; throws PostConditionViolation otherwise.
/// Returns a no-op outcome when there is no input component.
RewireOutcome alter_to_centralized(DirectedGraph& graph, const AlterOptions& options = {});

/// One row of the real-network results table.
struct TableRecord {
    std::int64_t n = 0;
    std::int64_t l = 0;
    double ic_max_before = 0.0;
    double p_m = 0.0;
    double p_r = 0.0;
    double delta_nd = 0.0;
    double delta_ic = 0.0;
};

/// Throws MismatchedGraphs when the reports disagree on the node set.
TableRecord rewire_metrics(const ControlReport& before, const ControlReport& after,
                           const RewireOutcome& outcome);

std::string outcome_json(const RewireOutcome& outcome);
std::string record_json(const TableRecord& record);

}  // namespace netmode
