#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netmode/graph.hpp"
#include "netmode/types.hpp"

namespace netmode {

/// A matching of the bipartite view (out-copies vs in-copies). Matched
/// pairs (u, v) correspond to directed edges u->v. Immutable once built;
/// the two partner maps are mutually inverse by construction.
class Matching {
public:
    Matching() = default;

    /// Builds from explicit pairs; throws InvalidMatching when an
    /// out-copy or in-copy is used twice.
    Matching(NodeId node_count, std::span<const std::pair<NodeId, NodeId>> pairs);

    /// Adopts partner maps; throws InvalidMatching unless mutually inverse.
    static Matching from_partners(std::vector<NodeId> out_partner,
                                  std::vector<NodeId> in_partner);

    NodeId node_count() const { return static_cast<NodeId>(out_partner_.size()); }
    std::int64_t size() const { return size_; }

    /// For node u, the v with matched pair (u, v); kNoNode if unmatched.
    NodeId out_partner(NodeId u) const { return out_partner_[u]; }
    /// For node v, the u with matched pair (u, v); kNoNode if unmatched.
    NodeId in_partner(NodeId v) const { return in_partner_[v]; }

    bool out_matched(NodeId u) const { return out_partner_[u] != kNoNode; }
    bool in_matched(NodeId v) const { return in_partner_[v] != kNoNode; }

    std::vector<std::pair<NodeId, NodeId>> pairs() const;

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    std::vector<NodeId> out_partner_;
    std::vector<NodeId> in_partner_;
    std::int64_t size_ = 0;
};

/// Maximum-cardinality matching of the bipartite view, computed with
/// phased BFS layering plus augmenting DFS. Deterministic: adjacency is
/// scanned in ascending id order.
Matching maximum_matching(const DirectedGraph& graph);

/// Randomized variant: scans nodes and adjacency in a seed-derived order.
/// Still returns a maximum matching; used to sample distinct maxima.
Matching maximum_matching(const DirectedGraph& graph, std::uint64_t shuffle_seed);

struct MatchingDiagnostics {
    enum class Status : std::uint8_t { Valid, Invalid, NotMaximum };

    Status status = Status::Valid;
    std::string detail;
    /// Set when status == Invalid.
    std::pair<NodeId, NodeId> violation{kNoNode, kNoNode};
    /// Set when status == NotMaximum: alternating copy sequence from the
    /// unmatched in-copy back to the unmatched out-copy.
    std::vector<BipCopy> augmenting_path;

    bool valid_maximum() const { return status == Status::Valid; }
};

/// Checks structural validity against the graph and maximality (reports
/// a witness augmenting path if one exists).
MatchingDiagnostics verify_maximum_matching(const DirectedGraph& graph, const Matching& m);

/// Same, for raw pairs; duplicate copy use is reported instead of thrown.
MatchingDiagnostics verify_maximum_matching(const DirectedGraph& graph,
                                            std::span<const std::pair<NodeId, NodeId>> pairs);

struct UnmatchedSets {
    std::vector<NodeId> drivers;      // nodes with unmatched in-copy
    std::vector<NodeId> unsaturated;  // nodes with unmatched out-copy
    std::int64_t n_d = 1;             // max(1, |drivers|)
};

/// Throws InvalidMatching when m is not a matching of graph.
UnmatchedSets extract_unmatched(const DirectedGraph& graph, const Matching& m);

/// Structural validity only (pairs are edges of graph, sizes agree);
/// throws InvalidMatching on failure. Maximality is not checked.
void require_matching_of(const DirectedGraph& graph, const Matching& m);

}  // namespace netmode
