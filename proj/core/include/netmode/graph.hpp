#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netmode/types.hpp"

namespace netmode {

/// A directed graph over dense node ids [0, N) with sorted adjacency on
/// both sides. Self-loops are allowed, parallel edges are not.
///
/// A graph is a plain value: copy freely, share read-only across threads,
/// take exclusive ownership to mutate.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(NodeId node_count);

    static DirectedGraph from_edges(NodeId node_count,
                                    std::span<const std::pair<NodeId, NodeId>> edges);

    NodeId node_count() const { return node_count_; }
    std::int64_t edge_count() const { return edge_count_; }

    const std::vector<NodeId>& out_neighbors(NodeId u) const;
    const std::vector<NodeId>& in_neighbors(NodeId v) const;

    bool has_edge(NodeId u, NodeId v) const;

    /// Throws EdgeAlreadyExists; ids must be in range.
    void add_edge(NodeId u, NodeId v);
    /// Throws EdgeNotFound.
    void remove_edge(NodeId u, NodeId v);

    std::vector<std::pair<NodeId, NodeId>> edges() const;

    /// External node names from parsing; empty when the graph was built
    /// programmatically. Ignored by operator== (structure only).
    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.node_count_ == b.node_count_ && a.out_ == b.out_;
    }

private:
    void check_node(NodeId v) const;

    NodeId node_count_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::vector<std::string> labels_;
};

struct EdgeOp {
    enum class Kind : std::uint8_t { Add, Remove, Reverse };

    Kind kind;
    NodeId from;
    NodeId to;

    static EdgeOp add(NodeId u, NodeId v) { return {Kind::Add, u, v}; }
    static EdgeOp remove(NodeId u, NodeId v) { return {Kind::Remove, u, v}; }
    static EdgeOp reverse(NodeId u, NodeId v) { return {Kind::Reverse, u, v}; }

    friend bool operator==(const EdgeOp&, const EdgeOp&) = default;
};

/// Applies one edge mutation. Reverse(u,v) removes u->v and adds v->u;
/// reversing a self-loop is the identity.
void apply_edge_op(DirectedGraph& graph, const EdgeOp& op);

struct ParseOptions {
    /// With dedup=false a repeated edge raises DuplicateEdge; with true,
    /// repeats are silently merged.
    bool dedup = false;
};

/// Reads a whitespace-separated edge list ('#' lines are comments).
/// Tokens are relabeled to dense ids in first-appearance order, except
/// when they already are the exact set {0..N-1}, which is kept as-is so
/// that serialize/parse round-trips are the identity.
DirectedGraph parse_edge_list(std::istream& in, const ParseOptions& options = {});
DirectedGraph parse_edge_list(std::string_view text, const ParseOptions& options = {});

/// One "<from>\t<to>" line per edge, sorted by (from, to), dense ids.
void serialize_edge_list(const DirectedGraph& graph, std::ostream& out);
std::string serialize_edge_list(const DirectedGraph& graph);

/// Average total degree 2L/N. Throws EmptyGraph when N = 0.
double average_degree(const DirectedGraph& graph);

}  // namespace netmode
