#include "netmode/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "netmode/errors.hpp"

namespace netmode {

namespace {

std::string edge_str(NodeId u, NodeId v) {
    return std::to_string(u) + "->" + std::to_string(v);
}

bool sorted_contains(const std::vector<NodeId>& v, NodeId x) {
    return std::binary_search(v.begin(), v.end(), x);
}

void sorted_insert(std::vector<NodeId>& v, NodeId x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<NodeId>& v, NodeId x) {
    v.erase(std::lower_bound(v.begin(), v.end(), x));
}

}  // namespace

DirectedGraph::DirectedGraph(NodeId node_count)
    : node_count_(node_count), out_(node_count), in_(node_count) {
    if (node_count < 0) throw std::out_of_range("negative node count");
}

DirectedGraph DirectedGraph::from_edges(NodeId node_count,
                                        std::span<const std::pair<NodeId, NodeId>> edges) {
    DirectedGraph g(node_count);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

void DirectedGraph::check_node(NodeId v) const {
    if (v < 0 || v >= node_count_)
        throw std::out_of_range("node id " + std::to_string(v) + " outside [0, " +
                                std::to_string(node_count_) + ")");
}

const std::vector<NodeId>& DirectedGraph::out_neighbors(NodeId u) const {
    check_node(u);
    return out_[u];
}

const std::vector<NodeId>& DirectedGraph::in_neighbors(NodeId v) const {
    check_node(v);
    return in_[v];
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    return sorted_contains(out_[u], v);
}

void DirectedGraph::add_edge(NodeId u, NodeId v) {
    if (has_edge(u, v)) throw EdgeAlreadyExists("edge " + edge_str(u, v) + " already exists");
    sorted_insert(out_[u], v);
    sorted_insert(in_[v], u);
    ++edge_count_;
}

void DirectedGraph::remove_edge(NodeId u, NodeId v) {
    if (!has_edge(u, v)) throw EdgeNotFound("edge " + edge_str(u, v) + " not found");
    sorted_erase(out_[u], v);
    sorted_erase(in_[v], u);
    --edge_count_;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> result;
    result.reserve(static_cast<std::size_t>(edge_count_));
    for (NodeId u = 0; u < node_count_; ++u)
        for (NodeId v : out_[u]) result.emplace_back(u, v);
    return result;
}

void DirectedGraph::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(node_count_))
        throw std::invalid_argument("label count does not match node count");
    labels_ = std::move(labels);
}

void apply_edge_op(DirectedGraph& graph, const EdgeOp& op) {
    switch (op.kind) {
        case EdgeOp::Kind::Add:
            graph.add_edge(op.from, op.to);
            break;
        case EdgeOp::Kind::Remove:
            graph.remove_edge(op.from, op.to);
            break;
        case EdgeOp::Kind::Reverse:
            if (!graph.has_edge(op.from, op.to))
                throw EdgeNotFound("edge " + std::to_string(op.from) + "->" +
                                   std::to_string(op.to) + " not found");
            if (op.from == op.to) return;  // self-loop reversal is the identity
            if (graph.has_edge(op.to, op.from))
                throw EdgeAlreadyExists("reversed edge " + std::to_string(op.to) + "->" +
                                        std::to_string(op.from) + " already exists");
            graph.remove_edge(op.from, op.to);
            graph.add_edge(op.to, op.from);
            break;
    }
}

namespace {

// A token qualifies for id-preserving parsing only if it is a canonical
// non-negative decimal (no sign, no leading zeros except "0" itself).
bool canonical_decimal(std::string_view s, std::int64_t& value) {
    if (s.empty() || s.size() > 10) return false;
    if (s.size() > 1 && s[0] == '0') return false;
    std::int64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    if (v > 0x7FFFFFFF) return false;
    value = v;
    return true;
}

}  // namespace

DirectedGraph parse_edge_list(std::istream& in, const ParseOptions& options) {
    std::unordered_map<std::string, NodeId> first_seen;
    std::vector<std::string> names;
    std::vector<std::pair<NodeId, NodeId>> raw_edges;
    std::unordered_set<std::uint64_t> seen_pairs;

    bool all_decimal = true;
    std::int64_t max_value = -1;
    std::vector<std::int64_t> values;  // numeric value per dense id, -1 if not decimal

    auto intern = [&](std::string token) -> NodeId {
        auto it = first_seen.find(token);
        if (it != first_seen.end()) return it->second;
        const NodeId id = static_cast<NodeId>(names.size());
        std::int64_t value = -1;
        if (!canonical_decimal(token, value)) all_decimal = false;
        values.push_back(value);
        if (value > max_value) max_value = value;
        first_seen.emplace(token, id);
        names.push_back(std::move(token));
        return id;
    };

    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') continue;

        std::istringstream tokens(line.substr(begin));
        std::string from_tok, to_tok, extra;
        if (!(tokens >> from_tok >> to_tok))
            throw ParseError("expected two tokens", line_no);
        if (tokens >> extra)
            throw ParseError("expected two tokens, got more", line_no);

        const NodeId u = intern(std::move(from_tok));
        const NodeId v = intern(std::move(to_tok));
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
            static_cast<std::uint32_t>(v);
        if (!seen_pairs.insert(key).second) {
            if (!options.dedup)
                throw DuplicateEdge("duplicate edge " + names[u] + "->" + names[v], line_no);
            continue;
        }
        raw_edges.emplace_back(u, v);
    }

    const NodeId n = static_cast<NodeId>(names.size());

    // Keep numeric ids verbatim when they already form {0..N-1}; this makes
    // parsing a serialized graph the exact inverse of serialization.
    const bool identity_by_value = all_decimal && n > 0 && max_value == n - 1;
    if (identity_by_value) {
        std::vector<NodeId> remap(names.size());
        std::vector<std::string> by_value(names.size());
        for (NodeId id = 0; id < n; ++id) {
            remap[id] = static_cast<NodeId>(values[id]);
            by_value[static_cast<std::size_t>(values[id])] = names[id];
        }
        for (auto& [u, v] : raw_edges) {
            u = remap[u];
            v = remap[v];
        }
        names = std::move(by_value);
    }

    DirectedGraph g = DirectedGraph::from_edges(n, raw_edges);
    g.set_labels(std::move(names));
    return g;
}

DirectedGraph parse_edge_list(std::string_view text, const ParseOptions& options) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, options);
}

void serialize_edge_list(const DirectedGraph& graph, std::ostream& out) {
    for (NodeId u = 0; u < graph.node_count(); ++u)
        for (NodeId v : graph.out_neighbors(u)) out << u << '\t' << v << '\n';
}

std::string serialize_edge_list(const DirectedGraph& graph) {
    std::ostringstream out;
    serialize_edge_list(graph, out);
    return out.str();
}

double average_degree(const DirectedGraph& graph) {
    if (graph.node_count() == 0) throw EmptyGraph("average degree of an empty graph");
    return 2.0 * static_cast<double>(graph.edge_count()) /
           static_cast<double>(graph.node_count());
}

}  // namespace netmode
