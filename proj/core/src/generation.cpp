#include "netmode/generation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "netmode/errors.hpp"
#include "netmode/rng.hpp"

namespace netmode {

std::int64_t GeneratorConfig::edge_target() const {
    return static_cast<std::int64_t>(std::ceil(k * static_cast<double>(n) / 2.0));
}

void GeneratorConfig::validate() const {
    if (n < 2) throw ConfigInvalid("n must be at least 2");
    if (!(k > 0.0)) throw ConfigInvalid("k must be positive");
    if (model == GraphModel::StaticScaleFree && (!(gamma_in > 2.0) || !(gamma_out > 2.0)))
        throw ConfigInvalid("gamma_in and gamma_out must exceed 2");
    if (edge_target() > n * (n - 1))
        throw ConfigInvalid("edge target " + std::to_string(edge_target()) +
                            " exceeds the " + std::to_string(n * (n - 1)) +
                            " available non-loop slots");
}

namespace {

std::uint64_t pair_key(std::int64_t u, std::int64_t v, std::int64_t n) {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(v);
}

// Cumulative weights w_i = (i+1)^(-alpha); sampling is an upper_bound
// over a 53-bit uniform draw, fully pinned by the mt19937_64 stream.
std::vector<double> cumulative_weights(std::int64_t n, double alpha) {
    std::vector<double> cum(static_cast<std::size_t>(n));
    double total = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        total += std::pow(static_cast<double>(i + 1), -alpha);
        cum[static_cast<std::size_t>(i)] = total;
    }
    return cum;
}

std::int64_t sample_weighted(std::mt19937_64& gen, const std::vector<double>& cum) {
    const double u = rng::unit_real(gen) * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return std::min<std::int64_t>(static_cast<std::int64_t>(it - cum.begin()),
                                  static_cast<std::int64_t>(cum.size()) - 1);
}

DirectedGraph build(std::int64_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    return DirectedGraph::from_edges(static_cast<NodeId>(n), edges);
}

}  // namespace

DirectedGraph scale_free_digraph(const GeneratorConfig& config) {
    if (config.model != GraphModel::StaticScaleFree)
        throw ConfigInvalid("config.model is not StaticScaleFree");
    config.validate();

    const std::int64_t n = config.n;
    const std::int64_t target = config.edge_target();
    const double alpha_out = 1.0 / (config.gamma_out - 1.0);
    const double alpha_in = 1.0 / (config.gamma_in - 1.0);
    const std::vector<double> cum_out = cumulative_weights(n, alpha_out);
    const std::vector<double> cum_in = cumulative_weights(n, alpha_in);

    std::mt19937_64 gen(config.seed);
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(target));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(target) * 2);

    const std::int64_t attempt_budget = 200 * target + 1'000'000;
    std::int64_t attempts = 0;
    while (static_cast<std::int64_t>(edges.size()) < target) {
        if (++attempts > attempt_budget)
            throw SaturationFailure("edge sampling stalled after " +
                                    std::to_string(attempts - 1) + " attempts at " +
                                    std::to_string(edges.size()) + "/" +
                                    std::to_string(target) + " edges");
        const std::int64_t u = sample_weighted(gen, cum_out);
        const std::int64_t v = sample_weighted(gen, cum_in);
        if (u == v) continue;
        if (!seen.insert(pair_key(u, v, n)).second) continue;
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return build(n, edges);
}

DirectedGraph uniform_random_digraph(const GeneratorConfig& config) {
    if (config.model != GraphModel::UniformRandom)
        throw ConfigInvalid("config.model is not UniformRandom");
    config.validate();

    const std::int64_t n = config.n;
    const std::int64_t target = config.edge_target();
    const std::int64_t slots = n * (n - 1);

    // Partial Fisher-Yates over slot ids with a sparse position map:
    // draw j uniform in [i, slots), take the value living at j, then
    // move the value at i into j.
    std::mt19937_64 gen(config.seed);
    std::unordered_map<std::int64_t, std::int64_t> placed;
    placed.reserve(static_cast<std::size_t>(target) * 2);
    auto value_at = [&](std::int64_t pos) {
        const auto it = placed.find(pos);
        return it == placed.end() ? pos : it->second;
    };

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(target));
    for (std::int64_t i = 0; i < target; ++i) {
        const std::int64_t j =
            i + static_cast<std::int64_t>(rng::bounded(gen, static_cast<std::uint64_t>(slots - i)));
        const std::int64_t slot = value_at(j);
        placed[j] = value_at(i);
        const std::int64_t u = slot / (n - 1);
        const std::int64_t r = slot % (n - 1);
        const std::int64_t v = r < u ? r : r + 1;  // diagonal skipped
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return build(n, edges);
}

DirectedGraph generate_digraph(const GeneratorConfig& config) {
    return config.model == GraphModel::StaticScaleFree ? scale_free_digraph(config)
                                                       : uniform_random_digraph(config);
}

std::string config_json(const GeneratorConfig& config) {
    nlohmann::json j;
    j["model"] = config.model == GraphModel::StaticScaleFree ? "static_scale_free"
                                                             : "uniform_random";
    j["n"] = config.n;
    j["k"] = config.k;
    j["edge_target"] = config.edge_target();
    j["seed"] = config.seed;
    if (config.model == GraphModel::StaticScaleFree) {
        j["gamma_in"] = config.gamma_in;
        j["gamma_out"] = config.gamma_out;
    }
    j["rng"] = "mt19937_64";
    return j.dump(2);
}

}  // namespace netmode
