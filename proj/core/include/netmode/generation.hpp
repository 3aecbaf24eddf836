#pragma once

#include <cstdint>
#include <string>

#include "netmode/graph.hpp"

namespace netmode {

enum class GraphModel : std::uint8_t { StaticScaleFree, UniformRandom };

/// Generator parameters. The edge target is L = ceil(k*n/2), following
/// the average total-degree convention k = 2L/N.
struct GeneratorConfig {
    std::int64_t n = 0;
    double k = 0.0;
    double gamma_in = 3.0;
    double gamma_out = 3.0;
    std::uint64_t seed = 0;
    GraphModel model = GraphModel::StaticScaleFree;

    std::int64_t edge_target() const;
    /// Throws ConfigInvalid on violated bounds.
    void validate() const;
};

/// Static-model construction: node i carries out-weight (i+1)^(-a_out)
/// and in-weight (i+1)^(-a_in) with a = 1/(gamma-1); edges are sampled
/// by independent weighted choice of source and target, rejecting
/// self-loops and duplicates, until exactly L edges exist. Byte-for-byte
/// reproducible from the seed (mt19937_64 with in-house draws only).
/// Throws SaturationFailure when the rejection budget runs out.
DirectedGraph scale_free_digraph(const GeneratorConfig& config);

/// L distinct non-self-loop edges drawn uniformly without replacement
/// (partial Fisher-Yates over the n*(n-1) ordered slots). Deterministic
/// per seed.
DirectedGraph uniform_random_digraph(const GeneratorConfig& config);

/// Dispatch on config.model.
DirectedGraph generate_digraph(const GeneratorConfig& config);

/// Provenance sidecar content.
std::string config_json(const GeneratorConfig& config);

}  // namespace netmode
