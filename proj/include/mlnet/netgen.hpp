#pragma once

#include <cstdint>
#include <vector>

#include "mlnet/system.hpp"

namespace mlnet {

struct GenSpec {
    enum class Kind { er, scale_free };
    Kind kind = Kind::er;
    int n = 0;
    double mean_degree = 0.0;  // er
    double gamma = 0.0;        // scale_free: p_k proportional to k^-gamma
    int k_min = 1;             // scale_free
    int k_max = 0;             // scale_free; 0 means floor(sqrt(n))
    std::uint64_t seed = 0;
};

struct OverlapSpec {
    double omega = 0.0;  // fraction of overlapping links
    GenSpec base;        // must be er
};

enum class PairingKind { identity, random_permutation, random_subset };

// G(n, q) with q = mean_degree/(n-1); geometric skip sampling.
LayerGraph gen_er(const GenSpec& spec);

// Configuration model with degrees i.i.d. from p_k ~ k^-gamma on
// [k_min, k_max]; odd degree sums repaired by resampling one node;
// self-loops and multi-edges removed by random edge swaps (degree
// sequence preserved). Throws if the sequence cannot be made simple
// within the swap budget.
LayerGraph gen_scale_free(const GenSpec& spec);

// One-to-one pairing of two layers; alphas from coupling_strengths on
// the construction-time degrees. random_subset pairs min(n_a, n_b)
// nodes (every node of the smaller layer, a random subset of the
// larger); unpaired nodes carry no dependence.
MultilayerSystem pair_layers(LayerGraph a, LayerGraph b, double theta,
                             PairingKind pairing, std::uint64_t seed);

// Double layer with tunable link overlap: layer B replicates each
// A-link with probability omega and adds independent ER links at mean
// degree (1-omega)*mean_degree; identity pairing.
MultilayerSystem gen_overlap_system(const OverlapSpec& spec, double theta,
                                    std::uint64_t seed);

// Chain of >=3 equal-size layers with mutual identity pairings between
// consecutive layers only.
MultilayerSystem build_chain(const std::vector<GenSpec>& specs, double theta,
                             std::uint64_t seed);

}  // namespace mlnet
