#pragma once

#include <vector>

#include "mlnet/graph.hpp"

namespace mlnet {

// One interdependent node pair across two layers. alpha_a is the
// probability that each link of node_a survives when node_b fails,
// and vice versa; alpha_a + alpha_b = 1 by construction.
struct CouplingPair {
    int node_a = -1;
    int node_b = -1;
    double alpha_a = 0.5;
    double alpha_b = 0.5;
};

struct Pairing {
    int layer_a = 0;
    int layer_b = 1;
    std::vector<CouplingPair> pairs;
};

// Immutable after make_system(); cascades keep all mutable state in
// run-local scratch, so one system can be shared across threads.
struct MultilayerSystem {
    std::vector<LayerGraph> layers;
    std::vector<Pairing> pairings;
    double theta = 0.0;

    // Flattened partner lookup: for node `v` of layer `l`,
    // partner_refs[l][partner_offsets[l][v] .. partner_offsets[l][v+1])
    struct PartnerRef {
        int pairing;      // index into pairings
        int pair;         // index into pairings[pairing].pairs
        int other_layer;
        int other_node;
        double alpha_self;  // survival probability of this node's links
    };
    std::vector<std::vector<int>> partner_offsets;
    std::vector<std::vector<PartnerRef>> partner_refs;
};

// Validates pairings (ids in range, at most one pair per node per
// layer-pair, alphas in [0,1] summing to 1) and builds the partner
// index. Throws std::invalid_argument on violation.
MultilayerSystem make_system(std::vector<LayerGraph> layers,
                             std::vector<Pairing> pairings, double theta);

}  // namespace mlnet
