#include "mlnet/system.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace mlnet {

MultilayerSystem make_system(std::vector<LayerGraph> layers,
                             std::vector<Pairing> pairings, double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("make_system: theta must be finite");
    const int nlayers = static_cast<int>(layers.size());
    for (const auto& pr : pairings) {
        if (pr.layer_a < 0 || pr.layer_a >= nlayers || pr.layer_b < 0 ||
            pr.layer_b >= nlayers || pr.layer_a == pr.layer_b)
            throw std::invalid_argument("make_system: bad layer index in pairing");
        std::set<int> seen_a, seen_b;
        for (const auto& cp : pr.pairs) {
            if (cp.node_a < 0 || cp.node_a >= layers[pr.layer_a].n ||
                cp.node_b < 0 || cp.node_b >= layers[pr.layer_b].n)
                throw std::invalid_argument("make_system: pair node id out of range");
            if (!seen_a.insert(cp.node_a).second || !seen_b.insert(cp.node_b).second)
                throw std::invalid_argument(
                    "make_system: node paired twice within one layer pair");
            if (cp.alpha_a < 0 || cp.alpha_a > 1 || cp.alpha_b < 0 || cp.alpha_b > 1 ||
                std::abs(cp.alpha_a + cp.alpha_b - 1.0) > 1e-12)
                throw std::invalid_argument("make_system: alphas must be in [0,1] and sum to 1");
        }
    }

    MultilayerSystem sys;
    sys.layers = std::move(layers);
    sys.pairings = std::move(pairings);
    sys.theta = theta;

    sys.partner_offsets.resize(nlayers);
    sys.partner_refs.resize(nlayers);
    std::vector<std::vector<int>> counts(nlayers);
    for (int l = 0; l < nlayers; ++l) counts[l].assign(sys.layers[l].n, 0);
    for (const auto& pr : sys.pairings)
        for (const auto& cp : pr.pairs) {
            ++counts[pr.layer_a][cp.node_a];
            ++counts[pr.layer_b][cp.node_b];
        }
    for (int l = 0; l < nlayers; ++l) {
        auto& off = sys.partner_offsets[l];
        off.assign(sys.layers[l].n + 1, 0);
        for (int v = 0; v < sys.layers[l].n; ++v) off[v + 1] = off[v] + counts[l][v];
        sys.partner_refs[l].resize(off.back());
        counts[l].assign(sys.layers[l].n, 0);
    }
    for (int pi = 0; pi < static_cast<int>(sys.pairings.size()); ++pi) {
        const auto& pr = sys.pairings[pi];
        for (int ci = 0; ci < static_cast<int>(pr.pairs.size()); ++ci) {
            const auto& cp = pr.pairs[ci];
            int la = pr.layer_a, lb = pr.layer_b;
            sys.partner_refs[la][sys.partner_offsets[la][cp.node_a] +
                                 counts[la][cp.node_a]++] = {pi, ci, lb, cp.node_b,
                                                            cp.alpha_a};
            sys.partner_refs[lb][sys.partner_offsets[lb][cp.node_b] +
                                 counts[lb][cp.node_b]++] = {pi, ci, la, cp.node_a,
                                                            cp.alpha_b};
        }
    }
    return sys;
}

}  // namespace mlnet
