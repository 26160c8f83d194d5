#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mlnet/system.hpp"

namespace mlnet {

struct CascadeConfig {
    double p = 1.0;            // retained fraction of nodes per layer
    std::uint64_t seed = 0;
    int max_iterations = 0;    // 0 means 2 * total node count
};

struct CascadeOutcome {
    std::vector<double> s_per_layer;  // giant-component fraction per layer
    int noi = 0;                      // synchronous passes incl. final no-change pass
    std::uint64_t seed = 0;
};

// Runs one cascade realization:
//  1. remove each node independently with probability 1-p (all layers);
//  2. repeat synchronously until nothing changes: kill every alive node
//     outside its layer's giant component, then for every node that
//     failed (including initial removals) whose partner is still alive,
//     keep each alive link of the partner with probability
//     alpha_partner, else disable it permanently; each (failed node ->
//     partner) event decimates at most once, and two partners failing
//     in the same pass do not decimate each other.
// Damage is monotone, so the process terminates; exceeding
// max_iterations throws std::runtime_error.
CascadeOutcome run_cascade(const MultilayerSystem& system, const CascadeConfig& config);

struct GridPoint {
    double p = 0.0;
    double theta = 0.0;
};

struct EnsembleOutcome {
    GridPoint point;
    std::vector<double> s_mean;
    std::vector<double> s_std;   // sample std-dev (0 when realizations == 1)
    double noi_mean = 0.0;
    int realizations = 0;
};

// Builds a fresh system for the given theta from a derived seed;
// called once per (grid point, realization).
using SystemFactory =
    std::function<MultilayerSystem(double theta, std::uint64_t seed)>;

// Runs `realizations` independent cascades per grid point, each on a
// freshly generated system. Seeds derive from (master_seed, grid index,
// realization index), and aggregation reduces per-realization results
// in fixed index order, so output is independent of `threads`.
std::vector<EnsembleOutcome> run_ensemble(const SystemFactory& factory,
                                          const std::vector<GridPoint>& grid,
                                          int realizations,
                                          std::uint64_t master_seed,
                                          int threads = 1,
                                          int max_iterations = 0);

enum class TransitionOrder { first, second, none };

struct PcEstimate {
    double pc = 0.0;
    TransitionOrder order = TransitionOrder::none;
};

// Locates the percolation transition on a sorted, uniformly spaced
// (p, mean s) curve: first-order at the midpoint of the steepest
// interval if its jump exceeds jump_threshold, else second-order at the
// first p where s exceeds 0.005; `none` if the curve never does.
PcEstimate estimate_pc_from_curve(const std::vector<std::pair<double, double>>& curve,
                                  double jump_threshold = 0.1);

}  // namespace mlnet
