#include "mlnet/cascade.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mlnet/rng.hpp"

namespace mlnet {

namespace {

struct LayerState {
    std::vector<std::uint8_t> alive;
    std::vector<std::uint8_t> link_alive;
    std::vector<std::uint8_t> in_giant;
    ComponentScratch scratch;
};

// A dead node's links are dead with it; killing them here keeps
// decimation draws confined to physically live links.
void kill_node(const LayerGraph& g, LayerState& st, int v) {
    st.alive[v] = 0;
    for (int idx = g.offsets[v]; idx < g.offsets[v + 1]; ++idx)
        st.link_alive[g.incident_edge[idx]] = 0;
}

}  // namespace

CascadeOutcome run_cascade(const MultilayerSystem& system, const CascadeConfig& config) {
    if (!(config.p >= 0.0 && config.p <= 1.0))
        throw std::invalid_argument("run_cascade: p must be in [0,1]");
    const int nlayers = static_cast<int>(system.layers.size());
    std::int64_t total_nodes = 0;
    for (const auto& g : system.layers) total_nodes += g.n;
    const int max_iter = config.max_iterations > 0
                             ? config.max_iterations
                             : static_cast<int>(2 * total_nodes);

    Rng rng(config.seed);
    std::vector<LayerState> state(nlayers);
    for (int l = 0; l < nlayers; ++l) {
        state[l].alive.assign(system.layers[l].n, 1);
        state[l].link_alive.assign(system.layers[l].m, 1);
    }
    // initial damage; draw order is fixed: layer by layer, node by node
    for (int l = 0; l < nlayers; ++l)
        for (int v = 0; v < system.layers[l].n; ++v)
            if (!rng.bernoulli(config.p)) kill_node(system.layers[l], state[l], v);

    // one-shot flags per (failed node -> partner) event: slot 2*pair for
    // node_a failing, 2*pair+1 for node_b failing
    std::vector<std::vector<std::uint8_t>> done(system.pairings.size());
    for (std::size_t pi = 0; pi < done.size(); ++pi)
        done[pi].assign(2 * system.pairings[pi].pairs.size(), 0);

    std::vector<int> giant_size(nlayers, 0);
    int noi = 0;
    for (;;) {
        if (++noi > max_iter)
            throw std::runtime_error("run_cascade: max_iterations exceeded");
        bool changed = false;
        // functionality rule, synchronously across layers
        for (int l = 0; l < nlayers; ++l)
            giant_size[l] = giant_component_mask(system.layers[l], state[l].alive,
                                                 state[l].link_alive,
                                                 state[l].in_giant, state[l].scratch);
        for (int l = 0; l < nlayers; ++l)
            for (int v = 0; v < system.layers[l].n; ++v)
                if (state[l].alive[v] && !state[l].in_giant[v]) {
                    kill_node(system.layers[l], state[l], v);
                    changed = true;
                }
        // decimations in fixed (pairing, pair, direction) order; a pair
        // where both sides are dead decimates nobody
        for (std::size_t pi = 0; pi < system.pairings.size(); ++pi) {
            const auto& pr = system.pairings[pi];
            for (std::size_t ci = 0; ci < pr.pairs.size(); ++ci) {
                const auto& cp = pr.pairs[ci];
                for (int dir = 0; dir < 2; ++dir) {
                    if (done[pi][2 * ci + dir]) continue;
                    int failed_layer = dir == 0 ? pr.layer_a : pr.layer_b;
                    int failed_node = dir == 0 ? cp.node_a : cp.node_b;
                    int partner_layer = dir == 0 ? pr.layer_b : pr.layer_a;
                    int partner_node = dir == 0 ? cp.node_b : cp.node_a;
                    double keep = dir == 0 ? cp.alpha_b : cp.alpha_a;
                    if (state[failed_layer].alive[failed_node] ||
                        !state[partner_layer].alive[partner_node])
                        continue;
                    done[pi][2 * ci + dir] = 1;
                    const auto& g = system.layers[partner_layer];
                    auto& la = state[partner_layer].link_alive;
                    for (int idx = g.offsets[partner_node];
                         idx < g.offsets[partner_node + 1]; ++idx) {
                        int e = g.incident_edge[idx];
                        if (la[e] && !rng.bernoulli(keep)) {
                            la[e] = 0;
                            changed = true;
                        }
                    }
                }
            }
        }
        if (!changed) break;  // this no-change pass counts in noi
    }

    CascadeOutcome out;
    out.s_per_layer.resize(nlayers);
    for (int l = 0; l < nlayers; ++l)
        out.s_per_layer[l] =
            static_cast<double>(giant_size[l]) / static_cast<double>(system.layers[l].n);
    out.noi = noi;
    out.seed = config.seed;
    return out;
}

std::vector<EnsembleOutcome> run_ensemble(const SystemFactory& factory,
                                          const std::vector<GridPoint>& grid,
                                          int realizations,
                                          std::uint64_t master_seed,
                                          int threads, int max_iterations) {
    if (realizations < 1)
        throw std::invalid_argument("run_ensemble: realizations must be >= 1");
    if (threads < 1) threads = 1;

    const std::size_t ntasks = grid.size() * static_cast<std::size_t>(realizations);
    std::vector<CascadeOutcome> results(ntasks);
    auto run_task = [&](std::size_t t) {
        std::size_t gi = t / realizations;
        std::size_t ri = t % realizations;
        MultilayerSystem sys =
            factory(grid[gi].theta, derive_seed(master_seed, gi, ri, 0));
        CascadeConfig cfg;
        cfg.p = grid[gi].p;
        cfg.seed = derive_seed(master_seed, gi, ri, 1);
        cfg.max_iterations = max_iterations;
        results[t] = run_cascade(sys, cfg);
    };

    if (threads == 1 || ntasks <= 1) {
        for (std::size_t t = 0; t < ntasks; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr err;
        std::mutex err_mu;
        auto worker = [&] {
            for (;;) {
                std::size_t t = next.fetch_add(1);
                if (t >= ntasks) return;
                try {
                    run_task(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    // reduce in fixed realization order so results never depend on
    // thread scheduling
    std::vector<EnsembleOutcome> out(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        auto& o = out[gi];
        o.point = grid[gi];
        o.realizations = realizations;
        const std::size_t base = gi * realizations;
        const std::size_t nl = results[base].s_per_layer.size();
        o.s_mean.assign(nl, 0.0);
        o.s_std.assign(nl, 0.0);
        for (int ri = 0; ri < realizations; ++ri) {
            const auto& r = results[base + ri];
            if (r.s_per_layer.size() != nl)
                throw std::runtime_error("run_ensemble: layer count varies across realizations");
            for (std::size_t l = 0; l < nl; ++l) o.s_mean[l] += r.s_per_layer[l];
            o.noi_mean += r.noi;
        }
        for (std::size_t l = 0; l < nl; ++l) o.s_mean[l] /= realizations;
        o.noi_mean /= realizations;
        if (realizations > 1) {
            for (int ri = 0; ri < realizations; ++ri)
                for (std::size_t l = 0; l < nl; ++l) {
                    double d = results[base + ri].s_per_layer[l] - o.s_mean[l];
                    o.s_std[l] += d * d;
                }
            for (std::size_t l = 0; l < nl; ++l)
                o.s_std[l] = std::sqrt(o.s_std[l] / (realizations - 1));
        }
    }
    return out;
}

PcEstimate estimate_pc_from_curve(const std::vector<std::pair<double, double>>& curve,
                                  double jump_threshold) {
    if (curve.size() < 2)
        throw std::invalid_argument("estimate_pc_from_curve: need at least 2 points");
    const double dp = curve[1].first - curve[0].first;
    if (!(dp > 0))
        throw std::invalid_argument("estimate_pc_from_curve: curve must be sorted by p");
    for (std::size_t i = 1; i < curve.size(); ++i) {
        double step = curve[i].first - curve[i - 1].first;
        if (std::abs(step - dp) > 1e-6 * dp)
            throw std::invalid_argument("estimate_pc_from_curve: grid spacing not uniform");
    }
    const double s_min = 0.005;
    double best_jump = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        double jump = std::abs(curve[i].second - curve[i - 1].second);
        if (jump > best_jump) {
            best_jump = jump;
            best_i = i;
        }
    }
    PcEstimate est;
    if (best_jump > jump_threshold) {
        est.pc = 0.5 * (curve[best_i - 1].first + curve[best_i].first);
        est.order = TransitionOrder::first;
        return est;
    }
    for (const auto& [p, s] : curve)
        if (s > s_min) {
            est.pc = p;
            est.order = TransitionOrder::second;
            return est;
        }
    est.pc = std::numeric_limits<double>::quiet_NaN();
    est.order = TransitionOrder::none;
    return est;
}

}  // namespace mlnet
