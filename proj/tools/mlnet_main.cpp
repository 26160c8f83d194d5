// mlnet: cascading failures on asymmetrically interdependent multilayer
// networks, plus the matching self-consistent percolation theory.
//
// Subcommands: simulate, theory, phase, crossover, overlap, chain,
// empirical. All write CSV (schema: sweep.hpp) and print located
// transition points to stdout. Exit codes: 0 ok, 1 input error,
// 2 runtime error.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlnet/cascade.hpp"
#include "mlnet/config.hpp"
#include "mlnet/edgelist.hpp"
#include "mlnet/netgen.hpp"
#include "mlnet/rng.hpp"
#include "mlnet/sweep.hpp"
#include "mlnet/theory.hpp"

namespace {

using namespace mlnet;

const char* kLayerLabels[] = {"A", "B", "C", "D"};

std::vector<double> p_grid(double start, double stop, double step) {
    std::vector<double> ps;
    // round to the step lattice so merged fine/coarse grids align
    long i0 = std::lround(start / step);
    long i1 = std::lround(stop / step);
    for (long i = i0; i <= i1; ++i) ps.push_back(i * step);
    if (!ps.empty() && ps.back() > 1.0) ps.back() = 1.0;
    return ps;
}

GenSpec base_spec(const RunConfig& cfg) {
    GenSpec s;
    s.kind = cfg.network_kind == "er" ? GenSpec::Kind::er : GenSpec::Kind::scale_free;
    s.n = cfg.n;
    s.mean_degree = cfg.mean_degree;
    s.gamma = cfg.gamma;
    s.k_min = cfg.k_min;
    s.k_max = cfg.k_max;
    return s;
}

LayerGraph gen_layer(const GenSpec& s) {
    return s.kind == GenSpec::Kind::er ? gen_er(s) : gen_scale_free(s);
}

PairingKind pairing_kind(const RunConfig& cfg) {
    if (cfg.pairing == "identity") return PairingKind::identity;
    if (cfg.pairing == "random_permutation") return PairingKind::random_permutation;
    return PairingKind::random_subset;
}

SystemFactory two_layer_factory(const RunConfig& cfg) {
    GenSpec base = base_spec(cfg);
    PairingKind pk = pairing_kind(cfg);
    return [base, pk](double theta, std::uint64_t seed) {
        GenSpec sa = base, sb = base;
        sa.seed = derive_seed(seed, 1);
        sb.seed = derive_seed(seed, 2);
        return pair_layers(gen_layer(sa), gen_layer(sb), theta, pk,
                           derive_seed(seed, 3));
    };
}

const char* order_name(TransitionOrder o) {
    switch (o) {
        case TransitionOrder::first: return "first";
        case TransitionOrder::second: return "second";
        default: return "none";
    }
}

// Sweeps all (theta, p) points, refines the p grid to 0.001 within
// +-0.03 of each detected transition, and reports the refined p_c per
// theta. Deterministic for fixed (cfg, seed); thread count never
// changes output.
struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<std::pair<double, PcEstimate>> pc_per_theta;
};

SweepResult run_sweep(const SystemFactory& factory, const RunConfig& cfg,
                      int threads, double omega_for_csv) {
    const std::vector<double> ps = p_grid(cfg.p_start, cfg.p_stop, cfg.p_step);
    std::vector<GridPoint> grid;
    for (double th : cfg.theta)
        for (double p : ps) grid.push_back({p, th});
    auto coarse = run_ensemble(factory, grid, cfg.realizations,
                               derive_seed(cfg.seed, 1), threads);

    SweepResult out;
    auto add_records = [&](const std::vector<EnsembleOutcome>& outs) {
        for (const auto& o : outs)
            for (std::size_t l = 0; l < o.s_mean.size(); ++l)
                out.records.push_back({o.point.theta, omega_for_csv, o.point.p,
                                       kLayerLabels[l], o.s_mean[l], o.s_std[l],
                                       o.noi_mean, o.realizations});
    };
    add_records(coarse);

    const double fine_step = 0.001;
    std::vector<GridPoint> fine_grid;
    std::vector<std::pair<double, std::pair<double, double>>> windows;
    for (std::size_t ti = 0; ti < cfg.theta.size(); ++ti) {
        std::vector<std::pair<double, double>> curve;
        for (std::size_t pi = 0; pi < ps.size(); ++pi)
            curve.push_back({ps[pi], coarse[ti * ps.size() + pi].s_mean[0]});
        if (curve.size() < 2) continue;
        PcEstimate est = estimate_pc_from_curve(curve);
        if (est.order == TransitionOrder::none || cfg.p_step <= fine_step) continue;
        double lo = std::max(cfg.p_start, est.pc - 0.03);
        double hi = std::min(cfg.p_stop, est.pc + 0.03);
        windows.push_back({cfg.theta[ti], {lo, hi}});
        std::set<long> coarse_idx;
        for (double p : ps) coarse_idx.insert(std::lround(p / fine_step));
        for (double p : p_grid(lo, hi, fine_step))
            if (!coarse_idx.count(std::lround(p / fine_step)))
                fine_grid.push_back({p, cfg.theta[ti]});
    }
    std::vector<EnsembleOutcome> fine;
    if (!fine_grid.empty()) {
        fine = run_ensemble(factory, fine_grid, cfg.realizations,
                            derive_seed(cfg.seed, 2), threads);
        add_records(fine);
    }

    for (std::size_t ti = 0; ti < cfg.theta.size(); ++ti) {
        double th = cfg.theta[ti];
        auto w = std::find_if(windows.begin(), windows.end(),
                              [&](const auto& x) { return x.first == th; });
        std::vector<std::pair<double, double>> curve;
        if (w == windows.end()) {
            for (std::size_t pi = 0; pi < ps.size(); ++pi)
                curve.push_back({ps[pi], coarse[ti * ps.size() + pi].s_mean[0]});
        } else {
            auto in_window = [&](double p) {
                return p > w->second.first - 1e-9 && p < w->second.second + 1e-9;
            };
            for (std::size_t pi = 0; pi < ps.size(); ++pi)
                if (in_window(ps[pi]))
                    curve.push_back({ps[pi], coarse[ti * ps.size() + pi].s_mean[0]});
            for (const auto& o : fine)
                if (o.point.theta == th && in_window(o.point.p))
                    curve.push_back({o.point.p, o.s_mean[0]});
            std::sort(curve.begin(), curve.end());
        }
        out.pc_per_theta.push_back(
            {th, curve.size() < 2 ? PcEstimate{} : estimate_pc_from_curve(curve)});
    }
    return out;
}

void print_pc(const SweepResult& sw) {
    for (const auto& [th, est] : sw.pc_per_theta)
        std::printf("theta=%g p_c=%.4f order=%s\n", th, est.pc, order_name(est.order));
}

DegreeDist dist_from_config(const RunConfig& cfg) {
    if (cfg.network_kind == "er") return poisson_dist(cfg.mean_degree);
    int k_max = cfg.k_max > 0 ? cfg.k_max
                              : static_cast<int>(std::floor(std::sqrt(cfg.n)));
    return powerlaw_dist(cfg.gamma, cfg.k_min, k_max);
}

int cmd_simulate(const RunConfig& cfg, const std::string& out, int threads) {
    SweepResult sw = run_sweep(two_layer_factory(cfg), cfg, threads,
                               std::numeric_limits<double>::quiet_NaN());
    write_sweep_csv(sw.records, out);
    print_pc(sw);
    return 0;
}

int cmd_theory(const RunConfig& cfg, const std::string& out) {
    DegreeDist dist = dist_from_config(cfg);
    std::vector<SweepRecord> records;
    for (double th : cfg.theta)
        for (double p : p_grid(cfg.p_start, cfg.p_stop, cfg.p_step)) {
            auto [Ra, Rb] = solve_fixed_point(p, th, dist, dist);
            auto [Sa, Sb] = giant_fraction_theory(p, th, dist, dist, Ra, Rb);
            double na = std::numeric_limits<double>::quiet_NaN();
            records.push_back({th, na, p, "A", Sa, 0.0, 0.0, 0});
            records.push_back({th, na, p, "B", Sb, 0.0, 0.0, 0});
        }
    write_sweep_csv(records, out);
    return 0;
}

int cmd_phase(const RunConfig& cfg, const std::string& out) {
    DegreeDist dist = dist_from_config(cfg);
    FILE* f = std::fopen(out.c_str(), "wb");
    if (!f) throw std::runtime_error("cmd_phase: cannot open " + out);
    std::fprintf(f, "theta,p_c,order,R_c,S_c\n");
    for (double th : cfg.theta) {
        PhasePoint pt = find_pc_first_order(th, dist);
        std::fprintf(f, "%.6g,%.6g,%s,%.6g,%.6g\n", th, pt.p_c,
                     order_name(pt.order), pt.R_c, pt.S_c);
    }
    std::fclose(f);
    try {
        double tc = find_theta_c(dist, cfg.theta.front(), cfg.theta.back());
        std::printf("theta_c=%.4f\n", tc);
    } catch (const std::runtime_error&) {
        std::printf("theta_c=none\n");
    }
    return 0;
}

int cmd_crossover(const RunConfig& cfg, const std::string& out) {
    DegreeDist dist = dist_from_config(cfg);
    FILE* f = std::fopen(out.c_str(), "wb");
    if (!f) throw std::runtime_error("cmd_crossover: cannot open " + out);
    std::fprintf(f, "theta,h2_at_zero\n");
    for (double th : cfg.theta)
        std::fprintf(f, "%.6g,%.6g\n", th, h2_at_zero(th, dist));
    std::fclose(f);
    double tc = find_theta_c(dist, cfg.theta.front(), cfg.theta.back());
    std::printf("theta_c=%.4f\n", tc);
    return 0;
}

int cmd_overlap(const RunConfig& cfg, const std::string& out, int threads) {
    if (std::isnan(cfg.omega))
        throw std::runtime_error("cmd_overlap: config must set omega");
    OverlapSpec ospec;
    ospec.omega = cfg.omega;
    ospec.base = base_spec(cfg);
    SystemFactory factory = [ospec](double theta, std::uint64_t seed) {
        return gen_overlap_system(ospec, theta, seed);
    };
    SweepResult sw = run_sweep(factory, cfg, threads, cfg.omega);
    write_sweep_csv(sw.records, out);
    print_pc(sw);
    return 0;
}

int cmd_chain(const RunConfig& cfg, const std::string& out, int threads) {
    std::vector<GenSpec> specs(3, base_spec(cfg));
    SystemFactory factory = [specs](double theta, std::uint64_t seed) {
        return build_chain(specs, theta, seed);
    };
    RunConfig c3 = cfg;
    c3.layers = 3;
    SweepResult sw = run_sweep(factory, c3, threads,
                               std::numeric_limits<double>::quiet_NaN());
    write_sweep_csv(sw.records, out);
    print_pc(sw);
    return 0;
}

int cmd_empirical(const std::string& path_a, const std::string& path_b,
                  const RunConfig& cfg, const std::string& out, int threads) {
    EdgeListResult a = load_edgelist(path_a);
    EdgeListResult b = load_edgelist(path_b);
    if (a.self_loops_dropped + b.self_loops_dropped > 0)
        std::fprintf(stderr, "warning: dropped %d self-loops\n",
                     a.self_loops_dropped + b.self_loops_dropped);
    if (a.duplicates_dropped + b.duplicates_dropped > 0)
        std::fprintf(stderr, "warning: collapsed %d duplicate edges\n",
                     a.duplicates_dropped + b.duplicates_dropped);
    LayerGraph ga = a.graph, gb = b.graph;
    SystemFactory factory = [ga, gb](double theta, std::uint64_t seed) {
        return pair_layers(ga, gb, theta, PairingKind::random_subset, seed);
    };
    SweepResult sw = run_sweep(factory, cfg, threads,
                               std::numeric_limits<double>::quiet_NaN());
    write_sweep_csv(sw.records, out);
    print_pc(sw);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interdependent multilayer network percolation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path = "out.csv";
    std::string edges_a, edges_b;
    int threads = 1;
    std::int64_t seed_override = -1;
    bool paper_scale = false;

    app.add_option("--config", config_path, "run configuration file");
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed_override, "master seed (overrides config)");
    app.add_flag("--paper-scale", paper_scale,
                 "publication scale: n=5e5, 40 realizations");

    auto* sim = app.add_subcommand("simulate", "ensemble S(p) curves");
    auto* thy = app.add_subcommand("theory", "theoretical S(p) curves");
    auto* phs = app.add_subcommand("phase", "p_c and order per theta");
    auto* cro = app.add_subcommand("crossover", "h''(0) scan and theta_c");
    auto* ovl = app.add_subcommand("overlap", "double layer with link overlap");
    auto* chn = app.add_subcommand("chain", "three-layer chain sweep");
    auto* emp = app.add_subcommand("empirical", "sweep two edge-list layers");
    emp->add_option("edges_a", edges_a, "edge list of layer A")->required();
    emp->add_option("edges_b", edges_b, "edge list of layer B")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = parse_config(config_path);
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (paper_scale) {
            cfg.n = 500000;
            cfg.realizations = 40;
        }
        if (sim->parsed()) return cmd_simulate(cfg, out_path, threads);
        if (thy->parsed()) return cmd_theory(cfg, out_path);
        if (phs->parsed()) return cmd_phase(cfg, out_path);
        if (cro->parsed()) return cmd_crossover(cfg, out_path);
        if (ovl->parsed()) return cmd_overlap(cfg, out_path, threads);
        if (chn->parsed()) return cmd_chain(cfg, out_path, threads);
        if (emp->parsed()) return cmd_empirical(edges_a, edges_b, cfg, out_path, threads);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::string what = e.what();
        // config and file problems are input errors
        if (what.find("parse_config") != std::string::npos ||
            what.find("load_edgelist") != std::string::npos) {
            std::fprintf(stderr, "input error: %s\n", what.c_str());
            return 1;
        }
        std::fprintf(stderr, "runtime error: %s\n", what.c_str());
        return 2;
    }
}
