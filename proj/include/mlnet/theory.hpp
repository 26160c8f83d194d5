#pragma once

#include <utility>
#include <vector>

#include "mlnet/cascade.hpp"  // TransitionOrder

namespace mlnet {

// Dense pmf over degrees 0..k_max; normalized on construction.
struct DegreeDist {
    std::vector<double> pmf;  // pmf[k] = probability of degree k

    int k_max() const { return static_cast<int>(pmf.size()) - 1; }
    double mean() const;
    double mean_factorial() const;  // <k(k-1)>
};

// Validates (non-negative entries, positive total) and renormalizes.
DegreeDist make_dist(std::vector<double> pmf);

// Poisson pmf truncated at the smallest k_max with tail mass below
// tail_tol, then renormalized.
DegreeDist poisson_dist(double mean, double tail_tol = 1e-12);

// p_k proportional to k^-gamma on [k_min, k_max].
DegreeDist powerlaw_dist(double gamma, int k_min, int k_max);

struct SolverParams {
    double tol = 1e-10;
    long max_iter = 1'000'000;
    double init_R = 1.0;
    double damping = 1.0;
};

// Right-hand side of the coupled link-viability equations for two
// layers with degree distributions dist_a, dist_b and coupling
// strengths alpha(k_a, k_b; theta). Returns (next R_a, next R_b).
std::pair<double, double> h_eval_two_layer(double R_a, double R_b, double p,
                                           double theta, const DegreeDist& dist_a,
                                           const DegreeDist& dist_b);

// Identical-layers reduction: h(R) with dist_a = dist_b and R_a = R_b.
double h_eval(double R, double p, double theta, const DegreeDist& dist);

// Damped fixed-point iteration from (init_R, init_R), accelerated by
// guarded Aitken extrapolation. The iterate from R=1 decreases
// monotonically onto the largest fixed point, which is the physically
// selected branch (cascades start from an intact system). Retries once
// at half damping, then throws std::runtime_error carrying the last
// iterate.
std::pair<double, double> solve_fixed_point(double p, double theta,
                                            const DegreeDist& dist_a,
                                            const DegreeDist& dist_b,
                                            const SolverParams& params = {});

// Steady-state giant-component fractions (S_a, S_b) given a fixed
// point (R_a, R_b) of the link-viability equations.
std::pair<double, double> giant_fraction_theory(double p, double theta,
                                                const DegreeDist& dist_a,
                                                const DegreeDist& dist_b,
                                                double R_a, double R_b);

struct PhasePoint {
    double theta = 0.0;
    double p_c = 0.0;
    TransitionOrder order = TransitionOrder::second;
    double R_c = 0.0;  // 0 when order == second
    double S_c = 0.0;  // 0 when order == second
};

// Locates the percolation threshold for identical layers by bisection
// on p (percolating iff the fixed point exceeds R_floor = 1e-6). A
// threshold fixed point above 1e-3 is a discontinuous jump ->
// first-order with (R_c, S_c); otherwise the transition is continuous
// and R_c = S_c = 0. Throws if even p = 1 does not percolate.
PhasePoint find_pc_first_order(double theta, const DegreeDist& dist,
                               double p_tol = 1e-5);

// Closed-form continuous threshold 1 / sum_{ka,kb} q_ka p_kb alpha^2
// (ka-1) with q_k = p_k k / <k>. single_layer forces alpha = 1,
// recovering <k>/<k(k-1)>. May exceed 1 (caller interprets). Throws on
// a vanishing denominator (e.g. all degrees <= 1).
double pc_second_order(double theta, const DegreeDist& dist_a,
                       const DegreeDist& dist_b, bool single_layer = false);

// Second derivative h''(0) for identical layers, evaluated at
// p = pc_second_order: its sign decides whether the transition at the
// continuous threshold is actually discontinuous (positive) or
// genuinely continuous (negative).
double h2_at_zero(double theta, const DegreeDist& dist);

// Crossover theta where h2_at_zero changes sign, by bisection. Throws
// if there is no sign change on [theta_lo, theta_hi].
double find_theta_c(const DegreeDist& dist, double theta_lo, double theta_hi,
                    double tol = 1e-4);

}  // namespace mlnet
