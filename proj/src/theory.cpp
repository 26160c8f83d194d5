#include "mlnet/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mlnet/coupling.hpp"

namespace mlnet {

double DegreeDist::mean() const {
    double s = 0.0;
    for (std::size_t k = 1; k < pmf.size(); ++k) s += pmf[k] * k;
    return s;
}

double DegreeDist::mean_factorial() const {
    double s = 0.0;
    for (std::size_t k = 2; k < pmf.size(); ++k) s += pmf[k] * k * (k - 1.0);
    return s;
}

DegreeDist make_dist(std::vector<double> pmf) {
    if (pmf.empty()) throw std::invalid_argument("make_dist: empty pmf");
    double total = 0.0;
    for (double w : pmf) {
        if (!(w >= 0.0)) throw std::invalid_argument("make_dist: negative weight");
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("make_dist: zero total mass");
    for (double& w : pmf) w /= total;
    return DegreeDist{std::move(pmf)};
}

DegreeDist poisson_dist(double mean, double tail_tol) {
    if (!(mean > 0.0)) throw std::invalid_argument("poisson_dist: mean must be > 0");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("poisson_dist: tail_tol must be > 0");
    std::vector<double> pmf;
    double term = std::exp(-mean);  // p_0
    double cum = 0.0;
    for (int k = 0;; ++k) {
        pmf.push_back(term);
        cum += term;
        if (1.0 - cum < tail_tol && k >= mean) break;
        term *= mean / (k + 1);
    }
    return make_dist(std::move(pmf));
}

DegreeDist powerlaw_dist(double gamma, int k_min, int k_max) {
    if (!(gamma > 1.0)) throw std::invalid_argument("powerlaw_dist: gamma must be > 1");
    if (k_min < 1) throw std::invalid_argument("powerlaw_dist: k_min must be >= 1");
    if (k_min > k_max) throw std::invalid_argument("powerlaw_dist: k_min > k_max");
    std::vector<double> pmf(k_max + 1, 0.0);
    for (int k = k_min; k <= k_max; ++k) pmf[k] = std::pow(static_cast<double>(k), -gamma);
    return make_dist(std::move(pmf));
}

namespace {

// Precomputed tables shared across many evaluations at one
// (theta, dist_a, dist_b).
struct Ctx {
    const DegreeDist& da;
    const DegreeDist& db;
    std::vector<double> qa, qb;   // excess-degree weights q_k = p_k k / <k>
    std::vector<double> alpha;    // alpha_a(k_a, k_b), row-major over k_a
    int Ka, Kb;

    Ctx(double theta, const DegreeDist& a, const DegreeDist& b)
        : da(a), db(b), Ka(a.k_max()), Kb(b.k_max()) {
        double ma = a.mean(), mb = b.mean();
        if (!(ma > 0.0) || !(mb > 0.0))
            throw std::invalid_argument("theory: degree distribution has zero mean");
        qa.assign(Ka + 1, 0.0);
        qb.assign(Kb + 1, 0.0);
        for (int k = 1; k <= Ka; ++k) qa[k] = a.pmf[k] * k / ma;
        for (int k = 1; k <= Kb; ++k) qb[k] = b.pmf[k] * k / mb;
        alpha.resize(static_cast<std::size_t>(Ka + 1) * (Kb + 1));
        for (int ka = 0; ka <= Ka; ++ka)
            for (int kb = 0; kb <= Kb; ++kb)
                alpha[static_cast<std::size_t>(ka) * (Kb + 1) + kb] =
                    coupling_strengths(ka, kb, theta).first;
    }

    double a_of(int ka, int kb) const {
        return alpha[static_cast<std::size_t>(ka) * (Kb + 1) + kb];
    }

    // (1-R)^k tables up to the larger k_max
    static void pow_table(double base, int kmax, std::vector<double>& out) {
        out.resize(kmax + 1);
        out[0] = 1.0;
        for (int k = 1; k <= kmax; ++k) out[k] = out[k - 1] * base;
    }

    std::pair<double, double> eval(double R_a, double R_b, double p) const {
        std::vector<double> pa1m, pb1m;
        pow_table(1.0 - R_a, Ka, pa1m);
        pow_table(1.0 - R_b, Kb, pb1m);
        double ua = 1.0, ub = 1.0, va = 1.0, vb = 1.0;
        for (int k = 1; k <= Ka; ++k) ua -= qa[k] * pa1m[k - 1];
        for (int k = 1; k <= Kb; ++k) ub -= qb[k] * pb1m[k - 1];
        for (int k = 0; k <= Ka; ++k) va -= da.pmf[k] * pa1m[k];
        for (int k = 0; k <= Kb; ++k) vb -= db.pmf[k] * pb1m[k];
        std::vector<double> za(Ka + 1), zb(Kb + 1);
        for (int k = 0; k <= Ka; ++k) za[k] = 1.0 - p * (1.0 - pa1m[k]);
        for (int k = 0; k <= Kb; ++k) zb[k] = 1.0 - p * (1.0 - pb1m[k]);

        double sa = 0.0;
        for (int ka = 1; ka <= Ka; ++ka) {
            if (qa[ka] == 0.0) continue;
            double inner = 0.0;
            for (int kb = 0; kb <= Kb; ++kb) {
                double w = db.pmf[kb];
                if (w == 0.0) continue;
                double al = a_of(ka, kb);
                inner += w * al * (1.0 - std::pow(1.0 - al * R_a, ka - 1)) * zb[kb];
            }
            sa += qa[ka] * inner;
        }
        double sb = 0.0;
        for (int kb = 1; kb <= Kb; ++kb) {
            if (qb[kb] == 0.0) continue;
            double inner = 0.0;
            for (int ka = 0; ka <= Ka; ++ka) {
                double w = da.pmf[ka];
                if (w == 0.0) continue;
                double be = 1.0 - a_of(ka, kb);
                inner += w * be * (1.0 - std::pow(1.0 - be * R_b, kb - 1)) * za[ka];
            }
            sb += qb[kb] * inner;
        }
        // no clamping here: derivative probes evaluate slightly outside
        // the physical domain; the solver clamps its own iterates
        return {p * p * ua * vb + p * sa, p * p * ub * va + p * sb};
    }

    std::pair<double, double> giant(double R_a, double R_b, double p) const {
        std::vector<double> pa1m, pb1m;
        pow_table(1.0 - R_a, Ka, pa1m);
        pow_table(1.0 - R_b, Kb, pb1m);
        double va = 1.0, vb = 1.0;
        for (int k = 0; k <= Ka; ++k) va -= da.pmf[k] * pa1m[k];
        for (int k = 0; k <= Kb; ++k) vb -= db.pmf[k] * pb1m[k];
        std::vector<double> za(Ka + 1), zb(Kb + 1);
        for (int k = 0; k <= Ka; ++k) za[k] = 1.0 - p * (1.0 - pa1m[k]);
        for (int k = 0; k <= Kb; ++k) zb[k] = 1.0 - p * (1.0 - pb1m[k]);

        double sa = 0.0, sb = 0.0;
        for (int ka = 0; ka <= Ka; ++ka) {
            double wa = da.pmf[ka];
            if (wa == 0.0) continue;
            double inner = 0.0;
            for (int kb = 0; kb <= Kb; ++kb) {
                double wb = db.pmf[kb];
                if (wb == 0.0) continue;
                double al = a_of(ka, kb);
                inner += wb * (1.0 - std::pow(1.0 - al * R_a, ka)) * zb[kb];
            }
            sa += wa * inner;
        }
        for (int kb = 0; kb <= Kb; ++kb) {
            double wb = db.pmf[kb];
            if (wb == 0.0) continue;
            double inner = 0.0;
            for (int ka = 0; ka <= Ka; ++ka) {
                double wa = da.pmf[ka];
                if (wa == 0.0) continue;
                double be = 1.0 - a_of(ka, kb);
                inner += wa * (1.0 - std::pow(1.0 - be * R_b, kb)) * za[ka];
            }
            sb += wb * inner;
        }
        return {p * p * va * vb + p * sa, p * p * vb * va + p * sb};
    }
};

using Pair = std::pair<double, double>;

double residual(const Ctx& c, const Pair& x, double p) {
    Pair y = c.eval(x.first, x.second, p);
    return std::max(std::abs(y.first - x.first), std::abs(y.second - x.second));
}

// One solver attempt at a fixed damping; Aitken extrapolation is only
// accepted when the candidate still maps upward (h(c) >= c), which
// keeps it inside the basin of the largest fixed point.
bool solve_attempt(const Ctx& c, double p, const SolverParams& params,
                   double damping, Pair& out) {
    Pair x{params.init_R, params.init_R};
    Pair hist[3];
    int nh = 0;
    for (long it = 0; it < params.max_iter; ++it) {
        Pair y = c.eval(x.first, x.second, p);
        Pair xn{x.first + damping * (y.first - x.first),
                x.second + damping * (y.second - x.second)};
        xn.first = std::clamp(xn.first, 0.0, 1.0);
        xn.second = std::clamp(xn.second, 0.0, 1.0);
        double change = std::max(std::abs(xn.first - x.first),
                                 std::abs(xn.second - x.second));
        if (change < params.tol) {
            out = xn;
            return true;
        }
        if (xn.first < 1e-14 && xn.second < 1e-14) {
            out = {0.0, 0.0};
            return true;
        }
        hist[nh % 3] = xn;
        ++nh;
        if (nh >= 3 && nh % 4 == 0) {
            const Pair& x0 = hist[(nh - 3) % 3];
            const Pair& x1 = hist[(nh - 2) % 3];
            const Pair& x2 = hist[(nh - 1) % 3];
            auto aitken = [](double a, double b, double d) {
                double d1 = b - a, d2 = d - b, den = d2 - d1;
                if (std::abs(den) < 1e-300) return d;
                return d - d2 * d2 / den;
            };
            Pair cand{std::clamp(aitken(x0.first, x1.first, x2.first), 0.0, 1.0),
                      std::clamp(aitken(x0.second, x1.second, x2.second), 0.0, 1.0)};
            bool decaying = x2.first < 1e-3 && x2.second < 1e-3;
            bool accept = false;
            if (decaying) {
                accept = cand.first <= x2.first && cand.second <= x2.second;
            } else {
                Pair yc = c.eval(cand.first, cand.second, p);
                accept = yc.first >= cand.first - params.tol &&
                         yc.second >= cand.second - params.tol &&
                         residual(c, cand, p) < residual(c, x2, p);
            }
            if (accept) {
                xn = cand;
                nh = 0;
            }
        }
        x = xn;
    }
    out = x;
    return false;
}

}  // namespace

std::pair<double, double> h_eval_two_layer(double R_a, double R_b, double p,
                                           double theta, const DegreeDist& dist_a,
                                           const DegreeDist& dist_b) {
    // mildly negative R is allowed so central differences about R = 0
    // can probe the expansion coefficients
    if (!(R_a >= -1 && R_a <= 1 && R_b >= -1 && R_b <= 1))
        throw std::invalid_argument("h_eval_two_layer: R must be in [-1,1]");
    // p beyond 1 is allowed: the expression stays well-defined and is
    // used to probe the small-R expansion when p_c exceeds 1
    if (!(p >= 0)) throw std::invalid_argument("h_eval_two_layer: p must be >= 0");
    return Ctx(theta, dist_a, dist_b).eval(R_a, R_b, p);
}

double h_eval(double R, double p, double theta, const DegreeDist& dist) {
    return h_eval_two_layer(R, R, p, theta, dist, dist).first;
}

std::pair<double, double> solve_fixed_point(double p, double theta,
                                            const DegreeDist& dist_a,
                                            const DegreeDist& dist_b,
                                            const SolverParams& params) {
    if (!(params.tol > 0)) throw std::invalid_argument("solve_fixed_point: tol must be > 0");
    if (!(params.init_R > 0 && params.init_R <= 1))
        throw std::invalid_argument("solve_fixed_point: init_R must be in (0,1]");
    if (!(params.damping > 0 && params.damping <= 1))
        throw std::invalid_argument("solve_fixed_point: damping must be in (0,1]");
    if (!(p >= 0 && p <= 1))
        throw std::invalid_argument("solve_fixed_point: p must be in [0,1]");
    Ctx c(theta, dist_a, dist_b);
    Pair out;
    if (solve_attempt(c, p, params, params.damping, out)) return out;
    if (solve_attempt(c, p, params, params.damping * 0.5, out)) return out;
    std::ostringstream msg;
    msg << "solve_fixed_point: no convergence within " << params.max_iter
        << " iterations; last iterate (" << out.first << ", " << out.second << ")";
    throw std::runtime_error(msg.str());
}

std::pair<double, double> giant_fraction_theory(double p, double theta,
                                                const DegreeDist& dist_a,
                                                const DegreeDist& dist_b,
                                                double R_a, double R_b) {
    if (!(p >= 0))
        throw std::invalid_argument("giant_fraction_theory: p must be >= 0");
    return Ctx(theta, dist_a, dist_b).giant(R_a, R_b, p);
}

double pc_second_order(double theta, const DegreeDist& dist_a,
                       const DegreeDist& dist_b, bool single_layer) {
    Ctx c(theta, dist_a, dist_b);
    double denom = 0.0;
    for (int ka = 2; ka <= c.Ka; ++ka) {
        if (c.qa[ka] == 0.0) continue;
        double inner = 0.0;
        for (int kb = 0; kb <= c.Kb; ++kb) {
            double w = dist_b.pmf[kb];
            if (w == 0.0) continue;
            double al = single_layer ? 1.0 : c.a_of(ka, kb);
            inner += w * al * al;
        }
        denom += c.qa[ka] * inner * (ka - 1);
    }
    if (!(denom > 1e-300))
        throw std::runtime_error("pc_second_order: vanishing slope at R=0");
    return 1.0 / denom;
}

double h2_at_zero(double theta, const DegreeDist& dist) {
    double p = pc_second_order(theta, dist, dist);
    Ctx c(theta, dist, dist);
    double acc = 0.0;
    for (int ka = 1; ka <= c.Ka; ++ka) {
        if (c.qa[ka] == 0.0) continue;
        double inner = 0.0;
        for (int kb = 0; kb <= c.Kb; ++kb) {
            double w = dist.pmf[kb];
            if (w == 0.0) continue;
            double al = c.a_of(ka, kb);
            inner += w * (-al * al * al * (ka - 1.0) * (ka - 2.0) -
                          2.0 * p * al * al * (ka - 1.0) * kb);
        }
        acc += c.qa[ka] * inner;
    }
    return 2.0 * p * p * dist.mean_factorial() + p * acc;
}

double find_theta_c(const DegreeDist& dist, double theta_lo, double theta_hi,
                    double tol) {
    double flo = h2_at_zero(theta_lo, dist);
    double fhi = h2_at_zero(theta_hi, dist);
    if (flo == 0.0) return theta_lo;
    if (fhi == 0.0) return theta_hi;
    if ((flo > 0) == (fhi > 0))
        throw std::runtime_error("find_theta_c: no sign change on interval");
    while (theta_hi - theta_lo > tol) {
        double mid = 0.5 * (theta_lo + theta_hi);
        double fm = h2_at_zero(mid, dist);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            theta_lo = mid;
            flo = fm;
        } else {
            theta_hi = mid;
        }
    }
    return 0.5 * (theta_lo + theta_hi);
}

PhasePoint find_pc_first_order(double theta, const DegreeDist& dist, double p_tol) {
    if (!(p_tol > 0)) throw std::invalid_argument("find_pc_first_order: p_tol must be > 0");
    const double R_floor = 1e-6;
    const double jump_floor = 1e-3;
    Ctx c(theta, dist, dist);
    SolverParams params;
    auto solve_at = [&](double p) {
        Pair out;
        if (solve_attempt(c, p, params, 1.0, out)) return out;
        if (solve_attempt(c, p, params, 0.5, out)) return out;
        throw std::runtime_error("find_pc_first_order: solver did not converge");
    };
    Pair top = solve_at(1.0);
    if (top.first <= R_floor)
        throw std::runtime_error("find_pc_first_order: system never percolates");
    double lo = 0.0, hi = 1.0;
    Pair R_hi = top;
    while (hi - lo > p_tol) {
        double mid = 0.5 * (lo + hi);
        Pair r = solve_at(mid);
        if (r.first > R_floor) {
            hi = mid;
            R_hi = r;
        } else {
            lo = mid;
        }
    }
    PhasePoint pt;
    pt.theta = theta;
    pt.p_c = 0.5 * (lo + hi);
    if (R_hi.first > jump_floor) {
        pt.order = TransitionOrder::first;
        pt.R_c = R_hi.first;
        pt.S_c = c.giant(R_hi.first, R_hi.second, hi).first;
    } else {
        pt.order = TransitionOrder::second;
    }
    return pt;
}

}  // namespace mlnet
