#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mlnet/theory.hpp"

using namespace mlnet;

TEST_CASE("poisson_dist moments") {
    DegreeDist d = poisson_dist(4.0);
    double sum = 0.0;
    for (double w : d.pmf) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.mean() == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(d.mean_factorial() == doctest::Approx(16.0).epsilon(1e-8));
    CHECK(d.pmf[0] == doctest::Approx(std::exp(-4.0)).epsilon(1e-9));
    CHECK_THROWS_AS(poisson_dist(0.0), std::invalid_argument);
}

TEST_CASE("powerlaw_dist") {
    DegreeDist d = powerlaw_dist(2.3, 2, 128);
    double sum = 0.0, mean = 0.0;
    // independent normalization check
    double z = 0.0;
    for (int k = 2; k <= 128; ++k) z += std::pow(k, -2.3);
    for (int k = 0; k < static_cast<int>(d.pmf.size()); ++k) {
        sum += d.pmf[k];
        mean += k * d.pmf[k];
        if (k >= 2) CHECK(d.pmf[k] == doctest::Approx(std::pow(k, -2.3) / z).epsilon(1e-12));
        else CHECK(d.pmf[k] == 0.0);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(5.0005).epsilon(1e-3));

    DegreeDist degen = powerlaw_dist(2.0, 3, 3);
    CHECK(degen.pmf == std::vector<double>{0, 0, 0, 1});
    CHECK_THROWS_AS(powerlaw_dist(2.3, 5, 4), std::invalid_argument);
    CHECK_THROWS_AS(powerlaw_dist(0.5, 2, 9), std::invalid_argument);
    CHECK_THROWS_AS(powerlaw_dist(2.3, 0, 9), std::invalid_argument);
}

TEST_CASE("h_eval basics") {
    DegreeDist p4 = poisson_dist(4.0);
    CHECK(h_eval(0.0, 0.7, -2.0, p4) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(h_eval(0.5, 0.0, -2.0, p4) == doctest::Approx(0.0).epsilon(1e-14));
    // single-degree pmf {2:1}, p=1, theta=0: closed form 13/32
    DegreeDist two = make_dist({0, 0, 1});
    CHECK(h_eval(0.5, 1.0, 0.0, two) == doctest::Approx(13.0 / 32).epsilon(1e-14));
    // bounded and monotone non-decreasing in R
    for (double th : {-2.0, 0.0, 3.0})
        for (double p : {0.3, 0.7, 1.0}) {
            double prev = -1.0;
            for (double R = 0.0; R <= 1.0001; R += 0.02) {
                double h = h_eval(std::min(R, 1.0), p, th, p4);
                CHECK(h >= prev - 1e-13);
                CHECK(h >= -1e-13);
                CHECK(h <= 1.0 + 1e-13);
                prev = h;
            }
        }
}

TEST_CASE("h_eval_two_layer reduction and swap symmetry") {
    DegreeDist p4 = poisson_dist(4.0);
    DegreeDist p5 = poisson_dist(5.0);
    for (double R : {0.1, 0.5, 0.9}) {
        auto [ha, hb] = h_eval_two_layer(R, R, 0.8, -2.0, p4, p4);
        CHECK(ha == doctest::Approx(h_eval(R, 0.8, -2.0, p4)).epsilon(1e-13));
        CHECK(ha == doctest::Approx(hb).epsilon(1e-13));
    }
    auto [xa, xb] = h_eval_two_layer(0.3, 0.6, 0.75, 1.5, p4, p5);
    auto [yb, ya] = h_eval_two_layer(0.6, 0.3, 0.75, 1.5, p5, p4);
    CHECK(xa == doctest::Approx(ya).epsilon(1e-13));
    CHECK(xb == doctest::Approx(yb).epsilon(1e-13));
    // R = 0 is a fixed point up to rounding of the pmf sum
    auto [za, zb] = h_eval_two_layer(0.0, 0.0, 0.9, 1.0, p4, p5);
    CHECK(std::abs(za) < 1e-15);
    CHECK(std::abs(zb) < 1e-15);
}

TEST_CASE("solve_fixed_point branches") {
    DegreeDist p4 = poisson_dist(4.0);
    auto z = solve_fixed_point(0.0, -2.0, p4, p4);
    CHECK(z.first == 0.0);
    CHECK(z.second == 0.0);
    auto dead = solve_fixed_point(0.6, -2.0, p4, p4);
    CHECK(dead.first < 1e-8);
    // frozen reference values from a long plain-iteration run
    auto r75 = solve_fixed_point(0.75, -2.0, p4, p4);
    CHECK(r75.first == doctest::Approx(0.416056900).epsilon(1e-6));
    auto r80 = solve_fixed_point(0.8, -2.0, p4, p4);
    CHECK(r80.first == doctest::Approx(0.548935703).epsilon(1e-6));
    CHECK(r80.first == doctest::Approx(r80.second).epsilon(1e-9));
    CHECK(r80.first > 0.2187);
    // the returned value is a fixed point
    auto h = h_eval_two_layer(r80.first, r80.second, 0.8, -2.0, p4, p4);
    CHECK(h.first == doctest::Approx(r80.first).epsilon(1e-8));
    CHECK_THROWS_AS(solve_fixed_point(0.5, 0.0, p4, p4, {.tol = -1}),
                    std::invalid_argument);
}

TEST_CASE("solver converges across a (p, theta) grid") {
    DegreeDist p4 = poisson_dist(4.0);
    for (double th = -3.0; th <= 6.01; th += 1.5)
        for (double p = 0.0; p <= 1.0001; p += 0.05) {
            auto r = solve_fixed_point(std::min(p, 1.0), th, p4, p4);
            CHECK(r.first >= 0.0);
            CHECK(r.first <= 1.0);
        }
}

TEST_CASE("giant_fraction_theory") {
    DegreeDist p4 = poisson_dist(4.0);
    auto z = giant_fraction_theory(0.8, -2.0, p4, p4, 0.0, 0.0);
    CHECK(z.first == doctest::Approx(0.0).epsilon(1e-14));
    // single-degree pmf closed form: {2:1}, p=1, theta=0, R=1/2 -> 43/64
    DegreeDist two = make_dist({0, 0, 1});
    auto s = giant_fraction_theory(1.0, 0.0, two, two, 0.5, 0.5);
    CHECK(s.first == doctest::Approx(43.0 / 64).epsilon(1e-14));
    CHECK(s.second == doctest::Approx(43.0 / 64).epsilon(1e-14));
    // S <= p at a real fixed point
    auto r = solve_fixed_point(0.8, -2.0, p4, p4);
    auto sp = giant_fraction_theory(0.8, -2.0, p4, p4, r.first, r.second);
    CHECK(sp.first > 0.0);
    CHECK(sp.first <= 0.8);
}

TEST_CASE("pc_second_order closed form") {
    DegreeDist p4 = poisson_dist(4.0);
    CHECK(pc_second_order(0.0, p4, p4, true) == doctest::Approx(0.25).epsilon(1e-6));
    // frozen references (independent numerical evaluation)
    CHECK(pc_second_order(-2.0, p4, p4) == doctest::Approx(1.577602).epsilon(1e-4));
    CHECK(pc_second_order(0.0, p4, p4) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pc_second_order(2.0, p4, p4) == doctest::Approx(0.501734).epsilon(1e-4));
    CHECK(pc_second_order(4.0, p4, p4) == doctest::Approx(0.410523).epsilon(1e-4));
    // all-equal degrees force alpha = 1/2: p_c = 4 <k>/<k(k-1)>
    DegreeDist three = make_dist({0, 0, 0, 1});
    CHECK(pc_second_order(5.0, three, three) ==
          doctest::Approx(4.0 * 3.0 / 6.0).epsilon(1e-12));
    DegreeDist ones = make_dist({0, 1});
    CHECK_THROWS_AS(pc_second_order(0.0, ones, ones), std::runtime_error);
}

TEST_CASE("slope criterion ties pc_second_order to h") {
    DegreeDist p4 = poisson_dist(4.0);
    for (double th : {-2.0, 0.0, 1.0, 4.0}) {
        double pc2 = pc_second_order(th, p4, p4);
        double e = 1e-6;
        double slope = (h_eval(e, 1.0, th, p4) - h_eval(-e, 1.0, th, p4)) / (2 * e);
        CHECK(slope * pc2 == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("h2_at_zero matches central differences") {
    DegreeDist p4 = poisson_dist(4.0);
    for (double th = -3.0; th <= 8.01; th += 0.5) {
        double a = h2_at_zero(th, p4);
        double p = pc_second_order(th, p4, p4);
        double e = 1e-4;
        double fd = (h_eval(e, p, th, p4) - 2 * h_eval(0.0, p, th, p4) +
                     h_eval(-e, p, th, p4)) / (e * e);
        CHECK(std::abs(fd - a) / std::max(1e-12, std::abs(a)) < 1e-4);
    }
    // single-degree pmf hand evaluation: all alphas 1/2, q = pmf = {k0:1}
    // h''(0) = 2 p^2 k0(k0-1) + p(-(k0-1)(k0-2)/8 - p (k0-1) k0 / 2)
    DegreeDist four = make_dist({0, 0, 0, 0, 1});
    double p = pc_second_order(0.0, four, four);
    double expect = 2 * p * p * 12.0 + p * (-3.0 * 2.0 / 8.0 - p * 3.0 * 4.0 / 2.0);
    CHECK(h2_at_zero(0.0, four) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("h2_at_zero changes sign and find_theta_c locates it") {
    DegreeDist p4 = poisson_dist(4.0);
    CHECK(h2_at_zero(-2.0, p4) > 0.0);
    CHECK(h2_at_zero(6.0, p4) < 0.0);
    double tc = find_theta_c(p4, -2.0, 6.0);
    CHECK(tc == doctest::Approx(2.6158).epsilon(2e-4));
    CHECK(find_theta_c(poisson_dist(5.0), -2.0, 6.0) == doctest::Approx(2.5718).epsilon(1e-3));
    CHECK(find_theta_c(poisson_dist(6.0), -2.0, 6.0) == doctest::Approx(2.5424).epsilon(1e-3));
    CHECK_THROWS_AS(find_theta_c(p4, 4.0, 6.0), std::runtime_error);
    // scale-free layers cross over too, at a much lower theta
    DegreeDist sf = powerlaw_dist(2.3, 2, 128);
    CHECK(find_theta_c(sf, -2.0, 6.0) == doctest::Approx(-0.1754).epsilon(2e-2));
}

TEST_CASE("find_pc_first_order on both sides of the crossover") {
    DegreeDist p4 = poisson_dist(4.0);
    PhasePoint lo = find_pc_first_order(-2.0, p4);
    CHECK(lo.order == TransitionOrder::first);
    CHECK(lo.p_c == doctest::Approx(0.719627).epsilon(1e-4));
    CHECK(lo.R_c == doctest::Approx(0.2546).epsilon(5e-3));
    CHECK(lo.S_c == doctest::Approx(0.3294).epsilon(5e-3));

    PhasePoint mid = find_pc_first_order(2.5, p4);
    CHECK(mid.order == TransitionOrder::first);
    CHECK(mid.p_c == doctest::Approx(0.466534).epsilon(1e-3));

    PhasePoint hi = find_pc_first_order(6.0, p4);
    CHECK(hi.order == TransitionOrder::second);
    CHECK(hi.R_c == 0.0);
    CHECK(hi.S_c == 0.0);
    // far above the crossover the bisection detector recovers the
    // closed-form continuous threshold
    CHECK(hi.p_c == doctest::Approx(pc_second_order(6.0, p4, p4)).epsilon(1e-4));

    // tangency certificate: dh/dR = 1 at (R_c, p_c) for the first-order point
    double e = 1e-6;
    double dh = (h_eval(lo.R_c + e, lo.p_c, -2.0, p4) -
                 h_eval(lo.R_c - e, lo.p_c, -2.0, p4)) / (2 * e);
    CHECK(dh == doctest::Approx(1.0).epsilon(1e-2));

    DegreeDist ones = make_dist({0, 1});
    CHECK_THROWS_AS(find_pc_first_order(0.0, ones), std::runtime_error);
}
