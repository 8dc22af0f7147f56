#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dpflow/specfun.hpp"
#include "oracle/reference.hpp"

using namespace dpflow;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return xs;
}
}  // namespace

TEST_CASE("bessel values at the origin") {
    REQUIRE(bessel(BesselKind::J, 0, 0.0) == 1.0);
    REQUIRE(bessel(BesselKind::J, 1, 0.0) == 0.0);
    REQUIRE(bessel(BesselKind::I, 0, 0.0) == 1.0);
    REQUIRE(bessel(BesselKind::I, 1, 0.0) == 0.0);
}

TEST_CASE("bessel accuracy against the multiprecision oracle") {
    // <= 1e-13 relative, 1e-13 absolute near zeros, over log-spaced [1e-6, 50]
    const auto xs = log_spaced(1e-6, 50.0, 120);
    for (auto kind : {BesselKind::J, BesselKind::Y, BesselKind::I, BesselKind::K}) {
        for (int order : {0, 1}) {
            for (double x : xs) {
                const double ref = oracle::ref_bessel(kind, order, x);
                const double val = bessel(kind, order, x);
                const double tol = 1e-13 * std::max(1.0, std::abs(ref));
                INFO("kind=" << static_cast<int>(kind) << " order=" << order << " x=" << x);
                REQUIRE_THAT(val, WithinAbs(ref, tol));
            }
        }
    }
}

TEST_CASE("first positive zero of J0") {
    const double frozen = 2.404825557695773;
    REQUIRE_THAT(oracle::j0_first_zero_by_bisection(), WithinAbs(frozen, 1e-14));
    // our J0 changes sign within one ulp-scale bracket of the frozen zero
    REQUIRE(bessel_j(0, frozen - 1e-13) > 0.0);
    REQUIRE(bessel_j(0, frozen + 1e-13) < 0.0);
}

TEST_CASE("modified-Bessel Wronskian") {
    for (double x : {0.5, 1.0, 5.0, 20.0}) {
        const double w = bessel(BesselKind::I, 0, x) * bessel(BesselKind::K, 1, x) +
                         bessel(BesselKind::I, 1, x) * bessel(BesselKind::K, 0, x);
        REQUIRE_THAT(w, WithinRel(1.0 / x, 1e-13));
    }
}

TEST_CASE("bessel domain errors") {
    REQUIRE_THROWS_AS(bessel(BesselKind::Y, 0, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(bessel(BesselKind::Y, 1, -1.0), std::domain_error);
    REQUIRE_THROWS_AS(bessel(BesselKind::K, 0, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(bessel(BesselKind::J, 0, -2.0), std::domain_error);
    REQUIRE_THROWS_AS(bessel(BesselKind::J, 2, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(bessel(BesselKind::I, 0, 800.0), std::overflow_error);
}

TEST_CASE("cross_i") {
    SECTION("equal arguments vanish identically") {
        for (double k : {0.3, 2.0, 11.7})
            for (double x : {1.0, 2.5, 40.0}) {
                REQUIRE(cross_i(0, 0, k, x, x) == 0.0);
                REQUIRE(cross_i(1, 1, k, x, x) == 0.0);
            }
    }
    SECTION("composition against the oracle") {
        const double ref = oracle::ref_j(0, 3.0) * oracle::ref_y(0, 6.0) -
                           oracle::ref_y(0, 3.0) * oracle::ref_j(0, 6.0);
        REQUIRE_THAT(cross_i(0, 0, 3.0, 1.0, 2.0), WithinRel(ref, 1e-13));
    }
    SECTION("antisymmetry for equal orders") {
        for (int m : {0, 1})
            for (double k : {0.7, 3.3})
                for (double y : {1.0, 4.0})
                    for (double z : {2.0, 9.5}) {
                        REQUIRE_THAT(cross_i(m, m, k, y, z),
                                     WithinAbs(-cross_i(m, m, k, z, y), 1e-15));
                    }
    }
    SECTION("domain errors") {
        REQUIRE_THROWS_AS(cross_i(0, 0, -1.0, 1.0, 2.0), std::domain_error);
        REQUIRE_THROWS_AS(cross_i(0, 0, 1.0, 0.0, 2.0), std::domain_error);
    }
}

TEST_CASE("cross_psi") {
    SECTION("equal arguments vanish for (0,0) and (1,1)") {
        for (double a : {0.5, 2.0})
            for (double x : {0.3, 4.0}) {
                REQUIRE_THAT(cross_psi(0, 0, a, a, x), WithinAbs(0.0, 1e-16));
                REQUIRE_THAT(cross_psi(1, 1, a, a, x), WithinAbs(0.0, 1e-16));
            }
    }
    SECTION("Wronskian row: Psi_{0,1}(1,1,x) = 1/x") {
        for (double x : {0.2, 1.0, 7.0, 50.0})
            REQUIRE_THAT(cross_psi(0, 1, 1.0, 1.0, x), WithinRel(1.0 / x, 1e-13));
    }
    SECTION("sign rule composition against the oracle") {
        const double ref = oracle::ref_k(1, 1.5) * oracle::ref_i(1, 3.0) -
                           oracle::ref_i(1, 1.5) * oracle::ref_k(1, 3.0);
        REQUIRE_THAT(cross_psi(1, 1, 1.0, 2.0, 1.5), WithinRel(ref, 1e-13));
        const double ref2 = oracle::ref_k(1, 2.0) * oracle::ref_i(0, 0.8) +
                            oracle::ref_i(1, 2.0) * oracle::ref_k(0, 0.8);
        REQUIRE_THAT(cross_psi(1, 0, 2.5, 1.0, 0.8), WithinRel(ref2, 1e-13));
    }
    SECTION("scaled form matches the direct product at moderate arguments") {
        for (double x : {0.5, 3.0, 20.0}) {
            const auto sv = cross_psi_scaled(0, 0, 2.0, 1.0, x);
            const double direct = oracle::ref_k(0, 2.0 * x) * oracle::ref_i(0, x) -
                                  oracle::ref_i(0, 2.0 * x) * oracle::ref_k(0, x);
            REQUIRE_THAT(sv.value(), WithinRel(direct, 1e-12));
        }
    }
    SECTION("large arguments: scaled survives, plain overflows") {
        const auto big = cross_psi_scaled(0, 0, 1.0, 100.0, 30.0);  // I0(3000) territory
        REQUIRE(std::isfinite(big.mantissa));
        REQUIRE(big.exponent > 2000.0);
        REQUIRE_THROWS_AS(cross_psi(0, 0, 1.0, 100.0, 30.0), std::overflow_error);
        // ratios of same-scale values stay finite
        const auto other = cross_psi_scaled(0, 0, 1.0, 100.0, 30.000001);
        const double ratio = scaled_ratio(big, other);
        REQUIRE(std::isfinite(ratio));
        REQUIRE_THAT(ratio, WithinRel(1.0, 1e-3));
    }
}

TEST_CASE("find_roots basics") {
    SECTION("first DD root at r_ext = 2 against the frozen bisection value") {
        auto t = find_roots(BoundaryCase::DD, 2.0, 5);
        REQUIRE_THAT(t.roots[0], WithinAbs(3.1230309195956922, 1e-12));
        REQUIRE(t.roots.size() == 5);
        for (double res : t.residuals) REQUIRE(res <= RootTable::residual_bound);
        for (std::size_t i = 1; i < t.size(); ++i) REQUIRE(t.roots[i] > t.roots[i - 1]);
    }
    SECTION("DN sub-step root at r_ext = 100 is found") {
        auto t = find_roots(BoundaryCase::DN, 100.0, 3);
        // slow drainage mode sits below the asymptotic spacing pi/99
        REQUIRE_THAT(t.roots[0], WithinAbs(0.0071669063246899639, 1e-12));
        REQUIRE(t.roots[0] < M_PI / (4.0 * 99.0));
        REQUIRE_THAT(t.roots[1], WithinAbs(0.0428994703736559, 1e-11));
    }
    SECTION("domain errors") {
        REQUIRE_THROWS_AS(find_roots(BoundaryCase::DD, 1.0, 5), std::domain_error);
        REQUIRE_THROWS_AS(find_roots(BoundaryCase::DD, 2.0, 0), std::domain_error);
    }
}

TEST_CASE("root spacing approaches pi/(r_ext-1)") {
    for (double R : {10.0, 100.0}) {
        for (auto bc : {BoundaryCase::DD, BoundaryCase::DN, BoundaryCase::ND, BoundaryCase::NN}) {
            auto t = find_roots(bc, R, 2000);
            const double target = M_PI / (R - 1.0);
            const double min_allowed = 0.1 * target;
            // last decile: spacing within 1 %
            for (std::size_t i = 1801; i < 2000; ++i) {
                const double d = t.roots[i] - t.roots[i - 1];
                INFO(to_string(bc) << " R=" << R << " i=" << i << " spacing=" << d);
                REQUIRE_THAT(d, WithinRel(target, 0.01));
            }
            for (std::size_t i = 1; i < 2000; ++i)
                REQUIRE(t.roots[i] - t.roots[i - 1] > min_allowed);
        }
    }
}

TEST_CASE("thin and wide annuli") {
    // near-unit annulus: large roots, tight spacing
    auto thin = find_roots(BoundaryCase::DD, 1.2, 50);
    REQUIRE(thin.roots.front() > 10.0);
    for (double res : thin.residuals) REQUIRE(res <= RootTable::residual_bound);
    const double spacing = M_PI / 0.2;
    REQUIRE_THAT(thin.roots[49] - thin.roots[48], WithinRel(spacing, 0.01));
    // wide annulus: sub-unit roots, DN sub-step mode included
    auto wide = find_roots(BoundaryCase::DN, 1000.0, 50);
    REQUIRE(wide.roots.front() < M_PI / (4.0 * 999.0));
    for (double res : wide.residuals) REQUIRE(res <= RootTable::residual_bound);
}

TEST_CASE("root count matches an independent fine scan") {
    // DD, r_ext = 100: roots in (0, 200 pi/99] vs a brute scan at step pi/(8*99)
    const double R = 100.0;
    const double upper = 200.0 * M_PI / 99.0;
    auto table = find_roots(BoundaryCase::DD, R, 260);
    std::size_t n_table = 0;
    for (double k : table.roots)
        if (k <= upper) ++n_table;

    std::size_t n_scan = 0;
    const double h = M_PI / (8.0 * 99.0);
    double a = h * 1e-4, fa = root_kernel(BoundaryCase::DD, a, R);
    while (a < upper) {
        const double b = std::min(a * 1.2 < h ? a * 1.2 : a + h, upper);
        const double fb = root_kernel(BoundaryCase::DD, b, R);
        if ((fa > 0.0) != (fb > 0.0)) ++n_scan;
        a = b;
        fa = fb;
    }
    REQUIRE(n_table == n_scan);
}
