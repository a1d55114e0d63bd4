#include <abvac/vacuum.hpp>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace abvac;
namespace bm = boost::math;

namespace {

// sum_l kappa exp(-2|kappa| y), kappa = l + beta, summed pairwise in long double
// (the pairs cancel to ~1e-11 of their magnitude at y ~ 1e-4)
double lsum_signed_brute(double y, double beta) {
    long double s = 0.0L;
    const long double b = beta, yy = y;
    for (long k = 0; k < 4000000; ++k) {
        const long double a = k + b, c = k + 1 - b;
        const long double t = a * std::exp(-2 * a * yy) - c * std::exp(-2 * c * yy);
        s += t;
        if (k > 10 && a * yy > 30.0L) break;
    }
    return static_cast<double>(s);
}

double lsum_unsigned_brute(double y, double beta) {
    double s = 0.0;
    for (int k = 0; k < 200000; ++k) {
        const double a = k + beta, c = k + 1 - beta;
        const double t = a * std::exp(-2 * a * y) + c * std::exp(-2 * c * y);
        s += t;
        if (k > 10 && t < 1e-18 * s) break;
    }
    return s;
}

// nu K_nu(z) I_nu(z) from the uniform large-order expansion through nu^-2
double nu_ki_uniform(double nu, double z) {
    const double x = z / nu, p = 1 / std::sqrt(1 + x * x);
    const double U1 = (3 * p - 5 * p * p * p) / 24;
    const double U2 = (81 * p * p - 462 * std::pow(p, 4) + 385 * std::pow(p, 6)) / 1152;
    return 0.5 * p * (1 + (2 * U2 - U1 * U1) / (nu * nu));
}

// Direct signed pair sum of (l + beta) K I with Boost, plus the constant left
// by the y-regularized ordering.
double e_integrand_oracle(double z, double beta) {
    double s = 0.0;
    int k = 0;
    for (; k < 120; ++k) {
        const double a = k + beta, c = k + 1 - beta;
        s += a * bm::cyl_bessel_k(a, z) * bm::cyl_bessel_i(a, z) - c * bm::cyl_bessel_k(c, z) * bm::cyl_bessel_i(c, z);
    }
    for (; k < 4000000; ++k) s += nu_ki_uniform(k + beta, z) - nu_ki_uniform(k + 1 - beta, z);
    return s + 0.5 * (1 - 2 * beta);
}

} // namespace

TEST(LSum, SignedClosedFormMatchesDirectSum) {
    for (double beta : {0.1, 0.3, 0.5, 0.77})
        for (double y : {0.01, 0.3, 2.0, 9.0}) {
            const double ref = lsum_signed_brute(y, beta);
            EXPECT_NEAR(lsum_closed_signed(y, beta), ref, 1e-11 * std::abs(ref) + 1e-16) << beta << " " << y;
        }
}

TEST(LSum, SignedSmallYReference) {
    // 50-digit references (direct nsum of the pairs); the pairs cancel to 1e-11 here
    struct Ref {
        double y, beta, value;
    };
    for (const Ref& r : {Ref{3e-4, 0.1, 1.4399999780544002125e-05}, Ref{1e-5, 0.3, 5.5999999998782939839e-07},
                         Ref{1e-7, 0.77, -6.3755999999999867684e-09}, Ref{0.5, 0.1, 0.023019781504842190964}})
        EXPECT_NEAR(lsum_closed_signed(r.y, r.beta) / r.value, 1.0, 1e-14) << r.y;
}

TEST(LSum, SeriesBranchJoinsSmoothly) {
    // either side of the branch point, against 40-digit values
    const double lo = 0.5 * (1 - 1e-13), hi = 0.5 * (1 + 1e-13);
    EXPECT_NEAR(lsum_closed_signed(lo, 0.1) / 0.023019781504840077448, 1.0, 1e-14);
    EXPECT_NEAR(lsum_closed_signed(hi, 0.1) / 0.023019781504844302133, 1.0, 1e-14);
    EXPECT_NEAR(lsum_closed_signed(lo, 0.77) / -0.030310507160704019408, 1.0, 1e-14);
    EXPECT_NEAR(lsum_closed_signed(hi, 0.77) / -0.030310507160709476264, 1.0, 1e-14);
    for (double beta : {0.1, 0.77}) EXPECT_GT(lsum_closed_signed(1e-6, beta) * (1 - 2 * beta), 0.0);
    EXPECT_EQ(lsum_closed_signed(0.01, 0.5), 0.0);
    EXPECT_EQ(lsum_closed_signed(3.0, 0.5), 0.0);
}

TEST(LSum, UnsignedClosedFormMatchesDirectSum) {
    for (double beta : {0.1, 0.5, 0.77})
        for (double y : {0.01, 0.3, 2.0}) EXPECT_NEAR(lsum_closed(y, beta) / lsum_unsigned_brute(y, beta), 1.0, 1e-12);
}

TEST(Massless, OracleGrid) {
    for (double beta : {0.1, 0.25, 0.5, 0.75, 0.9})
        for (double r : {0.5, 1.0, 5.0, 20.0}) {
            const Estimate e = massless_current_numeric(r, beta);
            const double c = massless_current_closed(r, beta);
            if (beta == 0.5) {
                EXPECT_NEAR(e.value, 0.0, 1e-12);
            } else {
                EXPECT_NEAR(e.value / c, 1.0, 1e-9) << beta << " " << r;
                EXPECT_LT(e.error, 1e-6 * std::abs(c));
            }
        }
}

TEST(Massless, DirectLSumAgrees) {
    QuadratureSpec spec;
    spec.direct_lsum = true;
    for (double beta : {0.2, 0.65}) {
        const double a = massless_current_numeric(1.0, beta, spec).value;
        EXPECT_NEAR(a / massless_current_closed(1.0, beta), 1.0, 1e-9);
    }
}

TEST(Massless, PrintedClosedFormDiffers) {
    for (double beta : {0.25, 0.75}) {
        const double ours = massless_current_closed(1.0, beta);
        const double printed_form = printed::massless_current_closed(1.0, beta);
        EXPECT_GT(std::abs(ours / printed_form - 1.0), 0.5);
    }
}

TEST(Massless, InverseSquareScaling) {
    const double beta = 0.3;
    const double ref = massless_current_numeric(1.0, beta).value;
    for (double r : {0.2, 2.0, 20.0}) EXPECT_NEAR(massless_current_numeric(r, beta).value * r * r / ref, 1.0, 1e-6);
}

TEST(Massless, OddUnderBetaReflection) {
    for (double beta : {0.1, 0.35}) {
        const double a = massless_current_numeric(2.0, beta).value;
        const double b = massless_current_numeric(2.0, 1.0 - beta).value;
        EXPECT_NEAR(a, -b, 1e-10 * std::abs(a));
        EXPECT_DOUBLE_EQ(std::abs(massless_current_closed(2.0, beta)), std::abs(massless_current_closed(2.0, 1.0 - beta)));
    }
}

TEST(Massless, FluxPeriodicity) {
    QuadratureSpec spec;
    spec.direct_lsum = true;
    for (double mu : {0.3, 0.625, -0.4}) {
        const double a = massless_current_numeric_mu(1.5, mu, spec).value;
        const double b = massless_current_numeric_mu(1.5, mu + 1.0, spec).value;
        const double c = massless_current_numeric_mu(1.5, mu + 3.0, spec).value;
        EXPECT_NEAR(b / a, 1.0, 1e-10);
        EXPECT_NEAR(c / a, 1.0, 1e-10);
    }
}

TEST(Massless, DeltaLadderIndependence) {
    QuadratureSpec a, b;
    b.deltas = {0.05, 0.03, 0.02, 0.01};
    EXPECT_NEAR(massless_current_numeric(1.0, 0.2, a).value / massless_current_numeric(1.0, 0.2, b).value, 1.0, 1e-8);
}

TEST(Massive, EIntegrandAgainstBesselPairSum) {
    for (double beta : {0.25, 0.7})
        for (double z : {0.3, 1.0, 3.0}) {
            const Estimate e = massive_e_integrand(z, beta);
            EXPECT_NEAR(e.value / e_integrand_oracle(z, beta), 1.0, 1e-7) << beta << " " << z;
        }
}

TEST(Massive, SmallZLimit) {
    // G(z) -> (1 - 2 beta)/2 as z -> 0, approached like z^{2 beta}
    const double d1 = 0.25 - massive_e_integrand(1e-6, 0.25).value;
    const double d2 = 0.25 - massive_e_integrand(1e-8, 0.25).value;
    EXPECT_GT(d2, 0.0);
    EXPECT_NEAR(d1 / d2, 10.0, 0.1);
}

TEST(Massive, ZeroMassReducesToMassless) {
    for (double beta : {0.25, 0.8}) {
        const double a = massive_current_numeric(1.0, 0.0, beta).value;
        EXPECT_NEAR(a / massless_current_closed(1.0, beta), 1.0, 1e-6);
    }
}

TEST(Massive, SuppressedBelowMassless) {
    const double j0 = massless_current_closed(1.0, 0.25);
    double prev = std::abs(j0);
    for (double m : {0.5, 1.0, 3.0}) {
        const double j = massive_current_numeric(1.0, m, 0.25).value;
        EXPECT_GT(j * j0, 0.0);
        EXPECT_LT(std::abs(j), prev);
        prev = std::abs(j);
    }
}

TEST(Massive, EstimateRelations) {
    EXPECT_EQ(massive_current_estimate(1.5, 0.0, 0.25), massless_current_closed(1.5, 0.25));
    EXPECT_NEAR(massive_current_estimate(1.0, 1.0, 0.25), massless_current_closed(1.0, 0.25) / std::sqrt(2.0), 1e-16);
    const double big = massive_current_estimate(1.0, 1e4, 0.25) * 1e4;
    EXPECT_NEAR(big / massless_current_closed(1.0, 0.25), 1.0, 1e-8);
}

TEST(BoundTerms, DensityShapeAndPresence) {
    auto b = find_bound_state(0.7, -1, 1.0, 2.0);
    ASSERT_TRUE(b);
    ASSERT_TRUE(bound_contributes(*b));
    const double N = bound_normalization(*b);
    for (double r : {0.3, 1.0, 4.0}) {
        const double x = b->lambda * r;
        const double k1 = bm::cyl_bessel_k(0.7, x), k2 = bm::cyl_bessel_k(0.3, x);
        EXPECT_NEAR(bound_charge_density(r, *b).value, -charge * N * N * (k1 * k1 + k2 * k2), 1e-13);
    }
    auto low = find_bound_state(0.3, -1, 1.0, 2.0);
    ASSERT_TRUE(low);
    EXPECT_FALSE(bound_contributes(*low));
    EXPECT_FALSE(bound_charge_density(1.0, *low).present);
    auto far = find_bound_state(0.7, -1, 0.05, 1.0); // lambda > m
    ASSERT_TRUE(far);
    EXPECT_FALSE(bound_contributes(*far));
}

TEST(BoundTerms, Localization) {
    auto b = find_bound_state(0.7, -1, 1.0, 2.0);
    const double r1 = 10.0, r2 = 14.0;
    const double rate = std::log(bound_charge_density(r1, *b).value / bound_charge_density(r2, *b).value) / (r2 - r1);
    EXPECT_GE(rate, 1.5 * b->lambda);
    EXPECT_LE(rate, 2.5 * b->lambda);
}

TEST(FreeCharge, PartialSumStructure) {
    const auto S = free_charge_partial_sums(1.0, 1.0, 0.3, 40);
    ASSERT_EQ(S.size(), 40u);
    for (std::size_t L = 10; L < S.size(); ++L) EXPECT_LT(std::abs(S[L]), std::abs(S[L - 1])) << L + 1;
    EXPECT_THROW(free_charge_partial_sums(1.0, 1.0, 0.3, 0), DomainError);
}

TEST(FiniteSize, Factors) {
    auto a = finite_size_suppression(10.0, 1.0, 0.7, 0.0);
    EXPECT_EQ(a.second, 0.0);
    auto b = finite_size_suppression(10.0, 1.0, 0.7, pi);
    EXPECT_EQ(b.first, 0.0);
    auto c = finite_size_suppression(100.0, 1.0, 0.7, 0.5 * pi);
    EXPECT_NEAR(c.first, 1e-4 * std::cos(pi / 4), 1e-18);
    EXPECT_NEAR(c.second, std::pow(1e-2, 1.4) * std::sin(pi / 4), 1e-16);
    EXPECT_THROW(finite_size_suppression(5.0, 1.0, 0.7, 0.0), DomainError);
}

TEST(Profile, MasslessScalingAndColumns) {
    ProfileParams pp;
    pp.beta = 0.25;
    std::vector<double> grid;
    for (int i = 0; i < 9; ++i) grid.push_back(0.5 * std::pow(100.0, i / 8.0));
    const auto d = density_profile(pp, grid, {});
    ASSERT_EQ(d.r.size(), grid.size());
    const double c0 = d.jphi_v[0] * 4 * pi * grid[0] * grid[0];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(d.jphi_v[i] * 4 * pi * grid[i] * grid[i] / c0, 1.0, 1e-4);
        EXPECT_NEAR(d.jphi_v[i] / d.jphi_closed[i], 1.0, 1e-4);
        EXPECT_EQ(d.jphi_estimate[i], d.jphi_closed[i]);
        EXPECT_EQ(d.j0_b[i], 0.0);
    }
    EXPECT_FALSE(d.bound_included);
}

TEST(Profile, BoundTermsIncludedWhenAllowed) {
    ProfileParams pp;
    pp.beta = 0.7;
    pp.m = 2.0;
    pp.massive = true;
    pp.R = 1.0;
    const auto d = density_profile(pp, {0.5, 1.0}, {});
    EXPECT_TRUE(d.bound_included);
    EXPECT_GT(d.j0_b[0], 0.0); // -e N^2 (...) > 0 for e = -e0
    pp.beta = 0.3;
    EXPECT_FALSE(density_profile(pp, {0.5, 1.0}, {}).bound_included);
}

TEST(Profile, DeterministicAcrossThreadCounts) {
    ProfileParams pp;
    pp.beta = 0.4;
    pp.m = 1.0;
    pp.massive = true;
    pp.threads = 1;
    const std::vector<double> grid{0.5, 1.0, 2.0, 3.0};
    const auto a = density_profile(pp, grid, {});
    pp.threads = 4;
    const auto b = density_profile(pp, grid, {});
    EXPECT_EQ(a.jphi_v, b.jphi_v);
    EXPECT_EQ(a.jphi_v_err, b.jphi_v_err);
}

TEST(Profile, Errors) {
    ProfileParams pp;
    EXPECT_THROW(density_profile(pp, {}, {}), DomainError);
    EXPECT_THROW(density_profile(pp, {1.0, 0.5}, {}), DomainError);
    EXPECT_THROW(density_profile(pp, {-1.0}, {}), DomainError);
    QuadratureSpec bad;
    bad.direct_lsum = true;
    bad.l_max = 10;
    try {
        density_profile(pp, {0.5, 1.0}, bad);
        FAIL() << "expected a convergence failure";
    } catch (const ConvergenceError& e) {
        EXPECT_NE(std::string(e.what()).find("grid index 0"), std::string::npos);
    }
}
