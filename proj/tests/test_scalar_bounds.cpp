#include <cmath>

#include <gtest/gtest.h>

#include "dehnbounds/scalar_bounds.hpp"
#include "oracles.hpp"

using namespace dehn;

namespace {
const PackingConstants& K() { return packing_constants(); }
}

TEST(PackingConstants, MatchFirstPrinciples) {
    EXPECT_NEAR(K().S, oracle::kS, 1e-15);
    EXPECT_NEAR(K().C_single, oracle::kC, 1e-14);
    EXPECT_NEAR(K().h_max, oracle::kHmax, 1e-14);
    EXPECT_NEAR(K().r_at_hmax, oracle::kRatHmax, 1e-14);
    EXPECT_DOUBLE_EQ(K().C_multi, K().C_single / 2.0);
}

TEST(PackingConstants, RoundedReferenceValues) {
    EXPECT_NEAR(K().C_single, 3.3957, 5e-5);
    EXPECT_GT(K().C_single, 3.395);
    EXPECT_LT(K().C_single, 3.396);
    EXPECT_GT(K().h_max, 1.01967);
    EXPECT_LT(K().h_max, 1.01968);
    EXPECT_NEAR(1.0 / K().S, 0.980258, 1e-6);
}

TEST(PackingConstants, OperativeLiteralsKept) {
    EXPECT_EQ(K().rho1, 0.531);
    EXPECT_EQ(K().z1, 0.4862);
    // The two literals differ from each other and from the hump by ~1e-4.
    EXPECT_NEAR(std::tanh(K().rho1), K().z1, 2e-4);
    EXPECT_NEAR(K().rho1, K().r_at_hmax, 5e-4);
}

TEST(PackingFunction, HumpValue) {
    EXPECT_NEAR(h(0.5306375), 1.019675, 1e-5);
    EXPECT_NEAR(h(K().r_at_hmax), K().h_max, 1e-15);
}

TEST(PackingFunction, VanishesAtBothEnds) {
    EXPECT_LT(h(1e-9), 1e-8);
    EXPECT_LT(h(30.0), 1e-20);
}

TEST(PackingFunction, AtOneMatchesOracle) { EXPECT_NEAR(h(1.0), oracle::kH1, 1e-14); }

TEST(PackingFunction, RejectsNonPositiveRadius) {
    EXPECT_THROW(h(0.0), DomainError);
    EXPECT_THROW(h(-1.0), DomainError);
    EXPECT_THROW(h(std::nan("")), DomainError);
    EXPECT_THROW(h(INFINITY), DomainError);
}

TEST(PackingFunction, StrictlyDecreasingBeyondHump) {
    double prev = h(K().r_at_hmax);
    for (double r = K().r_at_hmax + 0.01; r < 12.0; r += 0.01) {
        const double v = h(r);
        ASSERT_LT(v, prev) << "r = " << r;
        prev = v;
    }
}

TEST(PackingFunction, DerivativeMatchesFiniteDifference) {
    for (double r = 0.1; r < 4.0; r += 0.13) {
        const double fd = (h(r + 1e-6) - h(r - 1e-6)) / 2e-6;
        EXPECT_NEAR(h_prime(r), fd, 1e-7 * std::max(1.0, std::abs(fd))) << r;
    }
}

TEST(FOfZ, Values) {
    EXPECT_NEAR(f_of_z(0.485868), 0.3002, 1e-4);
    EXPECT_NEAR(K().C_single * f_of_z(0.485868), 1.0196755, 1e-6);
    EXPECT_EQ(f_of_z(1.0), 0.0);
    EXPECT_THROW(f_of_z(0.0), DomainError);
    EXPECT_THROW(f_of_z(1.0 + 1e-12), DomainError);
}

TEST(FOfZ, ArgmaxByGoldenSection) {
    const double zmax = oracle::golden_max([](double z) { return f_of_z(z); }, 0.1, 0.9);
    EXPECT_NEAR(zmax, std::sqrt(std::sqrt(5.0) - 2.0), 1e-7);
    EXPECT_NEAR(K().z_at_hmax, std::sqrt(std::sqrt(5.0) - 2.0), 1e-16);
}

TEST(FOfZ, ComposesWithH) {
    for (double r = 0.05; r < 5.0; r += 0.21)
        EXPECT_NEAR(h(r), K().C_single * f_of_z(std::tanh(r)), 1e-14) << r;
}

TEST(HInverse, HumpAndReference) {
    EXPECT_NEAR(h_inverse(1.019675), 0.5306, 1e-3);
    EXPECT_EQ(h_inverse(K().h_max), K().r_at_hmax);
    EXPECT_NEAR(h_inverse(h(2.0)), 2.0, 1e-9);
}

TEST(HInverse, NearHumpAgainstBisectionOracle) {
    const double a = two_pi * 0.162;
    const double r = h_inverse(a);
    const double ref = oracle::bisect_root([&](double x) { return oracle::kC * std::tanh(x) / std::cosh(2 * x) - a; },
                                           0.531, 50.0);
    EXPECT_NEAR(r, ref, 1e-10);
    EXPECT_NEAR(r, oracle::kHinv2pi0162, 1e-10);
    EXPECT_GT(r, 0.531);
}

TEST(HInverse, RoundTripGrid) {
    for (double r = 0.531; r <= 10.0; r += 0.0137) EXPECT_NEAR(h_inverse(h(r)), r, 1e-9) << r;
}

TEST(HInverse, MonotoneDecreasing) {
    double prev = INFINITY;
    for (double a = 1e-3; a < K().h_max; a += 1e-3) {
        const double r = h_inverse(a);
        ASSERT_LT(r, prev);
        prev = r;
    }
}

TEST(HInverse, DomainErrors) {
    EXPECT_THROW(h_inverse(K().h_max * (1 + 1e-12)), DomainError);
    EXPECT_THROW(h_inverse(0.0), DomainError);
    EXPECT_THROW(h_inverse(-0.5), DomainError);
    try {
        h_inverse(2.0);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("above hump"), std::string::npos);
    }
}

TEST(SubstitutedFunctions, HAtZ1) {
    EXPECT_NEAR(H(0.4862), 0.9806, 1e-3);
    EXPECT_NEAR(H(0.4862), oracle::kHz1, 1e-14);
}

TEST(SubstitutedFunctions, HPoleAtOne) {
    const double z = 1.0 - 1e-8;
    EXPECT_NEAR((1.0 - z) * H(z), 1.0 / K().C_single, 1e-6);
    EXPECT_THROW(H(1.0), DomainError);
    EXPECT_THROW(H(0.0), DomainError);
}

TEST(SubstitutedFunctions, MultiCuspDoubles) {
    for (double z : {0.2, 0.4862, 0.7, 0.99}) {
        EXPECT_NEAR(H(z, Cusp::multi), 2.0 * H(z), 1e-13 * H(z));
        EXPECT_NEAR(G(z, Cusp::multi), 2.0 * G(z), 1e-13 * G(z));
        EXPECT_NEAR(Gtilde(z, Cusp::multi), 2.0 * Gtilde(z), 1e-13 * Gtilde(z));
    }
}

TEST(SubstitutedFunctions, GAndGtildeAtOne) {
    EXPECT_NEAR(G(1.0), 0.2945, 1e-4);
    EXPECT_NEAR(G(1.0), oracle::kG1, 1e-15);
    EXPECT_NEAR(Gtilde(1.0), G(1.0), 1e-15);
    EXPECT_NEAR(G(1.0), 1.0 / K().C_single, 1e-15);
}

TEST(SubstitutedFunctions, AtZ1MatchOracle) {
    EXPECT_NEAR(G(0.4862), oracle::kGz1, 1e-14);
    EXPECT_NEAR(Gtilde(0.4862), oracle::kGtz1, 1e-14);
}

TEST(SubstitutedFunctions, GtildeBelowH) {
    for (double z = K().z1; z < 1.0; z += 0.001) ASSERT_LT(Gtilde(z), H(z)) << z;
}

TEST(SubstitutedFunctions, GtildeRatioIdentity) {
    const double z = 0.7;
    EXPECT_NEAR(Gtilde(z) / H(z), (1 - z * z) * (1 + z * z) / (2 * z * z * (3 - z * z)), 1e-12);
}

TEST(SubstitutedFunctions, Positivity) {
    for (double z = 0.01; z < 1.0; z += 0.01) {
        EXPECT_GT(H(z), 0.0);
        EXPECT_GT(G(z), 0.0);
        EXPECT_GT(Gtilde(z), 0.0);
    }
    const double z_min = std::tanh(0.4407);
    for (double z = z_min; z < 1.0; z += 1e-3) ASSERT_GT(H(z) - Gtilde(z), 0.0) << z;
}

TEST(SubstitutedFunctions, GDomain) {
    EXPECT_THROW(G(0.0), DomainError);
    EXPECT_THROW(Gtilde(1.5), DomainError);
    EXPECT_NO_THROW(G(1.0));
}

TEST(KernelF, ValueAtOne) { EXPECT_DOUBLE_EQ(F(1.0), -1.5); }

TEST(KernelF, SeparationIdentityAtSamplePoints) {
    for (double z : {0.5, 0.7, 0.9})
        EXPECT_NEAR(dH_dz(z) / (H(z) + G(z)) - 1.0 / (1.0 - z), F(z), 1e-10) << z;
}

TEST(KernelF, SeparationIdentityGridBothCuspCounts) {
    for (Cusp c : {Cusp::single, Cusp::multi})
        for (int i = 0; i <= 2000; ++i) {
            const double z = 0.1 + (0.9 - 1e-6) * i / 2000.0;
            const double lhs = dH_dz(z, c) / (H(z, c) + G(z, c));
            const double rhs = F(z) + 1.0 / (1.0 - z);
            ASSERT_NEAR(lhs, rhs, 1e-10 * std::abs(rhs)) << z;
        }
}

TEST(KernelF, DerivativeOfHMatchesFiniteDifference) {
    for (double z = 0.2; z <= 0.99; z += 0.01) {
        const double fd = (H(z + 1e-6) - H(z - 1e-6)) / 2e-6;
        EXPECT_NEAR(dH_dz(z), fd, 1e-6 * std::abs(fd)) << z;
    }
}

TEST(KernelF, DerivativeSignMatchesHump) {
    EXPECT_LT(dH_dz(K().z_at_hmax - 1e-3), 0.0);
    EXPECT_GT(dH_dz(K().z_at_hmax + 1e-3), 0.0);
}

TEST(KernelFtilde, UpperSeparationIdentity) {
    for (Cusp c : {Cusp::single, Cusp::multi})
        for (int i = 0; i <= 1000; ++i) {
            const double z = K().z1 + (1.0 - 1e-6 - K().z1) * i / 1000.0;
            const double lhs = dH_dz(z, c) / (H(z, c) - Gtilde(z, c));
            const double rhs = Ftilde(z) + 1.0 / (1.0 - z);
            ASSERT_NEAR(lhs, rhs, 1e-10 * std::abs(rhs)) << z;
        }
}

TEST(KernelFtilde, BoundedUpToOne) {
    double sup = 0.0;
    for (double w = 0.5; w > 1e-9; w *= 0.8) sup = std::max(sup, std::abs(Ftilde(1.0 - w)));
    EXPECT_LT(sup, 10.0);
    EXPECT_DOUBLE_EQ(Ftilde(1.0), 0.5);
    EXPECT_THROW(Ftilde(0.4), DomainError);
}

TEST(KernelFtilde, AntiderivativeOracle) {
    for (double z = 0.45; z < 1.0; z += 0.05) {
        const double fd =
            (oracle::Ftilde_antiderivative(z + 1e-6) - oracle::Ftilde_antiderivative(z - 1e-6)) / 2e-6;
        EXPECT_NEAR(Ftilde(z), fd, 1e-7) << z;
    }
}

TEST(KernelF, AntiderivativeOracle) {
    for (double z = 0.05; z < 1.0; z += 0.05) {
        const double fd = (oracle::F_antiderivative(z + 1e-6) - oracle::F_antiderivative(z - 1e-6)) / 2e-6;
        EXPECT_NEAR(F(z), fd, 1e-7) << z;
    }
}

TEST(Kernels, CuspCountIndependent) {
    EXPECT_NEAR(lower_kernel(0.8), F(0.8) + 5.0, 1e-12);
    EXPECT_NEAR(upper_kernel(0.8), Ftilde(0.8) + 5.0, 1e-12);
    EXPECT_THROW(lower_kernel(1.0), DomainError);
}
