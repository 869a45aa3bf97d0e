#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oklein/medium.hpp"
#include "test_support.hpp"

using namespace oklein;
using oklein::test::rel_diff;

namespace {
const LineSpectrum kGround = oklein::test::two_level_spectrum(1.0, 0.0);
const LineSpectrum kInverted = oklein::test::two_level_spectrum(0.25, 0.75);
}  // namespace

TEST(Dielectric, Values)
{
    EXPECT_EQ(dielectric(complex{3.0, -2.0}, 0.0), complex(1.0));
    EXPECT_NEAR(dielectric(2.0 / 3.0, 1e-3).real(), 1.00837758040957278, 1e-15);
}

TEST(Dielectric, ImaginaryPartIdentity)
{
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::uniform_real_distribution<double> n(0.0, 1e-3);
    for (int trial = 0; trial < 200; ++trial)
    {
        const complex a{u(rng), u(rng)};
        const double dens = n(rng);
        EXPECT_EQ(dielectric(a, dens).imag(), (4.0 * std::numbers::pi * dens * a).imag());
    }
}

TEST(Dielectric, DiluteGuard)
{
    EXPECT_THROW(dielectric(1.0, 0.5 / (4.0 * std::numbers::pi)), DomainError);
    EXPECT_NO_THROW(dielectric(1.0, 0.49 / (4.0 * std::numbers::pi)));
    EXPECT_NO_THROW(dielectric(1.0, 0.6 / (4.0 * std::numbers::pi), 0.7));
    EXPECT_THROW(dielectric(1.0, -1.0), DomainError);
}

TEST(ComplexWavevector, Values)
{
    EXPECT_EQ(complex_wavevector(1.0, 2.0), complex(2.0));
    const complex k = complex_wavevector(complex{1.0, 1e-4}, 1.0);
    EXPECT_NEAR(k.real(), 1.00000000124999999609, 1e-15);
    EXPECT_NEAR(k.imag(), 4.99999999375000000273e-5, 1e-18);
    EXPECT_LT(complex_wavevector(complex{1.0, -1e-3}, 1.0).imag(), 0.0);
}

TEST(ComplexWavevector, BranchCutRejected)
{
    EXPECT_THROW(complex_wavevector(-0.5, 1.0), DomainError);
    EXPECT_THROW(complex_wavevector(0.0, 1.0), DomainError);
    EXPECT_THROW(complex_wavevector(1.0, 0.0), DomainError);
}

TEST(Extinction, Values)
{
    EXPECT_NEAR(extinction_coefficient(complex{1.0, 5e-5}), 1e-4, 1e-18);
    EXPECT_EQ(extinction_coefficient(3.0), 0.0);
    const auto m = medium_response(polarizability_on_axis(kInverted, 1.0, 0.01), 1.0, 1e-6);
    EXPECT_LT(m.h, 0.0);
    EXPECT_EQ(m.h, 2.0 * m.k.imag());
}

TEST(DiluteConsistency, ResonanceGapIsSmall)
{
    const auto dc = dilute_consistency(kGround, 1.0, 0.01, 1e-6);
    EXPECT_LE(dc.relative_gap, 1e-3);
    EXPECT_GT(dc.h, 0.0);
    const auto vacuum = dilute_consistency(kGround, 1.0, 0.01, 0.0);
    EXPECT_EQ(vacuum.h, 0.0);
    EXPECT_EQ(vacuum.n_sigma, 0.0);
    EXPECT_EQ(vacuum.relative_gap, 0.0);
}

TEST(DiluteConsistency, GapIsFirstOrderInDensity)
{
    for (const LineSpectrum* spec : {&kGround, &kInverted})
    {
        // Off resonance Re alpha is large, so the second-order gap dominates
        // rounding by many orders of magnitude
        const double g1 = dilute_consistency(*spec, 0.9, 0.01, 1e-4).relative_gap;
        const double g2 = dilute_consistency(*spec, 0.9, 0.01, 5e-5).relative_gap;
        EXPECT_NEAR(g1 / g2, 2.0, 0.2);
    }
}

TEST(MediumKleinTheorem, ExtinctionSignMatchesCrossSection)
{
    std::mt19937_64 rng(73);
    const auto grid = oklein::test::linspace(0.05, 6.0, 600);
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto spec = oklein::test::random_spectrum(rng);
        for (double w : grid)
        {
            const complex a = polarizability_on_axis(spec, w, 0.05);
            const auto m = medium_response(a, w, 1e-5);
            const double sigma = sigma_total_optical(a, w);
            EXPECT_EQ(m.h > 0, sigma > 0);
            EXPECT_EQ(m.h < 0, sigma < 0);
            EXPECT_GT(m.k.real(), 0.0);
            EXPECT_EQ(m.k.imag() > 0, m.epsilon.imag() > 0);
        }
    }
}

TEST(IntensityProfile, Values)
{
    const std::vector<double> z{0.0, 1.0, 10.0, 100.0};
    for (double v : intensity_profile(0.0, z))
        EXPECT_EQ(v, 1.0);
    EXPECT_NEAR(intensity_profile(0.1, std::vector<double>{10.0})[0], 0.367879441171442322,
                1e-15);
    const auto gain = intensity_profile(-0.05, z);
    for (std::size_t i = 1; i < gain.size(); ++i)
        EXPECT_GT(gain[i], gain[i - 1]);
}
