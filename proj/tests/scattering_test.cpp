#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oklein/quadrature.hpp"
#include "oklein/scattering.hpp"
#include "test_support.hpp"

using namespace oklein;
using oklein::test::rel_diff;

namespace {
constexpr double kPi = std::numbers::pi;
const LineSpectrum kGround = oklein::test::two_level_spectrum(1.0, 0.0);
const LineSpectrum kInverted = oklein::test::two_level_spectrum(0.25, 0.75);

// Product rule: Gauss-Legendre in cos(theta) times uniform phi, 100 x 100 points
double solid_angle_integral(complex alpha, double omega)
{
    const GaussLegendre rule(100);
    const int n_phi = 100;
    double total = 0.0;
    for (int i = 0; i < rule.order(); ++i)
    {
        const double theta = std::acos(rule.nodes()[i]);
        for (int j = 0; j < n_phi; ++j)
            total += rule.weights()[i] * (2.0 * kPi / n_phi)
                     * differential_elastic(alpha, omega, theta);
    }
    return total;
}
}  // namespace

TEST(ForwardAmplitude, Values)
{
    EXPECT_EQ(forward_amplitude(2.0 / 3.0, 1.0), complex(2.0 / 3.0));
    EXPECT_EQ(forward_amplitude(0.0, 3.0), complex{});
    const complex a{0.3, -1.7};
    EXPECT_EQ(forward_amplitude(a, 2.4), 4.0 * forward_amplitude(a, 1.2));
    EXPECT_THROW(forward_amplitude(a, 0.0), DomainError);
}

TEST(DifferentialElastic, AngularFactor)
{
    const complex a{0.4, 0.9};
    EXPECT_DOUBLE_EQ(differential_elastic(a, 1.3, kPi / 2.0),
                     0.5 * differential_elastic(a, 1.3, 0.0));
    EXPECT_DOUBLE_EQ(differential_elastic(1.0, 1.0, 0.0), 1.0);
}

TEST(DifferentialElastic, SolidAngleClosure)
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> w(0.1, 4.0);
    for (int trial = 0; trial < 50; ++trial)
    {
        const complex a{u(rng), u(rng)};
        const double omega = w(rng);
        EXPECT_LE(rel_diff(solid_angle_integral(a, omega), sigma_elastic(a, omega)), 1e-6);
    }
}

TEST(SigmaElastic, Values)
{
    EXPECT_NEAR(sigma_elastic(1.0, 1.0), 8.0 * kPi / 3.0, 1e-15);
    EXPECT_NEAR(sigma_elastic(complex{0.6, 0.8}, 1.0), 8.37758040957278196, 1e-14);
    EXPECT_EQ(sigma_elastic(0.0, 2.0), 0.0);
}

TEST(SigmaElastic, RayleighLawIsExact)
{
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int trial = 0; trial < 100; ++trial)
    {
        const complex a{u(rng), u(rng)};
        const double w = u(rng);
        EXPECT_EQ(sigma_elastic(a, 2.0 * w) / sigma_elastic(a, w), 16.0);
    }
}

TEST(SigmaTotalOptical, ResonanceValues)
{
    const complex ground = polarizability_on_axis(kGround, 1.0, 0.01);
    const complex inverted = polarizability_on_axis(kInverted, 1.0, 0.01);
    EXPECT_NEAR(sigma_total_optical(ground, 1.0), 418.868548764919975, 1e-10);
    EXPECT_NEAR(sigma_total_optical(inverted, 1.0), -209.434274382459988, 1e-10);
    EXPECT_EQ(sigma_total_optical(complex{2.5, 0.0}, 1.7), 0.0);
}

TEST(SigmaTotalOptical, EqualsForwardAmplitudeForm)
{
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> w(0.05, 5.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const complex a{u(rng), u(rng)};
        const double omega = w(rng);
        const double via_f = 4.0 * kPi / omega * forward_amplitude(a, omega).imag();
        EXPECT_LE(rel_diff(sigma_total_optical(a, omega), via_f), 1e-15);
    }
}

TEST(SigmaTotalNoiseForm, AgreesWithOpticalForm)
{
    LevelSystem thermal;
    thermal.levels = {{"g", 0.0}, {"e", 1.0}};
    thermal.populations = thermal_populations(thermal.levels, 1.0);
    const auto spec = build_line_spectrum(thermal, oklein::test::single_transition());
    for (const LineSpectrum* s : {&spec, &kInverted, &kGround})
    {
        const double optical = sigma_total_optical(polarizability_on_axis(*s, 1.0, 0.01), 1.0);
        const double noise = sigma_total_noise_form(*s, 1.0, 0.01);
        EXPECT_LE(rel_diff(optical, noise), 1e-12);
    }
    EXPECT_LT(sigma_total_noise_form(kInverted, 1.0, 0.01), 0.0);
}

TEST(SigmaTotalNoiseForm, EqualWeightsAreTransparent)
{
    const auto balanced = oklein::test::two_level_spectrum(0.5, 0.5);
    EXPECT_EQ(sigma_total_noise_form(balanced, 1.0, 0.01), 0.0);
    EXPECT_THROW(sigma_total_noise_form(LineSpectrum{}, 1.0, 0.01), DomainError);
}

TEST(SigmaTotalNoiseForm, PropertyFormEquivalence)
{
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> w(0.05, 6.0);
    std::uniform_real_distribution<double> e(0.005, 0.2);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto spec = oklein::test::random_spectrum(rng);
        const double eta = e(rng);
        for (int k = 0; k < 10; ++k)
        {
            const double omega = w(rng);
            const double optical
                = sigma_total_optical(polarizability_on_axis(spec, omega, eta), omega);
            EXPECT_LE(rel_diff(optical, sigma_total_noise_form(spec, omega, eta)), 1e-12);
            EXPECT_LE(rel_diff(optical, sigma_total_tanh_form(spec, omega, eta)), 1e-12);
        }
    }
}

TEST(SigmaTotalNoiseForm, FullArgumentTanhDisagrees)
{
    // The full-argument tanh differs from the consistent form by
    // tanh(x) / tanh(x/2) = 2 / (1 + tanh(x/2)^2) with x = omega * beta_n
    LevelSystem thermal;
    thermal.levels = {{"g", 0.0}, {"e", 1.0}};
    thermal.populations = thermal_populations(thermal.levels, 1.0);
    const auto spec = build_line_spectrum(thermal, oklein::test::single_transition());
    const double half = sigma_total_tanh_form(spec, 1.0, 0.01);
    const double full = sigma_total_tanh_form_full_argument(spec, 1.0, 0.01);
    const double beta = pointwise_beta(spec, 1.0, 0.01);
    const double t = std::tanh(0.5 * beta);
    EXPECT_NEAR(full / half, 2.0 / (1.0 + t * t), 1e-12);
    EXPECT_GT(std::abs(full / half - 1.0), 0.1);
}

TEST(SigmaInelastic, SumRule)
{
    EXPECT_EQ(sigma_inelastic(3.5, 0.0), 3.5);
    const complex ground = polarizability_on_axis(kGround, 1.0, 0.01);
    const auto xs = cross_sections(ground, 1.0);
    EXPECT_NEAR(xs.sigma_el + xs.sigma_in, xs.sigma_tot, 1e-15 * xs.sigma_el);
    // mu2 = 1 gives sigma_el ~ 9308 > sigma_tot, so sigma_in < 0 even here
    EXPECT_NEAR(xs.sigma_el, 9308.18997255377723, 1e-8);
    EXPECT_LT(xs.sigma_in, 0.0);

    const auto weak = oklein::test::two_level_spectrum(1.0, 0.0, 1e-3);
    EXPECT_GT(cross_sections(polarizability_on_axis(weak, 1.0, 0.01), 1.0).sigma_in, 0.0);

    const auto inv = cross_sections(polarizability_on_axis(kInverted, 1.0, 0.01), 1.0);
    EXPECT_LE(inv.sigma_in, -209.434274382459988 + 1e-9);
    EXPECT_TRUE(inv.amplifying());
}

TEST(CrossSections, PropertyInvariants)
{
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> w(0.05, 5.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto xs = cross_sections(complex{u(rng), u(rng)}, w(rng));
        EXPECT_GE(xs.sigma_el, 0.0);
        EXPECT_NEAR(xs.sigma_el + xs.sigma_in, xs.sigma_tot,
                    4e-16 * (xs.sigma_el + std::abs(xs.sigma_tot)));
        EXPECT_EQ(xs.sigma_tot > 0, xs.f_forward.imag() > 0);
        EXPECT_EQ(xs.sigma_tot < 0, xs.f_forward.imag() < 0);
    }
}

TEST(SignTheorem, NoiseParameterMatchesCrossSectionSign)
{
    std::mt19937_64 rng(61);
    const auto grid = oklein::test::linspace(0.01, 8.0, 2000);
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto spec = oklein::test::random_spectrum(rng);
        for (double w : grid)
        {
            const complex a = polarizability_on_axis(spec, w, 0.02);
            if (std::abs(a.imag()) < 1e-14)
                continue;
            const double sigma = sigma_total_optical(a, w);
            const double beta = pointwise_beta(spec, w, 0.02);
            EXPECT_EQ(sigma > 0, beta > 0) << "omega " << w;
        }
    }
}

namespace {
// Analytic Im alpha of the mixed three-level catalog, written independently
double mixed_im_alpha(double w, double eta)
{
    const double dw1 = (0.3 - 0.6) / 3.0;  // inverted pair at 1
    const double dw3 = (0.3 - 0.1) / 3.0;  // absorbing pair at 3
    auto pole = [&](double w0) {
        return eta / ((w - w0) * (w - w0) + eta * eta) - eta / ((w + w0) * (w + w0) + eta * eta);
    };
    return dw1 * pole(1.0) + dw3 * pole(3.0);
}

double bisect(double lo, double hi, double eta)
{
    for (int i = 0; i < 200; ++i)
    {
        const double mid = 0.5 * (lo + hi);
        if ((mixed_im_alpha(lo, eta) < 0) == (mixed_im_alpha(mid, eta) < 0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

LineSpectrum mixed_spectrum()
{
    LevelSystem sys;
    sys.levels = {{"g", 0.0}, {"a", 1.0}, {"b", 3.0}};
    sys.populations = {{"g", 0.3}, {"a", 0.6}, {"b", 0.1}};
    return build_line_spectrum(sys, {{"a", "g", 1.0}, {"b", "g", 1.0}});
}
}  // namespace

TEST(AmplifierBands, PureAbsorberHasNone)
{
    const auto resp = response_spectrum(kGround, oklein::test::linspace(0.1, 3.0, 300), 0.01);
    EXPECT_TRUE(amplifier_bands(resp).bands.empty());
    const auto all = classify_bands(resp);
    ASSERT_EQ(all.bands.size(), 1u);
    EXPECT_EQ(all.bands[0].kind, BandKind::absorber);
}

TEST(AmplifierBands, InvertedTwoLevelHasOneBandAroundResonance)
{
    const auto resp = response_spectrum(kInverted, oklein::test::linspace(0.5, 1.5, 101), 0.01);
    const auto report = amplifier_bands(resp);
    ASSERT_EQ(report.bands.size(), 1u);
    EXPECT_LE(report.bands[0].omega_lo, 1.0);
    EXPECT_GE(report.bands[0].omega_hi, 1.0);
    EXPECT_EQ(report.bands[0].kind, BandKind::amplifier);
}

TEST(AmplifierBands, MixedThreeLevelEdgesMatchAnalyticRoot)
{
    const double eta = 0.01;
    const auto grid = oklein::test::linspace(0.05, 5.0, 496);
    const auto resp = response_spectrum(mixed_spectrum(), grid, eta);
    const auto report = amplifier_bands(resp);
    ASSERT_EQ(report.bands.size(), 1u);
    const auto& band = report.bands[0];
    EXPECT_LT(band.omega_lo, 1.0);
    EXPECT_GT(band.omega_hi, 1.0);
    // Lower side: Im alpha stays negative down to omega -> 0, so the band
    // starts at the grid edge
    EXPECT_LT(mixed_im_alpha(0.05, eta), 0.0);
    EXPECT_EQ(band.omega_lo, 0.05);
    const double root = bisect(1.5, 2.9, eta);
    EXPECT_NEAR(root, 2.07695263354626174, 1e-12);
    EXPECT_NEAR(band.omega_hi, root, 0.05);
}

TEST(AmplifierBands, PropertyBandsAreExactlyTheNegativeRegions)
{
    std::mt19937_64 rng(67);
    const auto grid = oklein::test::linspace(0.02, 6.0, 1200);
    for (int trial = 0; trial < 30; ++trial)
    {
        const auto spec = oklein::test::random_spectrum(rng);
        const auto resp = response_spectrum(spec, grid, 0.03);
        const auto report = amplifier_bands(resp);
        std::vector<bool> inside(grid.size(), false);
        double last_hi = -1.0;
        for (const auto& b : report.bands)
        {
            EXPECT_LE(b.omega_lo, b.omega_hi);
            EXPECT_GT(b.omega_lo, last_hi);
            last_hi = b.omega_hi;
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (grid[i] >= b.omega_lo && grid[i] <= b.omega_hi)
                    inside[i] = true;
        }
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double sigma = sigma_total_optical(resp.alpha[i], grid[i]);
            EXPECT_EQ(inside[i], sigma < 0.0) << "omega " << grid[i];
        }
    }
}
