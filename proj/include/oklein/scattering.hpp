#pragma once

//---------------------------------------------------------------------------//
// Rayleigh amplitudes and cross sections of a polarizable dipole target,
// the noise-temperature form of the total cross section, and detection of
// amplifying frequency bands (sigma_tot < 0).
//---------------------------------------------------------------------------//

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "response.hpp"
#include "spectral_model.hpp"

namespace oklein {

struct CrossSections
{
    double omega = 0.0;
    double sigma_el = 0.0;
    double sigma_tot = 0.0;
    double sigma_in = 0.0;  //!< sigma_tot - sigma_el; negative means net emission
    complex f_forward{};

    bool amplifying() const { return sigma_tot < 0.0; }
};

enum class BandKind
{
    absorber,
    amplifier
};

inline const char* to_string(BandKind kind)
{
    return kind == BandKind::amplifier ? "amplifier" : "absorber";
}

struct Band
{
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    BandKind kind = BandKind::absorber;
};

struct BandReport
{
    std::vector<Band> bands;
};

namespace detail {
inline void require_positive_frequency(double omega, const char* who)
{
    if (!(omega > 0.0))
        throw DomainError(std::string(who) + ": omega must be > 0");
}
}  // namespace detail

//! Forward elastic amplitude F = (w/c)^2 alpha with e_f = e_i.
inline complex forward_amplitude(complex alpha, double omega)
{
    detail::require_positive_frequency(omega, "forward_amplitude");
    return (omega * omega) * alpha;
}

//! Polarization-averaged d(sigma_el)/d(Omega).
inline double differential_elastic(complex alpha, double omega, double theta)
{
    detail::require_positive_frequency(omega, "differential_elastic");
    const double c = std::cos(theta);
    const double w2 = omega * omega;
    return 0.5 * (1.0 + c * c) * (w2 * w2) * std::norm(alpha);
}

inline double sigma_elastic(complex alpha, double omega)
{
    detail::require_positive_frequency(omega, "sigma_elastic");
    const double w2 = omega * omega;
    return (8.0 * std::numbers::pi / 3.0) * (w2 * w2) * std::norm(alpha);
}

//! Optical theorem: sigma_tot = (4 pi w / c) Im alpha = (4 pi c / w) Im F.
inline double sigma_total_optical(complex alpha, double omega)
{
    detail::require_positive_frequency(omega, "sigma_total_optical");
    return 4.0 * std::numbers::pi * omega * alpha.imag();
}

inline double sigma_inelastic(double sigma_tot, double sigma_el)
{
    return sigma_tot - sigma_el;
}

inline CrossSections cross_sections(complex alpha, double omega)
{
    CrossSections xs;
    xs.omega = omega;
    xs.f_forward = forward_amplitude(alpha, omega);
    xs.sigma_el = sigma_elastic(alpha, omega);
    xs.sigma_tot = sigma_total_optical(alpha, omega);
    xs.sigma_in = sigma_inelastic(xs.sigma_tot, xs.sigma_el);
    return xs;
}

//---------------------------------------------------------------------------//
/*!
 * Pointwise inverse noise temperature ln(S+(w)/S-(w)) / w from the
 * broadened spectral functions.
 *
 * Returns +/-inf when one side vanishes; throws DomainError when both do.
 */
inline double pointwise_beta(const LineSpectrum& spec, double omega, double eta)
{
    detail::require_positive_frequency(omega, "pointwise_beta");
    const auto [sp, sm] = spectral_pair(spec, omega, eta);
    return noise_parameter_from_weights(sp, sm, omega).beta_n;
}

struct NoiseFormTerms
{
    double s_plus = 0.0;
    double s_minus = 0.0;
    double beta_n = 0.0;
};

inline NoiseFormTerms noise_form_terms(const LineSpectrum& spec, double omega, double eta)
{
    detail::require_positive_frequency(omega, "sigma_total_noise_form");
    if (!(eta > 0.0))
        throw DomainError("sigma_total_noise_form: eta must be > 0");
    const auto [sp, sm] = spectral_pair(spec, omega, eta);
    if (!(sp > 0.0))
        throw DomainError("sigma_total_noise_form: S+(omega) = 0, noise temperature "
                          "undefined");
    return {sp, sm, noise_parameter_from_weights(sp, sm, omega).beta_n};
}

//---------------------------------------------------------------------------//
/*!
 * sigma_tot = (4 pi^2 w / hbar c) (1 - exp(-hbar w / k_B T_n)) S+(w).
 *
 * Algebraically identical to sigma_total_optical at w + i*eta; evaluated
 * here through the noise parameter so the identity is a genuine check.
 */
inline double sigma_total_noise_form(const LineSpectrum& spec, double omega, double eta)
{
    const auto t = noise_form_terms(spec, omega, eta);
    const double gain_factor = -std::expm1(-omega * t.beta_n);
    return 4.0 * std::numbers::pi * std::numbers::pi * omega * gain_factor * t.s_plus;
}

//! Symmetrized form 8 pi^2 w tanh(w beta_n / 2) S_bar(w).
inline double sigma_total_tanh_form(const LineSpectrum& spec, double omega, double eta)
{
    const auto t = noise_form_terms(spec, omega, eta);
    const double s_bar = 0.5 * (t.s_plus + t.s_minus);
    return 8.0 * std::numbers::pi * std::numbers::pi * omega
           * std::tanh(0.5 * omega * t.beta_n) * s_bar;
}

//! Same expression with the full argument tanh(w beta_n); kept only so the
//! factor-of-two discrepancy against the half-argument form can be measured.
inline double sigma_total_tanh_form_full_argument(const LineSpectrum& spec, double omega,
                                                  double eta)
{
    const auto t = noise_form_terms(spec, omega, eta);
    const double s_bar = 0.5 * (t.s_plus + t.s_minus);
    return 8.0 * std::numbers::pi * std::numbers::pi * omega
           * std::tanh(omega * t.beta_n) * s_bar;
}

//---------------------------------------------------------------------------//
/*!
 * Split the w > 0 part of a response grid into runs of constant sign of
 * w Im alpha.
 *
 * Band edges between runs sit at the linear-interpolation zero of Im alpha;
 * runs touching the grid ends stop at the first/last positive grid point.
 * Points with Im alpha == 0 exactly belong to no band.
 */
inline BandReport classify_bands(const ResponseSpectrum& response)
{
    BandReport report;
    const auto& grid = response.grid;
    const auto& alpha = response.alpha;
    if (grid.size() != alpha.size())
        throw DomainError("classify_bands: grid/alpha size mismatch");
    for (std::size_t i = 1; i < grid.size(); ++i)
    {
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("classify_bands: grid must be strictly ascending");
    }

    auto sign_at = [&](std::size_t i) {
        const double v = grid[i] * alpha[i].imag();
        return (v > 0.0) - (v < 0.0);
    };
    // Zero of Im alpha between nodes i and i+1
    auto crossing = [&](std::size_t i) {
        const double a = alpha[i].imag();
        const double b = alpha[i + 1].imag();
        if (a == b)
            return 0.5 * (grid[i] + grid[i + 1]);
        return grid[i] + (grid[i + 1] - grid[i]) * a / (a - b);
    };

    std::size_t i = 0;
    while (i < grid.size() && !(grid[i] > 0.0))
        ++i;
    while (i < grid.size())
    {
        const int s = sign_at(i);
        if (s == 0)
        {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < grid.size() && sign_at(j + 1) == s)
            ++j;
        Band band;
        band.kind = s < 0 ? BandKind::amplifier : BandKind::absorber;
        band.omega_lo = (i > 0 && grid[i - 1] > 0.0) ? crossing(i - 1) : grid[i];
        band.omega_hi = (j + 1 < grid.size()) ? crossing(j) : grid[j];
        report.bands.push_back(band);
        i = j + 1;
    }
    return report;
}

//! Amplifier bands only: the frequency set where sigma_tot < 0.
inline BandReport amplifier_bands(const ResponseSpectrum& response)
{
    BandReport all = classify_bands(response);
    BandReport out;
    for (const auto& b : all.bands)
    {
        if (b.kind == BandKind::amplifier)
            out.bands.push_back(b);
    }
    return out;
}

}  // namespace oklein
