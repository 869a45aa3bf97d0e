#pragma once

//---------------------------------------------------------------------------//
// Plane-wave propagation through a dilute gas of polarizable targets.
//---------------------------------------------------------------------------//

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "response.hpp"
#include "scattering.hpp"

namespace oklein {

//! Largest |4 pi n alpha| accepted by dielectric(); first order in n only.
inline constexpr double kDiluteGuard = 0.5;

struct MediumResponse
{
    double omega = 0.0;
    double n_density = 0.0;
    complex epsilon{1.0, 0.0};
    complex k{};
    double h = 0.0;  //!< 2 Im k; negative in an amplifying medium
};

//! epsilon = 1 + 4 pi n alpha, truncated at first order in n.
inline complex dielectric(complex alpha, double n_density, double guard = kDiluteGuard)
{
    if (!(n_density >= 0.0) || !std::isfinite(n_density))
        throw DomainError("dielectric: density must be finite and >= 0");
    const complex shift = 4.0 * std::numbers::pi * n_density * alpha;
    if (!(std::abs(shift) < guard))
        throw DomainError("dielectric: |4 pi n alpha| = " + std::to_string(std::abs(shift))
                          + " violates the dilute limit (guard "
                          + std::to_string(guard) + ")");
    return 1.0 + shift;
}

//! k = (w/c) sqrt(epsilon) on the principal branch (Re sqrt > 0).
inline complex complex_wavevector(complex epsilon, double omega)
{
    if (!(omega > 0.0))
        throw DomainError("complex_wavevector: omega must be > 0");
    if (epsilon.imag() == 0.0 && epsilon.real() <= 0.0)
        throw DomainError("complex_wavevector: epsilon on the branch cut (real, <= 0); "
                          "no forward-travelling wave. Reduce the density.");
    return omega * std::sqrt(epsilon);
}

inline double extinction_coefficient(complex k)
{
    return 2.0 * k.imag();
}

inline MediumResponse medium_response(complex alpha, double omega, double n_density)
{
    MediumResponse m;
    m.omega = omega;
    m.n_density = n_density;
    m.epsilon = dielectric(alpha, n_density);
    m.k = complex_wavevector(m.epsilon, omega);
    m.h = extinction_coefficient(m.k);
    return m;
}

struct DiluteConsistency
{
    double h = 0.0;
    double n_sigma = 0.0;
    double relative_gap = 0.0;  //!< |h - n sigma_tot| / |h|, 0 when both vanish
};

//! Compare h from the epsilon -> k chain against n * sigma_tot.
inline DiluteConsistency dilute_consistency(const LineSpectrum& spec, double omega,
                                            double eta, double n_density)
{
    const complex alpha = polarizability_on_axis(spec, omega, eta);
    const MediumResponse m = medium_response(alpha, omega, n_density);
    DiluteConsistency out;
    out.h = m.h;
    out.n_sigma = n_density * sigma_total_optical(alpha, omega);
    const double diff = std::abs(out.h - out.n_sigma);
    if (diff == 0.0)
        out.relative_gap = 0.0;
    else if (out.h == 0.0)
        out.relative_gap = std::numeric_limits<double>::infinity();
    else
        out.relative_gap = diff / std::abs(out.h);
    return out;
}

//! I(z)/I(0) = exp(-h z).
inline std::vector<double> intensity_profile(double h, std::span<const double> z_points)
{
    std::vector<double> out;
    out.reserve(z_points.size());
    for (double z : z_points)
        out.push_back(std::exp(-h * z));
    return out;
}

}  // namespace oklein
