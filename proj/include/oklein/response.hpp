#pragma once

//---------------------------------------------------------------------------//
// Complex polarizability alpha(zeta) of a line spectrum, with the Kubo
// time-domain route and a Kramers-Kronig reconstruction as independent
// cross-checks.
//---------------------------------------------------------------------------//

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"
#include "spectral_model.hpp"

namespace oklein {

using complex = std::complex<double>;

struct ResponseSpectrum
{
    std::vector<double> grid;
    std::vector<complex> alpha;
    double eta = 0.0;
};

namespace detail {

// Sum over lines of dw * [1/(w0 - zeta) + 1/(w0 + zeta)], written out in
// real arithmetic so that zeta -> -conj(zeta) maps the result to its
// conjugate bitwise.
inline complex line_sum(const LineSpectrum& spec, complex zeta)
{
    const double x = zeta.real();
    const double y = zeta.imag();
    double re = 0.0;
    double im = 0.0;
    for (const auto& line : spec.lines)
    {
        const double dw = line.delta_w();
        const double dm = line.omega0 - x;
        const double dp = line.omega0 + x;
        const double den_m = dm * dm + y * y;
        const double den_p = dp * dp + y * y;
        re += dw * (dm / den_m + dp / den_p);
        im += dw * (y / den_m - y / den_p);
    }
    return {re, im};
}

}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * alpha(zeta) for Im zeta > 0 as the exact line sum of the dispersion
 * integral.
 */
inline complex polarizability(const LineSpectrum& spec, complex zeta)
{
    if (!(zeta.imag() > 0.0))
        throw DomainError("polarizability: requires Im zeta > 0; use "
                          "polarizability_on_axis for boundary values");
    return detail::line_sum(spec, zeta);
}

//! Boundary value alpha(w + i0+) realized at w + i*eta.
inline complex polarizability_on_axis(const LineSpectrum& spec, double omega, double eta)
{
    if (!(eta > 0.0))
        throw DomainError("polarizability_on_axis: eta must be > 0");
    return polarizability(spec, {omega, eta});
}

inline ResponseSpectrum
response_spectrum(const LineSpectrum& spec, std::span<const double> grid, double eta)
{
    ResponseSpectrum out;
    out.grid.assign(grid.begin(), grid.end());
    out.eta = eta;
    out.alpha.reserve(grid.size());
    for (double w : grid)
        out.alpha.push_back(polarizability_on_axis(spec, w, eta));
    return out;
}

//! Commutator correlation <p(t).p(0) - p(0).p(t)> for hbar = 1.
inline complex kubo_correlation(const LineSpectrum& spec, double t)
{
    complex sum{};
    for (const auto& line : spec.lines)
    {
        const complex e_minus = std::polar(1.0, -line.omega0 * t);
        const complex e_plus = std::polar(1.0, line.omega0 * t);
        sum += line.delta_w() * (e_minus - e_plus);
    }
    return 3.0 * sum;
}

//---------------------------------------------------------------------------//
/*!
 * alpha(zeta) = (i/3) int_0^T exp(i zeta t) C(t) dt by composite
 * Gauss-Legendre quadrature.
 *
 * T is chosen so exp(-Im zeta * T) <= 1e-12; panels span at most pi/2 of
 * phase of the fastest oscillation. Used as an oracle for polarizability().
 */
inline complex kubo_polarizability(const LineSpectrum& spec, complex zeta)
{
    if (!(zeta.imag() > 0.0))
        throw DomainError("kubo_polarizability: requires Im zeta > 0");
    if (spec.empty())
        return {};

    const double t_max = std::log(1e12) / zeta.imag();
    double fastest = std::abs(zeta.real());
    for (const auto& line : spec.lines)
        fastest = std::max(fastest, line.omega0 + std::abs(zeta.real()));
    const double panel = std::min(0.5 * std::numbers::pi / fastest, 0.25 / zeta.imag());
    const auto panels = static_cast<std::size_t>(std::ceil(t_max / panel));
    const double h = t_max / static_cast<double>(panels);

    static const GaussLegendre rule(16);
    auto integrand = [&](double t) {
        return std::exp(complex{0.0, 1.0} * zeta * t) * kubo_correlation(spec, t);
    };
    complex total{};
    for (std::size_t k = 0; k < panels; ++k)
        total += rule.integrate(integrand, k * h, (k + 1) * h);
    return complex{0.0, 1.0 / 3.0} * total;
}

struct KramersKronigResult
{
    std::vector<double> re_alpha;
    bool coarse_warning = false;  //!< eta spans fewer than 8 grid steps
    double step = 0.0;
};

//---------------------------------------------------------------------------//
/*!
 * Re alpha from Im alpha by the principal-value Hilbert transform
 *
 *   Re alpha(w_j) = (1/pi) P int Im alpha(w') / (w' - w_j) dw'.
 *
 * Uses the alternating-point rule: for output node j only nodes with i - j
 * odd contribute, each with weight 2h. The singular node is excluded and the
 * neighbours sit symmetrically at odd offsets, so the singular part cancels
 * pairwise. Error is O(h^2) for smooth data, plus the truncation of the
 * grid tails.
 *
 * The grid must be uniform. Throws DomainError otherwise.
 */
inline KramersKronigResult
kramers_kronig_reconstruct(std::span<const double> im_alpha, std::span<const double> grid,
                           double eta)
{
    if (im_alpha.size() != grid.size())
        throw DomainError("kramers_kronig_reconstruct: size mismatch");
    const std::size_t n = grid.size();
    if (n < 3)
        throw DomainError("kramers_kronig_reconstruct: need at least 3 grid points");
    const double h = (grid[n - 1] - grid[0]) / static_cast<double>(n - 1);
    if (!(h > 0.0))
        throw DomainError("kramers_kronig_reconstruct: grid must be ascending");
    for (std::size_t i = 1; i < n; ++i)
    {
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-6 * h)
            throw DomainError("kramers_kronig_reconstruct: grid must be uniform");
    }

    KramersKronigResult out;
    out.step = h;
    out.coarse_warning = eta < 8.0 * h;
    out.re_alpha.assign(n, 0.0);
    const double scale = 2.0 * h / std::numbers::pi;
    for (std::size_t j = 0; j < n; ++j)
    {
        double sum = 0.0;
        for (std::size_t i = (j % 2 == 0) ? 1 : 0; i < n; i += 2)
            sum += im_alpha[i] / (grid[i] - grid[j]);
        out.re_alpha[j] = scale * sum;
    }
    return out;
}

}  // namespace oklein
