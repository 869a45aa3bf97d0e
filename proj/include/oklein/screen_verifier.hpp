#pragma once

//---------------------------------------------------------------------------//
// Numerical check of the optical theorem by integrating the missing
// intensity on a far screen behind the target.
//
// The bare screen integral is only conditionally convergent, so it is
// apodized with a Gaussian window exp(-r^2/W^2) and extrapolated W -> inf.
//---------------------------------------------------------------------------//

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"
#include "response.hpp"

namespace oklein {

inline constexpr double kFarFieldMinPhase = 1e3;  //!< z w / c lower bound
inline constexpr double kQuadratureRelTol = 1e-6;
//! Upper bound on the Fresnel phase w r_max^2 / 2z. Beyond it roundoff in the
//! phase alone exceeds kQuadratureRelTol and the panel count grows without use.
inline constexpr double kMaxFresnelPhase = 2e6;
inline constexpr double kFitRelTol = 1e-3;
inline constexpr double kRelativeErrorFloor = 1e-12;

struct ScreenQuadrature
{
    double r_max_multiplier = 8.0;  //!< integrate to r_max = multiplier * W
    int points_per_panel = 20;
};

struct ScreenConfig
{
    complex f_forward{};
    double omega = 1.0;
    double z = 1e6;
    std::vector<double> windows;
    ScreenQuadrature quadrature;

    void check_far_field() const
    {
        if (!(omega > 0.0) || !(z > 0.0))
            throw DomainError("screen: omega and z must be > 0");
        if (z * omega < kFarFieldMinPhase)
            throw DomainError("screen: z*omega/c = " + std::to_string(z * omega)
                              + " is not far field (need >= 1e3)");
    }

    void check_window(double w) const
    {
        if (!(w > 0.0))
            throw DomainError("screen: window width must be > 0");
        if (w > 0.25 * z)
            throw DomainError("screen: window " + std::to_string(w)
                              + " exceeds z/4, paraxial expansion invalid");
        const double r_max = quadrature.r_max_multiplier * w;
        if (omega * r_max * r_max / (2.0 * z) > kMaxFresnelPhase)
            throw DomainError("screen: window " + std::to_string(w)
                              + " too wide for this z (Fresnel phase at r_max above 2e6)");
    }

    void validate() const
    {
        check_far_field();
        for (std::size_t i = 0; i < windows.size(); ++i)
        {
            check_window(windows[i]);
            if (i > 0 && !(windows[i] > windows[i - 1]))
                throw DomainError("screen: windows must be strictly ascending");
        }
        if (!(quadrature.r_max_multiplier >= 4.0))
            throw DomainError("screen: r_max multiplier must be >= 4");
        if (quadrature.points_per_panel < 4)
            throw DomainError("screen: need at least 4 points per panel");
    }
};

struct WindowIntegral
{
    double width = 0.0;
    double sigma = 0.0;
};

struct ScreenResult
{
    std::vector<WindowIntegral> windows;
    double sigma_extrapolated = 0.0;
    double sigma_reference = 0.0;  //!< (4 pi c / w) Im F
    double relative_error = 0.0;
    double shadow_coefficient = 0.0;  //!< fitted coefficient of W^2
    double fit_residual = 0.0;        //!< max |residual| of the corrected fit
    double sigma_uncorrected_fit = 0.0;  //!< plain sigma_inf + c/W^2 fit, diagnostic
};

//---------------------------------------------------------------------------//
/*!
 * (I0 - I)/I0 at transverse distance r_perp on the screen at z.
 *
 * Interference term -Re{2 F exp(i w r^2 / 2cz)}/z plus the |F|^2/z^2
 * scattered-intensity term, which is kept at finite z.
 */
inline double screen_intensity_ratio(const ScreenConfig& cfg, double r_perp)
{
    cfg.check_far_field();
    const double phase = cfg.omega * r_perp * r_perp / (2.0 * cfg.z);
    const complex fresnel = std::polar(1.0, phase);
    return -(2.0 * (cfg.f_forward * fresnel).real()) / cfg.z
           - std::norm(cfg.f_forward) / (cfg.z * cfg.z);
}

//! Analytic value of the apodized integral truncated at r_max.
inline double screen_integral_closed_form(const ScreenConfig& cfg, double width)
{
    const double a = 1.0 / (width * width);
    const double b = cfg.omega / (2.0 * cfg.z);
    const double u_max = std::pow(cfg.quadrature.r_max_multiplier * width, 2);
    const complex rate{a, -b};
    const complex interference = std::numbers::pi * (1.0 - std::exp(-rate * u_max)) / rate;
    const double shadow = std::numbers::pi * -std::expm1(-a * u_max) / a;
    return -(2.0 / cfg.z) * (cfg.f_forward * interference).real()
           - std::norm(cfg.f_forward) / (cfg.z * cfg.z) * shadow;
}

struct ScreenIntegralDetail
{
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

//---------------------------------------------------------------------------//
/*!
 * sigma(W) = 2 pi int_0^{r_max} (I0 - I)/I0 exp(-r^2/W^2) r dr.
 *
 * Composite Gauss-Legendre over panels no wider than half the local Fresnel
 * period 2 pi z / (w r) (and W/2), each refined by bisection until the
 * two-level estimates agree. Throws NumericalFailure when the accumulated
 * error estimate exceeds both 1e-6 |sigma| and 1e-12 of the integral of
 * the integrand's magnitude.
 */
inline ScreenIntegralDetail screen_integral_detail(const ScreenConfig& cfg, double width)
{
    cfg.check_far_field();
    cfg.check_window(width);

    const GaussLegendre rule(cfg.quadrature.points_per_panel);
    const double r_max = cfg.quadrature.r_max_multiplier * width;
    const double inv_w2 = 1.0 / (width * width);
    auto integrand = [&](double r) {
        return 2.0 * std::numbers::pi * screen_intensity_ratio(cfg, r)
               * std::exp(-r * r * inv_w2) * r;
    };

    // Integral of |integrand| is bounded by this; panel tolerances scale with it
    const double magnitude = std::numbers::pi * width * width
                             * (2.0 * std::abs(cfg.f_forward) / cfg.z
                                + std::norm(cfg.f_forward) / (cfg.z * cfg.z));
    const double tol_density = 1e-13 * magnitude / r_max;

    ScreenIntegralDetail out;
    constexpr int max_depth = 12;
    auto refine = [&](auto&& self, double lo, double hi, double coarse,
                      int depth) -> double {
        const double mid = 0.5 * (lo + hi);
        const double left = rule.integrate(integrand, lo, mid);
        const double right = rule.integrate(integrand, mid, hi);
        const double fine = left + right;
        const double diff = std::abs(fine - coarse);
        // Roundoff floor: the Fresnel phase w r^2 / 2z carries an absolute
        // error of order eps * phase, which no refinement can remove
        const double phase = cfg.omega * hi * hi / (2.0 * cfg.z);
        const double floor = 64.0 * std::numeric_limits<double>::epsilon()
                             * std::max(1.0, phase) * (std::abs(left) + std::abs(right));
        if (diff <= std::max(tol_density * (hi - lo), floor) || depth >= max_depth)
        {
            out.error_estimate += diff;
            ++out.panels;
            return fine;
        }
        return self(self, lo, mid, left, depth + 1) + self(self, mid, hi, right, depth + 1);
    };

    const double period_scale = 2.0 * std::numbers::pi * cfg.z / cfg.omega;
    double r = 0.0;
    double total = 0.0;
    while (r < r_max)
    {
        double step = 0.5 * width;
        if (r > 0.0)
            step = std::min(step, 0.5 * period_scale / r);
        const double next = std::min(r + step, r_max);
        total += refine(refine, r, next, rule.integrate(integrand, r, next), 0);
        r = next;
    }
    out.value = total;

    // Relative to the value, or to the integrand scale when the value cancels
    if (out.error_estimate
        > std::max(kQuadratureRelTol * std::abs(total), kRelativeErrorFloor * magnitude))
    {
        std::ostringstream msg;
        msg << "screen_integral: quadrature did not converge for W = " << width
            << " (estimate " << out.error_estimate << ", value " << total << ", panels "
            << out.panels << ")";
        throw NumericalFailure(msg.str());
    }
    return out;
}

inline double screen_integral(const ScreenConfig& cfg, double width)
{
    return screen_integral_detail(cfg, width).value;
}

namespace detail {

// Least-squares solution of a small dense system via the normal equations
// with Gaussian elimination (partial pivoting). Columns are expected to be
// scaled to O(1).
template<std::size_t N>
std::array<double, N> least_squares(const std::vector<std::array<double, N>>& rows,
                                    const std::vector<double>& rhs)
{
    std::array<std::array<double, N + 1>, N> m{};
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
        for (std::size_t i = 0; i < N; ++i)
        {
            for (std::size_t j = 0; j < N; ++j)
                m[i][j] += rows[k][i] * rows[k][j];
            m[i][N] += rows[k][i] * rhs[k];
        }
    }
    for (std::size_t c = 0; c < N; ++c)
    {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < N; ++i)
            if (std::abs(m[i][c]) > std::abs(m[piv][c]))
                piv = i;
        std::swap(m[c], m[piv]);
        if (m[c][c] == 0.0)
            throw NumericalFailure("least_squares: singular system");
        for (std::size_t i = c + 1; i < N; ++i)
        {
            const double f = m[i][c] / m[c][c];
            for (std::size_t j = c; j <= N; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    std::array<double, N> x{};
    for (std::size_t c = N; c-- > 0;)
    {
        double s = m[c][N];
        for (std::size_t j = c + 1; j < N; ++j)
            s -= m[c][j] * x[j];
        x[c] = s / m[c][c];
    }
    return x;
}

}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Integrate the apodized screen deficit over all windows and extrapolate
 * W -> inf.
 *
 * The interference part of sigma(W) is exactly (A s + B)/(s^2 + b^2) with
 * s = 1/W^2 and b = w/2cz, so multiplying by the Fresnel factor
 * 1 + (s/b)^2 leaves sigma_inf + c/W^2 plus the scattered-intensity term
 * proportional to W^2. Those three terms are fit by least squares.
 */
inline ScreenResult verify_optical_theorem(const ScreenConfig& cfg)
{
    cfg.validate();
    if (cfg.windows.size() < 3)
        throw DomainError("verify_optical_theorem: need at least 3 windows");

    ScreenResult result;
    const double b = cfg.omega / (2.0 * cfg.z);
    const double w_ref = cfg.windows.back();

    std::vector<std::array<double, 3>> rows;
    std::vector<std::array<double, 2>> plain_rows;
    std::vector<double> corrected;
    std::vector<double> raw;
    for (double w : cfg.windows)
    {
        const double sigma = screen_integral(cfg, w);
        result.windows.push_back({w, sigma});
        const double s_over_b = 1.0 / (w * w * b);
        corrected.push_back(sigma * (1.0 + s_over_b * s_over_b));
        raw.push_back(sigma);
        const double inv = (w_ref / w) * (w_ref / w);
        rows.push_back({1.0, inv, 1.0 / inv});
        plain_rows.push_back({1.0, inv});
    }

    const auto coef = detail::least_squares<3>(rows, corrected);
    result.sigma_extrapolated = coef[0];
    result.shadow_coefficient = coef[2] / (w_ref * w_ref);
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
        const double fit = coef[0] + coef[1] * rows[k][1] + coef[2] * rows[k][2];
        result.fit_residual = std::max(result.fit_residual, std::abs(corrected[k] - fit));
    }
    result.sigma_uncorrected_fit = detail::least_squares<2>(plain_rows, raw)[0];

    result.sigma_reference = 4.0 * std::numbers::pi / cfg.omega * cfg.f_forward.imag();
    result.relative_error = std::abs(result.sigma_extrapolated - result.sigma_reference)
                            / std::max(std::abs(result.sigma_reference), kRelativeErrorFloor);

    if (result.fit_residual
        > kFitRelTol * std::max(std::abs(result.sigma_extrapolated), kRelativeErrorFloor))
    {
        std::ostringstream msg;
        msg << "verify_optical_theorem: extrapolation residual " << result.fit_residual
            << " too large for sigma_inf = " << result.sigma_extrapolated;
        throw NumericalFailure(msg.str());
    }
    return result;
}

//! Least-squares slope p of log|sigma(W) - sigma_inf| ~ -p log W.
inline double measured_convergence_order(const std::vector<WindowIntegral>& windows,
                                         double sigma_inf)
{
    std::vector<std::array<double, 2>> rows;
    std::vector<double> rhs;
    for (const auto& w : windows)
    {
        const double dev = std::abs(w.sigma - sigma_inf);
        if (dev == 0.0)
            continue;
        rows.push_back({1.0, std::log(w.width)});
        rhs.push_back(std::log(dev));
    }
    if (rows.size() < 2)
        throw NumericalFailure("measured_convergence_order: deviations vanish");
    return -detail::least_squares<2>(rows, rhs)[1];
}

}  // namespace oklein
