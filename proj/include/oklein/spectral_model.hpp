#pragma once

//---------------------------------------------------------------------------//
// Dipole spectral functions S+(w), S-(w) of a discrete level system.
//
// Units throughout the library: hbar = c = k_B = 1. Energies, frequencies
// and temperatures share one unit; mu2 is a squared dipole matrix element in
// whatever reference unit the caller chooses.
//---------------------------------------------------------------------------//

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace oklein {

struct Level
{
    std::string id;
    double energy = 0.0;
};

//---------------------------------------------------------------------------//
/*!
 * Discrete energy levels plus occupation probabilities.
 *
 * Populations are normalized directly; the free energy of a thermal ensemble
 * is never represented.
 */
struct LevelSystem
{
    std::vector<Level> levels;
    std::map<std::string, double> populations;

    // Throws ConfigError on duplicate ids, non-finite energies, missing or
    // negative populations, or a population sum off by more than 1e-12.
    void validate() const
    {
        std::set<std::string> seen;
        for (const auto& lvl : levels)
        {
            if (!seen.insert(lvl.id).second)
                throw ConfigError("duplicate level id '" + lvl.id + "'");
            if (!std::isfinite(lvl.energy))
                throw ConfigError("non-finite energy for level '" + lvl.id + "'");
        }
        double sum = 0.0;
        for (const auto& lvl : levels)
        {
            auto it = populations.find(lvl.id);
            if (it == populations.end())
                throw ConfigError("no population for level '" + lvl.id + "'");
            if (!std::isfinite(it->second) || it->second < 0.0)
                throw ConfigError("invalid population for level '" + lvl.id + "'");
            sum += it->second;
        }
        if (populations.size() != levels.size())
            throw ConfigError("population given for an unknown level id");
        if (!levels.empty() && std::abs(sum - 1.0) > 1e-12)
            throw ConfigError("populations sum to " + std::to_string(sum)
                              + ", expected 1");
    }

    const Level* find(const std::string& id) const
    {
        auto it = std::find_if(levels.begin(), levels.end(),
                               [&](const Level& l) { return l.id == id; });
        return it == levels.end() ? nullptr : &*it;
    }
};

struct Transition
{
    std::string upper;
    std::string lower;
    double mu2 = 0.0;  //!< |<F|p|I>|^2 summed over vector components
};

using TransitionTable = std::vector<Transition>;

//! One delta line of S+/S- at +omega0; S+ at -omega0 carries w_minus.
struct Line
{
    double omega0 = 0.0;
    double w_plus = 0.0;   //!< (1/3) p_lower mu2
    double w_minus = 0.0;  //!< (1/3) p_upper mu2

    double delta_w() const { return w_plus - w_minus; }
};

struct LineSpectrum
{
    std::vector<Line> lines;  //!< sorted by omega0, strictly positive

    bool empty() const { return lines.empty(); }
};

struct SpectralFunctions
{
    std::vector<double> grid;
    std::vector<double> s_plus;
    std::vector<double> s_minus;
    std::vector<double> s_bar;
    double eta = 0.0;
};

inline constexpr double kMergeTolerance = 1e-9;

//---------------------------------------------------------------------------//
/*!
 * Boltzmann populations p_I proportional to exp(-E_I / T).
 *
 * Negative temperatures are valid and produce inverted populations. The
 * exponent is shifted by its maximum before exponentiation so extreme
 * energy/temperature ratios do not overflow.
 */
inline std::map<std::string, double>
thermal_populations(std::span<const Level> levels, double temperature)
{
    if (levels.empty())
        throw DomainError("thermal_populations: empty level list");
    if (temperature == 0.0 || !std::isfinite(temperature))
        throw DomainError("thermal_populations: temperature must be finite and "
                          "nonzero; give explicit populations instead");

    std::vector<double> expo(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
        expo[i] = -levels[i].energy / temperature;
    const double shift = *std::max_element(expo.begin(), expo.end());

    double norm = 0.0;
    for (auto& x : expo)
    {
        x = std::exp(x - shift);
        norm += x;
    }
    std::map<std::string, double> result;
    for (std::size_t i = 0; i < levels.size(); ++i)
        result[levels[i].id] = expo[i] / norm;
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * Collapse a level system and its dipole couplings to delta-line weights.
 *
 * Transition frequencies that agree within kMergeTolerance (relative) are
 * merged by summing weights; the merged line keeps the lowest frequency.
 */
inline LineSpectrum
build_line_spectrum(const LevelSystem& system, const TransitionTable& table)
{
    std::set<std::pair<std::string, std::string>> pairs;
    std::vector<Line> raw;
    raw.reserve(table.size());
    for (const auto& tr : table)
    {
        const Level* up = system.find(tr.upper);
        const Level* lo = system.find(tr.lower);
        if (!up)
            throw ConfigError("transition references unknown level '" + tr.upper + "'");
        if (!lo)
            throw ConfigError("transition references unknown level '" + tr.lower + "'");
        if (!std::isfinite(tr.mu2) || tr.mu2 < 0.0)
            throw ConfigError("mu2 must be finite and >= 0 for " + tr.upper + "->"
                              + tr.lower);
        if (!(up->energy > lo->energy))
            throw ConfigError("upper level '" + tr.upper
                              + "' is not above lower level '" + tr.lower + "'");
        if (!pairs.emplace(tr.upper, tr.lower).second)
            throw ConfigError("duplicate transition " + tr.upper + "->" + tr.lower);

        const double p_up = system.populations.at(tr.upper);
        const double p_lo = system.populations.at(tr.lower);
        raw.push_back({up->energy - lo->energy, p_lo * tr.mu2 / 3.0, p_up * tr.mu2 / 3.0});
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const Line& a, const Line& b) { return a.omega0 < b.omega0; });

    LineSpectrum spec;
    for (const auto& line : raw)
    {
        if (!spec.lines.empty())
        {
            Line& last = spec.lines.back();
            if (line.omega0 - last.omega0 <= kMergeTolerance * line.omega0)
            {
                last.w_plus += line.w_plus;
                last.w_minus += line.w_minus;
                continue;
            }
        }
        spec.lines.push_back(line);
    }
    return spec;
}

//! Unit-area Lorentzian of half-width eta centred at zero.
inline double lorentzian(double x, double eta)
{
    return (eta / std::numbers::pi) / (x * x + eta * eta);
}

//! Broadened {S+(w), S-(w)} at a single frequency.
inline std::pair<double, double>
spectral_pair(const LineSpectrum& spec, double omega, double eta)
{
    double sp = 0.0;
    double sm = 0.0;
    for (const auto& line : spec.lines)
    {
        const double res = lorentzian(omega - line.omega0, eta);
        const double anti = lorentzian(omega + line.omega0, eta);
        sp += line.w_plus * res + line.w_minus * anti;
        sm += line.w_minus * res + line.w_plus * anti;
    }
    return {sp, sm};
}

//---------------------------------------------------------------------------//
/*!
 * Evaluate S+, S- and S_bar on a grid with each delta replaced by a
 * unit-area Lorentzian of half-width eta.
 *
 * Both the +omega0 and -omega0 images of every line are included, so
 * S+(-w) == S-(w) bitwise on symmetric grids.
 */
inline SpectralFunctions
evaluate_spectral_functions(const LineSpectrum& spec, std::span<const double> grid,
                            double eta)
{
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw DomainError("evaluate_spectral_functions: eta must be > 0");

    SpectralFunctions out;
    out.eta = eta;
    out.grid.assign(grid.begin(), grid.end());
    out.s_plus.resize(grid.size());
    out.s_minus.resize(grid.size());
    out.s_bar.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (!std::isfinite(grid[i]))
            throw DomainError("evaluate_spectral_functions: non-finite grid point");
        const auto [sp, sm] = spectral_pair(spec, grid[i], eta);
        out.s_plus[i] = sp;
        out.s_minus[i] = sm;
        out.s_bar[i] = 0.5 * (sp + sm);
    }
    return out;
}

//---------------------------------------------------------------------------//
/*!
 * Inverse noise temperature beta_n = hbar / (k_B T_n).
 *
 * t_n is 1/beta_n. beta_n = 0 (equal spectral weights) maps to t_n = +inf;
 * a vanishing w_minus or w_plus gives beta_n = +inf or -inf respectively.
 */
struct NoiseParameter
{
    double beta_n = 0.0;
    double t_n = 0.0;

    bool t_n_infinite() const { return beta_n == 0.0; }
    bool beta_n_infinite() const { return std::isinf(beta_n); }
};

inline NoiseParameter noise_parameter_from_weights(double w_plus, double w_minus,
                                                   double omega)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!(omega > 0.0))
        throw DomainError("noise_parameter: frequency must be > 0");
    if (w_plus == 0.0 && w_minus == 0.0)
        throw DomainError("noise_parameter: both spectral weights vanish");
    if (w_minus == 0.0)
        return {inf, 0.0};
    if (w_plus == 0.0)
        return {-inf, -0.0};
    const double beta = std::log(w_plus / w_minus) / omega;
    return {beta, beta == 0.0 ? inf : 1.0 / beta};
}

//! Noise parameter of the line at omega0 (matched within kMergeTolerance).
inline NoiseParameter noise_parameter(const LineSpectrum& spec, double omega0)
{
    for (const auto& line : spec.lines)
    {
        if (std::abs(line.omega0 - omega0) <= kMergeTolerance * std::abs(omega0))
            return noise_parameter_from_weights(line.w_plus, line.w_minus, line.omega0);
    }
    throw DomainError("noise_parameter: no line at omega0 = " + std::to_string(omega0));
}

//---------------------------------------------------------------------------//
/*!
 * Largest relative violation of S- = S+ exp(-w/T) over all lines.
 *
 * Evaluated on exact line weights; lines with zero weight on both sides are
 * skipped.
 */
inline double detailed_balance_residual(const LineSpectrum& spec, double temperature)
{
    if (temperature == 0.0 || std::isnan(temperature))
        throw DomainError("detailed_balance_residual: temperature must be nonzero");
    double worst = 0.0;
    for (const auto& line : spec.lines)
    {
        const double scale = std::max(line.w_plus, line.w_minus);
        if (scale == 0.0)
            continue;
        const double expected = line.w_plus * std::exp(-line.omega0 / temperature);
        worst = std::max(worst, std::abs(line.w_minus - expected) / scale);
    }
    return worst;
}

}  // namespace oklein
