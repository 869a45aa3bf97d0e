#pragma once

//---------------------------------------------------------------------------//
// Report generation behind the `oklein` command line tool.
//
// Each run_* function writes its complete CSV report to a stream and throws
// on failure; run_command maps exceptions to exit codes and only touches
// the output file once the report is complete.
//---------------------------------------------------------------------------//

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "catalog_io.hpp"
#include "error.hpp"
#include "medium.hpp"
#include "response.hpp"
#include "scattering.hpp"
#include "screen_verifier.hpp"
#include "spectral_model.hpp"

namespace oklein::cli {

enum ExitCode : int
{
    kSuccess = 0,
    kConfigError = 2,
    kNumericalFailure = 3,
};

struct GridSpec
{
    double omega_min = 0.0;
    double omega_max = 0.0;
    int count = 0;
};

struct VerifySpec
{
    double z = 0.0;
    std::vector<double> windows;
};

struct RunConfig
{
    std::string levels_path;
    std::string transitions_path;
    std::optional<double> temperature;
    GridSpec grid;
    double eta = 0.0;
    double density = 0.0;
    std::optional<VerifySpec> verify;
    std::optional<double> omega;  //!< verify frequency
    std::string output_path = "-";
};

//! Shortest-exact-enough decimal: 17 significant digits, "inf"/"-inf".
inline std::string format_real(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                         std::chars_format::general, 17);
    return std::string(buf, ptr);
}

namespace detail {
inline double parse_flag_real(std::string_view text, std::string_view flag)
{
    return csv::parse_real(csv::trim(text), "--" + std::string(flag), 1, flag);
}
}  // namespace detail

//! Parse "min:max:count".
inline GridSpec parse_grid(std::string_view text)
{
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
        throw ConfigError("--grid: expected min:max:count, got '" + std::string(text) + "'");
    GridSpec g;
    g.omega_min = detail::parse_flag_real(text.substr(0, c1), "grid");
    g.omega_max = detail::parse_flag_real(text.substr(c1 + 1, c2 - c1 - 1), "grid");
    const auto count_text = csv::trim(text.substr(c2 + 1));
    const auto [ptr, ec] = std::from_chars(count_text.data(),
                                           count_text.data() + count_text.size(), g.count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size())
        throw ConfigError("--grid: invalid count '" + std::string(count_text) + "'");
    return g;
}

//! Parse "w1,w2,...".
inline std::vector<double> parse_windows(std::string_view text)
{
    std::vector<double> out;
    for (const auto& field : csv::split(text))
        out.push_back(detail::parse_flag_real(field, "windows"));
    return out;
}

inline void validate(const RunConfig& cfg)
{
    const auto& g = cfg.grid;
    if (!(g.omega_min < g.omega_max))
        throw ConfigError("--grid: omega_min must be < omega_max");
    if (!(g.omega_min > 0.0))
        throw ConfigError("--grid: frequencies must be > 0");
    if (g.count < 2)
        throw ConfigError("--grid: count must be >= 2");
    if (!(cfg.eta > 0.0) || !std::isfinite(cfg.eta))
        throw ConfigError("--eta must be > 0");
    if (!(cfg.density >= 0.0) || !std::isfinite(cfg.density))
        throw ConfigError("--density must be >= 0");
    if (cfg.temperature && !(*cfg.temperature != 0.0 && std::isfinite(*cfg.temperature)))
        throw ConfigError("--temperature must be finite and nonzero");
}

inline std::vector<double> make_grid(const GridSpec& g)
{
    std::vector<double> grid(g.count);
    const double span = g.omega_max - g.omega_min;
    for (int i = 0; i < g.count; ++i)
        grid[i] = g.omega_min + span * static_cast<double>(i) / (g.count - 1);
    grid.back() = g.omega_max;
    return grid;
}

//! Read both catalogs and reduce them to a line spectrum.
inline LineSpectrum load_spectrum(const RunConfig& cfg)
{
    auto levels_in = open_input(cfg.levels_path);
    LevelCatalog cat = read_levels(levels_in, cfg.levels_path);
    auto trans_in = open_input(cfg.transitions_path);
    TransitionTable table = read_transitions(trans_in, cfg.transitions_path);

    LevelSystem system;
    system.levels = cat.levels;
    if (cat.populations && cfg.temperature)
        throw ConfigError(cfg.levels_path
                          + ": populations given in file and --temperature set; "
                            "provide exactly one");
    if (cat.populations)
        system.populations = *cat.populations;
    else if (cfg.temperature)
    {
        if (cat.levels.empty())
            throw ConfigError(cfg.levels_path + ": no levels");
        system.populations = thermal_populations(system.levels, *cfg.temperature);
    }
    else
        throw ConfigError("no populations in " + cfg.levels_path
                          + " and no --temperature given");
    system.validate();
    return build_line_spectrum(system, table);
}

//---------------------------------------------------------------------------//
/*!
 * omega,re_alpha,im_alpha,sigma_el,sigma_tot,sigma_in,beta_n,h per grid point.
 *
 * beta_n is the pointwise ln(S+/S-)/omega, blank where both vanish; h is blank
 * for zero density.
 */
inline void run_spectrum(const RunConfig& cfg, std::ostream& out)
{
    validate(cfg);
    const LineSpectrum spec = load_spectrum(cfg);
    const auto grid = make_grid(cfg.grid);

    out << "omega,re_alpha,im_alpha,sigma_el,sigma_tot,sigma_in,beta_n,h\n";
    for (double w : grid)
    {
        const complex alpha = polarizability_on_axis(spec, w, cfg.eta);
        const CrossSections xs = cross_sections(alpha, w);
        const auto [sp, sm] = spectral_pair(spec, w, cfg.eta);
        std::string beta;
        if (sp != 0.0 || sm != 0.0)
            beta = format_real(noise_parameter_from_weights(sp, sm, w).beta_n);
        std::string h;
        if (cfg.density > 0.0)
            h = format_real(medium_response(alpha, w, cfg.density).h);
        out << format_real(w) << ',' << format_real(alpha.real()) << ','
            << format_real(alpha.imag()) << ',' << format_real(xs.sigma_el) << ','
            << format_real(xs.sigma_tot) << ',' << format_real(xs.sigma_in) << ','
            << beta << ',' << h << '\n';
    }
}

//! omega_lo,omega_hi,kind for every amplifier band on the grid.
inline void run_bands(const RunConfig& cfg, std::ostream& out)
{
    validate(cfg);
    const LineSpectrum spec = load_spectrum(cfg);
    const auto response = response_spectrum(spec, make_grid(cfg.grid), cfg.eta);
    out << "omega_lo,omega_hi,kind\n";
    for (const auto& band : amplifier_bands(response).bands)
        out << format_real(band.omega_lo) << ',' << format_real(band.omega_hi) << ','
            << to_string(band.kind) << '\n';
}

//! W,sigma_W rows plus extrapolated/reference/relative_error trailers.
inline void run_verify(const RunConfig& cfg, std::ostream& out)
{
    validate(cfg);
    if (!cfg.verify)
        throw ConfigError("verify: --z and --windows are required");
    if (!cfg.omega)
        throw ConfigError("verify: --omega is required");
    const double w = *cfg.omega;
    if (!(w >= cfg.grid.omega_min && w <= cfg.grid.omega_max))
        throw ConfigError("verify: --omega outside the grid range");

    const LineSpectrum spec = load_spectrum(cfg);
    ScreenConfig screen;
    screen.f_forward = forward_amplitude(polarizability_on_axis(spec, w, cfg.eta), w);
    screen.omega = w;
    screen.z = cfg.verify->z;
    screen.windows = cfg.verify->windows;
    try
    {
        screen.validate();
    }
    catch (const DomainError& e)
    {
        throw ConfigError(std::string("verify: ") + e.what());
    }
    const ScreenResult result = verify_optical_theorem(screen);

    out << "W,sigma_W\n";
    for (const auto& win : result.windows)
        out << format_real(win.width) << ',' << format_real(win.sigma) << '\n';
    out << "extrapolated," << format_real(result.sigma_extrapolated) << '\n';
    out << "reference," << format_real(result.sigma_reference) << '\n';
    out << "relative_error," << format_real(result.relative_error) << '\n';
}

//---------------------------------------------------------------------------//
/*!
 * Run one subcommand and write its report to cfg.output_path ("-" for
 * stdout). Returns the process exit code; diagnostics go to err.
 */
inline int run_command(std::string_view command, const RunConfig& cfg, std::ostream& err)
{
    std::ostringstream report;
    try
    {
        if (command == "spectrum")
            run_spectrum(cfg, report);
        else if (command == "bands")
            run_bands(cfg, report);
        else if (command == "verify")
            run_verify(cfg, report);
        else
            throw ConfigError("unknown subcommand '" + std::string(command) + "'");
    }
    catch (const ConfigError& e)
    {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const Error& e)
    {
        // DomainError from inside a sweep (e.g. the dilute guard) and
        // NumericalFailure are both numerical failures at this level
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }

    if (cfg.output_path.empty() || cfg.output_path == "-")
    {
        std::cout << report.str();
        std::cout.flush();
        return std::cout ? kSuccess : kConfigError;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file)
    {
        err << "error: cannot open '" << cfg.output_path << "' for writing\n";
        return kConfigError;
    }
    file << report.str();
    return file ? kSuccess : kConfigError;
}

}  // namespace oklein::cli
