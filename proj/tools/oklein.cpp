// Command line front end: spectrum, bands and verify reports as CSV.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oklein/cli.hpp"

namespace {

struct RawFlags
{
    std::string levels;
    std::string transitions;
    std::optional<double> temperature;
    std::string grid;
    double eta = 0.0;
    double density = 0.0;
    std::optional<double> z;
    std::string windows;
    std::optional<double> omega;
    std::string out = "-";
};

void add_common(CLI::App* cmd, RawFlags& f)
{
    cmd->add_option("--levels", f.levels, "Levels CSV (id,energy[,population])")->required();
    cmd->add_option("--transitions", f.transitions, "Transitions CSV (upper,lower,mu2)")
        ->required();
    cmd->add_option("--temperature", f.temperature,
                    "Thermal populations at this temperature (may be negative)");
    cmd->add_option("--grid", f.grid, "Frequency grid min:max:count")->required();
    cmd->add_option("--eta", f.eta, "Lorentzian half-width / boundary offset")->required();
    cmd->add_option("--density", f.density, "Target number density (0 disables h)");
    cmd->add_option("--out", f.out, "Output CSV path, '-' for stdout");
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace oklein::cli;

    CLI::App app{"Response and cross sections of excited dipole targets"};
    app.require_subcommand(1);
    RawFlags flags;

    auto* spectrum = app.add_subcommand("spectrum", "Per-frequency response table");
    auto* bands = app.add_subcommand("bands", "Amplifier bands (sigma_tot < 0)");
    auto* verify = app.add_subcommand("verify", "Screen-integral optical theorem check");
    add_common(spectrum, flags);
    add_common(bands, flags);
    add_common(verify, flags);
    verify->add_option("--z", flags.z, "Screen distance")->required();
    verify->add_option("--windows", flags.windows, "Apodization widths w1,w2,...")
        ->required();
    verify->add_option("--omega", flags.omega, "Frequency to verify")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kConfigError;
    }

    RunConfig cfg;
    cfg.levels_path = flags.levels;
    cfg.transitions_path = flags.transitions;
    cfg.temperature = flags.temperature;
    cfg.eta = flags.eta;
    cfg.density = flags.density;
    cfg.omega = flags.omega;
    cfg.output_path = flags.out;
    try
    {
        cfg.grid = parse_grid(flags.grid);
        if (flags.z)
            cfg.verify = VerifySpec{*flags.z, parse_windows(flags.windows)};
    }
    catch (const oklein::ConfigError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return run_command(command, cfg, std::cerr);
}
