#pragma once

//---------------------------------------------------------------------------//
// CSV readers for level and transition catalogs.
//
//   levels:      id,energy[,population]
//   transitions: upper,lower,mu2
//
// A header row is required. Lines starting with '#' and blank lines are
// skipped. Errors carry "<source>:<line>:" prefixes.
//---------------------------------------------------------------------------//

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "spectral_model.hpp"

namespace oklein {

struct LevelCatalog
{
    std::vector<Level> levels;
    //! Present iff the file had a population column.
    std::optional<std::map<std::string, double>> populations;
};

namespace csv {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

inline std::string where(const std::string& source, std::size_t line_no)
{
    return source + ":" + std::to_string(line_no) + ": ";
}

// Decimal real with optional exponent; rejects inf/nan and trailing junk.
inline double parse_real(std::string_view text, const std::string& source,
                         std::size_t line_no, std::string_view field)
{
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && *begin == '+')
    {
        ++begin;
        if (begin != end && *begin == '-')
            begin = end;  // "+-" is never a number
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ConfigError(where(source, line_no) + "invalid number '" + std::string(text)
                          + "' in column '" + std::string(field) + "'");
    return value;
}

// Calls on_row(fields, line_no) for every data row after validating the
// header against the accepted column sets.
template<class OnHeader, class OnRow>
void read_rows(std::istream& in, const std::string& source, OnHeader&& on_header,
               OnRow&& on_row)
{
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t columns = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#')
            continue;
        auto fields = split(body);
        if (!have_header)
        {
            columns = on_header(fields, line_no);
            have_header = true;
            continue;
        }
        if (fields.size() != columns)
            throw ConfigError(where(source, line_no) + "expected "
                              + std::to_string(columns) + " columns, found "
                              + std::to_string(fields.size()));
        on_row(fields, line_no);
    }
    if (!have_header)
        throw ConfigError(source + ": missing header row");
}

}  // namespace csv

inline LevelCatalog read_levels(std::istream& in, const std::string& source = "levels")
{
    LevelCatalog cat;
    bool with_population = false;
    csv::read_rows(
        in, source,
        [&](const std::vector<std::string>& h, std::size_t line_no) -> std::size_t {
            if (h.size() == 2 && h[0] == "id" && h[1] == "energy")
                return 2;
            if (h.size() == 3 && h[0] == "id" && h[1] == "energy" && h[2] == "population")
            {
                with_population = true;
                cat.populations.emplace();
                return 3;
            }
            throw ConfigError(csv::where(source, line_no)
                              + "header must be 'id,energy' or 'id,energy,population'");
        },
        [&](const std::vector<std::string>& f, std::size_t line_no) {
            if (f[0].empty())
                throw ConfigError(csv::where(source, line_no) + "empty level id");
            for (const auto& lvl : cat.levels)
                if (lvl.id == f[0])
                    throw ConfigError(csv::where(source, line_no) + "duplicate level id '"
                                      + f[0] + "'");
            cat.levels.push_back({f[0], csv::parse_real(f[1], source, line_no, "energy")});
            if (with_population)
            {
                const double p = csv::parse_real(f[2], source, line_no, "population");
                if (p < 0.0)
                    throw ConfigError(csv::where(source, line_no)
                                      + "population must be >= 0");
                (*cat.populations)[f[0]] = p;
            }
        });
    return cat;
}

inline TransitionTable read_transitions(std::istream& in,
                                        const std::string& source = "transitions")
{
    TransitionTable table;
    csv::read_rows(
        in, source,
        [&](const std::vector<std::string>& h, std::size_t line_no) -> std::size_t {
            if (h.size() == 3 && h[0] == "upper" && h[1] == "lower" && h[2] == "mu2")
                return 3;
            throw ConfigError(csv::where(source, line_no)
                              + "header must be 'upper,lower,mu2'");
        },
        [&](const std::vector<std::string>& f, std::size_t line_no) {
            const double mu2 = csv::parse_real(f[2], source, line_no, "mu2");
            if (mu2 < 0.0)
                throw ConfigError(csv::where(source, line_no) + "mu2 must be >= 0");
            table.push_back({f[0], f[1], mu2});
        });
    return table;
}

inline std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open '" + path + "' for reading");
    return in;
}

}  // namespace oklein
