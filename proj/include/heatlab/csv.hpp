#ifndef HEATLAB_CSV_HPP
#define HEATLAB_CSV_HPP

#include "scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace heatlab
{

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Strict parse of a whole token as a double; accepts a trailing "pi"
/// multiplier ("0.2pi", "0.2*pi", "pi").
double parse_double(std::string const &token);

/// Writes `x,y,T` rows, x fastest.
void write_field_csv(std::filesystem::path const &path, TemperatureField const &field);

/// Writes a header row then one row per record.
void write_csv(std::filesystem::path const &path, std::vector<std::string> const &header,
               std::vector<std::vector<double>> const &rows);

void write_text(std::filesystem::path const &path, std::string const &text);

} // namespace heatlab

#endif // HEATLAB_CSV_HPP
