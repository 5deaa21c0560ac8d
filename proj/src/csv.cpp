#include "heatlab/csv.hpp"

#include "heatlab/errors.hpp"
#include "heatlab/numerics.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace heatlab
{

std::string format_double(double value)
{
  char buffer[64];
  auto const [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc())
    throw Error("cannot format number");
  return std::string(buffer, end);
}

double parse_double(std::string const &token)
{
  std::string body = token;
  double scale = 1;
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0)
  {
    scale = pi<double>;
    body.resize(body.size() - 2);
    if (!body.empty() && body.back() == '*')
      body.pop_back();
    if (body.empty())
      return scale;
  }
  double value = 0;
  auto const *first = body.data();
  auto const *last = body.data() + body.size();
  auto const [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("not a number: '" + token + "'");
  return value * scale;
}

namespace
{

std::ofstream open_output(std::filesystem::path const &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream &out, std::filesystem::path const &path)
{
  out.flush();
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

} // namespace

void write_field_csv(std::filesystem::path const &path, TemperatureField const &field)
{
  auto out = open_output(path);
  out << "x,y,T\n";
  for (Eigen::Index j = 0; j < field.grid.ny; ++j)
    for (Eigen::Index i = 0; i < field.grid.nx; ++i)
      out << format_double(field.grid.x(i)) << ',' << format_double(field.grid.y(j)) << ','
          << format_double(field.values(i, j)) << '\n';
  finish(out, path);
}

void write_csv(std::filesystem::path const &path, std::vector<std::string> const &header,
               std::vector<std::vector<double>> const &rows)
{
  auto out = open_output(path);
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << header[c];
  out << '\n';
  for (auto const &row : rows)
  {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  finish(out, path);
}

void write_text(std::filesystem::path const &path, std::string const &text)
{
  auto out = open_output(path);
  out << text;
  finish(out, path);
}

} // namespace heatlab
