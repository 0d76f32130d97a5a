#include "dfrac/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dfrac/errors.hpp"

namespace dfrac {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

ParsedSignal parse_signal(std::istream& in, double h) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "n,value")
    throw ParseError("signal file: missing 'n,value' header");

  std::vector<long> index;
  std::vector<double> value;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos)
      throw ParseError("signal file line " + std::to_string(lineno) +
                       ": expected 'n,value'");
    long n = 0;
    double v = 0.0;
    try {
      std::size_t used = 0;
      n = std::stol(trim(row.substr(0, comma)), &used);
      if (used != trim(row.substr(0, comma)).size()) throw std::invalid_argument("");
      const std::string vs = trim(row.substr(comma + 1));
      v = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError("signal file line " + std::to_string(lineno) +
                       ": malformed row '" + row + "'");
    }
    if (!std::isfinite(v))
      throw ParseError("signal file line " + std::to_string(lineno) +
                       ": non-finite value");
    if (!index.empty()) {
      if (n == index.back())
        throw DuplicateIndex("signal file line " + std::to_string(lineno) +
                             ": duplicate index " + std::to_string(n));
      if (n < index.back())
        throw ParseError("signal file line " + std::to_string(lineno) +
                         ": indices out of order");
    }
    index.push_back(n);
    value.push_back(v);
  }
  if (index.empty()) throw ParseError("signal file: no data rows");

  ParsedSignal out;
  Grid g(h, index.front(), index.back());
  std::vector<double> samples(static_cast<size_t>(g.size()), 0.0);
  std::size_t row = 0;
  for (long n = g.n_min; n <= g.n_max; ++n) {
    if (row < index.size() && index[row] == n) {
      samples[static_cast<size_t>(n - g.n_min)] = value[row];
      ++row;
    } else {
      out.zero_filled.push_back(n);
    }
  }
  out.fn = GridFunction(g, std::move(samples), Extension::ZeroOutside);
  return out;
}

ParsedSignal parse_signal_file(const std::string& path, double h) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open signal file: " + path);
  return parse_signal(in, h);
}

void write_signal(std::ostream& out, const GridFunction& u) {
  out << "n,value\n";
  char buf[64];
  for (long n = u.grid().n_min; n <= u.grid().n_max; ++n) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g\n", n, u.at_index(n));
    out << buf;
  }
}

void write_signal_file(const std::string& path, const GridFunction& u) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  write_signal(out, u);
}

void write_kernel(std::ostream& out, const KernelTable& table) {
  out << "n,lambda\n";
  char buf[64];
  for (std::size_t n = 0; n < table.values.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", n, table.values[n]);
    out << buf;
  }
}

void write_kernel_file(const std::string& path, const KernelTable& table) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  write_kernel(out, table);
}

} // namespace dfrac
