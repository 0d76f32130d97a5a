#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dfrac/grid.hpp"
#include "dfrac/kernel.hpp"

namespace dfrac {

/// Signal file contents: header "n,value", strictly increasing integer
/// indices, finite values. Missing interior indices are zero-filled and
/// reported in `zero_filled`.
struct ParsedSignal {
  GridFunction fn;
  std::vector<long> zero_filled;
};

ParsedSignal parse_signal(std::istream& in, double h = 1.0);
ParsedSignal parse_signal_file(const std::string& path, double h = 1.0);

void write_signal(std::ostream& out, const GridFunction& u);
void write_signal_file(const std::string& path, const GridFunction& u);

/// Kernel dump, header "n,lambda".
void write_kernel(std::ostream& out, const KernelTable& table);
void write_kernel_file(const std::string& path, const KernelTable& table);

} // namespace dfrac
