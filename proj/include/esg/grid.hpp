#pragma once

#include <string_view>
#include <vector>

namespace esg {

/// lo, lo + step, ... up to hi. hi is included when step divides the range
/// exactly (to 1e-9 of a step). step may be negative for descending grids.
std::vector<double> grid_values(double lo, double hi, double step);

/// Parses "LO:HI:STEP" into grid_values, or a single number into a
/// one-point grid. Throws DomainError on malformed text.
std::vector<double> parse_grid(std::string_view spec);

/// Parses a comma-separated list of numbers.
std::vector<double> parse_list(std::string_view spec);

}  // namespace esg
