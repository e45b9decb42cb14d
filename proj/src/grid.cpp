#include "esg/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "esg/errors.hpp"

namespace esg {

namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw DomainError("invalid number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> grid_values(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step)) {
    throw DomainError("grid bounds must be finite");
  }
  if (lo == hi) return {lo};
  if (step == 0.0 || (hi - lo) / step < 0.0) throw DomainError("grid step must move from LO toward HI");
  const double span = (hi - lo) / step;
  const auto count = static_cast<long long>(std::floor(span + 1e-9));
  if (count > 10'000'000) throw DomainError("grid too large");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (long long k = 0; k <= count; ++k) out.push_back(lo + static_cast<double>(k) * step);
  // Land exactly on hi when the step divides the range.
  if (std::abs(span - static_cast<double>(count)) <= 1e-9) out.back() = hi;
  return out;
}

std::vector<double> parse_grid(std::string_view spec) {
  const auto first = spec.find(':');
  if (first == std::string_view::npos) return {parse_number(spec)};
  const auto second = spec.find(':', first + 1);
  if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
    throw DomainError("grid must be LO:HI:STEP, got '" + std::string(spec) + "'");
  }
  return grid_values(parse_number(spec.substr(0, first)),
                     parse_number(spec.substr(first + 1, second - first - 1)),
                     parse_number(spec.substr(second + 1)));
}

std::vector<double> parse_list(std::string_view spec) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto piece = spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_number(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace esg
