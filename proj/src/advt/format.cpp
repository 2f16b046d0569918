#include "advt/format.hpp"

#include <cmath>

#include "advt/errors.hpp"

namespace advt {

namespace {

std::string render_scaled(int64_t scaled) {
  // scaled = percent * 100, already rounded
  std::string out = std::to_string(scaled / 100);
  const int64_t frac = scaled % 100;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

}  // namespace

std::string format_percent(int64_t num, int64_t den) {
  if (den <= 0) throw ArgumentError("format_percent: denominator must be positive");
  if (num < 0) throw ArgumentError("format_percent: negative numerator");
  // half-up of 10000*num/den: floor((20000*num + den) / (2*den))
  const int64_t scaled = (20000 * num + den) / (2 * den);
  return render_scaled(scaled);
}

std::string format_percent(double fraction) {
  const int64_t scaled = static_cast<int64_t>(std::floor(fraction * 10000.0 + 0.5));
  return render_scaled(scaled);
}

double percent_value(int64_t num, int64_t den) {
  if (den <= 0) throw ArgumentError("percent_value: denominator must be positive");
  const int64_t scaled = (20000 * num + den) / (2 * den);
  return static_cast<double>(scaled) / 100.0;
}

}  // namespace advt
