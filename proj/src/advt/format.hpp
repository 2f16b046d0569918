#pragma once

#include <cstdint>
#include <string>

namespace advt {

/// "83.13"-style rendering of 100*num/den with exact half-up rounding done
/// in integer arithmetic, so report percentages never depend on binary
/// rounding of the intermediate quotient. den must be > 0.
std::string format_percent(int64_t num, int64_t den);

/// Same rounding for an already-computed fraction in [0,1].
std::string format_percent(double fraction);

/// The numeric value matching format_percent(num, den), e.g. 83.13.
double percent_value(int64_t num, int64_t den);

}  // namespace advt
