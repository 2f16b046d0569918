#pragma once

#include <string>
#include <string_view>

namespace advt {

bool utf8_valid(std::string_view s);

/// Decodes strictly: overlong forms, surrogates and out-of-range scalars
/// all raise ParseError.
std::u32string utf8_decode(std::string_view s);

/// Encodes with the same strictness: surrogates and scalars above U+10FFFF
/// raise ParseError, so encode never produces bytes decode would reject.
std::string utf8_encode(std::u32string_view s);

}  // namespace advt
