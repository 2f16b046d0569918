#include <string>

#include <doctest.h>

#include "advt/errors.hpp"
#include "advt/utf8.hpp"

using advt::utf8_decode;
using advt::utf8_encode;
using advt::utf8_valid;

TEST_SUITE("utf8") {

TEST_CASE("round-trips ASCII, Bangla and emoji") {
  const std::u32string scalars = U"abc কো\U0001F600!";
  const std::string bytes = utf8_encode(scalars);
  CHECK(utf8_valid(bytes));
  CHECK(utf8_decode(bytes) == scalars);

  // Known byte encodings, independent of our encoder.
  CHECK(utf8_encode(U"ক") == "\xE0\xA6\x95");          // KA
  CHECK(utf8_encode(U"\U0001F600") == "\xF0\x9F\x98\x80");  // emoji
  CHECK(utf8_encode(U"é") == "\xC3\xA9");              // e-acute
  CHECK(utf8_encode(std::u32string(1, U'\0')) == std::string(1, '\0'));
}

TEST_CASE("boundary scalars survive") {
  for (char32_t cp : {U'', U'', U'߿', U'ࠀ',
                      U'퟿', U'', U'￿', U'\U00010000',
                      U'\U0010FFFF'}) {
    const std::string bytes = utf8_encode(std::u32string(1, cp));
    const std::u32string back = utf8_decode(bytes);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == cp);
  }
}

TEST_CASE("rejects overlong encodings") {
  // '/' (U+002F) must be one byte; these are the classic overlong forms.
  CHECK_FALSE(utf8_valid("\xC0\xAF"));
  CHECK_FALSE(utf8_valid("\xE0\x80\xAF"));
  CHECK_FALSE(utf8_valid("\xF0\x80\x80\xAF"));
  CHECK_THROWS_AS(utf8_decode("\xC0\xAF"), advt::ParseError);
  // NUL as two bytes ("modified UTF-8") is also overlong.
  CHECK_FALSE(utf8_valid("\xC0\x80"));
}

TEST_CASE("rejects surrogates and out-of-range scalars") {
  CHECK_FALSE(utf8_valid("\xED\xA0\x80"));  // U+D800
  CHECK_FALSE(utf8_valid("\xED\xBF\xBF"));  // U+DFFF
  CHECK_FALSE(utf8_valid("\xF4\x90\x80\x80"));  // U+110000
  CHECK_FALSE(utf8_valid("\xF5\x80\x80\x80"));  // lead byte beyond range
  CHECK_THROWS_AS(utf8_decode("\xED\xA0\x80"), advt::ParseError);
  CHECK_THROWS_AS(utf8_encode(std::u32string(1, char32_t{0xD800})),
                  advt::ParseError);
  CHECK_THROWS_AS(utf8_encode(std::u32string(1, char32_t{0x110000})),
                  advt::ParseError);
}

TEST_CASE("rejects truncated and malformed sequences") {
  CHECK_FALSE(utf8_valid("\xE0\xA6"));      // missing final byte
  CHECK_FALSE(utf8_valid("\xF0\x9F\x98"));  // missing final byte
  CHECK_FALSE(utf8_valid("\x80"));          // bare continuation byte
  CHECK_FALSE(utf8_valid("\xC3\x28"));      // non-continuation second byte
  CHECK_FALSE(utf8_valid("\xFF"));          // invalid lead byte
  CHECK_THROWS_AS(utf8_decode("\xE0\xA6"), advt::ParseError);
  CHECK_THROWS_AS(utf8_decode("abc\x80"), advt::ParseError);
}

TEST_CASE("valid prefixes do not mask trailing garbage") {
  std::string s = utf8_encode(U"কখ");
  s.push_back('\xC3');  // dangling lead byte at the very end
  CHECK_FALSE(utf8_valid(s));
}

}  // TEST_SUITE
