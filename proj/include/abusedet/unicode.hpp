#pragma once

#include <string>
#include <string_view>

namespace abusedet::uni {

// Lenient UTF-8 decoding: malformed bytes become U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
std::string encode_utf8(char32_t c);

// Character classes over ASCII, Latin-1 Supplement, Latin Extended-A and
// the General Punctuation block. Anything outside those ranges is "other".
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_space(char32_t c);
bool is_punct(char32_t c);   // punctuation categories only
bool is_symbol(char32_t c);  // math/currency/modifier symbols
bool is_upper(char32_t c);

char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view s);
std::string lower_utf8(std::string_view s);

}  // namespace abusedet::uni
