#pragma once

#include <string>
#include <string_view>

namespace facewall::unicode {

bool is_valid_utf8(std::string_view bytes);

/// Decodes UTF-8; ill-formed sequences become U+FFFD.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);

std::u32string normalize_nfc(std::u32string_view text);
std::string normalize_nfc(std::string_view utf8);

bool is_letter(char32_t c);      // general category L*
bool is_mark(char32_t c);        // general category M*
bool is_digit(char32_t c);       // general category Nd
bool is_whitespace(char32_t c);  // White_Space property

/// Unicode simple case folding of a single code point.
char32_t fold_case(char32_t c);
std::u32string fold_case(std::u32string_view text);

}  // namespace facewall::unicode
