#pragma once

#include <string>
#include <string_view>

namespace premodtag::uni {

// Decodes UTF-8 into code points. Invalid byte sequences become U+FFFD.
std::u32string decode_utf8(std::string_view text);

// Strict decode; returns false (and leaves `out` unspecified) on invalid input.
bool try_decode_utf8(std::string_view text, std::u32string& out);

bool is_valid_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(char32_t cp);

// Unicode Normalization Form KD of a UTF-8 string.
std::string nfkd(std::string_view text);

bool is_letter(char32_t cp);
bool is_mark(char32_t cp);
// Letters plus combining marks: the code points a word is made of.
bool is_word_char(char32_t cp);
bool is_space(char32_t cp);

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

}  // namespace premodtag::uni
