#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

/// Alphabets are capped at 256 symbols; words are byte strings.
using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

inline constexpr int kMaxAlphabet = 256;

/// Parses a string of decimal digits ("0101") into a word.
Word parse_digits(std::string_view digits);

/// Digit-string form; only valid when every symbol is < 10.
std::string format_digits(WordView w);

/// Comma separated integers ("0,12,3"), the fallback text form for m > 10.
std::string format_integers(WordView w);

/// Text form used on the wire: digits when m <= 10, integers otherwise.
std::string format_word(WordView w, int alphabet_size);

Word concat(std::initializer_list<WordView> parts);

}  // namespace shiftlab
