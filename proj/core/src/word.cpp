#include "shiftlab/word.hpp"

#include "shiftlab/error.hpp"

namespace shiftlab {

Word parse_digits(std::string_view digits) {
  Word w;
  w.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') {
      fail(ErrorKind::MalformedInput, std::string("non-digit character '") + c + "' in word");
    }
    w.push_back(static_cast<Symbol>(c - '0'));
  }
  return w;
}

std::string format_digits(WordView w) {
  std::string s;
  s.reserve(w.size());
  for (Symbol x : w) {
    if (x >= 10) fail(ErrorKind::SymbolOutOfRange, "symbol >= 10 has no digit form");
    s.push_back(static_cast<char>('0' + x));
  }
  return s;
}

std::string format_integers(WordView w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(static_cast<int>(w[i]));
  }
  return s;
}

std::string format_word(WordView w, int alphabet_size) {
  return alphabet_size <= 10 ? format_digits(w) : format_integers(w);
}

Word concat(std::initializer_list<WordView> parts) {
  std::size_t total = 0;
  for (auto p : parts) total += p.size();
  Word out;
  out.reserve(total);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace shiftlab
