#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "shiftlab/parry.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

/// {"m": 2, "allowed": [[1,1],[1,0]]}. Malformed text raises MalformedInput;
/// a well-formed but invalid matrix raises InvalidSft or NotPrimitive.
Sft sft_from_json(std::string_view text);
std::string sft_to_json(const Sft& sft);
Sft load_sft(const std::filesystem::path& path);

/// Digit string for m <= 10, integer array otherwise.
std::string word_to_json(WordView w, int alphabet_size);
Word word_from_json(std::string_view text, int alphabet_size);

/// {"pi": [...], "trans": [[...]], "lambda": x, "theta": x, "entropy": x}
std::string measure_to_json(const ParryMeasure& measure);
ParryMeasure measure_from_json(std::string_view text);

/// printf("%.17g"); non-finite values print as null.
std::string format_double(double x);

}  // namespace shiftlab
