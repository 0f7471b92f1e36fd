#include "shiftlab/sft_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "shiftlab/error.hpp"

namespace shiftlab {
namespace {

using nlohmann::json;

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::MalformedInput, std::string(what) + ": " + e.what());
  }
}

std::string dump_floats(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::vector<double> read_floats(const json& node, const char* field) {
  if (!node.is_array()) fail(ErrorKind::MalformedInput, std::string("\"") + field + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : node) {
    if (!x.is_number()) fail(ErrorKind::MalformedInput, std::string("\"") + field + "\" must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Sft sft_from_json(std::string_view text) {
  const json doc = parse(text, "SFT JSON");
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("allowed")) {
    fail(ErrorKind::MalformedInput, "SFT JSON needs fields \"m\" and \"allowed\"");
  }
  if (!doc["m"].is_number_integer()) fail(ErrorKind::MalformedInput, "\"m\" must be an integer");
  const auto m = doc["m"].get<long long>();
  const json& rows = doc["allowed"];
  if (!rows.is_array()) fail(ErrorKind::MalformedInput, "\"allowed\" must be an array of rows");
  if (static_cast<long long>(rows.size()) != m) {
    fail(ErrorKind::MalformedInput, "\"allowed\" has " + std::to_string(rows.size()) + " rows but m = " + std::to_string(m));
  }
  Matrix01 matrix;
  for (const auto& row : rows) {
    if (!row.is_array()) fail(ErrorKind::MalformedInput, "each row of \"allowed\" must be an array");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) fail(ErrorKind::MalformedInput, "entries of \"allowed\" must be integers");
      r.push_back(x.get<int>());
    }
    matrix.push_back(std::move(r));
  }
  return Sft(matrix);
}

std::string sft_to_json(const Sft& sft) {
  std::ostringstream os;
  os << "{\"m\": " << sft.alphabet_size() << ", \"allowed\": [";
  for (int i = 0; i < sft.alphabet_size(); ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < sft.alphabet_size(); ++j) os << (j ? ", " : "") << (sft.allowed(i, j) ? 1 : 0);
    os << "]";
  }
  os << "]}";
  return os.str();
}

Sft load_sft(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::MalformedInput, "cannot read SFT file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return sft_from_json(buffer.str());
}

std::string word_to_json(WordView w, int alphabet_size) {
  if (alphabet_size <= 10) return "\"" + format_digits(w) + "\"";
  return "[" + format_integers(w) + "]";
}

Word word_from_json(std::string_view text, int alphabet_size) {
  const json doc = parse(text, "word JSON");
  Word w;
  if (doc.is_string()) {
    w = parse_digits(doc.get<std::string>());
  } else if (doc.is_array()) {
    for (const auto& x : doc) {
      if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() >= kMaxAlphabet) {
        fail(ErrorKind::MalformedInput, "word arrays hold integers in [0, 256)");
      }
      w.push_back(static_cast<Symbol>(x.get<int>()));
    }
  } else {
    fail(ErrorKind::MalformedInput, "a word is a digit string or an integer array");
  }
  for (Symbol s : w) {
    if (s >= alphabet_size) fail(ErrorKind::SymbolOutOfRange, "symbol " + std::to_string(s) + " out of range");
  }
  return w;
}

std::string measure_to_json(const ParryMeasure& measure) {
  std::string s = "{\"pi\": " + dump_floats(measure.pi) + ", \"trans\": [";
  for (std::size_t i = 0; i < measure.trans.size(); ++i) {
    if (i) s += ", ";
    s += dump_floats(measure.trans[i]);
  }
  s += "], \"lambda\": " + format_double(measure.lambda);
  s += ", \"theta\": " + format_double(measure.theta);
  s += ", \"entropy\": " + format_double(measure.entropy) + "}";
  return s;
}

ParryMeasure measure_from_json(std::string_view text) {
  const json doc = parse(text, "measure JSON");
  for (const char* field : {"pi", "trans", "lambda", "theta", "entropy"}) {
    if (!doc.contains(field)) fail(ErrorKind::MalformedInput, std::string("measure JSON lacks \"") + field + "\"");
  }
  ParryMeasure out;
  out.pi = read_floats(doc["pi"], "pi");
  out.m = static_cast<int>(out.pi.size());
  if (!doc["trans"].is_array()) fail(ErrorKind::MalformedInput, "\"trans\" must be an array of rows");
  for (const auto& row : doc["trans"]) out.trans.push_back(read_floats(row, "trans"));
  if (static_cast<int>(out.trans.size()) != out.m) fail(ErrorKind::MalformedInput, "\"trans\" must be m x m");
  for (const auto& row : out.trans) {
    if (static_cast<int>(row.size()) != out.m) fail(ErrorKind::MalformedInput, "\"trans\" must be m x m");
  }
  out.lambda = doc["lambda"].get<double>();
  out.theta = doc["theta"].get<double>();
  out.entropy = doc["entropy"].get<double>();
  return out;
}

}  // namespace shiftlab
