#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace shiftlab::cli {

using Json = nlohmann::ordered_json;

/// Pretty JSON with every float printed as %.17g; non-finite floats become
/// the strings "inf", "-inf" and "nan".
std::string dump(const Json& value);

std::string cell(double x);
std::string cell(std::int64_t x);
std::string cell(std::uint64_t x);
inline std::string cell(int x) { return cell(static_cast<std::int64_t>(x)); }
inline std::string cell(bool x) { return x ? "1" : "0"; }
inline std::string cell(const std::string& x) { return x; }
inline std::string cell(const char* x) { return x; }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  template <typename... T>
  void row(const T&... values) {
    add({cell(values)...});
  }
  std::string str() const { return text_; }

 private:
  void add(const std::vector<std::string>& cells);
  std::size_t columns_;
  std::string text_;
};

/// One polyline on linear axes, standalone SVG document.
std::string svg_curve(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& title,
                      const std::string& x_label, const std::string& y_label);

}  // namespace shiftlab::cli
