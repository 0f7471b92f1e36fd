#include "shiftlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace shiftlab::cli {
namespace {

void dump_to(const Json& v, int indent, std::string& s) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        s += "{}";
        return;
      }
      s += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) s += ",\n";
        first = false;
        s += pad + Json(key).dump() + ": ";
        dump_to(item, indent + 2, s);
      }
      s += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        s += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); });
      s += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += flat ? ", " : ",\n";
        if (!flat) s += pad;
        dump_to(v[i], indent + 2, s);
      }
      s += flat ? "]" : "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      s += std::isfinite(x) ? cell(x) : "\"" + cell(x) + "\"";
      return;
    }
    default:
      s += v.dump();
  }
}

}  // namespace

std::string dump(const Json& value) {
  std::string s;
  dump_to(value, 0, s);
  return s + "\n";
}

std::string cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell(std::int64_t x) { return std::to_string(x); }
std::string cell(std::uint64_t x) { return std::to_string(x); }

Csv::Csv(std::vector<std::string> header) : columns_(header.size()) { add(header); }

void Csv::add(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

std::string svg_curve(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& title,
                      const std::string& x_label, const std::string& y_label) {
  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!xs.empty()) {
    std::tie(x0, x1) = std::pair{*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end())};
    std::tie(y0, y1) = std::pair{*std::min_element(ys.begin(), ys.end()), *std::max_element(ys.begin(), ys.end())};
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); };
  auto py = [&](double y) { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); };
  char buf[160];
  std::string s;
  std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\">\n", kW, kH);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"24\" font-size=\"16\">", kLeft);
  s += buf + title + "</text>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", kLeft, kH - kBottom,
                kW - kRight, kH - kBottom);
  s += buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", kLeft, kTop, kLeft,
                kH - kBottom);
  s += buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\">", kW / 2, kH - 12);
  s += buf + x_label + "</text>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"12\" y=\"%g\" font-size=\"12\">", kTop - 8);
  s += buf + y_label + "</text>\n";
  for (double y : {y0, y1}) {
    std::snprintf(buf, sizeof buf, "<text x=\"4\" y=\"%.2f\" font-size=\"10\">%.4g</text>\n", py(y), y);
    s += buf;
  }
  for (double x : {x0, x1}) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%g\" font-size=\"10\">%.4g</text>\n", px(x), kH - kBottom + 14, x);
    s += buf;
  }
  s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(xs[i]), py(ys[i]));
    s += buf;
  }
  s += "\"/>\n</svg>\n";
  return s;
}

}  // namespace shiftlab::cli
