#pragma once
/**
 * @file record.hpp
 * @brief One `object <tag> { key=value ... }` line of a scene snapshot.
 *
 * Values never contain spaces: reals are printed with six decimals, lists are
 * comma separated, and free text is percent-encoded.
 */

#include <charconv>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "movekit/error.hpp"
#include "movekit/geometry.hpp"

namespace movekit {

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    const bool plain = (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                       c == '-' || c == '_' || c == '.' || c == '+' || c == '*' || c == '/' ||
                       c == '^' || c == '(' || c == ')';
    if (plain) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

inline std::optional<std::string> percent_decode(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 2 >= text.size()) return std::nullopt;
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + i + 3, value, 16);
    if (ec != std::errc{} || ptr != text.data() + i + 3) return std::nullopt;
    out.push_back(static_cast<char>(value));
    i += 2;
  }
  return out;
}

class Record {
 public:
  Record() = default;
  explicit Record(std::string tag, int line = 0) : tag_(std::move(tag)), line_(line) {}

  const std::string& tag() const { return tag_; }
  int line() const { return line_; }
  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

  void put_raw(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
  }
  void put(const std::string& key, double v) { put_raw(key, format_real(v)); }
  void put_int(const std::string& key, long long v) { put_raw(key, std::to_string(v)); }
  void put_bool(const std::string& key, bool v) { put_raw(key, v ? "1" : "0"); }
  void put_text(const std::string& key, std::string_view v) { put_raw(key, percent_encode(v)); }
  void put_point(const std::string& key, Point2 p) {
    put_raw(key, format_real(p.x) + "," + format_real(p.y));
  }
  void put_rect(const std::string& key, const Rect& r) {
    put_raw(key, format_real(r.left) + "," + format_real(r.top) + "," + format_real(r.width) + "," +
                     format_real(r.height));
  }
  void put_reals(const std::string& key, std::span<const double> vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) s.push_back(',');
      s += format_real(vs[i]);
    }
    put_raw(key, s.empty() ? "-" : s);
  }
  void put_points(const std::string& key, std::span<const Point2> ps) {
    std::vector<double> flat;
    for (const auto& p : ps) {
      flat.push_back(p.x);
      flat.push_back(p.y);
    }
    put_reals(key, flat);
  }

  bool has(std::string_view key) const { return find(key) != nullptr; }

  const std::string& raw(std::string_view key) const {
    const std::string* v = find(key);
    if (!v) fail("missing key '" + std::string(key) + "'");
    return *v;
  }
  double real(std::string_view key) const { return parse_real(raw(key), key); }
  double real_or(std::string_view key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }
  long long integer(std::string_view key) const {
    const auto& s = raw(key);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail("bad integer for '" + std::string(key) + "'");
    return v;
  }
  long long integer_or(std::string_view key, long long fallback) const {
    return has(key) ? integer(key) : fallback;
  }
  bool boolean(std::string_view key) const {
    const auto& s = raw(key);
    if (s == "1") return true;
    if (s == "0") return false;
    fail("bad boolean for '" + std::string(key) + "'");
  }
  bool boolean_or(std::string_view key, bool fallback) const {
    return has(key) ? boolean(key) : fallback;
  }
  std::string text(std::string_view key) const {
    auto v = percent_decode(raw(key));
    if (!v) fail("bad text for '" + std::string(key) + "'");
    return *v;
  }
  std::vector<double> reals(std::string_view key) const {
    const auto& s = raw(key);
    std::vector<double> out;
    if (s == "-") return out;
    std::size_t start = 0;
    while (start <= s.size()) {
      const auto comma = s.find(',', start);
      const auto end = comma == std::string::npos ? s.size() : comma;
      out.push_back(parse_real(std::string_view(s).substr(start, end - start), key));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }
  Point2 point(std::string_view key) const {
    const auto v = reals(key);
    if (v.size() != 2) fail("expected a point for '" + std::string(key) + "'");
    return {v[0], v[1]};
  }
  Rect rect(std::string_view key) const {
    const auto v = reals(key);
    if (v.size() != 4) fail("expected a rectangle for '" + std::string(key) + "'");
    return {v[0], v[1], v[2], v[3]};
  }
  std::vector<Point2> points(std::string_view key) const {
    const auto v = reals(key);
    if (v.size() % 2 != 0) fail("odd coordinate count for '" + std::string(key) + "'");
    std::vector<Point2> out;
    for (std::size_t i = 0; i < v.size(); i += 2) out.push_back({v[i], v[i + 1]});
    return out;
  }

  std::string to_line() const {
    std::string s = "object " + tag_ + " {";
    for (const auto& [k, v] : fields_) {
      s.push_back(' ');
      s += k;
      s.push_back('=');
      s += v;
    }
    s += " }";
    return s;
  }

  /// Parses one record line; `line` is reported in errors.
  static Record parse_line(std::string_view text, int line) {
    auto fail_at = [line](const std::string& msg) -> Record {
      throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
    };
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
      if (i >= text.size()) break;
      const std::size_t start = i;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') ++i;
      tokens.push_back(text.substr(start, i - start));
    }
    if (tokens.size() < 4 || tokens[0] != "object" || tokens[2] != "{" || tokens.back() != "}")
      return fail_at("expected 'object <tag> { key=value ... }'");
    Record r(std::string(tokens[1]), line);
    for (std::size_t t = 3; t + 1 < tokens.size(); ++t) {
      const auto eq = tokens[t].find('=');
      if (eq == std::string_view::npos || eq == 0) return fail_at("malformed field '" + std::string(tokens[t]) + "'");
      r.put_raw(std::string(tokens[t].substr(0, eq)), std::string(tokens[t].substr(eq + 1)));
    }
    return r;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_) + ": " + tag_ + ": " + msg);
  }

 private:
  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : fields_)
      if (k == key) return &v;
    return nullptr;
  }

  double parse_real(std::string_view s, std::string_view key) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail("bad real for '" + std::string(key) + "'");
    return v;
  }

  std::string tag_;
  int line_{0};
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace movekit
