#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "abcd/errors.hpp"

namespace abcd {

/// Which truncated power law is used: the integral ("continuous") form or k^-exponent.
enum class Variant { continuous, discrete };

inline std::string_view to_string(Variant v) {
  return v == Variant::continuous ? "continuous" : "discrete";
}

inline Variant parse_variant(std::string_view text) {
  if (text == "continuous") return Variant::continuous;
  if (text == "discrete") return Variant::discrete;
  throw RangeError("variant", "expected 'continuous' or 'discrete', got '" + std::string(text) + "'");
}

/// The eight model parameters plus the distribution variant.
struct AbcdParams {
  std::int64_t n = 0;
  double gamma = 0.0;  // degree exponent
  std::int64_t delta = 0;  // minimum degree
  double zeta = 0.0;  // maximum degree is floor(n^zeta)
  double beta = 0.0;  // community-size exponent
  std::int64_t s = 0;  // minimum community size
  double tau = 0.0;  // maximum community size is floor(n^tau)
  double xi = 0.0;  // noise level
  Variant variant = Variant::discrete;

  std::int64_t max_degree() const { return floor_power(n, zeta); }
  std::int64_t max_community_size() const { return floor_power(n, tau); }

  friend bool operator==(const AbcdParams&, const AbcdParams&) = default;

 private:
  static std::int64_t floor_power(std::int64_t base, double exponent) {
    const double v = std::pow(static_cast<double>(base), exponent);
    // Absorb pow() rounding when n^e is an exact integer, e.g. 10^6^(1/2).
    return static_cast<std::int64_t>(std::floor(v + 1e-9 * std::max(1.0, v)));
  }
};

/// Returns `p` unchanged when every range holds; otherwise throws RangeError for the first
/// violated constraint (checked in declaration order, then the derived cutoffs).
inline const AbcdParams& validate_params(const AbcdParams& p) {
  if (p.n < 1) throw RangeError("n", "must be a positive integer");
  if (!(p.gamma > 2.0 && p.gamma < 3.0)) throw RangeError("gamma", "must lie in (2, 3)");
  if (p.delta < 1) throw RangeError("delta", "must be a positive integer");
  const double zeta_cap = 1.0 / (p.gamma - 1.0);
  if (!(p.zeta > 0.0 && p.zeta <= zeta_cap + 1e-12))
    throw RangeError("zeta", "must lie in (0, 1/(gamma-1)]");
  if (!(p.beta > 1.0 && p.beta < 2.0)) throw RangeError("beta", "must lie in (1, 2)");
  if (p.s < p.delta + 1) throw RangeError("s", "must be at least delta+1");
  if (!(p.tau > p.zeta && p.tau < 1.0)) throw RangeError("tau", "must lie in (zeta, 1)");
  if (!(p.xi > 0.0 && p.xi < 1.0)) throw RangeError("xi", "must lie in (0, 1)");
  if (p.max_degree() < p.delta) throw RangeError("zeta", "floor(n^zeta) is below delta");
  if (p.max_community_size() < p.s) throw RangeError("tau", "floor(n^tau) is below s");
  return p;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

template <typename T>
std::string format_number(T value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

/// Parses `key=value` lines; `#` starts a comment line. Duplicate keys are errors.
/// Each entry remembers the line it came from.
inline std::map<std::string, std::pair<std::string, std::size_t>> parse_key_values(
    std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (!entries.emplace(key, std::make_pair(value, line_no)).second)
      throw ParseError(line_no, "duplicate key '" + key + "'");
  }
  return entries;
}

}  // namespace detail

/// Reads parameters from key=value text. Unknown and missing keys are ParseErrors;
/// `variant` may be omitted and defaults to discrete.
inline AbcdParams parse_config(std::istream& in) {
  auto entries = detail::parse_key_values(in);
  AbcdParams p;

  auto take = [&](const char* key) -> std::pair<std::string, std::size_t> {
    auto it = entries.find(key);
    if (it == entries.end()) throw ParseError(0, std::string("missing key '") + key + "'");
    auto entry = it->second;
    entries.erase(it);
    return entry;
  };
  auto integer = [&](const char* key) {
    auto [text, line] = take(key);
    auto v = detail::parse_number<std::int64_t>(text);
    if (!v) throw ParseError(line, std::string("malformed integer for '") + key + "': " + text);
    return *v;
  };
  auto real = [&](const char* key) {
    auto [text, line] = take(key);
    auto v = detail::parse_number<double>(text);
    if (!v) throw ParseError(line, std::string("malformed number for '") + key + "': " + text);
    return *v;
  };

  p.n = integer("n");
  p.gamma = real("gamma");
  p.delta = integer("delta");
  p.zeta = real("zeta");
  p.beta = real("beta");
  p.s = integer("s");
  p.tau = real("tau");
  p.xi = real("xi");
  if (auto it = entries.find("variant"); it != entries.end()) {
    const auto [text, line] = it->second;
    entries.erase(it);
    if (text != "continuous" && text != "discrete")
      throw ParseError(line, "variant must be 'continuous' or 'discrete'");
    p.variant = parse_variant(text);
  }
  if (!entries.empty()) {
    const auto& [key, entry] = *entries.begin();
    throw ParseError(entry.second, "unknown key '" + key + "'");
  }
  validate_params(p);
  return p;
}

inline AbcdParams load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  return parse_config(in);
}

/// Writes parameters in the config format; parse_config(render_config(p)) == p exactly.
inline std::string render_config(const AbcdParams& p) {
  std::ostringstream out;
  out << "n=" << p.n << '\n'
      << "gamma=" << detail::format_number(p.gamma) << '\n'
      << "delta=" << p.delta << '\n'
      << "zeta=" << detail::format_number(p.zeta) << '\n'
      << "beta=" << detail::format_number(p.beta) << '\n'
      << "s=" << p.s << '\n'
      << "tau=" << detail::format_number(p.tau) << '\n'
      << "xi=" << detail::format_number(p.xi) << '\n'
      << "variant=" << to_string(p.variant) << '\n';
  return out.str();
}

}  // namespace abcd
