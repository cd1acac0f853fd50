#include <cctype>
#include <charconv>
#include <sstream>

#include "globalcube/cli.hpp"
#include "globalcube/errors.hpp"

namespace globalcube::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

long to_long(std::string_view s, const std::string& context) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) throw ParseError(context + ": '" + std::string(s) + "' is not an integer");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(number) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ParseError("config line " + std::to_string(number) + ": empty key");
    if (!out.emplace(key, value).second)
      throw ParseError("config line " + std::to_string(number) + ": key '" + key + "' repeated");
  }
  return out;
}

std::string format_config_text(const std::map<std::string, std::string>& values) {
  std::string out;
  for (const auto& [k, v] : values) out += k + " = " + v + "\n";
  return out;
}

std::vector<long> GridAxis::values() const {
  std::vector<long> out;
  for (long v = first; v <= last; v += step) out.push_back(v);
  return out;
}

std::vector<GridAxis> parse_grid(std::string_view text) {
  std::string s(text);
  for (auto& ch : s)
    if (ch == ';') ch = ' ';
  std::istringstream in(s);
  std::vector<GridAxis> axes;
  std::string item;
  while (in >> item) {
    const auto eq = item.find('=');
    const auto dots = item.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
      throw ParseError("grid axis '" + item + "' must look like name=first..last[:step]");
    GridAxis axis;
    axis.name = item.substr(0, eq);
    if (axis.name.empty()) throw ParseError("grid axis '" + item + "' has no name");
    const std::string range = item.substr(dots + 2);
    axis.first = to_long(std::string_view(item).substr(eq + 1, dots - eq - 1), "grid axis " + axis.name);
    const auto colon = range.find(':');
    axis.last = to_long(std::string_view(range).substr(0, colon), "grid axis " + axis.name);
    if (colon != std::string::npos) axis.step = to_long(std::string_view(range).substr(colon + 1), "grid axis " + axis.name);
    if (axis.step <= 0) throw ParseError("grid axis " + axis.name + ": step must be positive");
    if (axis.last < axis.first) throw ParseError("grid axis " + axis.name + ": empty range");
    for (const auto& other : axes)
      if (other.name == axis.name) throw ParseError("grid axis " + axis.name + " given twice");
    axes.push_back(axis);
  }
  if (axes.empty()) throw ParseError("empty grid");
  return axes;
}

bool Params::has(const std::string& key) const {
  const auto it = values_.find(key);
  return it != values_.end() && !it->second.empty();
}

const std::string& Params::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) throw ParseError("missing parameter --" + key);
  return it->second;
}

long Params::integer(const std::string& key) const { return to_long(text(key), "parameter --" + key); }

std::uint64_t Params::unsigned_integer(const std::string& key) const {
  const auto& s = text(key);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("parameter --" + key + ": '" + s + "' is not a non-negative integer");
  return v;
}

double Params::real(const std::string& key) const { return probability(key).value(); }

Probability Params::probability(const std::string& key) const {
  try {
    return Probability::parse(text(key));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("parameter --" + key + ": " + e.what());
  }
}

std::vector<long> Params::integer_list(const std::string& key) const {
  std::vector<long> out;
  for (const auto& v : split(text(key), ',')) out.push_back(to_long(v, "parameter --" + key));
  return out;
}

std::vector<double> Params::real_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& p : probability_list(key)) out.push_back(p.value());
  return out;
}

std::vector<Probability> Params::probability_list(const std::string& key) const {
  std::vector<Probability> out;
  for (const auto& v : split(text(key), ',')) {
    try {
      out.push_back(Probability::parse(v));
    } catch (const Error& e) {
      throw ParseError("parameter --" + key + ": " + e.what());
    }
  }
  return out;
}

}  // namespace globalcube::cli
