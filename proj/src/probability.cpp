#include "globalcube/probability.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "globalcube/errors.hpp"

namespace globalcube {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Parses [+-]digits[.digits][(e|E)[+-]digits] exactly.
std::optional<mpq_class> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) return std::nullopt;
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(s)) return std::nullopt;
    digits = std::string(s);
  } else {
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      return std::nullopt;
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  }
  mpz_class mantissa(digits, 10);
  mpq_class out(mantissa);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0)
    out *= scale;
  else
    out /= scale;
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!std::isfinite(value)) throw PreconditionError("probability must be finite");
}

Probability::Probability(const mpq_class& exact) : value_(exact.get_d()), exact_(exact) {
  exact_->canonicalize();
}

Probability Probability::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_decimal(text.substr(0, slash));
    auto den = parse_decimal(text.substr(slash + 1));
    if (!num || !den || *den == 0)
      throw ParseError("malformed rational '" + std::string(text) + "'");
    return Probability(mpq_class(*num / *den));
  }
  auto value = parse_decimal(text);
  if (!value) throw ParseError("malformed number '" + std::string(text) + "'");
  return Probability(*value);
}

std::string Probability::to_string() const {
  if (exact_) return rational_to_string(*exact_);
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

BiasedMeasure::BiasedMeasure(double p) : BiasedMeasure(Probability(p)) {}

BiasedMeasure::BiasedMeasure(const Probability& p) : prob_(p) {
  bool ok = p.exact() ? (*p.exact() > 0 && *p.exact() < 1) : (p.value() > 0.0 && p.value() < 1.0);
  if (!ok) throw PreconditionError("bias p must satisfy 0 < p < 1, got " + p.to_string());
}

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace globalcube
