#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace globalcube {

/// A probability value that remembers its exact rational form when it has
/// one. Decimal strings ("0.25") and fractions ("7/27") both parse exactly;
/// values built from a double carry no rational.
class Probability {
 public:
  explicit Probability(double value);
  explicit Probability(const mpq_class& exact);

  static Probability parse(std::string_view text);

  double value() const { return value_; }
  const std::optional<mpq_class>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  std::string to_string() const;

 private:
  double value_;
  std::optional<mpq_class> exact_;
};

/// The p-biased product measure on {0,1}^n. 0 < p < 1 strictly.
class BiasedMeasure {
 public:
  explicit BiasedMeasure(double p);
  explicit BiasedMeasure(const Probability& p);

  double p() const { return prob_.value(); }
  const Probability& probability() const { return prob_; }
  const std::optional<mpq_class>& exact() const { return prob_.exact(); }

 private:
  Probability prob_;
};

std::string rational_to_string(const mpq_class& q);

}  // namespace globalcube
