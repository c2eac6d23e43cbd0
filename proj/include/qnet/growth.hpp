#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qnet {

/// Exact rational with small operands; enough for growth exponents.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num * b.den <= b.num * a.den;
  }
};

/// Symbolic growth form c * x^a * (log x)^b. Bounded quantities are the
/// (a=0, b=0) class. The log exponent may be negative (x / log x shows up for
/// chain families with logarithmic cluster counts).
struct GrowthExpr {
  Rational coeff{1};
  Rational power{0};
  int log_power = 0;

  static GrowthExpr bounded() { return GrowthExpr{Rational{1}, Rational{0}, 0}; }
  static GrowthExpr poly(Rational c, Rational a, int b = 0) { return GrowthExpr{c, a, b}; }
  static GrowthExpr logarithmic(Rational c = Rational{1}) { return GrowthExpr{c, Rational{0}, 1}; }

  bool is_bounded() const { return power == Rational{0} && log_power == 0; }
  bool tends_to_infinity() const {
    return Rational{0} < power || (power == Rational{0} && log_power > 0);
  }
  std::string str() const;
};

enum class GrowthRelation { little_o, theta, little_omega };

/// Lexicographic comparison of (power, log_power); coefficients never decide
/// o/omega, only which Theta class two expressions share.
GrowthRelation compare_growth(const GrowthExpr& a, const GrowthExpr& b);

/// log of a growth expression, defined when power > 0: log(c x^a log^b x)
/// grows as a * log x.
std::optional<GrowthExpr> log_of(const GrowthExpr& e);

std::string to_string(GrowthRelation r);

}  // namespace qnet
