#include "qnet/growth.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qnet {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string GrowthExpr::str() const {
  if (is_bounded()) return "O(1)";
  std::ostringstream out;
  if (!(coeff == Rational{1})) out << coeff.str() << "*";
  bool need_dot = false;
  if (!(power == Rational{0})) {
    out << "N";
    if (!(power == Rational{1})) out << "^(" << power.str() << ")";
    need_dot = true;
  }
  if (log_power != 0) {
    if (need_dot) out << "*";
    out << "log(N)";
    if (log_power != 1) out << "^" << log_power;
  }
  return out.str();
}

GrowthRelation compare_growth(const GrowthExpr& a, const GrowthExpr& b) {
  if (a.power < b.power) return GrowthRelation::little_o;
  if (b.power < a.power) return GrowthRelation::little_omega;
  if (a.log_power < b.log_power) return GrowthRelation::little_o;
  if (a.log_power > b.log_power) return GrowthRelation::little_omega;
  return GrowthRelation::theta;
}

std::optional<GrowthExpr> log_of(const GrowthExpr& e) {
  if (!(Rational{0} < e.power)) return std::nullopt;
  return GrowthExpr{e.power, Rational{0}, 1};
}

std::string to_string(GrowthRelation r) {
  switch (r) {
    case GrowthRelation::little_o: return "o";
    case GrowthRelation::theta: return "theta";
    case GrowthRelation::little_omega: return "omega";
  }
  return "?";
}

}  // namespace qnet
