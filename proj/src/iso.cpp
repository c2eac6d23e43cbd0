#include "qnet/iso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnet/graph.hpp"

namespace qnet::iso {

void validate(const IsotropicParams& params) {
  if (params.d < 2) throw Error("isotropic dimension must be >= 2");
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw Error("visibility must lie in [0,1]");
}

double separability_threshold(int d) {
  if (d < 2) throw Error("isotropic dimension must be >= 2");
  return 1.0 / (d + 1);
}

double bsa(const IsotropicParams& params) {
  validate(params);
  if (params.p < separability_threshold(params.d)) return 1.0;
  return (params.d + 1) * (1.0 - params.p) / params.d;
}

double cascade_visibility(double p, int L) {
  if (L < 1) throw Error("cascade needs a path of length >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("visibility must lie in [0,1]");
  return std::pow(p, std::exp2(static_cast<double>(L - 1)));
}

ExponentModel ExponentModel::parse(const std::string& text) {
  if (text == "hashing") return hashing();
  if (text.rfind("fixed:", 0) == 0) {
    double v;
    try {
      v = std::stod(text.substr(6));
    } catch (...) {
      throw Error("bad exponent model '" + text + "'");
    }
    if (v < 0) throw Error("fixed exponent must be >= 0");
    return fixed_value(v);
  }
  throw Error("unknown exponent model '" + text + "' (hashing | fixed:<value>)");
}

std::string ExponentModel::name() const {
  if (kind == Kind::Hashing) return "hashing";
  return "fixed:" + std::to_string(fixed);
}

double hashing_exponent(const IsotropicParams& params) {
  validate(params);
  const double d2 = static_cast<double>(params.d) * params.d;
  const double q1 = params.p + (1.0 - params.p) / d2;
  const double q0 = (1.0 - params.p) / d2;
  const double logd = std::log(static_cast<double>(params.d));
  double entropy = 0.0;
  if (q1 > 0) entropy -= q1 * std::log(q1) / logd;
  if (q0 > 0) entropy -= (d2 - 1.0) * q0 * std::log(q0) / logd;
  return std::max(0.0, 1.0 - entropy);
}

double exponent(const IsotropicParams& params, const ExponentModel& model) {
  if (model.kind == ExponentModel::Kind::Fixed) return model.fixed;
  return hashing_exponent(params);
}

double distillation_log_epsilon(long long m, const IsotropicParams& params,
                                const ExponentModel& model) {
  if (m < 1) throw Error("distillation bound needs m >= 1");
  const double e = exponent(params, model);
  const double d2 = static_cast<double>(params.d) * params.d;
  return std::log(2.0) + 2.0 * (d2 - 1.0) * std::log(static_cast<double>(m) + 1.0) -
         e * static_cast<double>(m) * std::log(static_cast<double>(params.d));
}

double distillation_fidelity_bound(long long m, const IsotropicParams& params,
                                   const ExponentModel& model) {
  const double log_eps = distillation_log_epsilon(m, params, model);
  if (log_eps >= 0.0) return 0.0;  // epsilon clipped at 1
  return 1.0 - std::exp(log_eps);
}

double bs_fidelity_cap(long long n_parties) {
  if (n_parties < 2) throw Error("fidelity cap needs N >= 2");
  return 1.0 - 1.0 / static_cast<double>(n_parties);
}

double tensor_bsa_upper(const IsotropicParams& params, long long copies) {
  if (copies < 1) throw Error("tensor bound needs copies >= 1");
  return bsa(params);
}

}  // namespace qnet::iso
