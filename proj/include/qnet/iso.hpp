#pragma once

#include <string>

namespace qnet::iso {

/// Local dimension d >= 2 and visibility p in [0,1] of an isotropic link
/// state p*phi+ + (1-p)*I/d^2.
struct IsotropicParams {
  int d = 2;
  double p = 1.0;
};

void validate(const IsotropicParams& params);

/// 1/(d+1): the state is entangled exactly above this visibility.
double separability_threshold(int d);

/// Best separable approximation weight: (d+1)(1-p)/d above the threshold,
/// 1 below it (the state itself is separable).
double bsa(const IsotropicParams& params);

/// Visibility after teleporting along a path of L edges with per-step
/// equalization: p^(2^(L-1)).
double cascade_visibility(double p, int L);

/// Distillation exponent model. The default derives the exponent from the
/// base-d von Neumann entropy of the isotropic spectrum; a fixed value can
/// be plugged in instead.
struct ExponentModel {
  enum class Kind { Hashing, Fixed };
  Kind kind = Kind::Hashing;
  double fixed = 0.0;

  static ExponentModel hashing() { return {}; }
  static ExponentModel fixed_value(double e) { return {Kind::Fixed, e}; }
  /// "hashing" or "fixed:<value>".
  static ExponentModel parse(const std::string& text);
  std::string name() const;
};

/// max(0, 1 - S_d(rho(p,d))) with S_d the entropy of the spectrum
/// {p + (1-p)/d^2 (once), (1-p)/d^2 (d^2-1 times)} in base-d logarithm.
double hashing_exponent(const IsotropicParams& params);

double exponent(const IsotropicParams& params, const ExponentModel& model);

/// ln of the distillation error term 2(m+1)^(2(d^2-1)) d^(-E m), unclipped.
double distillation_log_epsilon(long long m, const IsotropicParams& params,
                                const ExponentModel& model = {});

/// 1 - eps with eps = min(1, 2(m+1)^(2(d^2-1)) d^(-E m)); 0 when E = 0.
double distillation_fidelity_bound(long long m, const IsotropicParams& params,
                                   const ExponentModel& model = {});

/// No biseparable N-party state reaches average singlet fidelity above 1-1/N.
double bs_fidelity_cap(long long n_parties);

/// One-copy monotone bound on BSA(rho^(x copies)): equals bsa(params).
double tensor_bsa_upper(const IsotropicParams& params, long long copies);

}  // namespace qnet::iso
