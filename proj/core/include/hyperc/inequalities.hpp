#pragma once

// Globalness certificates and the hypercontractivity / level-d checkers.
//
// Checkers never throw when a theorem's hypothesis fails on the given input:
// both sides are still evaluated and the report is flagged out_of_hypothesis.
// They do throw DomainError for inputs outside the operation's domain (a
// non-Boolean table where one is required, rho outside the allowed range, ...).
// log is the natural logarithm and (anything)^0 = 1 throughout.

#include <optional>

#include "hyperc/report.hpp"
#include "hyperc/space.hpp"

namespace hyperc {

enum class GlobalnessKind { derivative, restriction };

const char* to_string(GlobalnessKind k) noexcept;

/// Minimal r such that norm(S, x) <= r^{|S|} gamma for every |S| <= depth,
/// where norm is ||D_{S,x} f||_p or ||f_{S->x}||_p.
struct GlobalnessCertificate {
  GlobalnessKind kind = GlobalnessKind::derivative;
  double norm_p = 2.0;
  int depth = 0;
  /// +inf when ||f||_p > gamma (then the witness is S = {}).
  double r = 0.0;
  double gamma = 1.0;
  Witness witness;
  /// The norm attained at the witness.
  double witness_norm = 0.0;

  bool bounded() const noexcept;
};

/// Exhaustive over all (S, x) with |S| <= d. Ties (relative 1e-12) go to the
/// smallest (mask, x) in lexicographic order. Throws DomainError unless
/// gamma > 0, p >= 1 and 0 <= d <= n.
GlobalnessCertificate certify_derivative_global(const FunctionTable& f, double norm_p, int d,
                                                double gamma);
GlobalnessCertificate certify_restriction_global(const FunctionTable& f, double norm_p, int d,
                                                 double gamma);

/// Restriction globalness with (r, gamma, d) implies derivative globalness with (2r, gamma, d).
InequalityReport check_restriction_implies_derivative(const FunctionTable& f, double norm_p, int d,
                                                      const CheckOptions& opts = {});

/// ||T_{rho/sqrt q} f||_q^q <= sum_S beta^{q|S|} q^{-q|S|/2} E_x ||D_{S,x} f||_2^q.
InequalityReport check_derivative_norm_bound(const FunctionTable& f, double rho, double q,
                                             const CheckOptions& opts = {});

/// ||T_rho f||_q <= ||f||_2 at rho = 1/sqrt(q-1); uniform bits only.
InequalityReport check_classical_hyper(const FunctionTable& f, double q,
                                       const CheckOptions& opts = {});

enum class GlobalHyperVariant {
  /// Restriction-global form: rho = log q / (32 r q), ||T_rho f||_q <= ||f||_2.
  main,
  /// Derivative-global form with rho = rho'/sqrt(2q), rho' maximal subject to
  /// rho' <= 1/3 and beta(rho') <= sqrt(q) (r/sqrt 2)^{-(q-2)/q}.
  alt,
  /// rho = min(1/(r^{(q-2)/q} q), 1/sqrt q) / (3 sqrt 2).
  cor_small_rho,
  /// r > 1, rho = log q / (16 r q).
  cor_large_q,
};

const char* to_string(GlobalHyperVariant v) noexcept;
std::optional<GlobalHyperVariant> parse_global_hyper_variant(std::string_view name);

/// The variant's noise rate for the given r and q.
double global_hyper_rho(GlobalHyperVariant v, double r, double q);

/// Certifies globalness internally (restriction for main, derivative for the
/// others, L2, full depth, gamma = ||f||_2).
InequalityReport check_global_hyper(const FunctionTable& f, double q, GlobalHyperVariant variant,
                                    const CheckOptions& opts = {});
/// Uses a caller-supplied derivative certificate (variants other than main).
InequalityReport check_global_hyper(const FunctionTable& f, double q, GlobalHyperVariant variant,
                                    const GlobalnessCertificate& cert, const CheckOptions& opts = {});

/// ||f^{=d}||_2^2 <= E[f]^2 (2200 r^2 log(1/E[f]) / d)^d for Boolean f, with
/// r the restriction-expectation ratio at depth d, clamped to > 1.
InequalityReport check_level_d(const FunctionTable& f, int d, const CheckOptions& opts = {});

/// ||f^{=d}||_2^2 <= gamma1^2 (2200 r^2 log(gamma2/gamma1) / d)^d with r the
/// larger of the L1 (gamma1) and L2 (gamma2) restriction ratios. Throws
/// DomainError unless gamma2 > gamma1 > 0.
InequalityReport check_level_d_general(const FunctionTable& f, int d, double gamma1, double gamma2,
                                       const CheckOptions& opts = {});
/// As above with gamma1 = ||f||_1, gamma2 = ||f||_2; flags out_of_hypothesis
/// instead of throwing when gamma2 <= gamma1.
InequalityReport check_level_d_general(const FunctionTable& f, int d, const CheckOptions& opts = {});

struct LevelGlobalness {
  double r_prime = 0.0;
  double gamma_prime = 0.0;
};

/// r'_d = sqrt(d / log(gamma2/gamma1)), gamma'_d = (33 r / sqrt d)^d gamma1 log^{d/2}(gamma2/gamma1),
/// with (r'_0, gamma'_0) = (0, gamma1). Throws DomainError unless r >= 1,
/// gamma2 > gamma1 > 0 and 0 <= d <= log(gamma2/gamma1)/2.
LevelGlobalness level_globalness_params(double r, double gamma1, double gamma2, int d);

/// Checks that f^{=d} is (r'_d, gamma'_d)-L2-global, with r taken from the L1
/// and L2 derivative certificates of f at depth d (gamma1 = ||f||_1, gamma2 = ||f||_2).
InequalityReport check_level_globalness(const FunctionTable& f, int d, const CheckOptions& opts = {});

/// ||f^{=d}||_2^2 <= (33 r / d)^d gamma1 gamma log^d(gamma2/gamma1) where
/// f^{=d} is (r, gamma)-L2-global, gamma1 = ||f||_1, gamma2 = ||f||_2 and
/// gamma = ||f^{=d}||_2. r is the certified minimum raised to
/// sqrt(d / log(gamma2/gamma1)) when smaller.
InequalityReport check_level_given_global(const FunctionTable& f, int d,
                                          const CheckOptions& opts = {});

/// ||f^{=d}||_q <= gamma (400 r sqrt q sqrt(max(log(1/gamma), q)))^d for
/// Boolean f with gamma = E[f] and r the restriction-expectation ratio (> 1).
InequalityReport check_qnorm_level(const FunctionTable& f, int d, double q,
                                   const CheckOptions& opts = {});

}  // namespace hyperc
