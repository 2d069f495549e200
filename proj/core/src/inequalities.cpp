#include "hyperc/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hyperc/constants.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/gaussian.hpp"
#include "hyperc/numeric.hpp"
#include "hyperc/operators.hpp"
#include "sweep.hpp"

namespace hyperc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// r > 1 hypotheses are met by raising r to at least this value; globalness
// with a smaller r implies globalness with a larger one.
constexpr double kRAboveOne = 1.0 + 1e-9;

void require_boolean(const FunctionTable& f, const char* who) {
  if (!f.is_boolean()) throw DomainError(std::string(who) + " requires a {0,1}-valued table");
}

void require_q(double q, double min_q = 2.0) {
  if (!(q >= min_q) || !std::isfinite(q)) {
    throw DomainError("q must be finite and >= " + std::to_string(min_q));
  }
}

// Tracks the (S, x) with the least slack rhs + tol - lhs across a sweep.
class WorstPair {
 public:
  explicit WorstPair(const CheckOptions& opts) : opts_(opts) {}

  void offer(SubsetMask s, const Assignment& x, double lhs, double rhs) {
    double slack = rhs + default_tolerance(rhs, opts_) - lhs;
    if (std::isnan(slack)) slack = kInf;
    if (!have_ || slack < slack_) {
      have_ = true;
      slack_ = slack;
      lhs_ = lhs;
      rhs_ = rhs;
      witness_ = Witness{s, x};
    }
  }

  void write(InequalityReport& rep) const {
    rep.lhs = lhs_;
    rep.rhs = rhs_;
    rep.witness = witness_;
  }

 private:
  const CheckOptions& opts_;
  bool have_ = false;
  double slack_ = 0.0;
  double lhs_ = 0.0;
  double rhs_ = 0.0;
  Witness witness_;
};

InequalityReport zero_function_report(const char* id, const CheckOptions& opts) {
  InequalityReport rep;
  rep.theorem_id = id;
  rep.set("zero_function", 1.0);
  finalize(rep, opts);
  return rep;
}

// x^d with the 0^0 = 1 convention and 0 * inf treated as 0 (the bound is
// then attained by the zero function only).
double level_bound(double scale, double base, int d) {
  if (d == 0) return scale;
  if (scale == 0.0) return 0.0;
  return scale * std::pow(base, d);
}

}  // namespace

InequalityReport check_restriction_implies_derivative(const FunctionTable& f, double norm_p, int d,
                                                      const CheckOptions& opts) {
  const double gamma = lp_norm(f, norm_p);
  if (gamma == 0.0) return zero_function_report("restriction_implies_derivative", opts);
  const GlobalnessCertificate cert = certify_restriction_global(f, norm_p, d, gamma);
  InequalityReport rep;
  rep.theorem_id = "restriction_implies_derivative";
  WorstPair worst(opts);
  detail::for_each_derivative(f, 0, d, [&](SubsetMask s, const Assignment& x, const FunctionTable& g) {
    worst.offer(s, x, lp_norm(g, norm_p), pow0(2.0 * cert.r, s.size()) * gamma);
  });
  worst.write(rep);
  rep.set("norm_p", norm_p);
  rep.set("d", d);
  rep.set("r", cert.r);
  rep.set("derivative_r", 2.0 * cert.r);
  rep.set("gamma", gamma);
  finalize(rep, opts);
  return rep;
}

InequalityReport check_derivative_norm_bound(const FunctionTable& f, double rho, double q,
                                             const CheckOptions& opts) {
  if (!(rho >= 0.0 && rho <= 1.0 / 3.0 + 1e-15)) throw DomainError("derivative bound needs rho in [0, 1/3]");
  require_q(q);
  const double beta = beta_rate(rho, q);
  InequalityReport rep;
  rep.theorem_id = "derivative_norm_bound";
  rep.lhs = lp_norm_pow(noise_resample(f, rho / std::sqrt(q)), q);
  const ProductSpace& sp = f.domain().space();
  CompensatedSum rhs;
  SubsetMask current;
  CompensatedSum inner;
  bool first = true;
  auto flush = [&](SubsetMask s) {
    rhs += pow0(beta, q * s.size()) * pow0(q, -q * s.size() / 2.0) * inner.value();
  };
  detail::for_each_derivative(f, 0, f.domain().n(), [&](SubsetMask s, const Assignment& x, const FunctionTable& g) {
    if (!first && s != current) {
      flush(current);
      inner = CompensatedSum{};
    }
    first = false;
    current = s;
    inner += assignment_weight(sp, x) * std::pow(lp_norm(g, 2.0), q);
  });
  flush(current);
  rep.rhs = rhs.value();
  rep.set("rho", rho);
  rep.set("noise_rate", rho / std::sqrt(q));
  rep.set("q", q);
  rep.set("beta", beta);
  finalize(rep, opts);
  return rep;
}

InequalityReport check_classical_hyper(const FunctionTable& f, double q, const CheckOptions& opts) {
  const Domain& d = f.domain();
  if (d.k() != 2 || !d.space().is_uniform(1e-12)) {
    throw DomainError("classical hypercontractivity needs uniform weights on {0,1}");
  }
  require_q(q);
  const double rho = 1.0 / std::sqrt(q - 1.0);
  InequalityReport rep;
  rep.theorem_id = "classical_hyper";
  rep.lhs = lp_norm(noise_resample(f, rho), q);
  rep.rhs = lp_norm(f, 2.0);
  rep.set("q", q);
  rep.set("rho", rho);
  finalize(rep, opts);
  return rep;
}

const char* to_string(GlobalHyperVariant v) noexcept {
  switch (v) {
    case GlobalHyperVariant::main: return "main";
    case GlobalHyperVariant::alt: return "alt";
    case GlobalHyperVariant::cor_small_rho: return "cor_small_rho";
    case GlobalHyperVariant::cor_large_q: return "cor_large_q";
  }
  return "unknown";
}

std::optional<GlobalHyperVariant> parse_global_hyper_variant(std::string_view name) {
  for (auto v : {GlobalHyperVariant::main, GlobalHyperVariant::alt, GlobalHyperVariant::cor_small_rho,
                 GlobalHyperVariant::cor_large_q}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

namespace {

// Largest rho' in (0, 1/3] with beta(rho') <= bound; beta is increasing in rho'.
double max_rho_prime(double q, double bound) {
  const double top = 1.0 / 3.0;
  if (beta_rate(top, q) <= bound) return top;
  double lo = 0.0;
  double hi = top;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    (beta_rate(mid, q) <= bound ? lo : hi) = mid;
  }
  return lo;
}

double alt_beta_bound(double r, double q) {
  if (r == 0.0) return kInf;
  return std::sqrt(q) * std::pow(r / std::sqrt(2.0), -(q - 2.0) / q);
}

}  // namespace

double global_hyper_rho(GlobalHyperVariant v, double r, double q) {
  switch (v) {
    case GlobalHyperVariant::main:
      return std::min(1.0, std::log(q) / (constants::kGlobalHyperMain * r * q));
    case GlobalHyperVariant::alt:
      return max_rho_prime(q, alt_beta_bound(r, q)) / std::sqrt(2.0 * q);
    case GlobalHyperVariant::cor_small_rho: {
      const double rq = r == 0.0 ? 0.0 : std::pow(r, (q - 2.0) / q);
      const double first = rq == 0.0 ? kInf : 1.0 / (rq * q);
      return std::min(first, 1.0 / std::sqrt(q)) / (3.0 * std::sqrt(2.0));
    }
    case GlobalHyperVariant::cor_large_q:
      return std::min(1.0, std::log(q) / (constants::kGlobalHyperLargeQ * std::max(r, kRAboveOne) * q));
  }
  return 0.0;
}

InequalityReport check_global_hyper(const FunctionTable& f, double q, GlobalHyperVariant variant,
                                    const CheckOptions& opts) {
  require_q(q);
  const double gamma = lp_norm(f, 2.0);
  const std::string id = std::string("global_hyper_") + to_string(variant);
  if (gamma == 0.0) {
    InequalityReport rep = zero_function_report(id.c_str(), opts);
    rep.set("q", q);
    return rep;
  }
  const int n = f.domain().n();
  if (variant != GlobalHyperVariant::main) {
    return check_global_hyper(f, q, variant, certify_derivative_global(f, 2.0, n, gamma), opts);
  }
  const GlobalnessCertificate cert = certify_restriction_global(f, 2.0, n, gamma);
  const double rho = global_hyper_rho(variant, cert.r, q);
  InequalityReport rep;
  rep.theorem_id = id;
  rep.lhs = lp_norm(noise_resample(f, rho), q);
  rep.rhs = gamma;
  rep.set("q", q);
  rep.set("rho", rho);
  rep.set("r", cert.r);
  rep.set("gamma", gamma);
  rep.set("constant", constants::kGlobalHyperMain);
  rep.witness = cert.witness;
  rep.out_of_hypothesis = cert.r < 1.0 - 1e-9;
  finalize(rep, opts);
  return rep;
}

InequalityReport check_global_hyper(const FunctionTable& f, double q, GlobalHyperVariant variant,
                                    const GlobalnessCertificate& cert, const CheckOptions& opts) {
  require_q(q);
  if (variant == GlobalHyperVariant::main) {
    throw DomainError("the main variant certifies restriction globalness itself");
  }
  if (cert.kind != GlobalnessKind::derivative || cert.norm_p != 2.0) {
    throw DomainError("global hypercontractivity needs an L2 derivative certificate");
  }
  const std::string id = std::string("global_hyper_") + to_string(variant);
  InequalityReport rep;
  rep.theorem_id = id;
  const double r = cert.r;
  rep.set("q", q);
  rep.set("r", r);
  rep.set("gamma", cert.gamma);
  rep.witness = cert.witness;
  const bool full_depth = cert.depth == f.domain().n();
  if (!cert.bounded()) {
    // ||f||_2 > gamma: no admissible rho, the conclusion says nothing.
    rep.vacuous = true;
    rep.lhs = lp_norm_pow(f, q);
    rep.rhs = kInf;
    finalize(rep, opts);
    return rep;
  }
  const double rho = global_hyper_rho(variant, r, q);
  if (variant == GlobalHyperVariant::alt) {
    const double rho_prime = rho * std::sqrt(2.0 * q);
    rep.set("rho_prime", rho_prime);
    rep.set("beta", beta_rate(rho_prime, q));
    rep.set("beta_bound", alt_beta_bound(r, q));
  }
  if (variant == GlobalHyperVariant::cor_large_q) {
    rep.set("r_used", std::max(r, kRAboveOne));
    rep.set("constant", constants::kGlobalHyperLargeQ);
  }
  rep.set("rho", rho);
  rep.lhs = lp_norm_pow(noise_resample(f, rho), q);
  rep.rhs = lp_norm_pow(f, 2.0) * std::pow(cert.gamma, q - 2.0);
  rep.out_of_hypothesis = !(q > 2.0) || !full_depth;
  finalize(rep, opts);
  return rep;
}

InequalityReport check_level_d(const FunctionTable& f, int d, const CheckOptions& opts) {
  require_boolean(f, "level_d");
  const int n = f.domain().n();
  if (d < 0 || d > n) throw DomainError("level outside [0, n]");
  const double alpha = expectation(f);
  InequalityReport rep;
  rep.theorem_id = "level_d";
  rep.lhs = lp_norm_pow(level_part(f, d), 2.0);
  rep.set("d", d);
  rep.set("alpha", alpha);
  rep.set("constant", constants::kLevelD);
  if (alpha == 0.0) {
    rep.rhs = 0.0;
    finalize(rep, opts);
    return rep;
  }
  const GlobalnessCertificate cert = certify_restriction_global(f, 1.0, d, alpha);
  const double r = std::max(cert.r, kRAboveOne);
  const double log_inv = std::log(1.0 / alpha);
  rep.rhs = level_bound(alpha * alpha, constants::kLevelD * r * r * log_inv / d, d);
  rep.set("r", cert.r);
  rep.set("r_used", r);
  rep.set("log_inv_alpha", log_inv);
  rep.set("max_d", 0.25 * log_inv);
  rep.witness = cert.witness;
  rep.out_of_hypothesis = d > 0.25 * log_inv;
  finalize(rep, opts);
  return rep;
}

namespace {

InequalityReport level_d_general_impl(const FunctionTable& f, int d, double gamma1, double gamma2,
                                      const CheckOptions& opts) {
  InequalityReport rep;
  rep.theorem_id = "level_d_general";
  rep.lhs = lp_norm_pow(level_part(f, d), 2.0);
  rep.set("d", d);
  rep.set("gamma1", gamma1);
  rep.set("gamma2", gamma2);
  rep.set("constant", constants::kLevelD);
  if (!(gamma1 > 0.0) || !(gamma2 > gamma1)) {
    // Ordering fails: the log factor is taken as 0 and the report flagged.
    rep.out_of_hypothesis = true;
    rep.rhs = level_bound(gamma1 * gamma1, 0.0, d);
    finalize(rep, opts);
    return rep;
  }
  const auto c1 = certify_restriction_global(f, 1.0, d, gamma1);
  const auto c2 = certify_restriction_global(f, 2.0, d, gamma2);
  const double r_raw = std::max(c1.r, c2.r);
  const double r = std::max(r_raw, kRAboveOne);
  const double log_ratio = std::log(gamma2 / gamma1);
  rep.rhs = std::isfinite(r) ? level_bound(gamma1 * gamma1, constants::kLevelD * r * r * log_ratio / d, d)
                             : kInf;
  rep.set("r_l1", c1.r);
  rep.set("r_l2", c2.r);
  rep.set("r_used", r);
  rep.set("log_ratio", log_ratio);
  rep.witness = c1.r >= c2.r ? c1.witness : c2.witness;
  rep.out_of_hypothesis = !std::isfinite(r) || d > 0.5 * log_ratio;
  finalize(rep, opts);
  return rep;
}

}  // namespace

InequalityReport check_level_d_general(const FunctionTable& f, int d, double gamma1, double gamma2,
                                       const CheckOptions& opts) {
  if (d < 0 || d > f.domain().n()) throw DomainError("level outside [0, n]");
  if (!(gamma1 > 0.0) || !(gamma2 > gamma1)) throw DomainError("need gamma2 > gamma1 > 0");
  return level_d_general_impl(f, d, gamma1, gamma2, opts);
}

InequalityReport check_level_d_general(const FunctionTable& f, int d, const CheckOptions& opts) {
  if (d < 0 || d > f.domain().n()) throw DomainError("level outside [0, n]");
  const double g1 = lp_norm(f, 1.0);
  if (g1 == 0.0) return zero_function_report("level_d_general", opts);
  return level_d_general_impl(f, d, g1, lp_norm(f, 2.0), opts);
}

namespace {

LevelGlobalness level_params_unchecked(double r, double gamma1, double log_ratio, int d) {
  if (d == 0) return {0.0, gamma1};
  const double dd = d;
  return {std::sqrt(dd / log_ratio),
          std::pow(constants::kLevelGlobal * r / std::sqrt(dd), dd) * gamma1 * std::pow(log_ratio, dd / 2.0)};
}

}  // namespace

LevelGlobalness level_globalness_params(double r, double gamma1, double gamma2, int d) {
  if (!(r >= 1.0)) throw DomainError("level globalness needs r >= 1");
  if (!(gamma1 > 0.0) || !(gamma2 > gamma1)) throw DomainError("need gamma2 > gamma1 > 0");
  const double log_ratio = std::log(gamma2 / gamma1);
  if (d < 0 || d > 0.5 * log_ratio) {
    throw DomainError("level globalness needs 0 <= d <= log(gamma2/gamma1)/2");
  }
  return level_params_unchecked(r, gamma1, log_ratio, d);
}

InequalityReport check_level_globalness(const FunctionTable& f, int d, const CheckOptions& opts) {
  const int n = f.domain().n();
  if (d < 0 || d > n) throw DomainError("level outside [0, n]");
  const double g1 = lp_norm(f, 1.0);
  const double g2 = lp_norm(f, 2.0);
  if (g1 == 0.0) return zero_function_report("level_globalness", opts);
  const auto c1 = certify_derivative_global(f, 1.0, d, g1);
  const auto c2 = certify_derivative_global(f, 2.0, d, g2);
  const double r = std::max({c1.r, c2.r, 1.0});
  const double log_ratio = std::log(g2 / g1);
  const LevelGlobalness lg = level_params_unchecked(r, g1, log_ratio, d);

  InequalityReport rep;
  rep.theorem_id = "level_globalness";
  WorstPair worst(opts);
  const FunctionTable level = level_part(f, d);
  detail::for_each_derivative(level, 0, n, [&](SubsetMask s, const Assignment& x, const FunctionTable& g) {
    double bound = pow0(lg.r_prime, s.size()) * lg.gamma_prime;
    if (std::isnan(bound)) bound = kInf;
    worst.offer(s, x, lp_norm(g, 2.0), bound);
  });
  worst.write(rep);
  rep.set("d", d);
  rep.set("r", r);
  rep.set("gamma1", g1);
  rep.set("gamma2", g2);
  rep.set("r_prime", lg.r_prime);
  rep.set("gamma_prime", lg.gamma_prime);
  rep.set("constant", constants::kLevelGlobal);
  rep.out_of_hypothesis = !(g2 > g1) || d > 0.5 * log_ratio;
  finalize(rep, opts);
  return rep;
}

InequalityReport check_level_given_global(const FunctionTable& f, int d, const CheckOptions& opts) {
  const int n = f.domain().n();
  if (d < 0 || d > n) throw DomainError("level outside [0, n]");
  const double g1 = lp_norm(f, 1.0);
  const double g2 = lp_norm(f, 2.0);
  if (g1 == 0.0) return zero_function_report("level_given_global", opts);
  const FunctionTable level = level_part(f, d);
  const double gamma = lp_norm(level, 2.0);
  InequalityReport rep;
  rep.theorem_id = "level_given_global";
  rep.lhs = gamma * gamma;
  rep.set("d", d);
  rep.set("gamma1", g1);
  rep.set("gamma2", g2);
  rep.set("gamma", gamma);
  rep.set("constant", constants::kLevelGlobal);
  const double log_ratio = std::log(g2 / g1);
  rep.set("log_ratio", log_ratio);
  rep.out_of_hypothesis = !(g2 > g1) || !(d < 0.5 * log_ratio);
  if (gamma == 0.0) {
    rep.rhs = 0.0;
    finalize(rep, opts);
    return rep;
  }
  const auto cert = certify_derivative_global(level, 2.0, n, gamma);
  const double r_floor = d == 0 ? 0.0 : std::sqrt(d / std::max(log_ratio, 0.0));
  const double r = std::max(cert.r, r_floor);
  rep.set("r", cert.r);
  rep.set("r_used", r);
  rep.witness = cert.witness;
  if (d == 0) {
    rep.rhs = g1 * gamma;
  } else {
    rep.rhs = std::pow(constants::kLevelGlobal * r / d, d) * g1 * gamma * std::pow(std::max(log_ratio, 0.0), d);
    if (std::isnan(rep.rhs)) rep.rhs = kInf;
  }
  finalize(rep, opts);
  return rep;
}

InequalityReport check_qnorm_level(const FunctionTable& f, int d, double q, const CheckOptions& opts) {
  require_boolean(f, "qnorm_level");
  require_q(q);
  const int n = f.domain().n();
  if (d < 0 || d > n) throw DomainError("level outside [0, n]");
  const double gamma = expectation(f);
  InequalityReport rep;
  rep.theorem_id = "qnorm_level";
  rep.lhs = lp_norm(level_part(f, d), q);
  rep.set("d", d);
  rep.set("q", q);
  rep.set("gamma", gamma);
  rep.set("constant", constants::kQNormLevel);
  if (gamma == 0.0) {
    rep.rhs = 0.0;
    finalize(rep, opts);
    return rep;
  }
  const auto cert = certify_restriction_global(f, 1.0, d, gamma);
  const double r = std::max(cert.r, kRAboveOne);
  const double log_inv = std::log(1.0 / gamma);
  rep.rhs = level_bound(gamma, constants::kQNormLevel * r * std::sqrt(q) * std::sqrt(std::max(log_inv, q)), d);
  rep.set("r", cert.r);
  rep.set("r_used", r);
  rep.set("case", d <= 0.25 * log_inv ? 1.0 : 2.0);
  rep.witness = cert.witness;
  finalize(rep, opts);
  return rep;
}

}  // namespace hyperc
