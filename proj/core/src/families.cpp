#include "hyperc/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperc/constants.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/numeric.hpp"
#include "hyperc/operators.hpp"
#include "sweep.hpp"
#include "tensor_ops.hpp"

namespace hyperc {

namespace {

constexpr double kPairingTolerance = 1e-10;
constexpr double kRelTie = 1e-12;
// Level-1 coefficients below this are rounding noise of an exact zero.
constexpr double kCoefficientFloor = 1e-14;
constexpr int kMaxEmbeddingCoords = 20;

void require_set_family(const FunctionTable& f, const char* who) {
  if (f.domain().k() != 2) throw UnsupportedError(std::string(who) + " needs a k = 2 domain");
  if (!f.is_boolean()) throw DomainError(std::string(who) + " needs a {0,1}-valued table");
}

// has_subset[T] <=> some member of f is a subset of T (sum over subsets).
std::vector<char> member_below(const FunctionTable& f) {
  const std::size_t size = f.size();
  std::vector<char> below(size);
  for (std::size_t t = 0; t < size; ++t) below[t] = f[t] != 0.0;
  for (int i = 0; i < f.domain().n(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t t = 0; t < size; ++t) {
      if ((t & bit) && below[t ^ bit]) below[t] = 1;
    }
  }
  return below;
}

// Every member of f meets every member of g: no member of g fits inside the
// complement of a member of f.
bool cross_intersecting_unchecked(const FunctionTable& f, const FunctionTable& g) {
  const std::vector<char> below = member_below(g);
  const std::size_t full = f.size() - 1;
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a] != 0.0 && below[full & ~a]) return false;
  }
  return true;
}

double biased_measure(const FunctionTable& f, double p) {
  return expectation(FunctionTable(Domain(ProductSpace::biased(p), f.domain().n()),
                                   std::vector<double>(f.values().begin(), f.values().end())));
}

}  // namespace

bool is_intersecting(const FunctionTable& f) {
  require_set_family(f, "is_intersecting");
  return cross_intersecting_unchecked(f, f);
}

bool is_cross_intersecting(const FunctionTable& f, const FunctionTable& g) {
  require_set_family(f, "is_cross_intersecting");
  require_set_family(g, "is_cross_intersecting");
  if (f.domain().n() != g.domain().n()) throw ShapeError("cross-intersection needs equal n");
  return cross_intersecting_unchecked(f, g);
}

FriedgutOperator::FriedgutOperator(double p_, int n_) : p(p_), n(n_) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("pseudo-disjointness operator needs p in (0, 1)");
  if (n < 0) throw DomainError("n must be >= 0");
  base = {(1.0 - 2.0 * p) / (1.0 - p), p / (1.0 - p), 1.0, 0.0};
}

double FriedgutOperator::eigenvalue(int level) const { return pow0(-p / (1.0 - p), level); }

FunctionTable apply_friedgut(const FriedgutOperator& a, const FunctionTable& f) {
  const Domain& dom = f.domain();
  if (dom.k() != 2) throw UnsupportedError("the pseudo-disjointness operator needs k = 2");
  if (dom.n() != a.n || std::abs(dom.space().bias() - a.p) > 1e-12) {
    throw ShapeError("operator and table disagree on n or p");
  }
  std::vector<double> v(f.values().begin(), f.values().end());
  v = detail::apply_on_set(std::move(v), dom, dom.all(), a.base);
  return FunctionTable(dom, std::move(v));
}

InequalityReport check_disjointness_pairing(const FunctionTable& h, const FunctionTable& g,
                                            const CheckOptions& opts) {
  if (!is_cross_intersecting(h, g)) throw HypothesisError("h and g are not cross-intersecting");
  if (!(h.domain() == g.domain())) throw ShapeError("h and g live on different domains");
  const int n = h.domain().n();
  const double p = h.domain().space().bias();
  InequalityReport rep;
  rep.theorem_id = "disjointness_pairing";
  rep.out_of_hypothesis = p > 0.5;
  rep.lhs = expectation(h) * expectation(g);
  CompensatedSum rhs;
  for (int d = 1; d <= n; ++d) {
    rhs += std::pow(p / (1.0 - p), d) * std::abs(inner_product(level_part(h, d), g));
  }
  rep.rhs = rhs.value();
  const double pairing = inner_product(apply_friedgut(FriedgutOperator(p, n), h), g);
  const bool pairing_holds = std::abs(pairing) <= kPairingTolerance * opts.tolerance_scale;
  rep.set("p", p);
  rep.set("n", n);
  rep.set("pairing", pairing);
  rep.set("pairing_holds", pairing_holds ? 1.0 : 0.0);
  finalize(rep, opts, 0.0, pairing_holds);
  return rep;
}

SmearedStats smeared_stats(const FunctionTable& f) {
  const FourierSpectrum spec = fourier_spectrum(f);
  SmearedStats s;
  s.p = spec.p;
  s.alpha = spec.coeffs[0];
  std::vector<double> level1(static_cast<std::size_t>(spec.n));
  CompensatedSum sigma2;
  for (int i = 0; i < spec.n; ++i) {
    double c = spec.coeffs[std::size_t{1} << i];
    if (std::abs(c) <= kCoefficientFloor) c = 0.0;
    level1[static_cast<std::size_t>(i)] = c;
    sigma2 += c * c;
    s.delta = std::max(s.delta, std::abs(c));
  }
  s.sigma2 = sigma2.value();
  if (s.delta > 0.0) {
    const double threshold = s.delta * s.delta / 2.0 * (1.0 - kRelTie);
    s.m = static_cast<int>(std::count_if(level1.begin(), level1.end(),
                                         [&](double c) { return c * c >= threshold; }));
  }
  return s;
}

namespace {

bool smeared_hypothesis(const SmearedStats& s) {
  return s.m > 0 && static_cast<double>(s.m) > 1.0 / (s.p * s.p);
}

void record_stats(InequalityReport& rep, const SmearedStats& s) {
  rep.set("p", s.p);
  rep.set("alpha", s.alpha);
  rep.set("sigma2", s.sigma2);
  rep.set("delta", s.delta);
  rep.set("m", s.m);
}

// log(1/alpha) with the alpha <= 0 edge mapped to +inf.
double log_inverse(double alpha) {
  return alpha > 0.0 ? -std::log(alpha) : std::numeric_limits<double>::infinity();
}

}  // namespace

InequalityReport check_smeared_level1(const FunctionTable& f, const CheckOptions& opts) {
  require_set_family(f, "check_smeared_level1");
  const SmearedStats s = smeared_stats(f);
  InequalityReport rep;
  rep.theorem_id = "smeared_level1";
  const bool in_hyp = smeared_hypothesis(s) && s.alpha > std::exp(-std::sqrt(static_cast<double>(s.m)));
  rep.out_of_hypothesis = !in_hyp;
  rep.lhs = s.sigma2;
  const double log_inv = log_inverse(s.alpha);
  rep.rhs = s.alpha == 0.0 ? 0.0 : constants::kSmearedLevel1 * s.alpha * s.alpha * log_inv;
  record_stats(rep, s);
  bool side = true;
  if (in_hyp && s.alpha < std::exp(-4.0)) {
    const double sigma = std::sqrt(s.sigma2);
    const double second_rhs = 33.0 / std::numbers::sqrt2 * s.alpha * sigma * std::sqrt(log_inv);
    side = s.sigma2 <= second_rhs + default_tolerance(second_rhs, opts);
    rep.set("intermediate_rhs", second_rhs);
    rep.set("intermediate_holds", side ? 1.0 : 0.0);
  }
  finalize(rep, opts, 0.0, side);
  return rep;
}

InequalityReport check_density_decrease(const FunctionTable& f, SubsetMask s, const CheckOptions& opts) {
  require_set_family(f, "check_density_decrease");
  if (!s.fits(f.domain().n())) throw DomainError("restriction set exceeds n");
  const SmearedStats st = smeared_stats(f);
  InequalityReport rep;
  rep.theorem_id = "density_decrease";
  const double set_size = s.size();
  rep.out_of_hypothesis = !smeared_hypothesis(st) || set_size > 1.0 / (4.0 * st.p);
  const Assignment zeros(static_cast<std::size_t>(s.size()), 0);
  const double restricted = expectation(restrict(f, s, zeros));
  const double ratio = st.alpha > 0.0 ? restricted / st.alpha : std::numeric_limits<double>::infinity();
  const bool premise = ratio < 0.25;
  rep.vacuous = !premise;
  rep.lhs = st.alpha;
  rep.rhs = std::exp(-constants::kDensityDecreaseRate * std::sqrt(static_cast<double>(st.m)));
  record_stats(rep, st);
  rep.set("set_size", set_size);
  rep.set("restricted_measure", restricted);
  rep.set("ratio", ratio);
  rep.witness = Witness{s, zeros};
  finalize(rep, opts);
  return rep;
}

GlobalizingRestriction globalizing_restriction(const FunctionTable& f, double r) {
  require_set_family(f, "globalizing_restriction");
  if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("globalizing restriction needs finite r > 1");
  const int n = f.domain().n();
  SubsetMask best_set;
  Assignment best_x;
  double best = expectation(f);
  if (best == 0.0) return GlobalizingRestriction{best_set, best_x, f, 0.0};
  detail::for_each_restriction(f, 1, n, [&](SubsetMask s, const Assignment& x, const FunctionTable& g) {
    const double ratio = expectation(g) / std::pow(r, s.size());
    const bool tie = std::abs(ratio - best) <= kRelTie * std::max(ratio, best);
    if (tie ? detail::witness_less(s, x, best_set, best_x) : ratio > best) {
      best = std::max(best, ratio);
      best_set = s;
      best_x = x;
    }
  });
  FunctionTable h = restrict(f, best_set, best_x);
  const double mu_h = expectation(h);
  detail::for_each_restriction(h, 1, h.domain().n(), [&](SubsetMask t, const Assignment&, const FunctionTable& g) {
    const double bound = mu_h * std::pow(r, t.size());
    if (expectation(g) > bound * (1.0 + 1e-9) + 1e-15) {
      throw Error("globalizing restriction failed its post-check");
    }
  });
  return GlobalizingRestriction{best_set, best_x, std::move(h), best};
}

InequalityReport check_intersecting_bound(const FunctionTable& f, const CheckOptions& opts) {
  require_set_family(f, "check_intersecting_bound");
  if (!is_intersecting(f)) throw HypothesisError("family is not intersecting");
  const SmearedStats st = smeared_stats(f);
  const double p = st.p;
  InequalityReport rep;
  rep.theorem_id = "intersecting_bound";
  const bool p_ok = p <= 0.5;
  rep.out_of_hypothesis = !(st.m > 0 && 1.0 / std::sqrt(static_cast<double>(st.m)) <= p && p_ok);
  rep.lhs = st.alpha;
  rep.rhs = constants::kIntersectingFactor * std::exp(-constants::kIntersectingRate / p);
  rep.vacuous = rep.rhs >= 1.0;
  record_stats(rep, st);

  // The cross-intersection step on h = f_{S->x} (globalizing, r = e) and g = f_{S->0}.
  const double r = std::numbers::e;
  const GlobalizingRestriction gr = globalizing_restriction(f, r);
  const Assignment zeros(gr.x.size(), 0);
  const FunctionTable g = restrict(f, gr.set, zeros);
  const double mu_h = expectation(gr.restriction);
  const double mu_g = expectation(g);
  const double c = 1.0 / (constants::kCrossIntersection * r);
  const double threshold = std::exp(-c / p);
  const bool premise = mu_h > threshold;
  const bool conclusion = mu_g < constants::kCrossIntersectionFactor * threshold;
  const bool implication = !premise || conclusion;
  const bool size_holds = st.alpha == 0.0 || gr.set.size() <= std::log(1.0 / st.alpha) / std::log(r) + 1e-9;
  const InequalityReport pairing = check_disjointness_pairing(gr.restriction, g, opts);
  rep.set("restriction_size", gr.set.size());
  rep.set("mu_h", mu_h);
  rep.set("mu_g", mu_g);
  rep.set("cross_c", c);
  rep.set("cross_premise", premise ? 1.0 : 0.0);
  rep.set("cross_implication_holds", implication ? 1.0 : 0.0);
  rep.set("restriction_size_holds", size_holds ? 1.0 : 0.0);
  rep.set("pairing_lhs", pairing.lhs);
  rep.set("pairing_rhs", pairing.rhs);
  rep.set("pairing_holds", pairing.pass ? 1.0 : 0.0);
  rep.witness = Witness{gr.set, gr.x};
  // The step's own hypothesis is p <= 1/2; outside it nothing is asserted.
  const bool side = !p_ok || (implication && size_holds && pairing.pass);
  finalize(rep, opts, 0.0, side);
  return rep;
}

VectorFamily::VectorFamily(int k, int n, std::vector<std::vector<int>> members)
    : k_(k), n_(n), members_(std::move(members)) {
  if (k < 1) throw DomainError("vector family alphabet size must be >= 1");
  if (n < 0) throw DomainError("vector family length must be >= 0");
  for (const auto& z : members_) {
    if (z.size() != static_cast<std::size_t>(n)) throw ShapeError("vector length differs from n");
    for (int c : z) {
      if (c < 0 || c >= k) throw DomainError("vector entry " + std::to_string(c) + " outside [0, k)");
    }
  }
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw DomainError("vector family members must be distinct");
  }
}

bool VectorFamily::contains(const std::vector<int>& z) const {
  return std::binary_search(members_.begin(), members_.end(), z);
}

double VectorFamily::density() const {
  return static_cast<double>(members_.size()) / std::pow(static_cast<double>(k_), n_);
}

bool is_vector_intersecting(const VectorFamily& a) {
  const auto& ms = a.members();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i; j < ms.size(); ++j) {
      bool agree = false;
      for (int c = 0; c < a.n() && !agree; ++c) agree = ms[i][c] == ms[j][c];
      if (!agree) return false;
    }
  }
  return true;
}

void verify_transitive_symmetry(const VectorFamily& a, const std::vector<Permutation>& generators) {
  const int n = a.n();
  for (const Permutation& sigma : generators) {
    std::vector<char> seen(static_cast<std::size_t>(n));
    bool ok = sigma.size() == static_cast<std::size_t>(n);
    for (std::size_t i = 0; ok && i < sigma.size(); ++i) {
      ok = sigma[i] >= 0 && sigma[i] < n && !seen[static_cast<std::size_t>(sigma[i])];
      if (ok) seen[static_cast<std::size_t>(sigma[i])] = 1;
    }
    if (!ok) throw HypothesisError("symmetry generator is not a permutation of [n]");
    std::vector<int> image(static_cast<std::size_t>(n));
    for (const auto& z : a.members()) {
      for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(sigma[i])];
      if (!a.contains(image)) throw HypothesisError("symmetry generator does not preserve the family");
    }
  }
  if (n == 0) return;
  std::vector<char> orbit(static_cast<std::size_t>(n));
  std::vector<int> stack{0};
  orbit[0] = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (const Permutation& sigma : generators) {
      const int j = sigma[static_cast<std::size_t>(i)];
      if (!orbit[static_cast<std::size_t>(j)]) {
        orbit[static_cast<std::size_t>(j)] = 1;
        stack.push_back(j);
      }
    }
  }
  if (std::count(orbit.begin(), orbit.end(), 1) != n) {
    throw HypothesisError("symmetry generators do not act transitively on [n]");
  }
}

EmbeddingResult embed_vector_family(const VectorFamily& a, double p) {
  const int coords = a.k() * a.n();
  if (coords > kMaxEmbeddingCoords) {
    throw ResourceError("vector embedding needs k * n <= " + std::to_string(kMaxEmbeddingCoords));
  }
  const Domain dom(ProductSpace::biased(p), coords);
  std::vector<double> tilde(dom.size(), 0.0);
  for (const auto& z : a.members()) {
    std::size_t idx = 0;
    for (int i = 0; i < a.n(); ++i) idx |= std::size_t{1} << (i * a.k() + z[static_cast<std::size_t>(i)]);
    tilde[idx] = 1.0;
  }
  // Up-closure: superset sums over each coordinate.
  std::vector<double> up = tilde;
  for (int c = 0; c < coords; ++c) {
    const std::size_t bit = std::size_t{1} << c;
    for (std::size_t t = 0; t < up.size(); ++t) {
      if ((t & bit) && up[t ^ bit] != 0.0) up[t] = 1.0;
    }
  }
  EmbeddingResult out{FunctionTable(dom, std::move(tilde)), FunctionTable(dom, std::move(up)), a.density(), 0.0};
  out.mu_b = expectation(out.b);
  return out;
}

InequalityReport check_coupling_bound(const VectorFamily& a, double p, const CheckOptions& opts) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("coupling bound needs p in (0, 1)");
  const EmbeddingResult emb = embed_vector_family(a, p);
  InequalityReport rep;
  rep.theorem_id = "coupling_bound";
  rep.lhs = emb.density;
  const double block = 1.0 - std::pow(1.0 - p, a.k());
  rep.rhs = emb.mu_b / std::pow(block, a.n());
  rep.set("k", a.k());
  rep.set("n", a.n());
  rep.set("p", p);
  rep.set("mu_b", emb.mu_b);
  bool side = true;
  if (a.n() >= 2) {
    const double pc = std::log(static_cast<double>(a.n())) / a.k();
    if (pc < 1.0) {
      const double cor_rhs = constants::kCouplingFactor * biased_measure(emb.b, pc);
      side = emb.density <= cor_rhs + default_tolerance(cor_rhs, opts);
      rep.set("corollary_p", pc);
      rep.set("corollary_rhs", cor_rhs);
      rep.set("corollary_holds", side ? 1.0 : 0.0);
    }
  }
  finalize(rep, opts, 0.0, side);
  return rep;
}

InequalityReport check_vector_bound(const VectorFamily& a, const std::vector<Permutation>& generators,
                                    const CheckOptions& opts) {
  if (!is_vector_intersecting(a)) throw HypothesisError("vector family is not vector-intersecting");
  verify_transitive_symmetry(a, generators);
  const double n = a.n();
  const double k = a.k();
  const double log_n = n >= 1.0 ? std::log(n) : 0.0;
  InequalityReport rep;
  rep.theorem_id = "vector_bound";
  rep.lhs = a.density();
  if (k > std::sqrt(n) * log_n) {
    rep.rhs = constants::kVectorFactor * std::exp(-constants::kVectorRate * std::sqrt(n));
    rep.set("regime", 2.0);
  } else {
    rep.out_of_hypothesis = k < 2.0 * log_n;
    rep.rhs = constants::kVectorFactor * std::exp(-constants::kVectorRate * k / log_n);
    rep.set("regime", 1.0);
  }
  rep.vacuous = rep.rhs >= 1.0;
  rep.set("k", k);
  rep.set("n", n);
  bool side = true;
  if (a.n() >= 2 && a.k() * a.n() <= kMaxEmbeddingCoords) {
    const double pc = log_n / k;
    if (pc < 1.0) {
      const EmbeddingResult emb = embed_vector_family(a, pc);
      const bool b_intersecting = is_intersecting(emb.b);
      const SmearedStats st = smeared_stats(emb.b);
      const bool spread = st.delta == 0.0 || st.m >= a.n();
      side = b_intersecting && spread;
      rep.set("embedding_p", pc);
      rep.set("mu_b", emb.mu_b);
      rep.set("embedding_m", st.m);
      rep.set("b_intersecting_holds", b_intersecting ? 1.0 : 0.0);
      rep.set("embedding_m_holds", spread ? 1.0 : 0.0);
    }
  }
  finalize(rep, opts, 0.0, side);
  return rep;
}

}  // namespace hyperc
