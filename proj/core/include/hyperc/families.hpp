#pragma once

// Set families on {0,1}^n under the p-biased measure, represented as Boolean
// tables (bit i of a point <=> i is in the set), plus vector families in [k]^n.

#include <array>
#include <cstdint>
#include <vector>

#include "hyperc/report.hpp"
#include "hyperc/space.hpp"

namespace hyperc {

/// Brute force over all member pairs. The empty family is intersecting.
bool is_intersecting(const FunctionTable& f);
bool is_cross_intersecting(const FunctionTable& f, const FunctionTable& g);

/// The pseudo-disjointness operator: the n-fold tensor power of
/// [[(1-2p)/(1-p), p/(1-p)], [1, 0]], whose bilinear form vanishes on
/// cross-intersecting pairs. Its eigenvalue on chi_S is (-p/(1-p))^{|S|}.
struct FriedgutOperator {
  double p;
  int n;
  /// Row-major, index 0 = coordinate absent.
  std::array<double, 4> base;

  FriedgutOperator(double p, int n);
  double eigenvalue(int level) const;
};

/// Throws UnsupportedError when k != 2 and ShapeError when the bias or n differ.
FunctionTable apply_friedgut(const FriedgutOperator& a, const FunctionTable& f);

/// lhs = mu(h) mu(g), rhs = sum_{d >= 1} (p/(1-p))^d |<h^{=d}, g>|, with the
/// side check |<Ah, g>| <= 1e-10. Throws HypothesisError unless h and g are
/// cross-intersecting. Out of hypothesis for p > 1/2.
InequalityReport check_disjointness_pairing(const FunctionTable& h, const FunctionTable& g,
                                            const CheckOptions& opts = {});

/// Level-1 statistics of f on {0,1}^n under its own bias.
struct SmearedStats {
  double p = 0.0;
  double alpha = 0.0;
  double sigma2 = 0.0;
  double delta = 0.0;
  /// Coordinates with f^({i})^2 >= delta^2 / 2; 0 when delta = 0.
  int m = 0;
};

SmearedStats smeared_stats(const FunctionTable& f);

/// sigma^2 <= 750 alpha^2 log(1/alpha) for m > 1/p^2 and alpha > e^{-sqrt m}.
/// When additionally alpha < e^{-4} the intermediate bound
/// sigma^2 <= (33/sqrt 2) alpha sigma sqrt(log(1/alpha)) is a side check.
InequalityReport check_smeared_level1(const FunctionTable& f, const CheckOptions& opts = {});

/// If mu(f_{S->0}) / mu(f) < 1/4 then mu(f) < exp(-0.001 sqrt m), for
/// m > 1/p^2 and |S| <= 1/(4p). Vacuous when the premise fails.
InequalityReport check_density_decrease(const FunctionTable& f, SubsetMask s,
                                        const CheckOptions& opts = {});

/// The (S, x) maximizing mu(f_{S->x}) / r^{|S|}, ties to the smallest (S, x).
struct GlobalizingRestriction {
  SubsetMask set;
  Assignment x;
  FunctionTable restriction;
  double ratio = 0.0;
};

/// Exhaustive argmax; the result h is checked to satisfy
/// mu(h_{T->y}) <= mu(h) r^{|T|} for all T, y before returning.
GlobalizingRestriction globalizing_restriction(const FunctionTable& f, double r);

/// mu(f) <= 32 exp(-0.0001/p) for intersecting f with 1/sqrt(m) <= p <= 1/2.
/// Also exercises the cross-intersection step on the globalizing restriction
/// (r = e) and records its ingredients as side checks.
InequalityReport check_intersecting_bound(const FunctionTable& f, const CheckOptions& opts = {});

/// A set of distinct vectors in [k]^n, kept sorted.
class VectorFamily {
 public:
  VectorFamily(int k, int n, std::vector<std::vector<int>> members);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  const std::vector<std::vector<int>>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(const std::vector<int>& z) const;
  /// |A| / k^n.
  double density() const;

 private:
  int k_;
  int n_;
  std::vector<std::vector<int>> members_;
};

/// Every two members (a member with itself included) agree somewhere.
bool is_vector_intersecting(const VectorFamily& a);

/// A permutation of [n]; acts on vectors by (sigma z)_i = z_{sigma(i)}.
using Permutation = std::vector<int>;

/// Throws HypothesisError unless each generator is a permutation preserving
/// the family and together they act transitively on [n].
void verify_transitive_symmetry(const VectorFamily& a, const std::vector<Permutation>& generators);

/// Coordinate (i, c) of ({0,1}^k)^n is index i * k + c.
struct EmbeddingResult {
  FunctionTable tilde_a;
  FunctionTable b;
  double density = 0.0;
  double mu_b = 0.0;
};

/// Embeds under the p-biased measure. Throws ResourceError when k n > 20.
EmbeddingResult embed_vector_family(const VectorFamily& a, double p);

/// |A|/k^n <= mu_p(B) / (1 - (1-p)^k)^n for p in (0, 1). For n >= 2 and
/// log n / k < 1 the corollary |A|/k^n <= 4 mu_{log n / k}(B) is a side check.
InequalityReport check_coupling_bound(const VectorFamily& a, double p, const CheckOptions& opts = {});

/// |A|/k^n <= 128 exp(-0.0001 k / log n) for 2 log n <= k <= sqrt(n) log n,
/// and 128 exp(-0.0001 sqrt n) for larger k. Verifies vector-intersection and
/// transitive symmetry first (HypothesisError otherwise). When the embedding
/// fits, records that B is intersecting and m(1_B) >= n as side checks.
InequalityReport check_vector_bound(const VectorFamily& a, const std::vector<Permutation>& generators,
                                    const CheckOptions& opts = {});

}  // namespace hyperc
