#include "hyperc/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hyperc/errors.hpp"
#include "hyperc/numeric.hpp"
#include "hyperc/operators.hpp"
#include "tensor_ops.hpp"

namespace hyperc {

namespace {

// 99% two-sided normal quantile.
constexpr double kZ99 = 2.5758293035489004;

double mu_inner(const ProductSpace& sp, const std::vector<double>& a, const std::vector<double>& b) {
  CompensatedSum s;
  for (int w = 0; w < sp.k(); ++w) {
    const auto i = static_cast<std::size_t>(w);
    s += sp.weight(w) * a[i] * b[i];
  }
  return s.value();
}

bool is_even_integer(double q) {
  return q >= 0.0 && q == std::floor(q) && std::fmod(q, 2.0) == 0.0;
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(ProductSpace space, std::vector<std::vector<double>> vectors)
    : space_(std::move(space)), vectors_(std::move(vectors)) {
  const auto k = static_cast<std::size_t>(space_.k());
  if (vectors_.size() != k - 1) throw ShapeError("basis needs k - 1 non-constant vectors");
  const std::vector<double> one(k, 1.0);
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != k) throw ShapeError("basis vector length differs from k");
    if (std::abs(mu_inner(space_, vectors_[i], one)) > 1e-12) {
      throw DomainError("basis vector " + std::to_string(i + 1) + " is not mean zero");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(mu_inner(space_, vectors_[i], vectors_[j]) - expect) > 1e-12) {
        throw DomainError("basis is not orthonormal");
      }
    }
  }
}

double OrthonormalBasis::value(int j, int omega) const {
  if (j == 0) return 1.0;
  return vectors_.at(static_cast<std::size_t>(j - 1)).at(static_cast<std::size_t>(omega));
}

OrthonormalBasis canonical_basis(const ProductSpace& space) {
  const int k = space.k();
  std::vector<std::vector<double>> out;
  for (int j = 0; j + 1 < k; ++j) {
    std::vector<double> v(static_cast<std::size_t>(k));
    for (int w = 0; w < k; ++w) v[static_cast<std::size_t>(w)] = (w == j ? 1.0 : 0.0) - space.weight(j);
    // Two passes of modified Gram-Schmidt keep the Gram matrix at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : out) {
        const double c = mu_inner(space, v, u);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
      }
    }
    const double norm = std::sqrt(mu_inner(space, v, v));
    if (!(norm > 0.0)) throw DomainError("degenerate weights in canonical basis");
    for (double& x : v) x /= norm;
    out.push_back(std::move(v));
  }
  return OrthonormalBasis(space, std::move(out));
}

MixedGaussianFunction::MixedGaussianFunction(Domain domain, SubsetMask encoded,
                                             std::vector<double> coeffs)
    : domain_(std::move(domain)), encoded_(encoded), coeffs_(std::move(coeffs)) {
  if (!encoded_.fits(domain_.n())) throw DomainError("encoded set exceeds the coordinate range");
  if (coeffs_.size() != domain_.size()) throw ShapeError("coefficient tensor must have k^n entries");
}

int MixedGaussianFunction::gaussian_count() const noexcept {
  return (domain_.k() - 1) * encoded_.size();
}

double MixedGaussianFunction::evaluate(std::span<const double> z, std::span<const int> y) const {
  const int k = domain_.k();
  const std::vector<int> enc = encoded_.coordinates();
  const std::vector<int> plain = encoded_.complement(domain_.n()).coordinates();
  if (z.size() != static_cast<std::size_t>(gaussian_count()) || y.size() != plain.size()) {
    throw ShapeError("evaluate: wrong number of Gaussian or discrete arguments");
  }
  std::size_t base = 0;
  for (std::size_t j = 0; j < plain.size(); ++j) {
    if (y[j] < 0 || y[j] >= k) throw DomainError("discrete argument out of range");
    base += static_cast<std::size_t>(y[j]) * domain_.stride(plain[j]);
  }
  CompensatedSum acc;
  for_each_assignment(k, static_cast<int>(enc.size()), [&](const Assignment& b) {
    std::size_t idx = base;
    double w = 1.0;
    for (std::size_t j = 0; j < enc.size(); ++j) {
      idx += static_cast<std::size_t>(b[j]) * domain_.stride(enc[j]);
      if (b[j] > 0) w *= z[j * static_cast<std::size_t>(k - 1) + static_cast<std::size_t>(b[j] - 1)];
    }
    acc += w * coeffs_[idx];
  });
  return acc.value();
}

double MixedGaussianFunction::decode_at(std::span<const int> x, const OrthonormalBasis& basis) const {
  if (!(basis.space() == domain_.space())) throw ShapeError("basis belongs to a different space");
  if (static_cast<int>(x.size()) != domain_.n()) throw DomainError("decode point has wrong length");
  std::vector<double> z;
  std::vector<int> y;
  for (int i = 0; i < domain_.n(); ++i) {
    const int xi = x[static_cast<std::size_t>(i)];
    if (encoded_.contains(i)) {
      for (int j = 1; j < domain_.k(); ++j) z.push_back(basis.value(j, xi));
    } else {
      y.push_back(xi);
    }
  }
  return evaluate(z, y);
}

MixedGaussianFunction encode_G(const FunctionTable& f, SubsetMask s, const OrthonormalBasis& basis) {
  const Domain& d = f.domain();
  if (!(basis.space() == d.space())) throw ShapeError("basis belongs to a different space");
  if (!s.fits(d.n())) throw DomainError("encoded set exceeds the coordinate range");
  const auto k = static_cast<std::size_t>(d.k());
  // Row j: coefficient alpha_j = E[f f_j] = sum_b mu(b) f_j(b) f(b).
  detail::CoordMatrix m(k * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t b = 0; b < k; ++b) {
      m[j * k + b] = d.space().weight(static_cast<int>(b)) *
                     basis.value(static_cast<int>(j), static_cast<int>(b));
    }
  }
  std::vector<double> values(f.values().begin(), f.values().end());
  return MixedGaussianFunction(d, s, detail::apply_on_set(std::move(values), d, s, m));
}

MixedGaussianFunction encode_G(const FunctionTable& f, SubsetMask s) {
  return encode_G(f, s, canonical_basis(f.domain().space()));
}

const char* to_string(NormMethod m) noexcept {
  switch (m) {
    case NormMethod::automatic: return "automatic";
    case NormMethod::exact_quadrature: return "exact-quadrature";
    case NormMethod::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

GaussHermiteRule gauss_hermite(int count) {
  if (count < 1) throw DomainError("Gauss-Hermite rule needs at least one node");
  // Golub-Welsch on the Jacobi matrix of the monic probabilists' Hermite recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int i = 1; i < count; ++i) {
    jacobi(i, i - 1) = jacobi(i - 1, i) = std::sqrt(static_cast<double>(i));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  for (int i = 0; i < count; ++i) {
    rule.nodes.push_back(solver.eigenvalues()(i));
    const double v = solver.eigenvectors()(0, i);
    rule.weights.push_back(v * v);
  }
  return rule;
}

namespace {

// Contracts the axis with the given stride against vec (length k).
std::vector<double> contract_axis(const std::vector<double>& t, std::size_t stride, std::size_t k,
                                  std::span<const double> vec) {
  std::vector<double> out(t.size() / k);
  const std::size_t block = stride * k;
  for (std::size_t hi = 0, o = 0; hi < t.size(); hi += block) {
    for (std::size_t lo = 0; lo < stride; ++lo, ++o) {
      double acc = 0.0;
      for (std::size_t b = 0; b < k; ++b) acc += vec[b] * t[hi + lo + b * stride];
      out[o] = acc;
    }
  }
  return out;
}

class MixedEvaluator {
 public:
  MixedEvaluator(const MixedGaussianFunction& g, double q) : g_(g), q_(q) {
    const Domain& d = g.domain();
    k_ = static_cast<std::size_t>(d.k());
    const auto enc = g.encoded_set().coordinates();
    encoded_desc_.assign(enc.rbegin(), enc.rend());
    const int plain = d.n() - g.encoded_set().size();
    // mu^{S^c} over the remaining axes; all of them share the same weights.
    std::size_t size = 1;
    for (int j = 0; j < plain; ++j) size *= k_;
    leaf_weights_.assign(size, 1.0);
    std::size_t stride = 1;
    for (int j = 0; j < plain; ++j) {
      for (std::size_t idx = 0; idx < size; ++idx) {
        leaf_weights_[idx] *= d.space().weight(static_cast<int>((idx / stride) % k_));
      }
      stride *= k_;
    }
  }

  std::size_t levels() const noexcept { return encoded_desc_.size(); }

  /// Stride of the j-th contracted axis: lower encoded axes are still present.
  std::size_t stride(std::size_t j) const {
    std::size_t s = 1;
    for (int c = 0; c < encoded_desc_[j]; ++c) s *= k_;
    return s;
  }

  double leaf(const std::vector<double>& t) const {
    CompensatedSum acc;
    for (std::size_t y = 0; y < t.size(); ++y) acc += leaf_weights_[y] * abs_pow(t[y], q_);
    return acc.value();
  }

  double exact(const GaussHermiteRule& rule) const {
    std::vector<double> start(g_.coeffs().begin(), g_.coeffs().end());
    return exact_rec(0, start, rule);
  }

  double sample(std::mt19937_64& rng, std::normal_distribution<double>& normal) const {
    std::vector<double> t(g_.coeffs().begin(), g_.coeffs().end());
    std::vector<double> vec(k_);
    vec[0] = 1.0;
    for (std::size_t j = 0; j < levels(); ++j) {
      for (std::size_t b = 1; b < k_; ++b) vec[b] = normal(rng);
      t = contract_axis(t, stride(j), k_, vec);
    }
    return leaf(t);
  }

 private:
  double exact_rec(std::size_t j, const std::vector<double>& t, const GaussHermiteRule& rule) const {
    if (j == levels()) return leaf(t);
    const int vars = static_cast<int>(k_) - 1;
    const int m = static_cast<int>(rule.nodes.size());
    const std::size_t st = stride(j);
    CompensatedSum acc;
    std::vector<double> vec(k_);
    vec[0] = 1.0;
    for_each_assignment(m, vars, [&](const Assignment& nodes) {
      double w = 1.0;
      for (int v = 0; v < vars; ++v) {
        const auto ni = static_cast<std::size_t>(nodes[static_cast<std::size_t>(v)]);
        vec[static_cast<std::size_t>(v) + 1] = rule.nodes[ni];
        w *= rule.weights[ni];
      }
      acc += w * exact_rec(j + 1, contract_axis(t, st, k_, vec), rule);
    });
    return acc.value();
  }

  const MixedGaussianFunction& g_;
  double q_;
  std::size_t k_ = 2;
  std::vector<int> encoded_desc_;
  std::vector<double> leaf_weights_;
};

double moment_root(double moment, double q) { return moment <= 0.0 ? 0.0 : std::pow(moment, 1.0 / q); }

}  // namespace

NormEstimate gaussian_qnorm(const MixedGaussianFunction& g, double q, NormMethod method,
                            const MonteCarloOptions& mc) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("gaussian_qnorm requires finite q >= 1");
  const bool even = is_even_integer(q);
  if (method == NormMethod::exact_quadrature && !even) {
    throw UnsupportedError("exact quadrature needs an even integer q (got " + std::to_string(q) + ")");
  }
  const int nodes = static_cast<int>(std::ceil((q + 1.0) / 2.0));
  const bool within_cap = g.gaussian_count() <= kMaxExactVariables && nodes <= kMaxNodes;
  const MixedEvaluator eval(g, q);

  NormEstimate out;
  if (g.gaussian_count() == 0 || (even && within_cap && method != NormMethod::monte_carlo)) {
    out.method = NormMethod::exact_quadrature;
    out.moment = eval.exact(gauss_hermite(std::max(nodes, 1)));
    out.value = moment_root(out.moment, q);
    return out;
  }

  if (mc.samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  std::mt19937_64 rng(mc.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Welford running mean and variance of the per-sample conditional moment.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t i = 1; i <= mc.samples; ++i) {
    const double y = eval.sample(rng, normal);
    const double delta = y - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (y - mean);
  }
  const auto n = static_cast<double>(mc.samples);
  const double sd = std::sqrt(m2 / (n - 1.0));
  out.method = NormMethod::monte_carlo;
  out.sample_count = mc.samples;
  out.moment = mean;
  out.moment_halfwidth = kZ99 * sd / std::sqrt(n);
  out.value = moment_root(mean, q);
  // Delta method for x -> x^{1/q}; at a zero mean fall back to the root of the half-width.
  out.ci_halfwidth = mean > 0.0 ? out.moment_halfwidth * std::pow(mean, 1.0 / q - 1.0) / q
                                : moment_root(out.moment_halfwidth, q);
  return out;
}

double beta_rate(double rho, double q) {
  if (rho == 0.0) return 0.0;
  return rho * (1.0 + 2.0 * (q - 2.0) / std::log(1.0 / rho));
}

InequalityReport check_tensorization(const FunctionTable& f, double rho, double q,
                                     const CheckOptions& opts) {
  if (!(rho >= 0.0 && rho <= 1.0 / 3.0 + 1e-15)) throw DomainError("tensorization needs rho in [0, 1/3]");
  if (!(q >= 2.0) || !is_even_integer(q)) throw DomainError("tensorization needs an even integer q >= 2");
  const Domain& d = f.domain();
  const double beta = beta_rate(rho, q);
  const OrthonormalBasis basis = canonical_basis(d.space());
  const MonteCarloOptions mc{opts.seed, opts.mc_samples};

  InequalityReport rep;
  rep.theorem_id = "tensorization";
  rep.lhs = lp_norm_pow(noise_resample(f, rho), q);
  CompensatedSum rhs;
  double extra = 0.0;
  int mc_terms = 0;
  const std::uint32_t full = d.all().bits();
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    const SubsetMask s(bits);
    const double scale = pow0(beta, q * s.size());
    const auto g = encode_G(laplacian_L(f, s), s.complement(d.n()), basis);
    const NormEstimate est = gaussian_qnorm(g, q, NormMethod::automatic, mc);
    rhs += scale * est.moment;
    if (est.method == NormMethod::monte_carlo) {
      extra += 3.0 * scale * est.moment_halfwidth;
      ++mc_terms;
    }
  }
  rep.rhs = rhs.value();
  rep.set("rho", rho);
  rep.set("q", q);
  rep.set("beta", beta);
  rep.set("n", d.n());
  rep.set("k", d.k());
  rep.set("monte_carlo_terms", mc_terms);
  finalize(rep, opts, extra);
  return rep;
}

DiscreteDistribution standardized_bit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("bias p must lie in (0, 1)");
  return {{-std::sqrt(p / (1.0 - p)), 1.0 - p}, {std::sqrt((1.0 - p) / p), p}};
}

double gaussian_affine_moment(double d, double q) {
  if (!(q >= 1.0)) throw DomainError("moment order must be at least 1");
  if (d == 0.0) return 1.0;
  if (is_even_integer(q) && q <= 2.0 * kMaxNodes - 1.0) {
    const GaussHermiteRule rule = gauss_hermite(static_cast<int>(std::ceil((q + 1.0) / 2.0)));
    CompensatedSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      s += rule.weights[i] * abs_pow(1.0 + d * rule.nodes[i], q);
    }
    return s.value();
  }
  using boost::math::quadrature::gauss_kronrod;
  const double inv_sqrt_2pi = 0.39894228040143267794;
  auto integrand = [&](double z) {
    return abs_pow(1.0 + d * z, q) * inv_sqrt_2pi * std::exp(-0.5 * z * z);
  };
  const double kink = -1.0 / d;
  const double inf = std::numeric_limits<double>::infinity();
  return gauss_kronrod<double, 61>::integrate(integrand, -inf, kink, 15, 1e-14) +
         gauss_kronrod<double, 61>::integrate(integrand, kink, inf, 15, 1e-14);
}

InequalityReport check_one_var_bound(const DiscreteDistribution& x, double d, double rho, double q,
                                     const CheckOptions& opts) {
  if (!(rho >= 0.0 && rho <= 1.0 / 3.0 + 1e-15)) throw DomainError("one-variable bound needs rho in [0, 1/3]");
  if (!(q >= 2.0) || !std::isfinite(q)) throw DomainError("one-variable bound needs q >= 2");
  if (!std::isfinite(d)) throw DomainError("scale d must be finite");
  CompensatedSum total;
  CompensatedSum mean;
  CompensatedSum second;
  for (const auto& [v, pr] : x) {
    if (!(pr >= 0.0) || !std::isfinite(v)) throw DomainError("invalid atom in distribution");
    total += pr;
    mean += pr * v;
    second += pr * v * v;
  }
  if (std::abs(total.value() - 1.0) > 1e-10 || std::abs(mean.value()) > 1e-10 ||
      std::abs(second.value() - 1.0) > 1e-10) {
    throw DomainError("X must have total mass 1, mean 0 and variance 1");
  }
  const double beta = beta_rate(rho, q);
  CompensatedSum lhs;
  CompensatedSum dx;
  for (const auto& [v, pr] : x) {
    lhs += pr * abs_pow(1.0 + rho * d * v, q);
    dx += pr * abs_pow(d * v, q);
  }
  const double gauss = gaussian_affine_moment(d, q);
  InequalityReport rep;
  rep.theorem_id = "one_var_bound";
  rep.lhs = lhs.value();
  rep.rhs = gauss + pow0(beta, q) * dx.value();
  rep.set("rho", rho);
  rep.set("q", q);
  rep.set("d", d);
  rep.set("beta", beta);
  rep.set("gaussian_term", gauss);
  rep.set("discrete_term", dx.value());
  finalize(rep, opts);
  return rep;
}

}  // namespace hyperc
