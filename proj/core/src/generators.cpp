#include "hyperc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperc/errors.hpp"

namespace hyperc {

namespace {

Domain set_domain(int n, double p) {
  if (n < 0) throw DomainError("n must be >= 0");
  return Domain(ProductSpace::biased(p), n);
}

int popcount_point(const Point& x) { return static_cast<int>(std::count(x.begin(), x.end(), 1)); }

}  // namespace

FunctionTable dictator(int n, int i, double p) {
  if (i < 0 || i >= n) throw DomainError("dictator coordinate outside [0, n)");
  return FunctionTable::tabulate(set_domain(n, p), [&](const Point& x) { return double(x[i]); });
}

FunctionTable and_t(int n, int t, double p) {
  if (t < 0 || t > n) throw DomainError("AND width must lie in [0, n]");
  return FunctionTable::tabulate(set_domain(n, p), [&](const Point& x) {
    return std::all_of(x.begin(), x.begin() + t, [](int v) { return v == 1; }) ? 1.0 : 0.0;
  });
}

FunctionTable threshold(int n, int t, double p) {
  return FunctionTable::tabulate(set_domain(n, p),
                                 [&](const Point& x) { return popcount_point(x) >= t ? 1.0 : 0.0; });
}

FunctionTable majority(int n, double p) {
  if (n % 2 == 0) throw DomainError("majority needs odd n");
  return threshold(n, (n + 1) / 2, p);
}

FunctionTable tribes_dual(int n, int block_size, double p) {
  if (block_size < 1 || n % block_size != 0) throw DomainError("tribe size must divide n");
  const int blocks = n / block_size;
  return FunctionTable::tabulate(set_domain(n, p), [&](const Point& x) {
    bool contains_block = false;
    bool hits_all = true;
    for (int b = 0; b < blocks; ++b) {
      const auto first = x.begin() + b * block_size;
      const auto last = first + block_size;
      contains_block = contains_block || std::all_of(first, last, [](int v) { return v == 1; });
      hits_all = hits_all && std::any_of(first, last, [](int v) { return v == 1; });
    }
    return contains_block && hits_all ? 1.0 : 0.0;
  });
}

FunctionTable sharpness_fnd(int n, int d) {
  if (d < 1 || n % d != 0) throw DomainError("f_{n,d} needs d >= 1 dividing n");
  const double p = static_cast<double>(d) / n;
  if (!(p < 1.0)) throw DomainError("f_{n,d} needs d < n so that p = d/n < 1");
  const int width = n / d;
  return FunctionTable::tabulate(set_domain(n, p), [&](const Point& x) {
    double prod = 1.0;
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int i = 0; i < width; ++i) s += x[j * width + i] - p;
      prod *= s;
    }
    return prod;
  });
}

FunctionTable symmetric_boolean(int n, double p, std::uint32_t pattern) {
  if (n > 31) throw DomainError("symmetric pattern covers weights up to 31");
  return FunctionTable::tabulate(set_domain(n, p),
                                 [&](const Point& x) { return double((pattern >> popcount_point(x)) & 1U); });
}

FunctionTable random_table(const Domain& domain, std::uint64_t seed, RandomKind kind) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(domain.size());
  switch (kind) {
    case RandomKind::boolean: {
      std::bernoulli_distribution coin(0.5);
      for (double& x : v) x = coin(rng) ? 1.0 : 0.0;
      break;
    }
    case RandomKind::gaussian: {
      std::normal_distribution<double> normal;
      for (double& x : v) x = normal(rng);
      break;
    }
    case RandomKind::uniform: {
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      for (double& x : v) x = unif(rng);
      break;
    }
  }
  return FunctionTable(domain, std::move(v));
}

namespace {

// Calls fn(z) for every z in [k]^n, z_0 fastest.
template <class Fn>
void for_each_vector(int k, int n, Fn&& fn) {
  if (k <= 0 && n > 0) return;
  for_each_assignment(k, n, fn);
}

void check_vector_shape(int k, int n) {
  if (k < 1 || n < 0) throw DomainError("vector families need k >= 1 and n >= 0");
  if (std::pow(static_cast<double>(k), n) > double(Domain::kMaxPoints)) {
    throw ResourceError("vector family universe k^n is too large");
  }
}

}  // namespace

VectorFamily constant_vectors(int k, int n) {
  check_vector_shape(k, n);
  std::vector<std::vector<int>> members;
  if (n == 0) {
    members.emplace_back();
  } else {
    for (int c = 0; c < k; ++c) members.emplace_back(static_cast<std::size_t>(n), c);
  }
  return VectorFamily(k, n, std::move(members));
}

VectorFamily full_vectors(int k, int n) {
  check_vector_shape(k, n);
  std::vector<std::vector<int>> members;
  for_each_vector(k, n, [&](const Assignment& z) { members.push_back(z); });
  return VectorFamily(k, n, std::move(members));
}

VectorFamily star_vectors(int k, int n) {
  check_vector_shape(k, n);
  if (n < 1) throw DomainError("a star needs n >= 1");
  std::vector<std::vector<int>> members;
  for_each_vector(k, n, [&](const Assignment& z) {
    if (z[0] == 0) members.push_back(z);
  });
  return VectorFamily(k, n, std::move(members));
}

VectorFamily random_vectors(int k, int n, std::uint64_t seed, double keep) {
  check_vector_shape(k, n);
  if (!(keep >= 0.0 && keep <= 1.0)) throw DomainError("keep probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(keep);
  std::vector<std::vector<int>> members;
  for_each_vector(k, n, [&](const Assignment& z) {
    if (coin(rng)) members.push_back(z);
  });
  return VectorFamily(k, n, std::move(members));
}

std::vector<Permutation> cyclic_generators(int n) {
  if (n <= 1) return {};
  Permutation shift(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) shift[static_cast<std::size_t>(i)] = (i + 1) % n;
  return {shift};
}

namespace {

double get(const ParamMap& params, std::string_view key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int get_int(const ParamMap& params, std::string_view key, double fallback) {
  const double v = get(params, key, fallback);
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e9) {
    throw DomainError("parameter " + std::string(key) + " must be an integer");
  }
  return static_cast<int>(v);
}

std::uint64_t get_seed(const ParamMap& params) {
  const double v = get(params, "seed", 0.0);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.007199254740992e15) {
    throw DomainError("seed must be a non-negative integer below 2^53");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Example generate_example(std::string_view name, const ParamMap& params) {
  const double p = get(params, "p", 0.5);
  if (name == "dictator") return dictator(get_int(params, "n", 3), get_int(params, "i", 0), p);
  if (name == "and") return and_t(get_int(params, "n", 3), get_int(params, "t", 2), p);
  if (name == "threshold") return threshold(get_int(params, "n", 3), get_int(params, "t", 2), p);
  if (name == "majority") return majority(get_int(params, "n", 3), p);
  if (name == "tribes_dual") return tribes_dual(get_int(params, "n", 4), get_int(params, "size", 2), p);
  if (name == "sharpness") return sharpness_fnd(get_int(params, "n", 4), get_int(params, "d", 2));
  if (name == "symmetric") {
    const int pattern = get_int(params, "pattern", 0);
    if (pattern < 0) throw DomainError("pattern must be non-negative");
    return symmetric_boolean(get_int(params, "n", 3), p, static_cast<std::uint32_t>(pattern));
  }
  if (name == "random") {
    const int k = get_int(params, "k", 2);
    const int kind = get_int(params, "kind", 1);
    if (kind < 0 || kind > 2) throw DomainError("random kind must be 0, 1 or 2");
    const ProductSpace space = k == 2 ? ProductSpace::biased(p) : ProductSpace::uniform(k);
    return random_table(Domain(space, get_int(params, "n", 3)), get_seed(params), static_cast<RandomKind>(kind));
  }
  if (name == "constant_vectors") return constant_vectors(get_int(params, "k", 3), get_int(params, "n", 3));
  if (name == "full_vectors") return full_vectors(get_int(params, "k", 2), get_int(params, "n", 2));
  if (name == "star_vectors") return star_vectors(get_int(params, "k", 2), get_int(params, "n", 2));
  if (name == "random_vectors") {
    return random_vectors(get_int(params, "k", 3), get_int(params, "n", 3), get_seed(params),
                          get(params, "keep", 0.5));
  }
  throw ConfigError("unknown generator '" + std::string(name) + "'");
}

std::vector<std::string> example_names() {
  return {"dictator",  "and",    "threshold",        "majority",     "tribes_dual",  "sharpness",
          "symmetric", "random", "constant_vectors", "full_vectors", "star_vectors", "random_vectors"};
}

}  // namespace hyperc
