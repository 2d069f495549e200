#pragma once

// Named example functions and families.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperc/families.hpp"
#include "hyperc/space.hpp"

namespace hyperc {

/// f(x) = x_i on ({0,1}^n, mu_p).
FunctionTable dictator(int n, int i, double p);
/// 1 iff x_0 = ... = x_{t-1} = 1.
FunctionTable and_t(int n, int t, double p);
/// 1 iff sum x_i >= t.
FunctionTable threshold(int n, int t, double p);
/// Threshold at (n+1)/2; n must be odd.
FunctionTable majority(int n, double p);
/// Tribes with blocks of the given size intersected with the dual family:
/// some block is fully contained and every block is hit.
FunctionTable tribes_dual(int n, int block_size, double p);
/// prod_{j<d} sum_{i in block j} (x_i - p) with p = d/n and blocks of size n/d.
FunctionTable sharpness_fnd(int n, int d);
/// f(x) = bit |x| of pattern: the symmetric Boolean function with that profile.
FunctionTable symmetric_boolean(int n, double p, std::uint32_t pattern);

enum class RandomKind { boolean, gaussian, uniform };

/// Independent entries from mt19937_64(seed).
FunctionTable random_table(const Domain& domain, std::uint64_t seed, RandomKind kind = RandomKind::gaussian);

/// {(c, ..., c) : c in [k]}.
VectorFamily constant_vectors(int k, int n);
/// [k]^n.
VectorFamily full_vectors(int k, int n);
/// {z : z_0 = 0}.
VectorFamily star_vectors(int k, int n);
/// Each vector kept independently with the given probability.
VectorFamily random_vectors(int k, int n, std::uint64_t seed, double keep);

/// The cyclic shift i -> i+1 mod n (empty for n <= 1).
std::vector<Permutation> cyclic_generators(int n);

using ParamMap = std::map<std::string, double, std::less<>>;
using Example = std::variant<FunctionTable, VectorFamily>;

/// Names: dictator(n,i,p), and(n,t,p), threshold(n,t,p), majority(n,p),
/// tribes_dual(n,size,p), sharpness(n,d), symmetric(n,p,pattern),
/// random(n,k,seed,kind,p) with kind 0 boolean / 1 gaussian / 2 uniform,
/// constant_vectors(k,n), full_vectors(k,n), star_vectors(k,n),
/// random_vectors(k,n,seed,keep). Missing params take documented defaults;
/// unknown names throw ConfigError and bad values throw DomainError.
Example generate_example(std::string_view name, const ParamMap& params);

/// Every name accepted by generate_example.
std::vector<std::string> example_names();

}  // namespace hyperc
