#pragma once

// Averaging, Laplacians, the Efron-Stein decomposition, the noise operator and
// discrete derivatives on (Omega^n, mu^n), plus the p-biased Fourier transform
// for k = 2.

#include <vector>

#include "hyperc/space.hpp"

namespace hyperc {

/// E_S f: resamples the coordinates of S and averages.
FunctionTable average_E(const FunctionTable& f, SubsetMask s);

/// L_S f = (tensor over i in S of I - E_i) f.
FunctionTable laplacian_L(const FunctionTable& f, SubsetMask s);

/// The 2^n orthogonal parts f^{=T} = E_{T^c} L_T f, indexed by mask bits.
class EfronSteinDecomposition {
 public:
  EfronSteinDecomposition(Domain domain, std::vector<FunctionTable> parts);

  const Domain& domain() const noexcept { return domain_; }
  const FunctionTable& part(SubsetMask t) const { return parts_.at(t.bits()); }
  const std::vector<FunctionTable>& parts() const noexcept { return parts_; }

  /// Sum of the parts with |T| = d.
  FunctionTable level(int d) const;
  /// Pointwise sum of every part.
  FunctionTable sum() const;

 private:
  Domain domain_;
  std::vector<FunctionTable> parts_;
};

/// Full decomposition; throws ResourceError when 2^n * k^n exceeds 2^26 entries.
EfronSteinDecomposition efron_stein(const FunctionTable& f);

/// f^{=d}, computed without materializing the parts of other levels.
FunctionTable level_part(const FunctionTable& f, int d);

/// ||f^{=d}||_2^2 for every d = 0..n.
std::vector<double> level_weights(const FunctionTable& f);

/// T_rho f via the resampling kernel (rho I + (1 - rho) E)^{tensor n}; rho in [0, 1].
FunctionTable noise_resample(const FunctionTable& f, double rho);

/// T_rho f = sum_S rho^{|S|} f^{=S}. Any finite rho is accepted; rho > 1 is a
/// formal extension with no resampling meaning.
FunctionTable noise_spectral(const FunctionTable& f, double rho);

/// D_{S,x} f = [L_S f]_{S -> x}, a table on the n - |S| remaining coordinates.
FunctionTable derivative_D(const FunctionTable& f, SubsetMask s, std::span<const int> x);

/// Fourier coefficients with respect to the mu_p characters, indexed by mask bits.
struct FourierSpectrum {
  double p = 0.5;
  int n = 0;
  std::vector<double> coeffs;

  double operator[](SubsetMask s) const { return coeffs.at(s.bits()); }
};

/// chi_S(x) = prod_{i in S} (x_i - p) / sqrt(p(1-p)) on a k = 2 domain.
FunctionTable character(const Domain& domain, SubsetMask s);

/// Coefficients f^(S) = <f, chi_S>; throws UnsupportedError unless k = 2.
FourierSpectrum fourier_spectrum(const FunctionTable& f);
/// As above, additionally checking that the domain is mu_p.
FourierSpectrum fourier_spectrum(const FunctionTable& f, double p);

/// sum_S f^(S) chi_S on the given k = 2 domain.
FunctionTable synthesize(const FourierSpectrum& spectrum, const Domain& domain);

}  // namespace hyperc
