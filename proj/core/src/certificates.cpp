#include <cmath>
#include <limits>
#include <string>

#include "hyperc/errors.hpp"
#include "hyperc/inequalities.hpp"
#include "sweep.hpp"

namespace hyperc {

const char* to_string(GlobalnessKind k) noexcept {
  return k == GlobalnessKind::derivative ? "derivative" : "restriction";
}

bool GlobalnessCertificate::bounded() const noexcept { return std::isfinite(r); }

namespace {

constexpr double kTieTolerance = 1e-12;

GlobalnessCertificate certify(const FunctionTable& f, GlobalnessKind kind, double norm_p, int d,
                              double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("globalness scale gamma must be > 0");
  if (!(norm_p >= 1.0)) throw DomainError("globalness norm index must be >= 1");
  if (d < 0 || d > f.domain().n()) {
    throw DomainError("certificate depth " + std::to_string(d) + " outside [0, n]");
  }
  GlobalnessCertificate cert;
  cert.kind = kind;
  cert.norm_p = norm_p;
  cert.depth = d;
  cert.gamma = gamma;

  const double base = lp_norm(f, norm_p);
  if (base > gamma * (1.0 + kTieTolerance)) {
    cert.r = std::numeric_limits<double>::infinity();
    cert.witness_norm = base;
    return cert;
  }
  cert.r = 0.0;
  cert.witness_norm = base;
  bool have = false;
  auto consider = [&](SubsetMask s, const Assignment& x, const FunctionTable& g) {
    const double norm = lp_norm(g, norm_p);
    const double ratio = std::pow(norm / gamma, 1.0 / s.size());
    const bool tie = have && std::abs(ratio - cert.r) <= kTieTolerance * std::max(ratio, cert.r);
    bool take = !have || (!tie && ratio > cert.r);
    if (tie) {
      take = detail::witness_less(s, x, cert.witness.set, cert.witness.x);
      cert.r = std::max(cert.r, ratio);
    } else if (take) {
      cert.r = ratio;
    }
    if (take) {
      cert.witness = Witness{s, x};
      cert.witness_norm = norm;
      have = true;
    }
  };
  if (kind == GlobalnessKind::derivative) {
    detail::for_each_derivative(f, 1, d, consider);
  } else {
    detail::for_each_restriction(f, 1, d, consider);
  }
  return cert;
}

}  // namespace

GlobalnessCertificate certify_derivative_global(const FunctionTable& f, double norm_p, int d,
                                                double gamma) {
  return certify(f, GlobalnessKind::derivative, norm_p, d, gamma);
}

GlobalnessCertificate certify_restriction_global(const FunctionTable& f, double norm_p, int d,
                                                 double gamma) {
  return certify(f, GlobalnessKind::restriction, norm_p, d, gamma);
}

}  // namespace hyperc
