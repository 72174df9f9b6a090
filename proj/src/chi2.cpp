#include "lrd/chi2.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "lrd/errors.hpp"

namespace lrd::chi2 {

namespace {
void check_dof(double dof) {
  if (!(dof > 0.0) || !std::isfinite(dof)) throw DomainError("chi2: degrees of freedom must be positive");
}
}  // namespace

double cdf(double x, double dof) {
  check_dof(dof);
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(dof / 2.0, x / 2.0);
}

double sf(double x, double dof) {
  check_dof(dof);
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

double quantile(double p, double dof) {
  check_dof(dof);
  if (!(p > 0.0 && p < 1.0)) throw DomainError("chi2::quantile: p must lie in (0, 1)");
  return 2.0 * boost::math::gamma_p_inv(dof / 2.0, p);
}

}  // namespace lrd::chi2
