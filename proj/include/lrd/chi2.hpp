#pragma once

namespace lrd::chi2 {

double cdf(double x, double dof);
// Upper tail 1 - cdf, computed without cancellation.
double sf(double x, double dof);
double quantile(double p, double dof);

}  // namespace lrd::chi2
