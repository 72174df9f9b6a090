#pragma once

#include <json.hpp>

#include "lrd/estimation.hpp"
#include "lrd/reference.hpp"

namespace lrd {

// Keys: estimator, d_tilde, c_tilde, d_hat_hat, alpha_hat, alpha_tilde, ell1,
// ell2, ci95, gof_stat, gof_pvalue, gof_dof, sigma2, x_tilde, scales,
// log_t_values (and gamma when requested).
nlohmann::json to_json(const EstimateReport& rep, bool include_gamma = false);

// Same shape for the reference estimators; wavelet-only fields are null.
nlohmann::json to_json(const LocalWhittleResult& r);
nlohmann::json to_json(const FexpResult& r);

}  // namespace lrd
