#include "lrd/report.hpp"

namespace lrd {

namespace {

nlohmann::json blank(const char* estimator) {
  nlohmann::json j;
  j["estimator"] = estimator;
  for (const char* key : {"d_tilde", "c_tilde", "d_hat_hat", "alpha_hat", "alpha_tilde", "ell1", "ell2", "ci95",
                          "gof_stat", "gof_pvalue", "scales", "log_t_values"}) {
    j[key] = nullptr;
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const EstimateReport& rep, bool include_gamma) {
  nlohmann::json j;
  j["estimator"] = "wavelet";
  j["d_tilde"] = rep.d_tilde;
  j["c_tilde"] = rep.c_tilde;
  j["d_hat_hat"] = rep.d_hat_hat;
  j["alpha_hat"] = rep.selection.alpha_hat;
  j["alpha_tilde"] = rep.selection.alpha_tilde;
  j["ell1"] = rep.selection.ell_stage1;
  j["ell2"] = rep.ell2;
  j["ci95"] = {rep.ci95[0], rep.ci95[1]};
  j["gof_stat"] = rep.gof_stat;
  j["gof_pvalue"] = rep.gof_pvalue;
  j["gof_dof"] = rep.gof_dof;
  j["sigma2"] = rep.sigma2;
  j["x_tilde"] = rep.x_tilde;
  j["scales"] = rep.scales;
  j["log_t_values"] = rep.log_t_values;
  j["stage1"] = {{"alpha_grid", rep.selection.alpha_grid},
                 {"q_values", rep.selection.q_values},
                 {"scales", rep.selection.scales}};
  if (include_gamma) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < rep.gamma_hat.gamma.rows(); ++i) {
      std::vector<double> row(rep.gamma_hat.gamma.cols());
      for (Eigen::Index k = 0; k < rep.gamma_hat.gamma.cols(); ++k) row[k] = rep.gamma_hat.gamma(i, k);
      rows.push_back(row);
    }
    j["gamma"] = {{"d", rep.gamma_hat.d}, {"ratios", rep.gamma_hat.ratios}, {"matrix", rows}};
  }
  return j;
}

nlohmann::json to_json(const LocalWhittleResult& r) {
  auto j = blank("local_whittle");
  j["d_tilde"] = r.d;
  j["m"] = r.m;
  return j;
}

nlohmann::json to_json(const FexpResult& r) {
  auto j = blank("fexp");
  j["d_tilde"] = r.d;
  j["order"] = r.order;
  return j;
}

}  // namespace lrd
