#include "dlmvdr/prediction.hpp"

#include <limits>

#include "dlmvdr/config.hpp"

namespace dlmvdr::cli {

Prediction compute_prediction(const model::Scenario& scenario) {
  Prediction p;
  p.canonical = model::canonicalize(scenario);
  const auto& cm = p.canonical;

  const auto fp = deteq::solve_fixed_point(cm.lambda, cm.t, cm.alpha, cm.n);
  p.fp_iterations = fp.iterations;
  p.deq = deteq::deterministic_equivalents(fp.delta, fp.delta_tilde, cm.lambda, cm.t, cm.alpha,
                                           cm.n);
  p.bounds = deteq::check_bounds(p.deq, cm.lambda, cm.t, cm.alpha, cm.m, cm.n);

  p.first = asymptotics::abar_bbar(cm.u, p.deq);
  std::tie(p.snr_bar_s, p.snr_bar_u) = asymptotics::first_order_snr(p.first.abar, p.first.bbar);
  p.components = asymptotics::variance_components(p.first.u_ek, p.deq);
  p.v_lower = asymptotics::v_lower_bound(p.deq, cm.t, cm.n);
  p.bounds.add("v_lower_bound", p.components.v, p.v_lower,
               std::numeric_limits<double>::infinity());
  std::tie(p.sigma_s2, p.sigma_u2) =
      asymptotics::snr_variances(p.first.u_ek, p.deq, p.components.v);
  p.sigma = asymptotics::sigma_matrix(p.first.u_ek, p.deq);
  p.coeffs = asymptotics::clt_coefficients(p.first.abar, p.first.bbar);
  std::tie(p.mse_bar, p.sigma_mse2) =
      asymptotics::mse_prediction(p.first.abar, p.first.bbar, p.sigma);
  return p;
}

nlohmann::json prediction_to_json(const Prediction& p) {
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& c : p.bounds.checks) {
    nlohmann::json entry = {{"name", c.name}, {"value", c.value}, {"pass", c.pass}};
    if (std::isfinite(c.lower)) entry["lower"] = c.lower;
    if (std::isfinite(c.upper)) entry["upper"] = c.upper;
    bounds.push_back(entry);
  }
  const char* mode =
      p.canonical.mode == model::TrainingMode::supervised ? "supervised" : "unsupervised";
  return nlohmann::json{
      {"M", p.canonical.m},
      {"N", p.canonical.n},
      {"alpha", p.canonical.alpha},
      {"training_mode", mode},
      {"c", p.canonical.c},
      {"snr_opt", p.canonical.snr_opt},
      {"u_norm2", p.canonical.u_norm2()},
      {"delta", p.deq.delta},
      {"delta_tilde", p.deq.delta_tilde},
      {"fp_iterations", p.fp_iterations},
      {"gamma", p.deq.gamma},
      {"gamma_tilde", p.deq.gamma_tilde},
      {"one_minus_gg", p.deq.one_minus_gg},
      {"abar", p.first.abar},
      {"bbar", p.first.bbar},
      {"u_ek", {p.first.u_ek[0], p.first.u_ek[1], p.first.u_ek[2], p.first.u_ek[3],
                p.first.u_ek[4]}},
      {"snr_bar_s", p.snr_bar_s},
      {"snr_bar_u", p.snr_bar_u},
      {"S", p.components.s},
      {"T_script", p.components.t},
      {"V", p.components.v},
      {"V_lower_bound", p.v_lower},
      {"sigma_s2", p.sigma_s2},
      {"sigma_u2", p.sigma_u2},
      {"sigma_matrix", {{"saa", p.sigma.saa}, {"sab", p.sigma.sab}, {"sbb", p.sigma.sbb}}},
      {"coeffs",
       {{"A_s", p.coeffs.a_s}, {"B_s", p.coeffs.b_s}, {"A_u", p.coeffs.a_u},
        {"B_u", p.coeffs.b_u}}},
      {"mse_bar", p.mse_bar},
      {"sigma_mse2", p.sigma_mse2},
      {"mse_coeffs", {{"A", -2.0}, {"B", 1.0}}},
      {"bound_report", {{"all_pass", p.bounds.all_pass}, {"checks", bounds}}},
  };
}

}  // namespace dlmvdr::cli
