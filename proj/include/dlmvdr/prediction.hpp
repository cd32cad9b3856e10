#pragma once

#include <json.hpp>

#include "dlmvdr/asymptotics.hpp"
#include "dlmvdr/deteq.hpp"
#include "dlmvdr/model.hpp"

namespace dlmvdr::cli {

// Everything the asymptotic theory says about one scenario.
struct Prediction {
  model::CanonicalModel canonical;
  deteq::DetEq deq;
  deteq::BoundReport bounds;  // fixed-point envelope plus the variance floor
  asymptotics::FirstOrder first;
  double snr_bar_s = 0.0;
  double snr_bar_u = 0.0;
  asymptotics::VarianceComponents components;
  double v_lower = 0.0;
  double sigma_s2 = 0.0;
  double sigma_u2 = 0.0;
  asymptotics::SigmaMatrix sigma;
  asymptotics::CltCoefficients coeffs;
  double mse_bar = 0.0;
  double sigma_mse2 = 0.0;
  int fp_iterations = 0;
};

Prediction compute_prediction(const model::Scenario& scenario);

nlohmann::json prediction_to_json(const Prediction& p);

}  // namespace dlmvdr::cli
