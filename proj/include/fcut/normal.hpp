#pragma once

namespace fcut {

// Standard normal CDF.
double norm_cdf(double x);

// Inverse standard normal CDF (Wichura's AS241, PPND16). Relative accuracy
// about 1e-16 over (0, 1). Throws fcut::Error for p outside (0, 1).
double norm_quantile(double p);

// Normal N(mean, sd^2) truncated to [lower, upper].
struct TruncNormalSpec {
  double mean = 1.0;
  double sd = 1.0;
  double lower = -5.0;
  double upper = 5.0;
};

// Quantile function of the truncated normal by CDF inversion. p = 0 and
// p = 1 return the truncation bounds exactly. Throws for p outside [0, 1] or
// an invalid spec.
double tn_quantile(const TruncNormalSpec& spec, double p);

}  // namespace fcut
