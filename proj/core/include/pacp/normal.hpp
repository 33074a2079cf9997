#pragma once

namespace pacp {

// Phi(x).
double normal_cdf(double x);
// 1 - Phi(x), accurate in the upper tail.
double normal_sf(double x);
// Phi^{-1}(p) for p in (0, 1), Wichura's AS241 (PPND16), ~1e-16 relative error.
double normal_quantile(double p);
// Right-tail quantile z_alpha: P(Z > z_alpha) = alpha.
double z_quantile(double alpha);

}  // namespace pacp
