#pragma once

// Constants recorded from seeded calibration runs. The checks that use them are regression locks.
namespace oppenheim::analysis::calibration {

// |I(alpha)| <= integral_envelope * (2d - 1) * min(P, 1/(P alpha)); the maximum sits at alpha -> 0
inline constexpr double integral_envelope = 1.0 + 1e-9;
// vdc_scan(20240611, 10^4): observed max 1.0598
inline constexpr double vdc_residual = 1.1;
// weyl_ratio_scan over q in {1, 2, 1/2, -3}, P in {300, 1000}: observed max 5.54
inline constexpr double weyl_ratio = 6.0;
// |hat(alpha)| exp(alpha / u(alpha)) on [1, 1000]: observed max 1.2151 at alpha = 1
inline constexpr double kernel_decay = 1.25;
// r2_moment(N) / (N log N) for N = 10^3 .. 10^6: observed 5.144, 4.876, 4.703, 4.584
inline constexpr double r2_growth = 5.2;

}  // namespace oppenheim::analysis::calibration
