#ifndef CASIMIR_TESTS_ORACLES_HPP
#define CASIMIR_TESTS_ORACLES_HPP

// Independent reference computations for the test and acceptance suites.
// Everything here is deliberately written against the published formulas with
// its own arithmetic and integration machinery, not by calling the library's
// evaluation paths.

#include <cstddef>
#include <functional>

#include "casimir/core.hpp"

namespace oracles {

struct Pair {
  double d00;  // Delta_T Pi00 / hbar
  double dpi;  // Delta_T Pi / hbar
};

/// Fixed-grid trapezoid evaluation of the thermal-correction integrals on the
/// Fermi-mapped interval; at xi = 0 the branch-crossing region is mapped by
/// u = sqrt(t* - t) and the remainder integrated directly.
Pair brute_force_thermal(double xi, double k_perp, double temperature_k,
                         const casimir::GrapheneParams& g, std::size_t nodes);

/// Integrals of the real and imaginary parts of the lambda-summed integrand
/// (00 component), for the reality check at l >= 1.
struct Residual {
  double real_part;
  double imag_part;
};
Residual imag_residual(double xi, double k_perp, double temperature_k,
                       const casimir::GrapheneParams& g, std::size_t nodes);

/// Recursive adaptive Simpson integration.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

/// Y_l through adaptive Simpson at 1e-12.
double y_l_simpson(int l);

/// Y_1 through the alternating exponential-integral series (second route).
double y1_series();

/// Closed-form |P|/B for two ideal-metal half-spaces: geometric series in
/// e^{-n y_l}. te_static_mode adds the TE contribution of the l = 0 term.
double ideal_metal_pressure_norm(double a, double temperature_k, bool te_static_mode);

// Values frozen from a 50-digit computation of the defining expressions.
namespace frozen {
inline constexpr double xi1_300K = 246779025515306.05401;
inline constexpr double Y[11] = {0.0,
                                 0.1286768541359390003787,
                                 0.02309691851719207648709,
                                 0.007643620614414382229933,
                                 0.003380701114999167525498,
                                 0.00177331936012924247365,
                                 0.001040622581463186306465,
                                 0.0006610511630643392021303,
                                 0.0004454238729678353106839,
                                 0.0003141004641373587822324,
                                 0.0002296491719639633600678};
// pol_zero_temperature at xi = xi1(300 K), k = 10 xi1/c, gap 0.1 eV, vF = c/300
inline constexpr double zeroT_q_tilde = 823623.41120631313977;
inline constexpr double zeroT_phi = 1448919.3913149009111;
inline constexpr double zeroT_pi00 = 1056154.0597811704597;
inline constexpr double zeroT_pi = 7.1644794010590670451e17;
// Phi at hbar q c = 2 * gap for gap = 0.05 eV
inline constexpr double phi_gap_edge = 1013546.1438522983282;
// thermal correction, vF = c/300, T = 300 K:
//   A: xi = xi1,   k = 10 xi1/c, gapless
//   B: xi = 2 xi1, k = 2 xi1/c,  gap 0.05 eV
//   C: xi = 0,     k = 10 xi1/c, gapless
inline constexpr double thermal_A00 = 77177.7912156556088;
inline constexpr double thermal_Api = 5.2252796590479473e16;
inline constexpr double thermal_B00 = 269.788222509798333;
inline constexpr double thermal_Bpi = 7.3123377920628687e14;
inline constexpr double thermal_C00 = 898890945.480406737;
inline constexpr double thermal_Cpi = -4.07312059769288288e16;
// asymptotic coefficients (Eq.-16 form) at l = 1, k = xi1/c, vF = c/300
inline constexpr double eq16_r_tm = 0.016594497197521934498;
inline constexpr double eq16_r_te = -0.0083667611160125458133;
inline constexpr double zeta3 = 1.2020569031595942854;
// static longitudinal polarizability alpha*pi*c/(2 vF) at vF = c/300
inline constexpr double alpha_par_static = 3.4387963833551223835;
}  // namespace frozen

}  // namespace oracles

#endif
