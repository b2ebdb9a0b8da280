#ifndef CASIMIR_POLTENSOR_HPP
#define CASIMIR_POLTENSOR_HPP

#include <optional>

#include "casimir/core.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// The two independent components of the graphene polarization tensor at one
/// (frequency, transverse wave number) point, stored as Pi/hbar ratios:
/// pi00_over_hbar [rad/m] and pi_over_hbar [(rad/m)^3]. Only these ratios
/// enter the reflection coefficients.
struct PolTensorValue {
  double pi00_over_hbar = 0.0;
  double pi_over_hbar = 0.0;
  double xi = 0.0;     // imaginary frequency [rad/s]
  double k_perp = 0.0; // [rad/m]
  std::optional<int> l;  // set when evaluated at a Matsubara point
};

/// How the temperature dependence of the tensor is treated.
///
/// EXACT                     full thermal correction at every l
/// ASYMPTOTIC_L_GE_1         Y_l closed form at l >= 1 (gapless only), exact l = 0
/// ZERO_T_TENSOR_AT_MATSUBARA  no thermal correction at l >= 1, exact l = 0
/// ZERO_T_TENSOR_ALL_L       no thermal correction anywhere (temperature enters
///                           only through the Matsubara sampling); this is the
///                           implicit-temperature-only evaluation
/// ZERO_TEMPERATURE          the T = 0 tensor; the Lifshitz engine integrates
///                           it over continuous frequency
enum class EvaluationMethod {
  EXACT,
  ASYMPTOTIC_L_GE_1,
  ZERO_T_TENSOR_AT_MATSUBARA,
  ZERO_T_TENSOR_ALL_L,
  ZERO_TEMPERATURE,
};

/// Phi(xi, k_perp) [1/m]. gap_j is the gap energy (c*Delta in momentum form).
/// Gapless sheets give pi*q_tilde exactly; deep in the gapped regime
/// (hbar*q_tilde*c << gap) a series branch avoids the cancellation of the
/// leading gap terms.
double phi(double q_tilde, double gap_j, double graphene_alpha = constants.alpha);

/// Zero-temperature tensor at continuous imaginary frequency.
PolTensorValue pol_zero_temperature(double xi, double k_perp, const GrapheneParams& g);

/// Thermal correction (Delta_T Pi00/hbar, Delta_T Pi/hbar) at imaginary
/// frequency xi >= 0 (Matsubara or continuous) and temperature T.
/// The transverse-momentum integral runs in the Fermi-weight variable
/// t = hbar*c*Gamma/(k_B T) with relative tolerance `epsrel`.
struct ThermalIncrement {
  double d_pi00_over_hbar = 0.0;
  double d_pi_over_hbar = 0.0;
};
ThermalIncrement thermal_correction(double xi, double k_perp, double temperature_k,
                                    const GrapheneParams& g, double epsrel = 1e-9,
                                    QuadDiag* diag = nullptr);

/// Closed-form thermal correction at l >= 1 for gapless graphene:
/// (alpha k^2 Y_l / q_tilde, alpha k^2 q_tilde Y_l).
ThermalIncrement thermal_correction_asymptotic(int l, double k_perp, double temperature_k,
                                               const GrapheneParams& g);

/// Y_l = 4 int_0^inf du u^2 / ((e^{pi l u} + 1)(1 + u^2)), l >= 1, cached.
double y_l(int l);

/// 4 (vF/c)^2 k^2 / q_tilde_l^2, the expansion parameter behind the
/// asymptotic reflection coefficients.
double small_parameter(int l, double k_perp, double temperature_k, const GrapheneParams& g);

/// Full tensor at the Matsubara point (l, T) under the requested method.
PolTensorValue pol_tensor(int l, double k_perp, double temperature_k,
                          const GrapheneParams& g, EvaluationMethod method,
                          double thermal_epsrel = 1e-9, QuadDiag* diag = nullptr);

}  // namespace casimir

#endif
