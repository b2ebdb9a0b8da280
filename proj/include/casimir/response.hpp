#ifndef CASIMIR_RESPONSE_HPP
#define CASIMIR_RESPONSE_HPP

#include <optional>

#include "casimir/poltensor.hpp"

namespace casimir {

/// Response functions of a graphene sheet derived from the polarization
/// tensor. Susceptibilities and permittivities are dimensionless. The
/// density-density correlations and conductivities are Gaussian-unit
/// quantities and are NOT converted to SI; their dimensions are recorded in
/// the unit tags below. Transverse entries and the conductivities divide by
/// xi_l and are reported as absent at the zero Matsubara frequency.
struct ResponseSet {
  double alpha_par = 0.0;
  std::optional<double> alpha_perp;
  double eps_par = 0.0;
  std::optional<double> eps_perp;
  double chi_par = 0.0;  // -Pi00/(4 pi hbar e^2), e^2 = alpha hbar c (Gaussian)
  std::optional<double> chi_perp;
  std::optional<double> sigma_par;
  std::optional<double> sigma_perp;

  static constexpr const char* chi_units = "1/(J m^2), Gaussian";
  static constexpr const char* sigma_units = "m/s, Gaussian sheet conductivity";
};

/// Maps a tensor value to the response set. k_perp must be positive.
ResponseSet responses_from_tensor(const PolTensorValue& pt);

}  // namespace casimir

#endif
