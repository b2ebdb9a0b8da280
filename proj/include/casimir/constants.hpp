#ifndef CASIMIR_CONSTANTS_HPP
#define CASIMIR_CONSTANTS_HPP

namespace casimir {

/// Fundamental constants, SI (CODATA 2018). All formulas in this library carry
/// hbar, c and k_B explicitly, so switching unit systems is a matter of
/// swapping this table.
struct PhysicalConstants {
  double c = 299792458.0;         // speed of light [m/s]
  double hbar = 1.054571817e-34;  // reduced Planck constant [J s]
  double k_B = 1.380649e-23;      // Boltzmann constant [J/K]
  double alpha = 7.2973525693e-3; // fine-structure constant
};

inline constexpr PhysicalConstants constants{};

/// 1 eV in joules; used only for unit conversion at input boundaries.
inline constexpr double electron_volt = 1.602176634e-19;

/// Default Fermi velocity of graphene [m/s]. Not fixed by the Dirac model
/// itself; this value reproduces the reference thermal-effect and
/// approximation-error curves (see decisions ledger) and is configurable
/// everywhere a GrapheneParams is accepted. The textbook c/300 is also
/// common in the literature.
inline constexpr double default_fermi_velocity = 1.05e6;

}  // namespace casimir

#endif
