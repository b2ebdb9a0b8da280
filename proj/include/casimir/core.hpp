#ifndef CASIMIR_CORE_HPP
#define CASIMIR_CORE_HPP

#include <optional>

#include "casimir/constants.hpp"

namespace casimir {

/// Dirac-model description of one graphene sheet.
///
/// The mass gap is stored as the gap energy in joules (configs quote it in
/// eV; the conversion happens once, here). vf_ratio is v_F/c.
struct GrapheneParams {
  double gap_j = 0.0;
  double vf_ratio = default_fermi_velocity / constants.c;
  double alpha = constants.alpha;

  static GrapheneParams pristine() { return {}; }
  static GrapheneParams with_gap_ev(double delta_ev);

  void validate() const;  // throws std::domain_error

  friend bool operator==(const GrapheneParams&, const GrapheneParams&) = default;
};

/// One point of the Matsubara ladder.
struct ThermalState {
  double temperature;   // K
  int matsubara_index;  // l >= 0
  double xi;            // xi_l = 2 pi k_B T l / hbar [rad/s]

  static ThermalState at(int l, double temperature_k);
};

struct TransverseMomentum {
  double k_perp;  // [rad/m], >= 0
  explicit TransverseMomentum(double k);
};

/// xi_l = 2 pi k_B T l / hbar. Exact in l; throws std::domain_error for T <= 0
/// or l < 0.
double matsubara_frequency(int l, double temperature_k);

struct QFactors {
  double q;        // sqrt(k^2 + xi^2/c^2)
  double q_tilde;  // sqrt((vF/c)^2 k^2 + xi^2/c^2)
};

/// Wave numbers entering every reflection coefficient. Returns {0, 0} for the
/// all-zero input; callers that divide by q_tilde handle that point.
QFactors q_factors(double xi, double k_perp, const GrapheneParams& g);

}  // namespace casimir

#endif
