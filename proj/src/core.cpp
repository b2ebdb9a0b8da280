#include "casimir/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace casimir {

GrapheneParams GrapheneParams::with_gap_ev(double delta_ev) {
  GrapheneParams g;
  g.gap_j = delta_ev * electron_volt;
  g.validate();
  return g;
}

void GrapheneParams::validate() const {
  if (!(gap_j >= 0.0))
    throw std::domain_error("graphene mass gap must be >= 0");
  if (!(vf_ratio > 0.0 && vf_ratio < 1.0))
    throw std::domain_error("vF/c must lie in (0, 1), got " + std::to_string(vf_ratio));
  if (!(alpha > 0.0))
    throw std::domain_error("fine-structure constant must be positive");
}

double matsubara_frequency(int l, double temperature_k) {
  if (!(temperature_k > 0.0))
    throw std::domain_error("matsubara_frequency: temperature must be positive");
  if (l < 0)
    throw std::domain_error("matsubara_frequency: index must be non-negative");
  return 2.0 * std::numbers::pi * constants.k_B * temperature_k *
         static_cast<double>(l) / constants.hbar;
}

ThermalState ThermalState::at(int l, double temperature_k) {
  return {temperature_k, l, matsubara_frequency(l, temperature_k)};
}

TransverseMomentum::TransverseMomentum(double k) : k_perp(k) {
  if (!(k >= 0.0)) throw std::domain_error("k_perp must be >= 0");
}

QFactors q_factors(double xi, double k_perp, const GrapheneParams& g) {
  const double xc = xi / constants.c;
  const double q = std::hypot(k_perp, xc);
  const double qt = std::hypot(g.vf_ratio * k_perp, xc);
  return {q, qt};
}

}  // namespace casimir
