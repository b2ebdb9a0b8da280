#include "casimir/response.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace casimir {

ResponseSet responses_from_tensor(const PolTensorValue& pt) {
  if (!(pt.k_perp > 0.0))
    throw std::domain_error("responses_from_tensor: k_perp must be positive");
  const double pi = std::numbers::pi;
  const double c = constants.c;
  const double k = pt.k_perp;
  const double xi = pt.xi;
  // Gaussian e^2 = alpha hbar c [J m]; the only place the charge appears.
  const double e2 = constants.alpha * constants.hbar * c;

  ResponseSet r;
  r.alpha_par = pt.pi00_over_hbar / (2.0 * k);
  r.eps_par = 1.0 + r.alpha_par;
  r.chi_par = -pt.pi00_over_hbar / (4.0 * pi * e2);
  if (xi > 0.0) {
    r.alpha_perp = c * c * pt.pi_over_hbar / (2.0 * k * xi * xi);
    r.eps_perp = 1.0 + *r.alpha_perp;
    r.chi_perp = -c * c * pt.pi_over_hbar / (4.0 * pi * e2 * xi * xi);
    r.sigma_par = xi * pt.pi00_over_hbar / (4.0 * pi * k * k);
    r.sigma_perp = c * c * pt.pi_over_hbar / (4.0 * pi * k * k * xi);
  }
  return r;
}

}  // namespace casimir
