#include "casimir/poltensor.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

// Fermi-weight tail: the integrand carries 1/(e^t + 1); beyond t0 + 36.85 the
// weight is below 1e-16 of its starting value.
constexpr double fermi_tail = 36.84136148790473;  // -ln(1e-16)

double fermi(double t) { return 1.0 / (std::exp(t) + 1.0); }

}  // namespace

double phi(double q_tilde, double gap_j, double /*graphene_alpha*/) {
  if (q_tilde < 0.0) throw std::domain_error("phi: q_tilde must be >= 0");
  if (gap_j < 0.0) throw std::domain_error("phi: gap must be >= 0");
  const double hbar = constants.hbar, c = constants.c;
  if (gap_j == 0.0) {
    if (q_tilde == 0.0)
      throw std::domain_error("phi: undefined at q_tilde = 0 for a gapless sheet");
    return pi * q_tilde;
  }
  const double p = gap_j / c;  // momentum scale c*Delta
  const double t = hbar * q_tilde / (2.0 * p);
  if (t < 1e-3) {
    // The leading gap terms cancel analytically; expand
    // 1 + (t^2-1) atan(t)/t = (4/3)t^2 - (8/15)t^4 + (12/35)t^6 - ...
    const double t2 = t * t;
    const double series =
        t2 * (4.0 / 3.0 +
              t2 * (-8.0 / 15.0 +
                    t2 * (12.0 / 35.0 + t2 * (-16.0 / 63.0 + t2 * (20.0 / 99.0)))));
    return (4.0 * p / hbar) * series;
  }
  return (4.0 / hbar) *
         (p + (hbar * hbar * q_tilde * q_tilde - 4.0 * p * p) / (2.0 * hbar * q_tilde) *
                  std::atan(t));
}

PolTensorValue pol_zero_temperature(double xi, double k_perp, const GrapheneParams& g) {
  g.validate();
  if (xi < 0.0 || k_perp < 0.0)
    throw std::domain_error("pol_zero_temperature: negative frequency or wave number");
  PolTensorValue out;
  out.xi = xi;
  out.k_perp = k_perp;
  if (k_perp == 0.0) {
    if (xi == 0.0 && g.gap_j == 0.0)
      throw std::domain_error("pol_zero_temperature: undefined at the origin for a gapless sheet");
    return out;  // k_perp^2 prefactor kills both components
  }
  const auto [q, qt] = q_factors(xi, k_perp, g);
  (void)q;
  const double ph = phi(qt, g.gap_j);
  out.pi00_over_hbar = g.alpha * k_perp * k_perp * ph / (qt * qt);
  out.pi_over_hbar = g.alpha * k_perp * k_perp * ph;
  return out;
}

namespace {

// Integrand brackets of the thermal correction in the variable
// t = hbar c Gamma / (k_B T); the measure (q_perp/Gamma) dq_perp equals
// (k_B T/(hbar c)) dt exactly. All wave numbers in rad/m.
struct ThermalGeometry {
  double xi_c;    // xi/c
  double k;       // k_perp
  double vt;      // vF/c
  double qt2;     // q_tilde^2
  double gamma0;  // gap wave number c*Delta/hbar = E/(hbar c)
  double kappa;   // thermal wave number k_B T/(hbar c)

  // lambda-summed brackets for (00, Pi); real part taken after the sum
  std::pair<double, double> brackets(double t) const {
    const double g = t * kappa;  // Gamma
    const double qp2 = std::max(g * g - gamma0 * gamma0, 0.0);
    const double qp = std::sqrt(qp2);
    const double gap_term = 4.0 * vt * vt * gamma0 * gamma0 * k * k;
    const double w = 2.0 * vt * k * qp;
    std::complex<double> s00 = 0.0, spi = 0.0;
    for (const double lam : {1.0, -1.0}) {
      const std::complex<double> q_lam(qt2, -2.0 * lam * xi_c * g);
      const std::complex<double> n_lam = std::sqrt(q_lam * q_lam - w * w);
      const std::complex<double> m00(4.0 * g * g - qt2, 4.0 * lam * xi_c * g);
      const std::complex<double> mpi(
          xi_c * xi_c * qt2 - 4.0 * g * g * qt2 + gap_term, -4.0 * lam * xi_c * g * qt2);
      s00 += m00 / n_lam;
      spi += mpi / n_lam;
    }
    const double b00 = 1.0 + 0.5 * s00.real();
    const double bpi = -xi_c * xi_c + 0.5 * spi.real();
    return {b00, bpi};
  }

  // Magnitudes of the terms that cancel inside the brackets; the quadrature
  // cannot resolve the result below roundoff of these.
  std::pair<double, double> cancellation_scales(double t) const {
    const double g = t * kappa;
    const double qp2 = std::max(g * g - gamma0 * gamma0, 0.0);
    const double qp = std::sqrt(qp2);
    const double w = 2.0 * vt * k * qp;
    const std::complex<double> q_lam(qt2, -2.0 * xi_c * g);
    const std::complex<double> n_lam = std::sqrt(q_lam * q_lam - w * w);
    const double nmag = std::max(std::abs(n_lam), 1e-300);
    const double m00 = std::abs(std::complex<double>(4.0 * g * g - qt2, 4.0 * xi_c * g));
    const double mpi =
        std::abs(std::complex<double>(xi_c * xi_c * qt2 - 4.0 * g * g * qt2 +
                                          4.0 * vt * vt * gamma0 * gamma0 * k * k,
                                      -4.0 * xi_c * g * qt2));
    return {1.0 + m00 / nmag, xi_c * xi_c + mpi / nmag};
  }

  // Gapless brackets evaluated without subtractive cancellation. For
  // Delta = 0 the lambda sum collapses algebraically:
  //   b00 = 1 - Re N / qt2 = D / qt2,
  //   bpi = vk^2 (Im^2 N - Re N * D)/|N^2| - D,
  // with N^2 = qt2^2 - 4 s^2 q^2 - beta^2 - 4 i s q qt2, beta = 2 vk q and
  //   D = qt2 - Re N = 2 qt2^2 beta^2 / ((qt2^2 + R + |N^2|)(qt2 + Re N)),
  //   R = 4 s^2 q^2 + beta^2.
  // Every factor is a positive sum, so the suppressed regime
  // (4 vk^2 << qt2) keeps full relative precision.
  std::pair<double, double> brackets_gapless(double t) const {
    const double s = xi_c;
    const double q = t * kappa;
    const double vk = vt * k;
    const double beta = 2.0 * vk * q;
    const double R = 4.0 * s * s * q * q + beta * beta;
    const double X = qt2 * qt2 - R;   // Re N^2
    const double Y = -4.0 * s * q * qt2;  // Im N^2
    const double absn2 = std::hypot(X, Y);
    double re_n, im_n2sq;  // Re N and (Im N)^2
    if (X >= 0.0) {
      re_n = std::sqrt(0.5 * (absn2 + X));
      const double im_n = re_n > 0.0 ? Y / (2.0 * re_n) : 0.0;
      im_n2sq = im_n * im_n;
    } else {
      const double im_mag = std::sqrt(0.5 * (absn2 - X));
      re_n = -Y / (2.0 * im_mag);  // Y <= 0, principal root has Re >= 0
      im_n2sq = im_mag * im_mag;
    }
    const double D = 2.0 * qt2 * qt2 * beta * beta /
                     ((qt2 * qt2 + R + absn2) * (qt2 + re_n));
    const double b00 = D / qt2;
    const double bpi = absn2 > 0.0
                           ? vk * vk * (im_n2sq - re_n * D) / absn2 - D
                           : 0.0;
    return {b00, bpi};
  }

  // Static (xi = 0) integrand under u = sqrt(t* - t); the factor u of the
  // Jacobian cancels the 1/sqrt branch-point divergence analytically:
  //   f00 = nf (2u + 2 M00/S),  fpi = nf 2 Mpi/S,
  // where N = u S and S^2 = 2 vk kappa^2 (t* + t)(qt2 + beta)/(q* + q).
  std::pair<double, double> static_u_integrand(double u, double t_star,
                                               double qp_star) const {
    const double tdiff = u * u;  // t* - t, exact by construction
    const double t = t_star - tdiff;
    const double g = t * kappa;
    const double qp = std::sqrt(std::max(
        qp_star * qp_star - kappa * kappa * tdiff * (t_star + t), 0.0));
    const double beta = 2.0 * vt * k * qp;
    const double S = std::sqrt(2.0 * vt * k * kappa * kappa * (t_star + t) *
                               (qt2 + beta) / (qp_star + qp));
    const double m00 = 4.0 * g * g - qt2;
    const double mpi = -4.0 * g * g * qt2 + 4.0 * vt * vt * gamma0 * gamma0 * k * k;
    const double nf = fermi(t);
    return {nf * (2.0 * u + 2.0 * m00 / S), nf * 2.0 * mpi / S};
  }

  // Static brackets away from the branch point (used when the crossing lies
  // beyond the Fermi cutoff).
  std::pair<double, double> brackets_static(double t, double t_star, double qp_star) const {
    const double tdiff = t_star - t;
    const double g = t * kappa;
    const double qp = std::sqrt(std::max(
        qp_star * qp_star - kappa * kappa * tdiff * (t_star + t), 0.0));
    const double beta = 2.0 * vt * k * qp;
    const double n = std::sqrt(2.0 * vt * k * kappa * kappa * tdiff * (t_star + t) *
                               (qt2 + beta) / (qp_star + qp));
    const double m00 = 4.0 * g * g - qt2;
    const double mpi = -4.0 * g * g * qt2 + 4.0 * vt * vt * gamma0 * gamma0 * k * k;
    return {1.0 + m00 / n, mpi / n};
  }
};

}  // namespace

ThermalIncrement thermal_correction(double xi, double k_perp, double temperature_k,
                                    const GrapheneParams& g, double epsrel,
                                    QuadDiag* diag) {
  g.validate();
  if (!(temperature_k > 0.0))
    throw std::domain_error("thermal_correction: temperature must be positive");
  if (xi < 0.0 || k_perp < 0.0)
    throw std::domain_error("thermal_correction: negative frequency or wave number");

  const double c = constants.c, hbar = constants.hbar;
  ThermalGeometry geo;
  geo.xi_c = xi / c;
  geo.k = k_perp;
  geo.vt = g.vf_ratio;
  geo.qt2 = geo.vt * geo.vt * k_perp * k_perp + geo.xi_c * geo.xi_c;
  geo.gamma0 = g.gap_j / (hbar * c);
  geo.kappa = constants.k_B * temperature_k / (hbar * c);

  const double pref = 16.0 * g.alpha * geo.kappa / (geo.vt * geo.vt);
  const double t0 = geo.gamma0 / geo.kappa;
  const double t_end = t0 + fermi_tail;

  const std::string ctx = "thermal_correction(xi=" + std::to_string(xi) +
                          ", k=" + std::to_string(k_perp) + ")";

  // The gapped integrand evaluates the lambda sum by cancellation of large
  // complex terms; give the quadrature the roundoff floor it cannot beat.
  // The gapless paths are algebraically cancellation-free and need none.
  double floor00 = 0.0, floorpi = 0.0;
  if (g.gap_j > 0.0) {
    double mag00 = 0.0, magpi = 0.0;
    for (const double dt : {0.3, 1.5, 5.0}) {
      auto [m0, m1] = geo.cancellation_scales(t0 + dt);
      mag00 = std::max(mag00, m0);
      magpi = std::max(magpi, m1);
    }
    floor00 = 500.0 * std::numeric_limits<double>::epsilon() * mag00;
    floorpi = 500.0 * std::numeric_limits<double>::epsilon() * magpi;
  }

  ThermalIncrement out;
  if (xi > 0.0) {
    const bool gapless = g.gap_j == 0.0;
    auto f = [&geo, gapless](double t) {
      auto [b00, bpi] = gapless ? geo.brackets_gapless(t) : geo.brackets(t);
      const double nf = fermi(t);
      return std::pair{nf * b00, nf * bpi};
    };
    PairIntegral rI = integrate_pair(f, t0, t_end, epsrel, ctx, 512, floor00, floorpi);
    if (diag)
      diag->note(rI.neval,
                 std::max(rI.err_first / std::max(std::abs(rI.first), 1e-300),
                          rI.err_second / std::max(std::abs(rI.second), 1e-300)));
    out.d_pi00_over_hbar = pref * rI.first;
    out.d_pi_over_hbar = pref * rI.second;
    return out;
  }

  // Static case: N^2 crosses zero at q_perp* = q_tilde^2 / (2 (vF/c) k); past
  // that point the lambda sum is purely imaginary, so its real part vanishes
  // and the 00 bracket is exactly 1 (Fermi tail integrates to ln(1+e^-t*)).
  // The Pi bracket has an integrable 1/sqrt divergence at the crossing, cured
  // by u = sqrt(t* - t).
  if (k_perp == 0.0) {
    // Pure Fermi integral for 00; Pi vanishes with k^2.
    out.d_pi00_over_hbar = pref * std::log1p(std::exp(-t0));
    out.d_pi_over_hbar = 0.0;
    return out;
  }
  const double qp_star = geo.qt2 / (2.0 * geo.vt * k_perp);
  const double t_star = std::hypot(qp_star, geo.gamma0) / geo.kappa;
  if (t_star >= t_end) {
    // Crossing beyond the Fermi cutoff; integrand smooth on [t0, t_end].
    auto f = [&geo, t_star, qp_star](double t) {
      auto [b00, bpi] = geo.brackets_static(t, t_star, qp_star);
      const double nf = fermi(t);
      return std::pair{nf * b00, nf * bpi};
    };
    PairIntegral rI = integrate_pair(f, t0, t_end, epsrel, ctx, 512, floor00, floorpi);
    if (diag)
      diag->note(rI.neval,
                 std::max(rI.err_first / std::max(std::abs(rI.first), 1e-300),
                          rI.err_second / std::max(std::abs(rI.second), 1e-300)));
    out.d_pi00_over_hbar = pref * rI.first;
    out.d_pi_over_hbar = pref * rI.second;
    return out;
  }
  auto f = [&geo, t_star, qp_star](double u) {
    return geo.static_u_integrand(u, t_star, qp_star);
  };
  const double u_max = std::sqrt(t_star - t0);
  PairIntegral rI = integrate_pair(f, 0.0, u_max, epsrel, ctx, 512, floor00, floorpi);
  if (diag)
    diag->note(rI.neval,
               std::max(rI.err_first / std::max(std::abs(rI.first), 1e-300),
                        rI.err_second / std::max(std::abs(rI.second), 1e-300)));
  out.d_pi00_over_hbar = pref * (rI.first + std::log1p(std::exp(-t_star)));
  out.d_pi_over_hbar = pref * rI.second;
  return out;
}

double y_l(int l) {
  if (l < 1) throw std::domain_error("y_l: defined for l >= 1 only");
  static std::map<int, double> cache;
  static std::shared_mutex mutex;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
  }
  const double u_max = 41.5 / (pi * l);
  const double val = 4.0 * integrate_qag(
                               [l](double u) {
                                 return u * u /
                                        ((std::exp(pi * l * u) + 1.0) * (1.0 + u * u));
                               },
                               0.0, u_max, 1e-12, 0.0, "y_l(" + std::to_string(l) + ")");
  std::unique_lock lock(mutex);
  cache.emplace(l, val);
  return val;
}

ThermalIncrement thermal_correction_asymptotic(int l, double k_perp, double temperature_k,
                                               const GrapheneParams& g) {
  g.validate();
  if (g.gap_j != 0.0)
    throw UnsupportedError(
        "thermal_correction_asymptotic: the Y_l expansion holds for gapless sheets only");
  if (l < 1) throw std::domain_error("thermal_correction_asymptotic: l >= 1 required");
  const double xi = matsubara_frequency(l, temperature_k);
  const auto [q, qt] = q_factors(xi, k_perp, g);
  (void)q;
  const double y = y_l(l);
  return {g.alpha * k_perp * k_perp * y / qt, g.alpha * k_perp * k_perp * qt * y};
}

double small_parameter(int l, double k_perp, double temperature_k, const GrapheneParams& g) {
  if (l < 1) throw std::domain_error("small_parameter: l >= 1 required");
  const double xi = matsubara_frequency(l, temperature_k);
  const auto [q, qt] = q_factors(xi, k_perp, g);
  (void)q;
  const double vk = g.vf_ratio * k_perp;
  return 4.0 * vk * vk / (qt * qt);
}

PolTensorValue pol_tensor(int l, double k_perp, double temperature_k,
                          const GrapheneParams& g, EvaluationMethod method,
                          double thermal_epsrel, QuadDiag* diag) {
  const double xi = matsubara_frequency(l, temperature_k);
  PolTensorValue v = pol_zero_temperature(xi, k_perp, g);
  v.l = l;
  switch (method) {
    case EvaluationMethod::ZERO_TEMPERATURE:
    case EvaluationMethod::ZERO_T_TENSOR_ALL_L:
      break;
    case EvaluationMethod::ZERO_T_TENSOR_AT_MATSUBARA:
      if (l == 0) {
        const auto d = thermal_correction(xi, k_perp, temperature_k, g, thermal_epsrel, diag);
        v.pi00_over_hbar += d.d_pi00_over_hbar;
        v.pi_over_hbar += d.d_pi_over_hbar;
      }
      break;
    case EvaluationMethod::ASYMPTOTIC_L_GE_1:
      if (l == 0) {
        const auto d = thermal_correction(xi, k_perp, temperature_k, g, thermal_epsrel, diag);
        v.pi00_over_hbar += d.d_pi00_over_hbar;
        v.pi_over_hbar += d.d_pi_over_hbar;
      } else {
        const auto d = thermal_correction_asymptotic(l, k_perp, temperature_k, g);
        v.pi00_over_hbar += d.d_pi00_over_hbar;
        v.pi_over_hbar += d.d_pi_over_hbar;
      }
      break;
    case EvaluationMethod::EXACT: {
      const auto d = thermal_correction(xi, k_perp, temperature_k, g, thermal_epsrel, diag);
      v.pi00_over_hbar += d.d_pi00_over_hbar;
      v.pi_over_hbar += d.d_pi_over_hbar;
      break;
    }
  }
  return v;
}

}  // namespace casimir
