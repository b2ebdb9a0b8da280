#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

struct KahanSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Reflection products folded into the two Lifshitz integrands.
struct PointEval {
  double tm_product;
  double te_product;
};

PointEval reflection_products(const LayerStack& b1, const LayerStack& b2, int l, double xi,
                              double k, double temperature_k, EvaluationMethod method,
                              double thermal_epsrel, QuadDiag* diag) {
  PolTensorValue pt1, pt2;
  const PolTensorValue* t1 = nullptr;
  const PolTensorValue* t2 = nullptr;
  const bool continuous = l < 0;
  if (b1.graphene) {
    pt1 = continuous ? pol_zero_temperature(xi, k, *b1.graphene)
                     : pol_tensor(l, k, temperature_k, *b1.graphene, method,
                                  thermal_epsrel, diag);
    t1 = &pt1;
  }
  if (b2.graphene) {
    if (t1 && *b1.graphene == *b2.graphene) {
      t2 = t1;
    } else {
      pt2 = continuous ? pol_zero_temperature(xi, k, *b2.graphene)
                       : pol_tensor(l, k, temperature_k, *b2.graphene, method,
                                    thermal_epsrel, diag);
      t2 = &pt2;
    }
  }
  const ReflectionPair r1 =
      continuous ? stack_reflection_zero_temperature(b1, xi, k, t1)
                 : stack_reflection(b1, l, k, temperature_k, method, thermal_epsrel, diag, t1);
  const ReflectionPair r2 =
      continuous ? stack_reflection_zero_temperature(b2, xi, k, t2)
                 : stack_reflection(b2, l, k, temperature_k, method, thermal_epsrel, diag, t2);
  return {r1.r_tm * r2.r_tm, r1.r_te * r2.r_te};
}

double pressure_integrand(double y, const PointEval& p) {
  const double e = std::exp(-y);
  const double xtm = p.tm_product * e;
  const double xte = p.te_product * e;
  if (xtm >= 1.0 || xte >= 1.0)
    throw NumericalError("lifshitz: |r1 r2| >= 1, reflection bound violated");
  return y * y * (xtm / (1.0 - xtm) + xte / (1.0 - xte));
}

double energy_integrand(double y, const PointEval& p) {
  const double e = std::exp(-y);
  const double xtm = p.tm_product * e;
  const double xte = p.te_product * e;
  if (xtm >= 1.0 || xte >= 1.0)
    throw NumericalError("lifshitz: |r1 r2| >= 1, reflection bound violated");
  return y * (std::log1p(-xtm) + std::log1p(-xte));
}

}  // namespace

LifshitzEngine::LifshitzEngine(EngineOptions opts) : opts_(opts) {
  if (opts_.threads == 0)
    opts_.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (opts_.threads < 1) opts_.threads = 1;
}

// Dimensionless y-integral of one Matsubara term:
//   pressure:    int y^2 sum_pol x/(1-x) dy,   x = r1 r2 e^{-y}
//   free energy: int y   sum_pol ln(1-x) dy
// with y = 2 a q and k^2 = (y - y_l)(y + y_l)/(2a)^2.
double LifshitzEngine::term_integral(double a, double temperature_k, int l,
                                     const LayerStack& b1, const LayerStack& b2,
                                     EvaluationMethod method, Quantity quantity,
                                     QuadDiag* diag) const {
  const double xi = matsubara_frequency(l, temperature_k);
  const double y_l = 2.0 * a * xi / constants.c;
  if (y_l >= opts_.y_cut) return 0.0;
  const bool want_pressure = quantity == Quantity::Pressure;
  auto f = [&](double y) {
    const double k = std::sqrt((y - y_l) * (y + y_l)) / (2.0 * a);
    const PointEval p = reflection_products(b1, b2, l, xi, k, temperature_k, method,
                                            opts_.thermal_reltol, diag);
    return want_pressure ? pressure_integrand(y, p) : energy_integrand(y, p);
  };
  return integrate_qag(f, y_l, opts_.y_cut, opts_.k_integral_reltol, 0.0,
                       "lifshitz term l=" + std::to_string(l), diag);
}

LifshitzResult LifshitzEngine::evaluate(double a, double temperature_k,
                                        const LayerStack& body1, const LayerStack& body2,
                                        EvaluationMethod method, Quantity quantity) const {
  if (!(a > 0.0)) throw std::domain_error("lifshitz: separation must be positive");
  if (!(temperature_k > 0.0)) throw std::domain_error("lifshitz: temperature must be positive");
  body1.validate();
  body2.validate();
  if (method == EvaluationMethod::ZERO_TEMPERATURE)
    return evaluate_zero_temperature(a, body1, body2, quantity);

  LifshitzResult res;
  if (body1.dark() || body2.dark()) {
    if (quantity == Quantity::Pressure)
      res.pressure = 0.0;
    else
      res.free_energy_per_area = 0.0;
    return res;
  }

  // Matsubara terms are independent; evaluate them in fixed-size batches,
  // workers striped across each batch, then reduce sequentially so the result
  // does not depend on the thread count.
  std::vector<double> terms;  // raw y-integrals, prime factor not applied
  std::vector<QuadDiag> term_diag;
  KahanSum sum;
  long l_stop = -1;
  const int batch = std::max(8, 4 * opts_.threads);

  auto eval_range = [&](long l_begin, long l_end) {
    const long count = l_end - l_begin;
    std::vector<double> vals(count);
    std::vector<QuadDiag> diags(count);
    auto worker = [&](int stripe) {
      for (long i = stripe; i < count; i += opts_.threads)
        vals[i] = term_integral(a, temperature_k, static_cast<int>(l_begin + i), body1, body2,
                                method, quantity, &diags[i]);
    };
    if (opts_.threads == 1) {
      worker(0);
    } else {
      std::vector<std::future<void>> futs;
      futs.reserve(opts_.threads);
      for (int s = 0; s < opts_.threads; ++s)
        futs.push_back(std::async(std::launch::async, worker, s));
      for (auto& fu : futs) fu.get();
    }
    for (long i = 0; i < count; ++i) {
      terms.push_back(vals[i]);
      term_diag.push_back(diags[i]);
    }
  };

  long next = 0;
  while (l_stop < 0) {
    const long l_end = std::min<long>(next + batch, opts_.l_cap + 1);
    if (next >= l_end) break;
    eval_range(next, l_end);
    // sequential truncation scan over everything evaluated so far
    for (long l = next; l < l_end; ++l) {
      const double weighted = (l == 0 ? 0.5 : 1.0) * terms[l];
      sum.add(weighted);
      res.diagnostics.merge(term_diag[l]);
      const double rel = std::abs(sum.sum) > 0.0
                             ? std::abs(weighted) / std::abs(sum.sum)
                             : (weighted == 0.0 ? 0.0 : 1.0);
      res.per_l.push_back({l, weighted, rel});
      if (l >= opts_.l_floor && rel < opts_.truncation_rel) {
        l_stop = l;
        break;
      }
      if (terms[l] == 0.0 && l > 0) {  // y_l beyond the tail cut
        l_stop = l;
        break;
      }
    }
    next = l_end;
    if (l_stop < 0 && next > opts_.l_cap) {
      res.warnings.push_back("matsubara sum hit the l cap of " +
                             std::to_string(opts_.l_cap));
      l_stop = opts_.l_cap;
    }
  }
  res.l_max_used = l_stop;
  // geometric-tail bound from the last two terms
  const std::size_t n = res.per_l.size();
  if (n >= 2) {
    const double t1 = std::abs(res.per_l[n - 1].value);
    const double t0 = std::abs(res.per_l[n - 2].value);
    const double ratio = t0 > 0.0 ? std::min(t1 / t0, 0.99) : 0.0;
    res.truncation_estimate = t1 * ratio / (1.0 - ratio);
  }

  const double kT = constants.k_B * temperature_k;
  if (quantity == Quantity::Pressure) {
    // P = -(k_B T/(8 pi a^3)) sum' I_l
    const double B = kT / (8.0 * pi * a * a * a);
    res.pressure = -B * sum.sum;
    res.truncation_estimate *= B;
    for (auto& t : res.per_l) t.value *= -B;
  } else {
    // F = (k_B T/(8 pi a^2)) sum' J_l, J_l < 0
    const double C = kT / (8.0 * pi * a * a);
    res.free_energy_per_area = C * sum.sum;
    res.truncation_estimate *= C;
    for (auto& t : res.per_l) t.value *= C;
  }
  return res;
}

LifshitzResult LifshitzEngine::evaluate_zero_temperature(double a, const LayerStack& body1,
                                                         const LayerStack& body2,
                                                         Quantity quantity) const {
  LifshitzResult res;
  if (body1.dark() || body2.dark()) {
    if (quantity == Quantity::Pressure)
      res.pressure = 0.0;
    else
      res.free_energy_per_area = 0.0;
    return res;
  }
  const bool want_pressure = quantity == Quantity::Pressure;
  QuadDiag diag;
  auto inner = [&](double z) {
    auto f = [&](double y) {
      const double k = std::sqrt((y - z) * (y + z)) / (2.0 * a);
      const double xi = z * constants.c / (2.0 * a);
      const PointEval p = reflection_products(body1, body2, -1, xi, k, 0.0,
                                              EvaluationMethod::ZERO_TEMPERATURE,
                                              opts_.thermal_reltol, &diag);
      return want_pressure ? pressure_integrand(y, p) : energy_integrand(y, p);
    };
    return integrate_qag(f, z, opts_.y_cut, 1e-10, 0.0, "zero-T inner", &diag);
  };
  const double outer = integrate_qag(inner, 0.0, opts_.y_cut, opts_.k_integral_reltol, 0.0,
                                     "zero-T outer", &diag);
  res.diagnostics = diag;
  const double hc = constants.hbar * constants.c;
  if (want_pressure)
    res.pressure = -hc / (32.0 * pi * pi * a * a * a * a) * outer;
  else
    res.free_energy_per_area = hc / (32.0 * pi * pi * a * a * a) * outer;
  return res;
}

LifshitzResult LifshitzEngine::free_energy(double a, double temperature_k,
                                           const LayerStack& body1, const LayerStack& body2,
                                           EvaluationMethod method) const {
  return evaluate(a, temperature_k, body1, body2, method, Quantity::FreeEnergy);
}

LifshitzResult LifshitzEngine::pressure(double a, double temperature_k,
                                        const LayerStack& body1, const LayerStack& body2,
                                        EvaluationMethod method) const {
  return evaluate(a, temperature_k, body1, body2, method, Quantity::Pressure);
}

GradientResult LifshitzEngine::force_gradient_sphere_plate(double a, double temperature_k,
                                                           double radius,
                                                           const LayerStack& sphere,
                                                           const LayerStack& plate,
                                                           EvaluationMethod method) const {
  if (!(radius > 0.0)) throw std::domain_error("sphere radius must be positive");
  GradientResult g;
  g.plate_pressure = pressure(a, temperature_k, sphere, plate, method);
  g.gradient = -2.0 * pi * radius * *g.plate_pressure.pressure;
  if (a / radius > 0.01) {
    g.pfa_warning = true;
    g.plate_pressure.warnings.push_back("PFA validity: a/R = " + std::to_string(a / radius) +
                                        " exceeds 0.01");
  }
  return g;
}

double LifshitzEngine::pressure_relative_difference(double a, double temperature_k,
                                                    const GrapheneParams& g,
                                                    EvaluationMethod approx) const {
  if (approx != EvaluationMethod::ASYMPTOTIC_L_GE_1 &&
      approx != EvaluationMethod::ZERO_T_TENSOR_AT_MATSUBARA)
    throw UnsupportedError(
        "pressure_relative_difference: approx must be ASYMPTOTIC_L_GE_1 or "
        "ZERO_T_TENSOR_AT_MATSUBARA");
  const LayerStack sheet = LayerStack::free_graphene(g);
  const double p = *pressure(a, temperature_k, sheet, sheet, EvaluationMethod::EXACT).pressure;
  const double pk = *pressure(a, temperature_k, sheet, sheet, approx).pressure;
  return (p - pk) / p;
}

ThermalDecomposition LifshitzEngine::thermal_decomposition(double a, double temperature_k,
                                                           const LayerStack& body1,
                                                           const LayerStack& body2) const {
  ThermalDecomposition d{};
  d.total_pressure =
      *pressure(a, temperature_k, body1, body2, EvaluationMethod::EXACT).pressure;
  d.pressure_implicit_only =
      *pressure(a, temperature_k, body1, body2, EvaluationMethod::ZERO_T_TENSOR_ALL_L).pressure;
  d.pressure_T0 =
      *pressure(a, temperature_k, body1, body2, EvaluationMethod::ZERO_TEMPERATURE).pressure;
  d.explicit_effect = d.total_pressure - d.pressure_implicit_only;
  d.implicit_effect = d.pressure_implicit_only - d.pressure_T0;
  d.total_effect = d.explicit_effect + d.implicit_effect;
  return d;
}

}  // namespace casimir
