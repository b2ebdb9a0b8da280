#ifndef CASIMIR_LIFSHITZ_HPP
#define CASIMIR_LIFSHITZ_HPP

#include <optional>
#include <string>
#include <vector>

#include "casimir/reflect.hpp"

namespace casimir {

struct EngineOptions {
  double k_integral_reltol = 1e-8;  // y = 2aq integral per Matsubara term
  double thermal_reltol = 1e-9;     // polarization-tensor q_perp integral
  double truncation_rel = 1e-10;    // stop when a term falls below this share
  int l_floor = 10;                 // never truncate before this index
  long l_cap = 100000;
  double y_cut = 80.0;              // e^{-y} tail cut of the k integral
  int threads = 1;                  // 0 = hardware concurrency
};

struct PerLTerm {
  long l;
  double value;             // contribution to the reported quantity (prime applied)
  double rel_contribution;  // |value| / |running sum| at the time it was added
};

struct LifshitzResult {
  std::optional<double> free_energy_per_area;  // J/m^2, < 0 for attraction
  std::optional<double> pressure;              // Pa, < 0 for attraction
  std::vector<PerLTerm> per_l;                 // empty for ZERO_TEMPERATURE
  long l_max_used = 0;
  double truncation_estimate = 0.0;  // bound on the dropped tail, same units
  QuadDiag diagnostics;
  std::vector<std::string> warnings;
};

struct ThermalDecomposition {
  double total_pressure;           // EXACT at T
  double pressure_T0;              // genuine T = 0 evaluation
  double pressure_implicit_only;   // zero-T tensor sampled at the Matsubara points
  double explicit_effect;          // total - implicit_only
  double implicit_effect;          // implicit_only - T0
  double total_effect;             // explicit + implicit, exact by construction
};

struct GradientResult {
  double gradient;  // N/m, positive for attraction (experimental convention)
  LifshitzResult plate_pressure;
  bool pfa_warning = false;  // a/R > 0.01
};

class LifshitzEngine {
 public:
  explicit LifshitzEngine(EngineOptions opts = {});

  /// Free energy per unit area between two parallel stacks across a vacuum
  /// gap of width a. ZERO_TEMPERATURE integrates over continuous frequency;
  /// every other method runs the Matsubara sum with the l = 0 term halved.
  LifshitzResult free_energy(double a, double temperature_k, const LayerStack& body1,
                             const LayerStack& body2, EvaluationMethod method) const;

  /// Pressure from the analytically differentiated integrand (not a numerical
  /// derivative of free_energy).
  LifshitzResult pressure(double a, double temperature_k, const LayerStack& body1,
                          const LayerStack& body2, EvaluationMethod method) const;

  /// Sphere-plate force gradient in the proximity force approximation,
  /// 2 pi R |P|; warns when a/R > 0.01.
  GradientResult force_gradient_sphere_plate(double a, double temperature_k, double radius,
                                             const LayerStack& sphere, const LayerStack& plate,
                                             EvaluationMethod method = EvaluationMethod::EXACT) const;

  /// (P - P^(k)) / P for two free-standing sheets with the given parameters;
  /// approx is ASYMPTOTIC_L_GE_1 or ZERO_T_TENSOR_AT_MATSUBARA.
  double pressure_relative_difference(double a, double temperature_k, const GrapheneParams& g,
                                      EvaluationMethod approx) const;

  /// Splits the thermal pressure change into the explicit part (temperature
  /// inside the tensor) and the implicit part (Matsubara sampling).
  ThermalDecomposition thermal_decomposition(double a, double temperature_k,
                                             const LayerStack& body1,
                                             const LayerStack& body2) const;

  const EngineOptions& options() const { return opts_; }

 private:
  enum class Quantity { FreeEnergy, Pressure };
  LifshitzResult evaluate(double a, double temperature_k, const LayerStack& body1,
                          const LayerStack& body2, EvaluationMethod method,
                          Quantity quantity) const;
  LifshitzResult evaluate_zero_temperature(double a, const LayerStack& body1,
                                           const LayerStack& body2, Quantity quantity) const;
  double term_integral(double a, double temperature_k, int l, const LayerStack& b1,
                       const LayerStack& b2, EvaluationMethod method, Quantity quantity,
                       QuadDiag* diag) const;

  EngineOptions opts_;
};

}  // namespace casimir

#endif
