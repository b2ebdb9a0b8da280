#ifndef CASIMIR_REFLECT_HPP
#define CASIMIR_REFLECT_HPP

#include <memory>
#include <optional>
#include <vector>

#include "casimir/materials.hpp"
#include "casimir/poltensor.hpp"

namespace casimir {

/// TM/TE amplitude reflection coefficients at one imaginary-frequency point.
struct ReflectionPair {
  double r_tm = 0.0;
  double r_te = 0.0;
  int l = -1;  // Matsubara index; -1 for continuous frequency
  double k_perp = 0.0;
};

struct Film {
  std::shared_ptr<const PermittivityModel> eps;
  double thickness;  // m
};

/// One half-space boundary: optional graphene sheet on top of zero or more
/// films on top of a substrate.
struct LayerStack {
  enum class Substrate { Vacuum, IdealMetal, Material };

  std::optional<GrapheneParams> graphene;
  std::vector<Film> films;
  Substrate substrate = Substrate::Vacuum;
  std::shared_ptr<const PermittivityModel> substrate_model;

  void validate() const;
  bool dark() const {  // reflectionless
    return !graphene && films.empty() && substrate == Substrate::Vacuum;
  }

  static LayerStack vacuum() { return {}; }
  static LayerStack free_graphene(const GrapheneParams& g);
  static LayerStack half_space(std::shared_ptr<const PermittivityModel> m);
  static LayerStack ideal_metal();
};

/// Free-standing graphene sheet; the tensor value carries (xi, k_perp).
ReflectionPair graphene_free(const PolTensorValue& pt);

/// Closed-form asymptotic coefficients at l >= 1 for gapless graphene.
/// `y_override` substitutes the Y_l value (used by the structural identities;
/// zero recovers the zero-temperature coefficients).
ReflectionPair graphene_asymptotic(int l, double k_perp, double temperature_k,
                                   const GrapheneParams& g,
                                   std::optional<double> y_override = std::nullopt);

/// Vacuum | half-space Fresnel coefficients at imaginary frequency.
/// eps may be +infinity (metallic zero-frequency sentinel).
ReflectionPair fresnel_halfspace(double eps, double xi, double k_perp);

/// Reflection of a full stack at the Matsubara point (l, T); graphene's
/// tensor is evaluated under `method` unless `precomputed` is supplied.
ReflectionPair stack_reflection(const LayerStack& stack, int l, double k_perp,
                                double temperature_k, EvaluationMethod method,
                                double thermal_epsrel = 1e-9, QuadDiag* diag = nullptr,
                                const PolTensorValue* precomputed = nullptr);

/// Reflection at continuous imaginary frequency with the T = 0 tensor.
ReflectionPair stack_reflection_zero_temperature(const LayerStack& stack, double xi,
                                                 double k_perp,
                                                 const PolTensorValue* precomputed = nullptr);

}  // namespace casimir

#endif
