#include "casimir/reflect.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/errors.hpp"

namespace casimir {

void LayerStack::validate() const {
  if (graphene) graphene->validate();
  for (const auto& f : films) {
    if (!f.eps) throw ConfigError("layer stack: film without a permittivity model");
    if (!(f.thickness > 0.0)) throw ConfigError("layer stack: film thickness must be positive");
  }
  if (substrate == Substrate::Material && !substrate_model)
    throw ConfigError("layer stack: material substrate without a permittivity model");
}

LayerStack LayerStack::free_graphene(const GrapheneParams& g) {
  LayerStack s;
  s.graphene = g;
  return s;
}

LayerStack LayerStack::half_space(std::shared_ptr<const PermittivityModel> m) {
  LayerStack s;
  s.substrate = Substrate::Material;
  s.substrate_model = std::move(m);
  return s;
}

LayerStack LayerStack::ideal_metal() {
  LayerStack s;
  s.substrate = Substrate::IdealMetal;
  return s;
}

ReflectionPair graphene_free(const PolTensorValue& pt) {
  if (!(pt.k_perp > 0.0))
    throw std::domain_error("graphene_free: k_perp must be positive");
  const double k2 = pt.k_perp * pt.k_perp;
  const double q = std::hypot(pt.k_perp, pt.xi / constants.c);
  ReflectionPair r;
  r.l = pt.l.value_or(-1);
  r.k_perp = pt.k_perp;
  r.r_tm = q * pt.pi00_over_hbar / (q * pt.pi00_over_hbar + 2.0 * k2);
  r.r_te = -pt.pi_over_hbar / (pt.pi_over_hbar + 2.0 * k2 * q);
  return r;
}

ReflectionPair graphene_asymptotic(int l, double k_perp, double temperature_k,
                                   const GrapheneParams& g,
                                   std::optional<double> y_override) {
  g.validate();
  if (g.gap_j != 0.0)
    throw UnsupportedError("graphene_asymptotic: defined for gapless sheets only");
  if (l < 1) throw std::domain_error("graphene_asymptotic: l >= 1 required");
  if (!(k_perp > 0.0)) throw std::domain_error("graphene_asymptotic: k_perp must be positive");
  const double xi = matsubara_frequency(l, temperature_k);
  const auto [q, qt] = q_factors(xi, k_perp, g);
  const double y = y_override ? *y_override : y_l(l);
  const double piy = std::numbers::pi + y;
  ReflectionPair r;
  r.l = l;
  r.k_perp = k_perp;
  r.r_tm = g.alpha * q * piy / (g.alpha * q * piy + 2.0 * qt);
  r.r_te = -g.alpha * qt * piy / (g.alpha * qt * piy + 2.0 * q);
  return r;
}

ReflectionPair fresnel_halfspace(double eps, double xi, double k_perp) {
  if (xi < 0.0 || k_perp < 0.0)
    throw std::domain_error("fresnel_halfspace: negative frequency or wave number");
  if (!(eps >= 1.0))
    throw std::domain_error("fresnel_halfspace: eps(i xi) must be >= 1 for passive media");
  ReflectionPair r;
  r.k_perp = k_perp;
  if (std::isinf(eps)) {
    r.r_tm = 1.0;
    r.r_te = xi > 0.0 ? -1.0 : 0.0;
    return r;
  }
  const double q = std::hypot(k_perp, xi / constants.c);
  const double qe = std::hypot(k_perp, std::sqrt(eps) * xi / constants.c);
  r.r_tm = (eps * q - qe) / (eps * q + qe);
  r.r_te = (q - qe) / (q + qe);
  return r;
}

namespace {

// View of one medium at a fixed evaluation point. At xi = 0, finite-eps media
// have q = k; the plasma model keeps a nonzero eps*xi^2/c^2 limit and Drude
// metals pin the TM coefficient.
struct MediumView {
  bool ideal = false;
  bool metallic = false;  // eps -> inf as xi -> 0 (only at the static point)
  double eps = 1.0;
  double q = 0.0;
};

MediumView medium_view(const PermittivityModel* m, bool ideal, double xi, double k) {
  MediumView v;
  v.ideal = ideal;
  if (ideal) {
    v.q = k;  // used only by the static TE sheet formula
    return v;
  }
  if (!m) {  // vacuum
    v.eps = 1.0;
    v.q = std::hypot(k, xi / constants.c);
    return v;
  }
  if (xi > 0.0) {
    v.eps = m->eps(xi);
    v.q = std::hypot(k, std::sqrt(v.eps) * xi / constants.c);
  } else {
    v.metallic = m->metallic_at_zero();
    v.eps = v.metallic ? std::numeric_limits<double>::infinity() : m->eps(0.0);
    v.q = std::sqrt(k * k + m->zero_freq_eps_xi2_over_c2());
  }
  return v;
}

// Fresnel coefficients of the interface upper|lower at xi > 0.
ReflectionPair fresnel_between(const MediumView& a, const MediumView& b, double xi) {
  ReflectionPair r;
  if (b.ideal) {
    r.r_tm = 1.0;
    r.r_te = xi > 0.0 ? -1.0 : 0.0;
    return r;
  }
  if (xi > 0.0) {
    r.r_tm = (b.eps * a.q - a.eps * b.q) / (b.eps * a.q + a.eps * b.q);
    r.r_te = (a.q - b.q) / (a.q + b.q);
    return r;
  }
  // static point
  if (b.metallic && a.metallic) {
    r.r_tm = 0.0;  // no contrast; screened by the metal above anyway
  } else if (b.metallic) {
    r.r_tm = 1.0;
  } else if (a.metallic) {
    r.r_tm = -1.0;
  } else {
    r.r_tm = (b.eps - a.eps) / (b.eps + a.eps);
  }
  r.r_te = (a.q - b.q) / (a.q + b.q);
  return r;
}

// Graphene sheet between vacuum (above) and medium b (below).
ReflectionPair sheet_on_medium(const PolTensorValue& pt, const MediumView& vac,
                               const MediumView& b, double xi) {
  const double k = pt.k_perp;
  const double k2 = k * k;
  const double q = vac.q;
  ReflectionPair r;
  r.k_perp = k;
  r.l = pt.l.value_or(-1);
  if (b.ideal) {
    r.r_tm = 1.0;
    if (xi > 0.0) {
      r.r_te = -1.0;
    } else {
      // TE is blind to the ideal wall at the static point; the sheet's own
      // response remains (q_s = k).
      r.r_te = (q - k - pt.pi_over_hbar / k2) / (q + k + pt.pi_over_hbar / k2);
    }
    return r;
  }
  const double p00 = pt.pi00_over_hbar;
  const double ppi = pt.pi_over_hbar;
  if (xi == 0.0 && b.metallic) {
    r.r_tm = 1.0;
  } else {
    r.r_tm = (b.eps * q - b.q + q * b.q * p00 / k2) /
             (b.eps * q + b.q + q * b.q * p00 / k2);
  }
  r.r_te = (q - b.q - ppi / k2) / (q + b.q + ppi / k2);
  return r;
}

ReflectionPair combine(const ReflectionPair& top, const ReflectionPair& bottom, double phase) {
  ReflectionPair r = top;
  r.r_tm = (top.r_tm + bottom.r_tm * phase) / (1.0 + top.r_tm * bottom.r_tm * phase);
  r.r_te = (top.r_te + bottom.r_te * phase) / (1.0 + top.r_te * bottom.r_te * phase);
  return r;
}

ReflectionPair stack_eval(const LayerStack& stack, double xi, double k,
                          const PolTensorValue* tensor) {
  ReflectionPair out;
  out.k_perp = k;
  if (stack.dark()) return out;
  if (stack.graphene && !(k > 0.0))
    throw std::domain_error("stack_reflection: k_perp must be positive with a graphene sheet");

  const MediumView vac = medium_view(nullptr, false, xi, k);

  // media below the top interface: films then substrate (when not vacuum)
  std::vector<MediumView> media;
  std::vector<double> thickness;
  media.reserve(stack.films.size() + 1);
  for (const auto& f : stack.films) {
    media.push_back(medium_view(f.eps.get(), false, xi, k));
    thickness.push_back(f.thickness);
  }
  if (stack.substrate == LayerStack::Substrate::IdealMetal) {
    media.push_back(medium_view(nullptr, true, xi, k));
  } else if (stack.substrate == LayerStack::Substrate::Material) {
    media.push_back(medium_view(stack.substrate_model.get(), false, xi, k));
  } else {
    media.push_back(vac);  // stack ends in vacuum
  }

  // effective reflection looking down from inside medium j
  const std::size_t n = media.size();
  ReflectionPair below{};
  for (std::size_t j = n - 1; j >= 1; --j) {
    ReflectionPair iface = fresnel_between(media[j - 1], media[j], xi);
    if (j == n - 1) {
      below = iface;
    } else {
      const double y = 2.0 * media[j].q * thickness[j];
      below = combine(iface, below, y > 700.0 ? 0.0 : std::exp(-y));
    }
  }

  ReflectionPair top;
  if (stack.graphene) {
    top = sheet_on_medium(*tensor, vac, media[0], xi);
  } else {
    top = fresnel_between(vac, media[0], xi);
  }
  if (n == 1) {
    out = top;
  } else {
    const double y = 2.0 * media[0].q * thickness[0];
    out = combine(top, below, y > 700.0 ? 0.0 : std::exp(-y));
  }
  out.k_perp = k;
  return out;
}

}  // namespace

ReflectionPair stack_reflection(const LayerStack& stack, int l, double k_perp,
                                double temperature_k, EvaluationMethod method,
                                double thermal_epsrel, QuadDiag* diag,
                                const PolTensorValue* precomputed) {
  stack.validate();
  const double xi = matsubara_frequency(l, temperature_k);
  PolTensorValue pt;
  const PolTensorValue* tensor = precomputed;
  if (stack.graphene && !tensor) {
    pt = pol_tensor(l, k_perp, temperature_k, *stack.graphene, method, thermal_epsrel, diag);
    tensor = &pt;
  }
  ReflectionPair r = stack_eval(stack, xi, k_perp, tensor);
  r.l = l;
  return r;
}

ReflectionPair stack_reflection_zero_temperature(const LayerStack& stack, double xi,
                                                 double k_perp,
                                                 const PolTensorValue* precomputed) {
  stack.validate();
  PolTensorValue pt;
  const PolTensorValue* tensor = precomputed;
  if (stack.graphene && !tensor) {
    pt = pol_zero_temperature(xi, k_perp, *stack.graphene);
    tensor = &pt;
  }
  ReflectionPair r = stack_eval(stack, xi, k_perp, tensor);
  r.l = -1;
  return r;
}

}  // namespace casimir
