#ifndef CASIMIR_MATERIALS_HPP
#define CASIMIR_MATERIALS_HPP

#include <atomic>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace casimir {

struct LorentzOscillator {
  double strength;   // f_j [rad^2/s^2]
  double frequency;  // omega_j [rad/s]
  double damping;    // g_j [rad/s]
};

/// Dielectric permittivity along the imaginary frequency axis.
///
/// Models are immutable after construction; evaluation is pure except for the
/// extrapolation flags of tabulated data, which are sticky diagnostics.
/// Every model satisfies eps(i xi) >= 1 and is non-increasing in xi; this is
/// verified on a sampled grid at construction time.
class PermittivityModel {
 public:
  enum class Kind { Constant, Drude, Lorentz, DrudeLorentz, Tabulated };

  static PermittivityModel constant(double eps0);
  /// gamma_ev = 0 gives the plasma model (dissipationless).
  static PermittivityModel drude(double plasma_ev, double gamma_ev);
  static PermittivityModel lorentz(std::vector<LorentzOscillator> oscillators);
  /// Free carriers on top of bound oscillators (doped semiconductors).
  static PermittivityModel drude_lorentz(double plasma_ev, double gamma_ev,
                                         std::vector<LorentzOscillator> oscillators);
  /// Frequencies strictly increasing, in rad/s; eps values >= 1.
  static PermittivityModel tabulated(std::vector<double> xi, std::vector<double> eps);

  /// eps(i xi). Models with free carriers return +infinity at xi = 0; the
  /// reflection code consumes that sentinel only in the zero-frequency TM
  /// branch. Tabulated queries outside the table extrapolate flat and set a
  /// sticky warning flag.
  double eps(double xi) const;

  Kind kind() const { return kind_; }

  /// Zero-frequency limit of eps(i xi) xi^2 / c^2 [rad^2/m^2]: zero for
  /// dielectrics and dissipative metals, omega_p^2/c^2 for the plasma model
  /// (gamma = 0). Fixes the TE reflection at the l = 0 Matsubara term.
  double zero_freq_eps_xi2_over_c2() const;

  /// True when eps(i xi) diverges as xi -> 0, which pins the l = 0 TM
  /// Fresnel coefficient at 1.
  bool metallic_at_zero() const {
    return kind_ == Kind::Drude || kind_ == Kind::DrudeLorentz;
  }

  bool extrapolated_low() const { return flags_->low.load(std::memory_order_relaxed); }
  bool extrapolated_high() const { return flags_->high.load(std::memory_order_relaxed); }

 private:
  struct ExtrapolationFlags {
    std::atomic<bool> low{false}, high{false};
  };

  PermittivityModel() = default;
  void validate_grid() const;

  Kind kind_ = Kind::Constant;
  double constant_eps_ = 1.0;
  double plasma_ = 0.0;  // rad/s
  double gamma_ = 0.0;   // rad/s
  std::vector<LorentzOscillator> oscillators_;
  // tabulated data, interpolated monotone-cubically in ln(xi)
  std::vector<double> log_xi_, tab_eps_;
  std::shared_ptr<void> spline_;  // gsl_spline, type-erased
  std::shared_ptr<ExtrapolationFlags> flags_ = std::make_shared<ExtrapolationFlags>();
};

/// eps(i xi) for a model; thin forwarding helper matching the operation map.
double eps_imag_axis(const PermittivityModel& model, double xi);

/// Load a two-column table: `#` comments, a `units: <rad/s|eV>` header line,
/// whitespace-separated frequency / eps columns with strictly increasing
/// frequencies. Errors carry the offending line numbers.
PermittivityModel load_table(const std::string& path);

/// Parse a `.mat` key-value description
/// (model = constant|drude|lorentz|drude_lorentz|table).
PermittivityModel load_material_file(const std::string& path);

/// Shipped defaults (literature-conventional values, editable copies live in
/// data/materials/): Au Drude (9.0 eV, 0.035 eV), SiO2 two-oscillator Lorentz,
/// high-resistivity Si Lorentz, B-doped Si with a Drude term added.
PermittivityModel default_gold();
PermittivityModel default_silica();
PermittivityModel default_silicon();
PermittivityModel default_silicon_doped();

/// Resolves material names to models: first from `<dir>/<name>.mat`, then
/// from the built-in defaults (au, sio2, si, si_bdoped).
class MaterialLibrary {
 public:
  explicit MaterialLibrary(std::string directory) : dir_(std::move(directory)) {}
  std::shared_ptr<const PermittivityModel> get(const std::string& name) const;

 private:
  std::string dir_;
  mutable std::vector<std::pair<std::string, std::shared_ptr<const PermittivityModel>>> cache_;
};

}  // namespace casimir

#endif
