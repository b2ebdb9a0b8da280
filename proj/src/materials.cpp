#include "casimir/materials.hpp"

#include <gsl/gsl_interp.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

double ev_to_rad_s(double ev) { return ev * electron_volt / constants.hbar; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void PermittivityModel::validate_grid() const {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    const double xi = 1e12 * std::pow(1e6, i / 200.0);  // [1e12, 1e18] rad/s
    const double e = eps(xi);
    if (!(e >= 1.0 - 1e-12))
      throw ConfigError("permittivity model violates eps(i xi) >= 1 at xi = " +
                        std::to_string(xi));
    if (e > prev * (1.0 + 1e-9))
      throw ConfigError("permittivity model is not non-increasing at xi = " +
                        std::to_string(xi));
    prev = e;
  }
}

PermittivityModel PermittivityModel::constant(double eps0) {
  if (!(eps0 >= 1.0)) throw ConfigError("constant permittivity must be >= 1");
  PermittivityModel m;
  m.kind_ = Kind::Constant;
  m.constant_eps_ = eps0;
  return m;
}

PermittivityModel PermittivityModel::drude(double plasma_ev, double gamma_ev) {
  if (!(plasma_ev > 0.0) || gamma_ev < 0.0)
    throw ConfigError("drude model needs plasma_ev > 0 and gamma_ev >= 0");
  PermittivityModel m;
  m.kind_ = Kind::Drude;
  m.plasma_ = ev_to_rad_s(plasma_ev);
  m.gamma_ = ev_to_rad_s(gamma_ev);
  m.validate_grid();
  return m;
}

PermittivityModel PermittivityModel::lorentz(std::vector<LorentzOscillator> oscillators) {
  if (oscillators.empty()) throw ConfigError("lorentz model needs at least one oscillator");
  for (const auto& o : oscillators)
    if (!(o.strength > 0.0) || !(o.frequency > 0.0) || o.damping < 0.0)
      throw ConfigError("lorentz oscillator parameters must be positive (damping >= 0)");
  PermittivityModel m;
  m.kind_ = Kind::Lorentz;
  m.oscillators_ = std::move(oscillators);
  m.validate_grid();
  return m;
}

PermittivityModel PermittivityModel::drude_lorentz(double plasma_ev, double gamma_ev,
                                                   std::vector<LorentzOscillator> oscillators) {
  PermittivityModel m = lorentz(std::move(oscillators));
  if (!(plasma_ev > 0.0) || gamma_ev < 0.0)
    throw ConfigError("drude_lorentz model needs plasma_ev > 0 and gamma_ev >= 0");
  m.kind_ = Kind::DrudeLorentz;
  m.plasma_ = ev_to_rad_s(plasma_ev);
  m.gamma_ = ev_to_rad_s(gamma_ev);
  m.validate_grid();
  return m;
}

PermittivityModel PermittivityModel::tabulated(std::vector<double> xi, std::vector<double> eps) {
  if (xi.size() != eps.size() || xi.size() < 2)
    throw ConfigError("tabulated permittivity needs at least two (xi, eps) rows");
  PermittivityModel m;
  m.kind_ = Kind::Tabulated;
  m.log_xi_.reserve(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!(xi[i] > 0.0)) throw ConfigError("tabulated frequencies must be positive");
    if (i > 0 && !(xi[i] > xi[i - 1]))
      throw ConfigError("tabulated frequencies must be strictly increasing (row " +
                        std::to_string(i + 1) + ")");
    if (!(eps[i] >= 1.0))
      throw ConfigError("tabulated eps must be >= 1 (row " + std::to_string(i + 1) + ")");
    m.log_xi_.push_back(std::log(xi[i]));
  }
  m.tab_eps_ = std::move(eps);
  gsl_spline* s = gsl_spline_alloc(gsl_interp_steffen, m.log_xi_.size());
  if (!s) throw NumericalError("failed to allocate interpolation spline");
  gsl_spline_init(s, m.log_xi_.data(), m.tab_eps_.data(), m.log_xi_.size());
  m.spline_ =
      std::shared_ptr<void>(s, [](void* p) { gsl_spline_free(static_cast<gsl_spline*>(p)); });
  m.validate_grid();
  // construction-time validation may sample outside the table; that is not a
  // user-visible extrapolation
  m.flags_->low.store(false, std::memory_order_relaxed);
  m.flags_->high.store(false, std::memory_order_relaxed);
  return m;
}

double PermittivityModel::eps(double xi) const {
  if (xi < 0.0) throw std::domain_error("eps: xi must be >= 0");
  switch (kind_) {
    case Kind::Constant:
      return constant_eps_;
    case Kind::Drude:
      if (xi == 0.0) return std::numeric_limits<double>::infinity();
      return 1.0 + plasma_ * plasma_ / (xi * (xi + gamma_));
    case Kind::DrudeLorentz:
    case Kind::Lorentz: {
      double e = 1.0;
      for (const auto& o : oscillators_)
        e += o.strength / (o.frequency * o.frequency + xi * xi + o.damping * xi);
      if (kind_ == Kind::DrudeLorentz) {
        if (xi == 0.0) return std::numeric_limits<double>::infinity();
        e += plasma_ * plasma_ / (xi * (xi + gamma_));
      }
      return e;
    }
    case Kind::Tabulated: {
      const double lo = log_xi_.front(), hi = log_xi_.back();
      double lx = xi > 0.0 ? std::log(xi) : -std::numeric_limits<double>::infinity();
      if (lx <= lo) {
        if (lx < lo) flags_->low.store(true, std::memory_order_relaxed);
        return tab_eps_.front();
      }
      if (lx >= hi) {
        if (lx > hi) flags_->high.store(true, std::memory_order_relaxed);
        return tab_eps_.back();
      }
      return gsl_spline_eval(static_cast<gsl_spline*>(spline_.get()), lx, nullptr);
    }
  }
  return 1.0;
}

double PermittivityModel::zero_freq_eps_xi2_over_c2() const {
  if ((kind_ == Kind::Drude || kind_ == Kind::DrudeLorentz) && gamma_ == 0.0) {
    const double pc = plasma_ / constants.c;
    return pc * pc;
  }
  return 0.0;
}

double eps_imag_axis(const PermittivityModel& model, double xi) { return model.eps(xi); }

// ---------------------------------------------------------------------------
// File ingestion
// ---------------------------------------------------------------------------

PermittivityModel load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open permittivity table: " + path);
  std::string line;
  int lineno = 0;
  bool units_ev = false, units_seen = false;
  std::vector<double> xi, eps;
  std::vector<std::string> bad;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("units:", 0) == 0) {
      const std::string u = trim(line.substr(6));
      if (u == "eV") units_ev = true;
      else if (u == "rad/s") units_ev = false;
      else bad.push_back("line " + std::to_string(lineno) + ": unknown units '" + u + "'");
      units_seen = true;
      continue;
    }
    std::istringstream row(line);
    double f, e;
    if (!(row >> f >> e)) {
      bad.push_back("line " + std::to_string(lineno) + ": expected two numeric columns");
      continue;
    }
    std::string extra;
    if (row >> extra) {
      bad.push_back("line " + std::to_string(lineno) + ": trailing content '" + extra + "'");
      continue;
    }
    xi.push_back(f);
    eps.push_back(e);
  }
  if (!units_seen) bad.push_back("missing 'units: <rad/s|eV>' header line");
  if (!bad.empty()) {
    std::string msg = "table " + path + " rejected:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw ConfigError(msg);
  }
  if (units_ev)
    for (auto& f : xi) f = ev_to_rad_s(f);
  try {
    return PermittivityModel::tabulated(std::move(xi), std::move(eps));
  } catch (const ConfigError& err) {
    throw ConfigError("table " + path + " rejected: " + std::string(err.what()));
  }
}

PermittivityModel load_material_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material file: " + path);
  std::string line;
  std::vector<std::pair<std::string, std::string>> kv;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  auto value = [&](const std::string& key) -> std::string {
    for (const auto& [k, v] : kv)
      if (k == key) return v;
    throw ConfigError(path + ": missing key '" + key + "'");
  };
  auto num = [&](const std::string& key) {
    const std::string v = value(key);
    try {
      std::size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError(path + ": key '" + key + "' is not a number: " + v);
    }
  };
  auto oscillators = [&] {
    std::vector<LorentzOscillator> osc;
    for (int j = 1;; ++j) {
      const std::string p = "osc" + std::to_string(j) + ".";
      bool present = false;
      for (const auto& [k, v] : kv)
        if (k.rfind(p, 0) == 0) present = true;
      if (!present) break;
      osc.push_back({num(p + "strength_ev2") * ev_to_rad_s(1.0) * ev_to_rad_s(1.0),
                     ev_to_rad_s(num(p + "frequency_ev")),
                     ev_to_rad_s(num(p + "gamma_ev"))});
    }
    return osc;
  };

  const std::string model = value("model");
  if (model == "constant") return PermittivityModel::constant(num("eps"));
  if (model == "drude") return PermittivityModel::drude(num("plasma_ev"), num("gamma_ev"));
  if (model == "lorentz") return PermittivityModel::lorentz(oscillators());
  if (model == "drude_lorentz")
    return PermittivityModel::drude_lorentz(num("plasma_ev"), num("gamma_ev"), oscillators());
  if (model == "table") {
    std::string tpath = value("path");
    if (!tpath.empty() && tpath[0] != '/') {
      const auto slash = path.find_last_of('/');
      if (slash != std::string::npos) tpath = path.substr(0, slash + 1) + tpath;
    }
    return load_table(tpath);
  }
  throw ConfigError(path + ": unknown model '" + model + "'");
}

PermittivityModel default_gold() { return PermittivityModel::drude(9.0, 0.035); }

PermittivityModel default_silica() {
  // Two-oscillator fit with eps(0) ~= 3.80: UV (13.38 eV) and IR (0.124 eV).
  const double uv = ev_to_rad_s(13.38), ir = ev_to_rad_s(0.124);
  return PermittivityModel::lorentz({{1.098 * uv * uv, uv, 0.0}, {1.703 * ir * ir, ir, 0.0}});
}

PermittivityModel default_silicon() {
  // Single UV oscillator, eps(0) ~= 11.66.
  const double w0 = ev_to_rad_s(4.34);
  return PermittivityModel::lorentz({{10.66 * w0 * w0, w0, 0.0}});
}

PermittivityModel default_silicon_doped() {
  // Intrinsic Si core plus free carriers from B doping.
  const double w0 = ev_to_rad_s(4.34);
  return PermittivityModel::drude_lorentz(0.30, 0.066, {{10.66 * w0 * w0, w0, 0.0}});
}

std::shared_ptr<const PermittivityModel> MaterialLibrary::get(const std::string& name) const {
  for (const auto& [n, m] : cache_)
    if (n == name) return m;
  std::shared_ptr<const PermittivityModel> model;
  const std::string path = dir_.empty() ? "" : dir_ + "/" + name + ".mat";
  if (!path.empty() && std::ifstream(path).good()) {
    model = std::make_shared<PermittivityModel>(load_material_file(path));
  } else if (name == "au") {
    model = std::make_shared<PermittivityModel>(default_gold());
  } else if (name == "sio2") {
    model = std::make_shared<PermittivityModel>(default_silica());
  } else if (name == "si") {
    model = std::make_shared<PermittivityModel>(default_silicon());
  } else if (name == "si_bdoped") {
    model = std::make_shared<PermittivityModel>(default_silicon_doped());
  } else {
    throw ConfigError("unknown material '" + name + "' (no " + path + " and no built-in)");
  }
  cache_.emplace_back(name, model);
  return model;
}

}  // namespace casimir
