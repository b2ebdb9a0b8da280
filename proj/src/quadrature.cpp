#include "casimir/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

const int gsl_handler_off = [] {
  gsl_set_error_handler_off();
  return 0;
}();

// Per-thread stack of workspaces so that nested integrations are safe.
class WorkspacePool {
 public:
  ~WorkspacePool() {
    for (auto* w : free_) gsl_integration_workspace_free(w);
  }
  gsl_integration_workspace* acquire(std::size_t limit) {
    if (!free_.empty()) {
      auto* w = free_.back();
      free_.pop_back();
      return w;
    }
    return gsl_integration_workspace_alloc(limit);
  }
  void release(gsl_integration_workspace* w) { free_.push_back(w); }

 private:
  std::vector<gsl_integration_workspace*> free_;
};

thread_local WorkspacePool tl_pool;

struct Trampoline {
  const std::function<double(double)>* f;
  unsigned long long neval = 0;
  std::exception_ptr error;
};

double trampoline_call(double x, void* params) {
  auto* t = static_cast<Trampoline*>(params);
  if (t->error) return std::numeric_limits<double>::quiet_NaN();
  ++t->neval;
  try {
    return (*t->f)(x);
  } catch (...) {
    t->error = std::current_exception();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

double integrate_qag(const std::function<double(double)>& f, double a, double b,
                     double epsrel, double epsabs, const std::string& context,
                     QuadDiag* diag, std::size_t limit) {
  Trampoline tr;
  tr.f = &f;
  gsl_function gf{&trampoline_call, &tr};
  gsl_integration_workspace* w = tl_pool.acquire(limit);
  double result = 0.0, abserr = 0.0;
  const int status = gsl_integration_qag(&gf, a, b, epsabs, epsrel,
                                         limit, GSL_INTEG_GAUSS21, w, &result, &abserr);
  tl_pool.release(w);
  if (tr.error) std::rethrow_exception(tr.error);

  const double scale = std::max(std::abs(result), 1e-300);
  const double rel = abserr / scale;
  if (diag) diag->note(tr.neval, rel);
  if (status != 0 && abserr > 10.0 * std::max(epsabs, epsrel * std::abs(result))) {
    throw NumericalError(context + ": quadrature did not converge (achieved rel. error " +
                         std::to_string(rel) + ", requested " + std::to_string(epsrel) + ")");
  }
  return result;
}

// ---------------------------------------------------------------------------
// GK21 rule extraction. GSL exposes the raw 21-point rule; we recover its
// abscissae by recording the evaluation points and its weights by integrating
// indicator functions. The embedded 10-point Gauss weights are rebuilt from
// the Legendre polynomial by Newton iteration and matched to the recorded
// nodes.
// ---------------------------------------------------------------------------

namespace {

struct Recorder {
  std::vector<double>* xs;
};

double record_call(double x, void* params) {
  static_cast<Recorder*>(params)->xs->push_back(x);
  return 0.0;
}

struct Indicator {
  double x0;
};

double indicator_call(double x, void* params) {
  return x == static_cast<Indicator*>(params)->x0 ? 1.0 : 0.0;
}

// Legendre P_n and derivative via the recurrence.
std::pair<double, double> legendre_pd(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double d = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, d};
}

Gk21Rule build_rule() {
  Gk21Rule r{};
  std::vector<double> xs;
  Recorder rec{&xs};
  gsl_function gf{&record_call, &rec};
  double res, err, resabs, resasc;
  gsl_integration_qk21(&gf, -1.0, 1.0, &res, &err, &resabs, &resasc);
  if (xs.size() != 21) throw std::logic_error("gk21: unexpected node count");
  std::copy(xs.begin(), xs.end(), r.node.begin());

  double wsum = 0.0;
  for (int i = 0; i < 21; ++i) {
    Indicator ind{r.node[i]};
    gsl_function gi{&indicator_call, &ind};
    gsl_integration_qk21(&gi, -1.0, 1.0, &res, &err, &resabs, &resasc);
    r.kronrod_weight[i] = res;
    wsum += res;
  }
  if (std::abs(wsum - 2.0) > 1e-12) throw std::logic_error("gk21: kronrod weights");

  // 10-point Gauss-Legendre nodes/weights.
  r.gauss_weight.fill(0.0);
  double gsum = 0.0;
  for (int j = 0; j < 10; ++j) {
    double x = std::cos(std::numbers::pi * (j + 0.75) / 10.5);
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre_pd(10, x);
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    auto [p, d] = legendre_pd(10, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * d * d);
    // attach to the matching Kronrod node
    int best = -1;
    double bestd = 1e9;
    for (int i = 0; i < 21; ++i) {
      const double dist = std::abs(r.node[i] - x);
      if (dist < bestd) {
        bestd = dist;
        best = i;
      }
    }
    if (bestd > 1e-9) throw std::logic_error("gk21: gauss node mismatch");
    r.gauss_weight[best] = w;
    gsum += w;
  }
  if (std::abs(gsum - 2.0) > 1e-12) throw std::logic_error("gk21: gauss weights");
  return r;
}

struct Segment {
  double a, b;
  double k0, k1;  // Kronrod results
  double e0, e1;  // error estimates
};

Segment evaluate_segment(const std::function<std::pair<double, double>(double)>& f,
                         double a, double b) {
  const Gk21Rule& r = gk21_rule();
  const double hl = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  std::array<double, 21> f0, f1;
  for (int i = 0; i < 21; ++i) {
    auto [v0, v1] = f(c + hl * r.node[i]);
    f0[i] = v0;
    f1[i] = v1;
  }
  Segment s{a, b, 0, 0, 0, 0};
  for (int comp = 0; comp < 2; ++comp) {
    const auto& fv = comp == 0 ? f0 : f1;
    double resk = 0, resg = 0, resabs = 0;
    for (int i = 0; i < 21; ++i) {
      resk += r.kronrod_weight[i] * fv[i];
      resg += r.gauss_weight[i] * fv[i];
      resabs += r.kronrod_weight[i] * std::abs(fv[i]);
    }
    const double reskh = resk * 0.5;
    double resasc = 0;
    for (int i = 0; i < 21; ++i)
      resasc += r.kronrod_weight[i] * std::abs(fv[i] - reskh);
    resabs *= std::abs(hl);
    resasc *= std::abs(hl);
    double err = std::abs((resk - resg) * hl);
    if (resasc != 0.0 && err != 0.0)
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > DBL_MIN / (50.0 * DBL_EPSILON))
      err = std::max(50.0 * DBL_EPSILON * resabs, err);
    if (comp == 0) {
      s.k0 = resk * hl;
      s.e0 = err;
    } else {
      s.k1 = resk * hl;
      s.e1 = err;
    }
  }
  return s;
}

}  // namespace

const Gk21Rule& gk21_rule() {
  static const Gk21Rule rule = build_rule();
  return rule;
}

PairIntegral integrate_pair(const std::function<std::pair<double, double>(double)>& f,
                            double a, double b, double epsrel,
                            const std::string& context, std::size_t max_intervals,
                            double abs_floor_first, double abs_floor_second) {
  std::vector<Segment> segs;
  segs.push_back(evaluate_segment(f, a, b));
  unsigned long long neval = 21;

  auto totals = [&segs] {
    double i0 = 0, i1 = 0, e0 = 0, e1 = 0;
    for (const auto& s : segs) {
      i0 += s.k0;
      i1 += s.k1;
      e0 += s.e0;
      e1 += s.e1;
    }
    return std::array<double, 4>{i0, i1, e0, e1};
  };

  while (true) {
    const auto [i0, i1, e0, e1] = totals();
    const double s0 = std::max(std::abs(i0), 1e-300);
    const double s1 = std::max(std::abs(i1), 1e-300);
    const bool ok0 = e0 <= std::max(epsrel * std::abs(i0), abs_floor_first) || e0 <= 1e-300;
    const bool ok1 = e1 <= std::max(epsrel * std::abs(i1), abs_floor_second) || e1 <= 1e-300;
    if (ok0 && ok1) {
      PairIntegral out;
      out.first = i0;
      out.second = i1;
      out.err_first = e0;
      out.err_second = e1;
      out.neval = neval;
      return out;
    }
    if (segs.size() >= max_intervals) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    ": pair quadrature exhausted its refinement budget (%zu intervals; "
                    "rel. errors %.3e, %.3e)",
                    max_intervals, e0 / s0, e1 / s1);
      throw NumericalError(context + msg);
    }
    // split the segment with the worst normalized error; ties go left
    std::size_t worst = 0;
    double worst_pr = -1.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const double pr = std::max(segs[i].e0 / s0, segs[i].e1 / s1);
      if (pr > worst_pr || (pr == worst_pr && segs[i].a < segs[worst].a)) {
        worst_pr = pr;
        worst = i;
      }
    }
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      throw NumericalError(context + ": pair quadrature interval underflow near " +
                           std::to_string(s.a));
    }
    segs[worst] = evaluate_segment(f, s.a, mid);
    segs.push_back(evaluate_segment(f, mid, s.b));
    neval += 42;
  }
}

}  // namespace casimir
