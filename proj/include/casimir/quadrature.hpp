#ifndef CASIMIR_QUADRATURE_HPP
#define CASIMIR_QUADRATURE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>

namespace casimir {

/// Evaluation counts and worst achieved error estimate, accumulated across an
/// engine run. Not thread-safe by itself; each worker keeps its own and the
/// engine merges them.
struct QuadDiag {
  unsigned long long neval = 0;
  double max_rel_err = 0.0;

  void note(unsigned long long evals, double rel_err) {
    neval += evals;
    if (rel_err > max_rel_err) max_rel_err = rel_err;
  }
  void merge(const QuadDiag& o) { note(o.neval, o.max_rel_err); }
};

/// Adaptive Gauss-Kronrod (21-point) on [a, b] via GSL QAG. Subinterval budget
/// of 512 (~2e4 evaluations). Throws NumericalError when the tolerance cannot
/// be met; `context` is prepended to the message.
double integrate_qag(const std::function<double(double)>& f, double a, double b,
                     double epsrel, double epsabs, const std::string& context,
                     QuadDiag* diag = nullptr, std::size_t limit = 512);

/// Adaptive GK21 for a two-component integrand sharing evaluation points.
/// A component converges when its error estimate drops below
/// max(epsrel * |integral|, its absolute floor); the floors let integrands
/// whose evaluation cancels large terms declare their roundoff noise level.
/// Deterministic: the subdivision order depends only on the integrand values.
struct PairIntegral {
  double first = 0.0, second = 0.0;
  double err_first = 0.0, err_second = 0.0;
  unsigned long long neval = 0;
};

PairIntegral integrate_pair(const std::function<std::pair<double, double>(double)>& f,
                            double a, double b, double epsrel,
                            const std::string& context,
                            std::size_t max_intervals = 512,
                            double abs_floor_first = 0.0,
                            double abs_floor_second = 0.0);

/// The 21-point Gauss-Kronrod rule extracted from GSL at first use.
/// Exposed for the test suite.
struct Gk21Rule {
  std::array<double, 21> node;           // abscissae on [-1, 1]
  std::array<double, 21> kronrod_weight;
  std::array<double, 21> gauss_weight;   // zero at Kronrod-only nodes
};
const Gk21Rule& gk21_rule();

}  // namespace casimir

#endif
