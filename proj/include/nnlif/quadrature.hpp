#ifndef NNLIF_QUADRATURE_HPP
#define NNLIF_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "params.hpp"

namespace nnlif::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr unsigned kDefaultMaxDepth = 20;

/// Adaptive 21-point Gauss-Kronrod integration of a smooth integrand on [lo, hi].
///
/// Throws EvaluationFailure (carrying the partial estimate) when the
/// accumulated Kronrod error exceeds the requested tolerance after
/// `max_depth` levels of bisection.
template <class F>
Result integrate(F&& f, double lo, double hi, double rel_tol = kDefaultRelTol,
                 unsigned max_depth = kDefaultMaxDepth, const char* what = "integral") {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
  Result r;
  if (lo == hi) return r;
  r.value = Rule::integrate(f, lo, hi, max_depth, rel_tol, &r.error, &r.l1);
  if (!std::isfinite(r.value)) {
    throw EvaluationFailure(std::string(what) + ": non-finite quadrature result", r.value, r.error);
  }
  // Kronrod-minus-Gauss overestimates the true error by orders of magnitude
  // for analytic integrands, hence the slack factor.
  const double scale = std::max(std::abs(r.value), r.l1);
  if (r.error > 100.0 * rel_tol * scale + 1e-300) {
    throw EvaluationFailure(std::string(what) + ": quadrature did not converge", r.value, r.error);
  }
  return r;
}

}  // namespace nnlif::quad

#endif  // NNLIF_QUADRATURE_HPP
