#ifndef NNLIF_PARAMS_HPP
#define NNLIF_PARAMS_HPP

#include <stdexcept>
#include <string>

namespace nnlif {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or violated preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quadrature did not reach its tolerance; carries what it had.
class EvaluationFailure : public Error {
 public:
  EvaluationFailure(const std::string& what, double partial, double error_estimate)
      : Error(what), partial_(partial), error_estimate_(error_estimate) {}

  double partial_estimate() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_;
  double error_estimate_;
};

/// Physical parameters of the delayed NNLIF model.
///
/// The drift is h(v, N) = -v + b N(t - d), the diffusion coefficient is `a`,
/// neurons fire at `v_fire` and are reset to `v_reset`.
struct ModelParams {
  double a = 1.0;
  double b = 0.0;
  double v_reset = 1.0;
  double v_fire = 2.0;
  double delay = 0.0;

  void validate() const {
    if (!(a > 0.0)) throw DomainError("diffusion coefficient a must be positive");
    if (!(v_reset < v_fire)) throw DomainError("reset potential must lie below the threshold");
    if (!(delay >= 0.0)) throw DomainError("delay must be non-negative");
  }

  ModelParams with_b(double new_b) const {
    ModelParams p = *this;
    p.b = new_b;
    return p;
  }

  ModelParams with_delay(double new_delay) const {
    ModelParams p = *this;
    p.delay = new_delay;
    return p;
  }
};

}  // namespace nnlif

#endif  // NNLIF_PARAMS_HPP
