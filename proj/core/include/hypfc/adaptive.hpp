// Adaptive-precision complex values: evaluation at 53-bit floats with
// compensated summation, escalating through software extended precision
// (mantissa roughly doubling, capped at 512 bits) when cancellation eats the
// mantissa or successive precisions disagree.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hypfc {

struct AdaptiveComplex {
  double re = 0.0;
  double im = 0.0;
  double abs_err = 0.0;    // successive-precision agreement bound
  int precision_bits = 53;

  std::complex<double> value() const { return {re, im}; }
  double abs() const { return std::abs(value()); }
};

inline AdaptiveComplex exact_zero() { return {0.0, 0.0, 0.0, 53}; }

// Thrown when the precision ladder or a quadrature refinement hits its cap
// without the requested agreement; carries the best value reached.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, AdaptiveComplex partial)
      : std::runtime_error(what), partial_(partial) {}
  const AdaptiveComplex& partial() const { return partial_; }

 private:
  AdaptiveComplex partial_;
};

namespace detail {

// One evaluation at a fixed precision level, downcast for comparison across
// levels.  cancel is (largest partial sum)/(final magnitude), the
// cancellation ratio that decides escalation.
struct LevelEval {
  std::complex<double> v;
  double cancel = 1.0;
  bool converged = true;
};

inline constexpr int kLevelBits[] = {53, 106, 212, 425, 512};
inline constexpr int kLevels = 5;

// Escalation policy shared by every series in this module.  fn(level) must
// evaluate the quantity at kLevelBits[level].
template <typename Fn>
AdaptiveComplex escalate(Fn&& fn, double rel_tol, const char* label) {
  bool have_prev = false;
  LevelEval prev;
  for (int level = 0; level < kLevels; ++level) {
    LevelEval cur = fn(level);
    double mag = std::abs(cur.v);
    double good_bits = kLevelBits[level] - std::log2(std::max(cur.cancel, 1.0));
    double model_err = mag * std::pow(2.0, -good_bits) * 16 + 1e-300;
    if (cur.converged) {
      if (have_prev) {
        double diff = std::abs(prev.v - cur.v);
        if (diff <= std::max(rel_tol * mag, model_err) * 10)
          return {cur.v.real(), cur.v.imag(), std::max(diff, model_err),
                  kLevelBits[level]};
      } else if (cur.cancel <= 1e6 && model_err <= rel_tol * std::max(mag, 1e-300)) {
        // base precision suffices; the summation model bounds the error
        return {cur.v.real(), cur.v.imag(), model_err, kLevelBits[level]};
      }
      prev = cur;
      have_prev = true;
    }
    if (level == kLevels - 1) {
      double diff = have_prev ? std::abs(prev.v - cur.v) : mag;
      throw NoConvergence(std::string(label) + ": precision cap reached",
                          {cur.v.real(), cur.v.imag(), diff, kLevelBits[level]});
    }
  }
  throw std::logic_error("escalate: unreachable");
}

}  // namespace detail

}  // namespace hypfc
