#include "knalg/qcalc.hpp"

#include <cmath>

#include <fmt/format.h>

#include "knalg/error.hpp"

namespace knalg {

namespace {

void requireDeformation(double q, const char* what) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError(fmt::format("{}: q must be positive and finite, got {}", what, q));
  }
  if (q == 1.0) throw DomainError(fmt::format("{}: q = 1 is the classical point; use the classical path", what));
}

long double bracketRatio(long double y, long double x, long double h) {
  return std::sinh(y * x * h) / std::sinh(y * h);
}

}  // namespace

void DeformationParams::validate() const {
  requireDeformation(q, "DeformationParams");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError(fmt::format("alpha and beta must be finite, got {}, {}", alpha, beta));
  }
}

double qBracket(double x, double q) {
  requireDeformation(q, "qBracket");
  const double h = std::log(q);
  return std::sinh(x * h) / std::sinh(h);
}

double kappa(double q) {
  requireDeformation(q, "kappa");
  const double h = std::log(q);
  return std::sinh(h) / h;
}

std::complex<double> qProductSquare(std::complex<double> z, std::complex<double> w, double q) {
  if (!(q > 0.0)) throw DomainError(fmt::format("qProductSquare: q must be positive, got {}", q));
  return (z - w / q) * (z - w * q);
}

double cCoeff(double m, double alpha, double beta, double g0, int k, double q) {
  requireDeformation(q, "cCoeff");
  const long double a = 0.5L * (static_cast<long double>(alpha) + beta);
  for (long double y : {a + 1.0L, a - 1.0L, a}) {
    if (std::fabs(y) < 1e-14L) {
      throw DegenerateParameterError(fmt::format(
          "central coefficient degenerate: [{}]_q = 0 for alpha = {}, beta = {}", static_cast<double>(y),
          alpha, beta));
    }
  }
  const long double x = static_cast<long double>(m) - g0 + k;
  const long double h = std::log(static_cast<long double>(q));
  const long double value = bracketRatio(a + 1.0L, x, h) + bracketRatio(a - 1.0L, x, h) -
                            2.0L * std::cosh((x - 1.0L) * h) * bracketRatio(a, x, h);
  return static_cast<double>(value);
}

}  // namespace knalg
