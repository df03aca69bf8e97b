#pragma once

#include <complex>

namespace knalg {

/// Deformation parameter q (real, positive) and the OPE labels alpha, beta.
struct DeformationParams {
  double q = 1.5;
  double alpha = 1.0;
  double beta = 0.5;

  /// Throws DomainError unless q > 0, q != 1 and alpha, beta are finite.
  void validate() const;
};

/// [x]_q = (q^x - q^-x) / (q - q^-1), evaluated as sinh(x ln q) / sinh(ln q).
double qBracket(double x, double q);

/// kappa = (q - 1/q) / ln(q^2) = sinh(ln q) / ln q.
double kappa(double q);

/// (z - w/q)(z - w q).
std::complex<double> qProductSquare(std::complex<double> z, std::complex<double> w, double q);

/// Central-term coefficient C_m^{alpha,beta}(g0; k) with x = m - g0 + k and a = (alpha + beta)/2:
///
///   [(a+1)x]/[a+1] + [(a-1)x]/[a-1] - (q^(x-1) + q^-(x-1)) [a x]/[a]
///
/// Evaluated in extended precision since the three terms cancel to O((ln q)^2).
/// Throws DegenerateParameterError when a denominator bracket vanishes.
double cCoeff(double m, double alpha, double beta, double g0, int k, double q);

}  // namespace knalg
