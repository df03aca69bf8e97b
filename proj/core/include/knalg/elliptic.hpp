#pragma once

#include <complex>
#include <vector>

#include "knalg/series.hpp"

namespace knalg {

/// Period lattice 2 omega1 Z + 2 omega2 Z with Im(omega2 / omega1) > 0.
///
/// The invariants g2, g3 and the quasi-period eta1 come from the q-expansions of
/// the Eisenstein series E4, E6, E2 in the nome exp(i pi tau); eta2 follows from
/// the Legendre relation eta1 omega2 - eta2 omega1 = i pi / 2.
class Lattice {
 public:
  /// Half-periods. Throws DomainError when Im(omega2 / omega1) <= 0.
  Lattice(cplx omega1, cplx omega2);
  /// omega1 = 1, omega2 = tau.
  static Lattice fromTau(cplx tau) { return Lattice(1.0, tau); }

  cplx omega1() const noexcept { return omega1_; }
  cplx omega2() const noexcept { return omega2_; }
  cplx tau() const noexcept { return omega2_ / omega1_; }
  cplx eta1() const noexcept { return eta1_; }
  cplx eta2() const noexcept { return eta2_; }
  cplx g2() const noexcept { return g2_; }
  cplx g3() const noexcept { return g3_; }

  struct Reduction {
    cplx reduced;  ///< z - (2 m omega1 + 2 n omega2), the representative nearest to 0
    int m = 0;
    int n = 0;
  };
  Reduction reduce(cplx z) const;
  /// Distance from z to the nearest lattice point.
  double distanceToLattice(cplx z) const { return std::abs(reduce(z).reduced); }

 private:
  cplx omega1_;
  cplx omega2_;
  cplx eta1_;
  cplx eta2_;
  cplx g2_;
  cplx g3_;
};

/// Weierstrass sigma function of a lattice.
///
/// Taylor coefficients about 0 come from the Weierstrass recurrence
///   sigma(z) = sum a_{m,n} (g2/2)^m (2 g3)^n z^(4m+6n+1) / (4m+6n+1)!
/// evaluated in the frame where omega1 = 1; arguments are first reduced to the
/// cell around 0 with sigma(z + w) = (-1)^(m+n+mn) exp(eta(w)(z + w/2)) sigma(z).
class SigmaEvaluator {
 public:
  explicit SigmaEvaluator(Lattice lattice, int maxDegree = 161);

  const Lattice& lattice() const noexcept { return lattice_; }

  cplx operator()(cplx z) const { return sigma(z); }
  cplx sigma(cplx z) const;

  /// Plain Taylor sum without cell reduction; accurate for moderate |z| only.
  cplx taylor(cplx z) const;
  cplx taylorDerivative(cplx z) const;
  /// zeta = sigma'/sigma from the plain Taylor sum.
  cplx taylorZeta(cplx z) const { return taylorDerivative(z) / taylor(z); }

  /// |zeta(omega1) omega2 - zeta(omega2) omega1 - i pi/2| with zeta measured from the Taylor sum.
  double legendreResidual() const;

  /// Coefficient of z^j in the normalized-frame Taylor series (omega1 = 1).
  std::span<const std::complex<long double>> normalizedCoefficients() const { return coeffs_; }

 private:
  std::complex<long double> normalizedTaylor(std::complex<long double> u) const;
  std::complex<long double> normalizedTaylorDerivative(std::complex<long double> u) const;

  Lattice lattice_;
  std::vector<std::complex<long double>> coeffs_;  // coeffs_[j] multiplies u^j
};

/// Laurent expansion of f about `center` in the local coordinate t = z - center,
/// assuming f has exact order `leadingOrder` there. t^-leadingOrder f is sampled on
/// |t| = radius and shifted back, so the result has minExp = leadingOrder and
/// truncOrder = leadingOrder + depth.
///
/// Throws WrongLeadingOrderError when the leading coefficient is below tol, or when
/// the sampled function still carries a pole (the declared order is too high).
LaurentSeries expandAround(const ComplexFunction& f, cplx center, int leadingOrder, int depth,
                           double radius, int nSamples, Tolerance tol = Tolerance{});
LaurentSeries expandAround(const ComplexFunction& f, cplx center, int leadingOrder, int depth,
                           double radius, Tolerance tol = Tolerance{});

}  // namespace knalg
