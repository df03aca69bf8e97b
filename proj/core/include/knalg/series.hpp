#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace knalg {

using cplx = std::complex<double>;

/// z^k by repeated squaring; exact for monomial-sized exponents where std::pow may go through exp/log.
template <typename T>
std::complex<T> ipow(std::complex<T> z, int k) {
  if (k < 0) return T(1) / ipow(z, -k);
  std::complex<T> result(1);
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

/// Magnitude below which a complex value counts as zero in verification.
struct Tolerance {
  double absTol = 1e-9;

  /// Throws DomainError unless absTol > 0.
  explicit Tolerance(double tol = 1e-9);
  bool isZero(cplx v) const { return std::abs(v) <= absTol; }
};

/// Truncated Laurent series sum_{k = minExp}^{truncOrder - 1} c_k z^k.
///
/// Exponents below minExp are exactly zero; exponents at or above truncOrder
/// are unknown. Every operation reports the tightest truncation it can justify,
/// and asking for an unknown coefficient is an error rather than a silent zero.
/// The known window is therefore (-inf, truncOrder).
/// Values are immutable once built.
class LaurentSeries {
 public:
  /// coeffs[i] is the coefficient of z^(minExp + i); truncOrder = minExp + coeffs.size().
  LaurentSeries(int minExp, std::vector<cplx> coeffs);

  static LaurentSeries zero(int minExp, int truncOrder);
  static LaurentSeries monomial(int exponent, cplx coeff, int truncOrder);
  static LaurentSeries constant(cplx c, int truncOrder) { return monomial(0, c, truncOrder); }

  int minExp() const noexcept { return minExp_; }
  int truncOrder() const noexcept { return minExp_ + static_cast<int>(coeffs_.size()); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  bool covers(int exponent) const noexcept { return exponent < truncOrder(); }
  /// Zero below minExp; throws OutOfWindowError at or above truncOrder.
  cplx coefficient(int exponent) const;
  /// Coefficient of z^-1; throws OutOfWindowError when truncOrder <= -1.
  cplx residue() const { return coefficient(-1); }

  /// Evaluates the retained terms at z (z != 0 when minExp < 0).
  cplx evaluate(cplx z) const;

  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

 private:
  int minExp_;
  std::vector<cplx> coeffs_;
};

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b);
/// Cauchy product; truncOrder = min(a.trunc + b.minExp, b.trunc + a.minExp).
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries scale(const LaurentSeries& a, cplx factor);
/// Multiplies by z^k (k < 0 divides by a power of z exactly).
LaurentSeries shift(const LaurentSeries& a, int k);

/// f(z) -> f(lambda z): coefficient of z^k picks up lambda^k. Throws for lambda == 0.
LaurentSeries scaleArg(const LaurentSeries& a, cplx lambda);
/// Term-by-term d/dz; both window ends drop by one.
LaurentSeries derivative(const LaurentSeries& a);
/// Symmetric q-difference (f(qz) - f(z/q)) / (z (q - 1/q)): z^k -> [k]_q z^(k-1).
/// Throws DomainError for qEff <= 0 or qEff == 1.
LaurentSeries qDerivative(const LaurentSeries& a, double qEff);

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add(a, b); }
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return sub(a, b); }
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }
inline LaurentSeries operator*(cplx c, const LaurentSeries& a) { return scale(a, c); }
inline LaurentSeries operator-(const LaurentSeries& a) { return scale(a, -1.0); }

/// Residue of a*b without forming the full product.
cplx residueOfProduct(const LaurentSeries& a, const LaurentSeries& b);

using ComplexFunction = std::function<cplx(cplx)>;

/// Default sample count for seriesFromSamples: four samples per requested coefficient.
int defaultSampleCount(int coefficientCount);

/// Recovers the Laurent coefficients of f about `center` from nSamples uniform
/// samples on the circle |z - center| = radius (trapezoidal Cauchy integrals).
/// Throws DomainError when nSamples < 2 (truncOrder - minExp) or radius <= 0,
/// and SingularityError when a sample is not finite.
LaurentSeries seriesFromSamples(const ComplexFunction& f, cplx center, double radius, int minExp,
                                int truncOrder, int nSamples);
LaurentSeries seriesFromSamples(const ComplexFunction& f, cplx center, double radius, int minExp,
                                int truncOrder);

}  // namespace knalg
