#include "knalg/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "knalg/error.hpp"

namespace knalg {

namespace {

using lcplx = std::complex<long double>;

constexpr long double kPi = std::numbers::pi_v<long double>;

long double divisorPowerSum(int n, int power) {
  long double s = 0.0L;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) s += std::pow(static_cast<long double>(d), power);
  }
  return s;
}

/// 1 + factor * sum_{n>=1} sigma_power(n) x^n, x = exp(2 pi i tau).
lcplx eisensteinSeries(lcplx x, int power, long double factor) {
  lcplx sum = 0.0L;
  lcplx xn = 1.0L;
  for (int n = 1; n < 10000; ++n) {
    xn *= x;
    const lcplx term = divisorPowerSum(n, power) * xn;
    sum += term;
    if (std::abs(term) < 1e-22L * (1.0L + std::abs(sum)) && n > 4) break;
  }
  return 1.0L + factor * sum;
}

}  // namespace

Lattice::Lattice(cplx omega1, cplx omega2) : omega1_(omega1), omega2_(omega2) {
  if (omega1 == cplx(0.0)) throw DomainError("lattice half-period omega1 must be nonzero");
  const cplx t = omega2 / omega1;
  if (!(t.imag() > 0.0) || !std::isfinite(t.real()) || !std::isfinite(t.imag())) {
    throw DomainError(fmt::format("lattice requires Im(omega2/omega1) > 0, got tau = {}{:+}i", t.real(),
                                  t.imag()));
  }
  const lcplx tau(t.real(), t.imag());
  const lcplx nome2 = std::exp(lcplx(0.0L, 2.0L * kPi) * tau);  // exp(2 pi i tau)

  const lcplx e2 = eisensteinSeries(nome2, 1, -24.0L);
  const lcplx e4 = eisensteinSeries(nome2, 3, 240.0L);
  const lcplx e6 = eisensteinSeries(nome2, 5, -504.0L);

  // frame omega1 = 1, half-periods (1, tau)
  const lcplx g2n = std::pow(kPi, 4) / 12.0L * e4;
  const lcplx g3n = std::pow(kPi, 6) / 216.0L * e6;
  const lcplx eta1n = kPi * kPi / 12.0L * e2;
  const lcplx eta2n = eta1n * tau - lcplx(0.0L, kPi / 2.0L);

  const lcplx w1(omega1.real(), omega1.imag());
  auto narrow = [](lcplx v) { return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())); };
  g2_ = narrow(g2n / std::pow(w1, 4));
  g3_ = narrow(g3n / std::pow(w1, 6));
  eta1_ = narrow(eta1n / w1);
  eta2_ = narrow(eta2n / w1);
}

Lattice::Reduction Lattice::reduce(cplx z) const {
  const cplx u = z / omega1_;
  const cplx t = tau();
  const double y = u.imag() / (2.0 * t.imag());
  const double x = (u.real() - 2.0 * y * t.real()) / 2.0;
  const int m0 = static_cast<int>(std::lround(x));
  const int n0 = static_cast<int>(std::lround(y));
  Reduction best{u, 0, 0};
  double bestAbs = std::numeric_limits<double>::infinity();
  for (int dm = -1; dm <= 1; ++dm) {
    for (int dn = -1; dn <= 1; ++dn) {
      const int m = m0 + dm;
      const int n = n0 + dn;
      const cplx r = u - 2.0 * static_cast<double>(m) - 2.0 * static_cast<double>(n) * t;
      if (std::abs(r) < bestAbs) {
        bestAbs = std::abs(r);
        best = Reduction{r, m, n};
      }
    }
  }
  best.reduced *= omega1_;
  return best;
}

SigmaEvaluator::SigmaEvaluator(Lattice lattice, int maxDegree) : lattice_(std::move(lattice)) {
  if (maxDegree < 13) throw DomainError("sigma Taylor degree must be at least 13");
  const lcplx w1(lattice_.omega1().real(), lattice_.omega1().imag());
  const lcplx g2(lattice_.g2().real(), lattice_.g2().imag());
  const lcplx g3(lattice_.g3().real(), lattice_.g3().imag());
  const lcplx halfG2 = g2 * std::pow(w1, 4) / 2.0L;
  const lcplx twoG3 = 2.0L * g3 * std::pow(w1, 6);

  const int maxM = maxDegree / 4 + 2;
  const int maxN = maxDegree / 6 + 2;
  std::vector<std::vector<long double>> a(maxM + 1, std::vector<long double>(maxN + 2, 0.0L));
  auto at = [&](int m, int n) -> long double {
    if (m < 0 || n < 0 || m > maxM || n > maxN + 1) return 0.0L;
    return a[m][n];
  };

  coeffs_.assign(static_cast<std::size_t>(maxDegree + 1), lcplx(0.0L));
  std::vector<long double> factorial(static_cast<std::size_t>(maxDegree + 1), 1.0L);
  for (int j = 1; j <= maxDegree; ++j) factorial[j] = factorial[j - 1] * j;

  for (int d = 0; d + 1 <= maxDegree; d += 2) {
    for (int n = 0; 6 * n <= d; ++n) {
      if ((d - 6 * n) % 4 != 0) continue;
      const int m = (d - 6 * n) / 4;
      long double value;
      if (m == 0 && n == 0) {
        value = 1.0L;
      } else {
        value = 3.0L * (m + 1) * at(m + 1, n - 1) + 16.0L / 3.0L * (n + 1) * at(m - 2, n + 1) -
                (2.0L * m + 3.0L * n - 1.0L) * (4.0L * m + 6.0L * n - 1.0L) / 3.0L * at(m - 1, n);
      }
      a[m][n] = value;
      const int j = d + 1;
      coeffs_[j] += value * std::pow(halfG2, m) * std::pow(twoG3, n) / factorial[j];
    }
  }
}

std::complex<long double> SigmaEvaluator::normalizedTaylor(std::complex<long double> u) const {
  lcplx acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::complex<long double> SigmaEvaluator::normalizedTaylorDerivative(std::complex<long double> u) const {
  lcplx acc = 0.0L;
  for (std::size_t j = coeffs_.size() - 1; j >= 1; --j) {
    acc = acc * u + static_cast<long double>(j) * coeffs_[j];
  }
  return acc;
}

cplx SigmaEvaluator::sigma(cplx z) const {
  const auto red = lattice_.reduce(z);
  const cplx w1 = lattice_.omega1();
  const lcplx w1l(w1.real(), w1.imag());
  const cplx un = red.reduced / w1;
  const lcplx u(un.real(), un.imag());
  const cplx t = lattice_.tau();
  const lcplx tau(t.real(), t.imag());
  lcplx value = normalizedTaylor(u);
  if (red.m != 0 || red.n != 0) {
    const lcplx eta1(lattice_.eta1().real(), lattice_.eta1().imag());
    const lcplx eta2(lattice_.eta2().real(), lattice_.eta2().imag());
    const long double m = red.m;
    const long double n = red.n;
    const lcplx w = 2.0L * m + 2.0L * n * tau;
    const lcplx etaW = (2.0L * m * eta1 + 2.0L * n * eta2) * w1l;
    const bool odd = ((red.m + red.n + red.m * red.n) % 2) != 0;
    value *= std::exp(etaW * (u + w / 2.0L));
    if (odd) value = -value;
  }
  value *= w1l;
  return cplx(static_cast<double>(value.real()), static_cast<double>(value.imag()));
}

cplx SigmaEvaluator::taylor(cplx z) const {
  const cplx w1 = lattice_.omega1();
  const cplx un = z / w1;
  const lcplx v = normalizedTaylor(lcplx(un.real(), un.imag())) * lcplx(w1.real(), w1.imag());
  return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

cplx SigmaEvaluator::taylorDerivative(cplx z) const {
  const cplx un = z / lattice_.omega1();
  const lcplx v = normalizedTaylorDerivative(lcplx(un.real(), un.imag()));
  return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

double SigmaEvaluator::legendreResidual() const {
  const cplx z1 = taylorZeta(lattice_.omega1());
  const cplx z2 = taylorZeta(lattice_.omega2());
  const cplx lhs = z1 * lattice_.omega2() - z2 * lattice_.omega1();
  return std::abs(lhs - cplx(0.0, std::numbers::pi / 2.0));
}

LaurentSeries expandAround(const ComplexFunction& f, cplx center, int leadingOrder, int depth,
                           double radius, Tolerance tol) {
  return expandAround(f, center, leadingOrder, depth, radius, defaultSampleCount(depth + 1), tol);
}

LaurentSeries expandAround(const ComplexFunction& f, cplx center, int leadingOrder, int depth,
                           double radius, int nSamples, Tolerance tol) {
  if (depth < 1) throw DomainError(fmt::format("expansion depth must be positive, got {}", depth));
  double peak = 0.0;
  auto reduced = [&](cplx z) {
    const cplx t = z - center;
    const cplx v = f(z) * ipow(t, -leadingOrder);
    peak = std::max(peak, std::abs(v));
    return v;
  };
  // one extra coefficient below the declared order detects a residual pole
  const LaurentSeries raw = seriesFromSamples(reduced, center, radius, -1, depth, nSamples);
  const cplx below = raw.coefficient(-1);
  if (std::abs(below) > 1e-7 * radius * std::max(peak, 1e-300)) {
    throw WrongLeadingOrderError(fmt::format(
        "function has a term below the declared order {} at {}{:+}i", leadingOrder, center.real(),
        center.imag()));
  }
  const cplx lead = raw.coefficient(0);
  if (std::abs(lead) < tol.absTol) {
    throw WrongLeadingOrderError(fmt::format(
        "leading coefficient {:.3e} vanishes: declared order {} at {}{:+}i is too low", std::abs(lead),
        leadingOrder, center.real(), center.imag()));
  }
  std::vector<cplx> c(raw.coeffs().begin() + 1, raw.coeffs().end());
  return LaurentSeries(leadingOrder, std::move(c));
}

}  // namespace knalg
