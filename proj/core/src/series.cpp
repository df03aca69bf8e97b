#include "knalg/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "knalg/error.hpp"
#include "knalg/qcalc.hpp"

namespace knalg {

OutOfWindowError::OutOfWindowError(int exponent, int minExp, int truncOrder)
    : Error(fmt::format("coefficient of z^{} is unknown: series has minExp {} and is truncated at z^{}",
                        exponent, minExp, truncOrder)),
      exponent_(exponent),
      minExp_(minExp),
      truncOrder_(truncOrder) {}

Tolerance::Tolerance(double tol) : absTol(tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError(fmt::format("tolerance must be positive and finite, got {}", tol));
  }
}

LaurentSeries::LaurentSeries(int minExp, std::vector<cplx> coeffs)
    : minExp_(minExp), coeffs_(std::move(coeffs)) {}

LaurentSeries LaurentSeries::zero(int minExp, int truncOrder) {
  if (truncOrder < minExp) {
    throw DomainError(fmt::format("truncOrder {} below minExp {}", truncOrder, minExp));
  }
  return LaurentSeries(minExp, std::vector<cplx>(static_cast<std::size_t>(truncOrder - minExp)));
}

LaurentSeries LaurentSeries::monomial(int exponent, cplx coeff, int truncOrder) {
  if (truncOrder <= exponent) {
    throw DomainError(
        fmt::format("monomial z^{} does not fit below truncOrder {}", exponent, truncOrder));
  }
  std::vector<cplx> c(static_cast<std::size_t>(truncOrder - exponent));
  c[0] = coeff;
  return LaurentSeries(exponent, std::move(c));
}

cplx LaurentSeries::coefficient(int exponent) const {
  if (!covers(exponent)) throw OutOfWindowError(exponent, minExp_, truncOrder());
  if (exponent < minExp_) return 0.0;
  return coeffs_[static_cast<std::size_t>(exponent - minExp_)];
}

cplx LaurentSeries::evaluate(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc * ipow(z, minExp_);
}

namespace {

LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, double sign) {
  const int lo = std::min(a.minExp(), b.minExp());
  const int hi = std::min(a.truncOrder(), b.truncOrder());
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo));
  for (int k = lo; k < hi; ++k) {
    cplx v = 0.0;
    if (k >= a.minExp()) v += a.coefficient(k);
    if (k >= b.minExp()) v += sign * b.coefficient(k);
    c[static_cast<std::size_t>(k - lo)] = v;
  }
  return LaurentSeries(lo, std::move(c));
}

}  // namespace

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, 1.0); }

LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, -1.0); }

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
  const int lo = a.minExp() + b.minExp();
  const int hi = std::min(a.truncOrder() + b.minExp(), b.truncOrder() + a.minExp());
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  const std::size_t n = static_cast<std::size_t>(hi - lo);
  std::vector<cplx> c(n);
  for (std::size_t i = 0; i < ac.size() && i < n; ++i) {
    const std::size_t jmax = std::min(bc.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j) c[i + j] += ac[i] * bc[j];
  }
  return LaurentSeries(lo, std::move(c));
}

cplx residueOfProduct(const LaurentSeries& a, const LaurentSeries& b) {
  const int lo = a.minExp() + b.minExp();
  const int hi = std::min(a.truncOrder() + b.minExp(), b.truncOrder() + a.minExp());
  if (hi <= -1) throw OutOfWindowError(-1, lo, hi);
  cplx acc = 0.0;
  // exponents i + j = -1 with i in a's window, j in b's window
  for (int i = a.minExp(); i < a.truncOrder(); ++i) {
    const int j = -1 - i;
    if (j < b.minExp()) break;
    if (j >= b.truncOrder()) continue;
    acc += a.coefficient(i) * b.coefficient(j);
  }
  return acc;
}

LaurentSeries scale(const LaurentSeries& a, cplx factor) {
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& v : c) v *= factor;
  return LaurentSeries(a.minExp(), std::move(c));
}

LaurentSeries shift(const LaurentSeries& a, int k) {
  return LaurentSeries(a.minExp() + k, std::vector<cplx>(a.coeffs().begin(), a.coeffs().end()));
}

LaurentSeries scaleArg(const LaurentSeries& a, cplx lambda) {
  if (lambda == cplx(0.0)) throw DomainError("scaleArg: lambda = 0 collapses the expansion");
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int k = a.minExp() + static_cast<int>(i);
    c[i] *= ipow(lambda, k);
  }
  return LaurentSeries(a.minExp(), std::move(c));
}

LaurentSeries derivative(const LaurentSeries& a) {
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= static_cast<double>(a.minExp() + static_cast<int>(i));
  return LaurentSeries(a.minExp() - 1, std::move(c));
}

LaurentSeries qDerivative(const LaurentSeries& a, double qEff) {
  if (!(qEff > 0.0)) throw DomainError(fmt::format("qDerivative: q must be positive, got {}", qEff));
  if (qEff == 1.0) throw DomainError("qDerivative: q = 1 divides by zero; use derivative()");
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] *= qBracket(static_cast<double>(a.minExp() + static_cast<int>(i)), qEff);
  }
  return LaurentSeries(a.minExp() - 1, std::move(c));
}

int defaultSampleCount(int coefficientCount) { return 4 * std::max(coefficientCount, 1); }

LaurentSeries seriesFromSamples(const ComplexFunction& f, cplx center, double radius, int minExp,
                                int truncOrder) {
  return seriesFromSamples(f, center, radius, minExp, truncOrder,
                           defaultSampleCount(truncOrder - minExp));
}

LaurentSeries seriesFromSamples(const ComplexFunction& f, cplx center, double radius, int minExp,
                                int truncOrder, int nSamples) {
  if (truncOrder < minExp) {
    throw DomainError(fmt::format("truncOrder {} below minExp {}", truncOrder, minExp));
  }
  const int count = truncOrder - minExp;
  if (nSamples < 2 * count || nSamples < 1) {
    throw DomainError(fmt::format("seriesFromSamples: {} samples cannot resolve {} coefficients",
                                  nSamples, count));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError(fmt::format("seriesFromSamples: radius must be positive, got {}", radius));
  }

  std::vector<cplx> samples(static_cast<std::size_t>(nSamples));
  std::vector<cplx> unit(static_cast<std::size_t>(nSamples));
  for (int j = 0; j < nSamples; ++j) {
    unit[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / nSamples);
    const cplx v = f(center + radius * unit[j]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw SingularityError(fmt::format("non-finite sample at z = {}{:+}i", (center + radius * unit[j]).real(),
                                         (center + radius * unit[j]).imag()));
    }
    samples[j] = v;
  }

  std::vector<cplx> coeffs(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int k = minExp + i;
    // unit^(-k) indexed modulo nSamples keeps the twiddles exact
    const long long step = ((static_cast<long long>(-k) % nSamples) + nSamples) % nSamples;
    cplx acc = 0.0;
    for (int j = 0; j < nSamples; ++j) {
      acc += samples[j] * unit[static_cast<std::size_t>((step * j) % nSamples)];
    }
    coeffs[i] = acc / static_cast<double>(nSamples) * std::pow(radius, -k);
  }
  return LaurentSeries(minExp, std::move(coeffs));
}

}  // namespace knalg
