#include "knalg/basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "knalg/error.hpp"
#include "knalg/parallel.hpp"

namespace knalg {

// ---------------------------------------------------------------------------
// index sets and surfaces

IndexSet IndexSet::symmetric(HalfInt bound, int genus) {
  if (genus < 0) throw DomainError(fmt::format("genus must be non-negative, got {}", genus));
  if (bound.twice() < 0) throw DomainError(fmt::format("index bound must be non-negative, got {}", bound.str()));
  IndexSet set;
  set.bound = bound;
  const int parity = genus % 2;  // half-odd indices for odd genus
  for (int t = -bound.twice(); t <= bound.twice(); ++t) {
    if (((t % 2) + 2) % 2 == parity) set.indices.push_back(HalfInt::fromTwice(t));
  }
  return set;
}

void IndexSet::validate(int genus) const {
  const bool wantInteger = genus % 2 == 0;
  for (HalfInt n : indices) {
    if (n.isInteger() != wantInteger) {
      throw DomainError(fmt::format("index {} has the wrong parity for genus {} ({} indices required)",
                                    n.str(), genus, wantInteger ? "integral" : "half-odd-integral"));
    }
  }
}

void SurfaceSpec::validate(const IndexSet& indices) const {
  if (genus < 0) throw DomainError(fmt::format("genus must be non-negative, got {}", genus));
  indices.validate(genus);
  if (genus != 1) return;
  if (!lattice) throw DomainError("genus-1 surface requires a lattice");
  constexpr double kMinSeparation = 1e-6;
  auto require = [&](cplx point, const std::string& what) {
    const double d = lattice->distanceToLattice(point);
    if (d < kMinSeparation) {
      throw DomainError(fmt::format("degenerate torus data: {} lies on the lattice (distance {:.2e})", what, d));
    }
  };
  require(z0, "z0");
  require(2.0 * z0, "2 z0");
  for (HalfInt n : indices.indices) {
    if (n.twice() == 1 || n.twice() == -1) continue;  // e_{+-1/2} are the exceptional closed forms
    const double twoN = n.twice();
    require(twoN * z0, fmt::format("moving zero 2n z0 for n = {}", n.str()));
    require((twoN - 1.0) * z0, fmt::format("moving zero 2n z0 - z0 for n = {}", n.str()));
    require((twoN + 1.0) * z0, fmt::format("moving zero 2n z0 + z0 for n = {}", n.str()));
  }
}

// ---------------------------------------------------------------------------
// families

BasisFamily::BasisFamily(int genus, std::map<HalfInt, BasisElement> elements, FamilyInfo info)
    : genus_(genus), elements_(std::move(elements)), info_(std::move(info)) {
  if (genus < 0) throw DomainError(fmt::format("genus must be non-negative, got {}", genus));
  hasMinus_ = !elements_.empty() && std::all_of(elements_.begin(), elements_.end(), [](const auto& kv) {
    const BasisElement& el = kv.second;
    return el.eMinus.has_value() && el.omegaMinus.has_value() && el.aMinus.has_value();
  });
}

std::vector<HalfInt> BasisFamily::indices() const {
  std::vector<HalfInt> out;
  out.reserve(elements_.size());
  for (const auto& kv : elements_) out.push_back(kv.first);
  return out;
}

const BasisElement& BasisFamily::at(HalfInt n) const {
  auto it = elements_.find(n);
  if (it == elements_.end()) {
    throw MissingIndexError(fmt::format("basis index {} is not stored in the family", n.str()));
  }
  return it->second;
}

namespace {

const LaurentSeries& pick(const LaurentSeries& plus, const std::optional<LaurentSeries>& minus, Point p,
                          HalfInt n, const char* what) {
  if (p == Point::Plus) return plus;
  if (!minus) {
    throw MissingIndexError(fmt::format("no P- expansion of {} stored for index {}", what, n.str()));
  }
  return *minus;
}

}  // namespace

const LaurentSeries& BasisFamily::e(HalfInt n, Point p) const {
  const auto& el = at(n);
  return pick(el.e, el.eMinus, p, n, "e");
}

const LaurentSeries& BasisFamily::omega(HalfInt n, Point p) const {
  const auto& el = at(n);
  return pick(el.omega, el.omegaMinus, p, n, "Omega");
}

const LaurentSeries& BasisFamily::a(HalfInt n, Point p) const {
  const auto& el = at(n);
  return pick(el.a, el.aMinus, p, n, "A");
}

DualityResidual dualityResidual(const BasisFamily& family, Point p) {
  const std::vector<HalfInt> indices = family.indices();
  DualityResidual worst;
  if (indices.empty()) return worst;
  worst.m = worst.n = worst.scaledM = worst.scaledN = indices.front();
  const double sign = orientation(p);
  for (HalfInt m : indices) {
    const LaurentSeries& e = family.e(m, p);
    for (HalfInt n : indices) {
      const LaurentSeries& omega = family.omega(n, p);
      const cplx pairing = sign * residueOfProduct(e, omega);
      const double r = std::abs(pairing - (m == n ? 1.0 : 0.0));
      double size = 0.0;
      for (int k = e.minExp(); k < e.truncOrder(); ++k) {
        const int j = -1 - k;
        if (j >= omega.minExp() && j < omega.truncOrder()) size += std::abs(e.coefficient(k) * omega.coefficient(j));
      }
      const double scaled = r / std::max(1.0, size);
      if (r > worst.maxResidual) {
        worst.maxResidual = r;
        worst.m = m;
        worst.n = n;
      }
      if (scaled > worst.maxScaledResidual) {
        worst.maxScaledResidual = scaled;
        worst.scaledM = m;
        worst.scaledN = n;
      }
    }
  }
  return worst;
}

void validateFamily(const BasisFamily& family, Tolerance tol) {
  const HalfInt g0 = family.g0();
  for (const auto& [n, el] : family.elements()) {
    const HalfInt eLaw = n - g0 + 1;
    const HalfInt omegaLaw = -n + g0 - 2;
    if (!eLaw.isInteger()) {
      throw BasisError(fmt::format("index {} has the wrong parity for genus {}", n.str(), family.genus()));
    }
    if (el.e.minExp() != eLaw.toInt()) {
      throw BasisError(fmt::format("exponent law violated: e_{} starts at z^{}, expected z^{}", n.str(),
                                   el.e.minExp(), eLaw.toInt()));
    }
    if (el.omega.minExp() != omegaLaw.toInt()) {
      throw BasisError(fmt::format("exponent law violated: Omega_{} starts at z^{}, expected z^{}", n.str(),
                                   el.omega.minExp(), omegaLaw.toInt()));
    }
    auto requireLeading = [&](const LaurentSeries& s, const char* what) {
      if (s.coeffs().empty() || std::abs(s.coeffs().front()) <= tol.absTol) {
        throw BasisError(fmt::format("exponent law violated: leading coefficient of {}_{} vanishes", what, n.str()));
      }
    };
    requireLeading(el.e, "e");
    requireLeading(el.omega, "Omega");
    requireLeading(el.a, "A");
  }
  std::vector<Point> points{Point::Plus};
  if (family.hasMinus()) points.push_back(Point::Minus);
  for (Point p : points) {
    const DualityResidual worst = dualityResidual(family, p);
    if (worst.maxScaledResidual > tol.absTol) {
      throw BasisError(fmt::format(
          "duality violated at P{} for (m, n) = ({}, {}): scaled residual {:.3e} > {:.1e}",
          p == Point::Plus ? '+' : '-', worst.scaledM.str(), worst.scaledN.str(), worst.maxScaledResidual,
          tol.absTol));
    }
  }
}

BasisFamily buildGenus0(const IndexSet& indices, int depth) {
  if (depth < 1) throw DomainError(fmt::format("expansion depth must be positive, got {}", depth));
  indices.validate(0);
  std::map<HalfInt, BasisElement> elements;
  for (HalfInt index : indices.indices) {
    const int n = index.toInt();
    // at infinity, w = 1/z: z^(n+1) d/dz = -w^(1-n) d/dw and z^(-n-2) dz^2 = w^(n-2) dw^2
    elements.emplace(index, BasisElement{
                                LaurentSeries::monomial(n + 1, 1.0, n + 1 + depth),
                                LaurentSeries::monomial(-n - 2, 1.0, -n - 2 + depth),
                                LaurentSeries::monomial(n, 1.0, n + depth),
                                LaurentSeries::monomial(1 - n, -1.0, 1 - n + depth),
                                LaurentSeries::monomial(n - 2, 1.0, n - 2 + depth),
                                LaurentSeries::monomial(-n, 1.0, -n + depth),
                            });
  }
  FamilyInfo info;
  info.source = "genus0";
  info.depth = depth;
  return BasisFamily(0, std::move(elements), std::move(info));
}

// ---------------------------------------------------------------------------
// torus

namespace {

constexpr HalfInt kPlusHalf = HalfInt::fromTwice(1);
constexpr HalfInt kMinusHalf = HalfInt::fromTwice(-1);

/// Closed forms on the torus in the flat coordinate z. P+ = z0, P- = -z0.
class TorusForms {
 public:
  TorusForms(const Lattice& lattice, cplx z0, int depth)
      : sigma_(lattice, std::max(161, depth + 2)), z0_(z0) {
    sigma2z0_ = sigma_(2.0 * z0);
    sigmaZ0_ = sigma_(z0);
  }

  /// e_n with the leading coefficient 1 at P+ built in:
  ///   n != -1/2: sigma^(n-1/2)(z - z0) sigma(z + 2n z0) / sigma^(n+1/2)(z + z0) * sigma^(n+1/2)(2z0) / sigma((2n+1)z0)
  ///   n == -1/2: sigma^2(z) / (sigma(z + z0) sigma(z - z0)) * sigma(2z0) / sigma^2(z0)
  ComplexFunction vectorField(HalfInt n) const {
    if (n == kMinusHalf) {
      const cplx norm = sigma2z0_ / (sigmaZ0_ * sigmaZ0_);
      return [this, norm](cplx z) {
        const cplx s = sigma_(z);
        return s * s / (sigma_(z + z0_) * sigma_(z - z0_)) * norm;
      };
    }
    const int lower = (n.twice() - 1) / 2;
    const int upper = (n.twice() + 1) / 2;
    const double twoN = n.twice();
    const cplx norm = ipow(sigma2z0_, upper) / sigma_((twoN + 1.0) * z0_);
    return [this, lower, upper, twoN, norm](cplx z) {
      return ipow(sigma_(z - z0_), lower) * sigma_(z + twoN * z0_) / ipow(sigma_(z + z0_), upper) * norm;
    };
  }

  /// Quadratic differential before normalization. The generic form mirrors e_n under z -> -z,
  /// with moving zero at 2n z0. Omega_{-1/2} is the constant, and Omega_{1/2} uses the even
  /// function sigma^2(z) / (sigma(z - z0) sigma(z + z0)) (shifted by a constant later).
  ComplexFunction quadraticDifferential(HalfInt n) const {
    if (n == kMinusHalf) return [](cplx) { return cplx(1.0); };
    if (n == kPlusHalf) {
      return [this](cplx z) {
        const cplx s = sigma_(z);
        return s * s / (sigma_(z - z0_) * sigma_(z + z0_));
      };
    }
    const int lower = (n.twice() - 1) / 2;
    const int upper = (n.twice() + 1) / 2;
    const double twoN = n.twice();
    return [this, lower, upper, twoN](cplx z) {
      return ipow(sigma_(z + z0_), lower) * sigma_(z - twoN * z0_) / ipow(sigma_(z - z0_), upper);
    };
  }

  cplx center(Point p) const { return p == Point::Plus ? z0_ : -z0_; }
  cplx sigma(cplx z) const { return sigma_(z); }

  /// Taylor series of (sigma(t) / t)^power to `depth` terms, from the exact sigma coefficients
  /// by the power recurrence P_k = 1/k sum_j ((power + 1) j - k) S_j P_(k-j).
  LaurentSeries reducedSigmaPower(int power, int depth) const {
    using ld = std::complex<long double>;
    const auto a = sigma_.normalizedCoefficients();
    const ld scale = ld(1.0L) / ld(sigma_.lattice().omega1());
    std::vector<ld> base(static_cast<std::size_t>(depth));
    ld scaleK = 1.0L;
    for (std::size_t j = 0; j < base.size(); ++j) {
      base[j] = (j + 1 < a.size() ? a[j + 1] : ld(0.0L)) * scaleK;  // sigma(t) = omega1 sigma_1(t / omega1)
      scaleK *= scale;
    }
    std::vector<ld> out(base.size());
    out[0] = 1.0L;
    for (std::size_t k = 1; k < out.size(); ++k) {
      ld acc = 0.0L;
      for (std::size_t j = 1; j <= k; ++j) {
        acc += static_cast<long double>((power + 1) * static_cast<long>(j) - static_cast<long>(k)) * base[j] *
               out[k - j];
      }
      out[k] = acc / static_cast<long double>(k);
    }
    std::vector<cplx> c(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) c[k] = cplx(out[k]);
    return LaurentSeries(0, std::move(c));
  }


  /// Distance from the puncture at `at` to the nearest singularity other than itself, for a
  /// function whose poles sit on the classes of P+ and/or P- as flagged. Capped at the
  /// shortest period so entire factors never get sampled on huge circles.
  double singularityDistance(Point at, bool poleAtPlus, bool poleAtMinus) const {
    const Lattice& lat = sigma_.lattice();
    double shortest = std::numeric_limits<double>::infinity();
    for (int m = -2; m <= 2; ++m) {
      for (int n = -2; n <= 2; ++n) {
        if (m == 0 && n == 0) continue;
        shortest = std::min(shortest, std::abs(2.0 * m * lat.omega1() + 2.0 * n * lat.omega2()));
      }
    }
    const Point other = at == Point::Plus ? Point::Minus : Point::Plus;
    const bool poleAtOther = other == Point::Plus ? poleAtPlus : poleAtMinus;
    if (!poleAtOther) return shortest;
    return std::min(shortest, lat.distanceToLattice(center(at) - center(other)));
  }

 private:
  SigmaEvaluator sigma_;
  cplx z0_;
  cplx sigma2z0_;
  cplx sigmaZ0_;
};

int vectorFieldOrder(HalfInt n, Point p) {
  if (p == Point::Plus) return (n.twice() - 1) / 2;  // n - 1/2
  if (n == kPlusHalf) return 0;                      // e_{1/2} is constant
  if (n == kMinusHalf) return -1;
  return (-n.twice() - 1) / 2;  // -n - 1/2
}

int quadraticOrder(HalfInt n, Point p) {
  if (p == Point::Plus) return (-n.twice() - 1) / 2;  // -n - 1/2
  if (n == kPlusHalf) return -1;
  if (n == kMinusHalf) return 0;
  return (n.twice() - 1) / 2;  // n - 1/2
}

/// Expands f on several circles inside its nearest foreign singularity rho and keeps, per
/// coefficient, the circle with the smallest roundoff estimate eps * M(r) / r^k. Small circles
/// resolve the leading terms of functions that blow up near rho; large ones resolve the tail.
LaurentSeries expandMultiRadius(const ComplexFunction& f, cplx center, int order, int depth, double rho,
                                int samples, Tolerance tol) {
  const double outermost = std::pow(10.0, -20.0 / samples);
  constexpr std::array<double, 7> kFractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  std::vector<double> radii;
  for (double fr : kFractions) radii.push_back(fr * rho);
  radii.push_back(outermost * rho);

  std::vector<cplx> best(static_cast<std::size_t>(depth));
  std::vector<double> bestError(best.size(), std::numeric_limits<double>::infinity());
  for (double r : radii) {
    const LaurentSeries s = expandAround(f, center, order, depth, r, samples, tol);
    const auto c = s.coeffs();
    double peak = 0.0;  // the truncated sum bounds max |t^-order f| on the circle
    double rk = 1.0;
    for (const cplx& v : c) {
      peak += std::abs(v) * rk;
      rk *= r;
    }
    double invRk = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double err = peak * invRk;
      if (err < bestError[k]) {
        bestError[k] = err;
        best[k] = c[k];
      }
      invRk /= r;
    }
  }
  return LaurentSeries(order, std::move(best));
}

struct TorusExpansions {
  LaurentSeries eP, eM, omegaP, omegaM;
};

}  // namespace

BasisFamily buildGenus1(const SurfaceSpec& surface, const IndexSet& indices, int depth, Tolerance tol) {
  if (surface.genus != 1) throw DomainError("buildGenus1 requires a genus-1 surface");
  if (depth < 1) throw DomainError(fmt::format("expansion depth must be positive, got {}", depth));
  surface.validate(indices);

  const TorusForms forms(*surface.lattice, surface.z0, depth);
  const int samples = defaultSampleCount(depth + 1);
  std::vector<HalfInt> work = indices.indices;
  const bool needsCorrection = std::find(work.begin(), work.end(), kPlusHalf) != work.end();
  if (needsCorrection && std::find(work.begin(), work.end(), kMinusHalf) == work.end()) {
    work.push_back(kMinusHalf);
  }

  std::vector<std::optional<TorusExpansions>> raw(work.size());
  parallelFor(work.size(), [&](std::size_t i) {
    const HalfInt n = work[i];
    const ComplexFunction e = forms.vectorField(n);
    const ComplexFunction omega = forms.quadraticDifferential(n);
    // f = sigma(t)^L h(t) with t = z - center and L the order there; h is regular and nonzero at the
    // center and singular only at the other puncture, so only h is sampled
    auto expand = [&](const ComplexFunction& f, int (*order)(HalfInt, Point), Point at) {
      const int L = order(n, at);
      const cplx c = forms.center(at);
      const bool polePlus = order(n, Point::Plus) < 0;
      const bool poleMinus = order(n, Point::Minus) < 0;
      const double rho = forms.singularityDistance(at, polePlus, poleMinus);
      const ComplexFunction h = [&forms, &f, c, L](cplx z) { return f(z) * ipow(forms.sigma(z - c), -L); };
      const LaurentSeries hs = expandMultiRadius(h, c, 0, depth, rho, samples, tol);
      return shift(mul(forms.reducedSigmaPower(L, depth), hs), L);
    };
    LaurentSeries eP = expand(e, vectorFieldOrder, Point::Plus);
    LaurentSeries eM = expand(e, vectorFieldOrder, Point::Minus);
    // the closed form already has leading coefficient 1; divide out the numerical residue of that
    const cplx lead = eP.coeffs().front();
    eP = scale(eP, 1.0 / lead);
    eM = scale(eM, 1.0 / lead);
    LaurentSeries oP = expand(omega, quadraticOrder, Point::Plus);
    LaurentSeries oM = expand(omega, quadraticOrder, Point::Minus);
    raw[i] = TorusExpansions{std::move(eP), std::move(eM), std::move(oP), std::move(oM)};
  });

  auto slot = [&](HalfInt n) -> TorusExpansions& {
    const auto it = std::find(work.begin(), work.end(), n);
    return *raw[static_cast<std::size_t>(it - work.begin())];
  };

  if (needsCorrection) {
    // Omega_{1/2} + c must pair to zero with e_{-1/2}; the constant is Omega_{-1/2} up to scale
    TorusExpansions& half = slot(kPlusHalf);
    const cplx c = -residueOfProduct(slot(kMinusHalf).eP, half.omegaP);
    half.omegaP = add(half.omegaP, LaurentSeries::constant(c, half.omegaP.truncOrder()));
    half.omegaM = add(half.omegaM, LaurentSeries::constant(c, half.omegaM.truncOrder()));
  }

  std::map<HalfInt, BasisElement> elements;
  for (HalfInt n : indices.indices) {
    TorusExpansions& x = slot(n);
    const cplx pairing = residueOfProduct(x.eP, x.omegaP);
    if (std::abs(pairing) < tol.absTol) {
      throw BasisError(fmt::format("duality cannot be normalized: res(e_{0} Omega_{0}) = {1:.3e}", n.str(),
                                   std::abs(pairing)));
    }
    LaurentSeries oP = scale(x.omegaP, 1.0 / pairing);
    LaurentSeries oM = scale(x.omegaM, 1.0 / pairing);
    // on the torus functions and vector fields share the same closed forms
    elements.emplace(n, BasisElement{x.eP, std::move(oP), x.eP, x.eM, std::move(oM), x.eM});
  }

  FamilyInfo info;
  info.source = "genus1";
  info.depth = depth;
  info.omega1 = surface.lattice->omega1();
  info.omega2 = surface.lattice->omega2();
  info.z0 = surface.z0;
  BasisFamily family(1, std::move(elements), std::move(info));
  validateFamily(family, tol);
  return family;
}

BasisFamily buildFamily(const SurfaceSpec& surface, const IndexSet& indices, int depth, Tolerance tol) {
  switch (surface.genus) {
    case 0:
      return buildGenus0(indices, depth);
    case 1:
      return buildGenus1(surface, indices, depth, tol);
    default:
      throw DomainError(fmt::format("no built-in basis for genus {}; supply a basis file", surface.genus));
  }
}

cplx extractECoeff(const BasisFamily& family, HalfInt m, int k) {
  if (k < 0) throw DomainError(fmt::format("e+ coefficient index k must be non-negative, got {}", k));
  const int exponent = (m - family.g0() + 1).toInt() + k;
  return family.e(m).coefficient(exponent);
}

}  // namespace knalg
