#include "knalg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <map>
#include <optional>
#include <tuple>

#include <fmt/format.h>

#include "knalg/commands.hpp"
#include "knalg/error.hpp"
#include "knalg/json_writer.hpp"

namespace knalg {

std::string statusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Measured: return "measured";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

Suite parseSuite(const std::string& text) {
  static const std::map<std::string, Suite> names{
      {"duality", Suite::Duality}, {"antisymmetry", Suite::Antisymmetry}, {"band", Suite::Band},
      {"limits", Suite::Limits},   {"cocycle", Suite::Cocycle},           {"jacobi", Suite::Jacobi},
      {"all", Suite::All}};
  const auto it = names.find(text);
  if (it == names.end()) {
    throw UsageError(fmt::format("unknown suite '{}' (duality, antisymmetry, band, limits, cocycle, jacobi, all)", text));
  }
  return it->second;
}

std::string suiteName(Suite s) {
  switch (s) {
    case Suite::Duality: return "duality";
    case Suite::Antisymmetry: return "antisymmetry";
    case Suite::Band: return "band";
    case Suite::Limits: return "limits";
    case Suite::Cocycle: return "cocycle";
    case Suite::Jacobi: return "jacobi";
    case Suite::All: return "all";
  }
  return "unknown";
}

namespace {

/// Running maximum of |deviation| with the index tuple that produced it.
struct Worst {
  double value = 0.0;
  std::string witness;

  void update(double v, std::string where) {
    if (v > value || witness.empty()) {
      value = std::max(value, v);
      witness = std::move(where);
    }
  }
  void update(double v, HalfInt m, HalfInt n) { update(v, fmt::format("(m, n) = ({}, {})", m.str(), n.str())); }
  void update(double v, HalfInt m, HalfInt n, HalfInt s) {
    update(v, fmt::format("(m, n, s) = ({}, {}, {})", m.str(), n.str(), s.str()));
  }
};

CheckResult judge(std::string name, std::string certifies, const Worst& w, double tol, std::string detail = {}) {
  return {std::move(name), std::move(certifies), w.value <= tol ? CheckStatus::Pass : CheckStatus::Fail, w.value,
          tol, w.witness, std::move(detail)};
}

CheckResult measured(std::string name, std::string certifies, const Worst& w, std::string detail = {}) {
  return {std::move(name), std::move(certifies), CheckStatus::Measured, w.value, 0.0, w.witness, std::move(detail)};
}

CheckResult skipped(std::string name, std::string certifies, std::string why) {
  return {std::move(name), std::move(certifies), CheckStatus::Skipped, 0.0, 0.0, {}, std::move(why)};
}

/// Family wide enough that Omega_(m+n-s) exists for |m|, |n| <= bound and |s| <= spread.
BasisFamily structureFamily(const RunConfig& cfg, HalfInt bound, HalfInt spread) {
  return familyFor(cfg, bound + bound + spread);
}

HalfInt g0For(const RunConfig& cfg) { return HalfInt::fromTwice(3 * cfg.genus); }

bool centralDegenerate(const DeformationParams& p) {
  try {
    cCoeff(1.0, p.alpha, p.beta, 0.0, 0, p.q);
    cCoeff(1.0, p.alpha, -p.beta, 0.0, 0, p.q);
    return false;
  } catch (const DegenerateParameterError&) {
    return true;
  } catch (const DomainError&) {
    return true;
  }
}

/// q - 1 for near-classical q, otherwise 1e-3.
double limitEpsilon(double q) {
  const double eps = q - 1.0;
  return (eps != 0.0 && std::fabs(eps) <= 1e-2) ? eps : 1e-3;
}

// cancels the O(h^2) term of v(h) = v0 + a h^2 + ...
cplx richardson(double h1, cplx v1, double h2, cplx v2) { return (h1 * h1 * v2 - h2 * h2 * v1) / (h1 * h1 - h2 * h2); }

void dualityChecks(const RunConfig& cfg, VerificationReport& r) {
  const BasisFamily family = familyFor(cfg, cfg.indexBound());
  for (Point p : {Point::Plus, Point::Minus}) {
    if (p == Point::Minus && !family.hasMinus()) continue;
    const DualityResidual d = dualityResidual(family, p);
    Worst w;
    w.update(d.maxResidual, d.m, d.n);
    r.checks.push_back(judge(p == Point::Plus ? "duality.plus" : "duality.minus",
                             fmt::format("residue pairing of e_m with Omega_n at P{} is the identity matrix",
                                         p == Point::Plus ? '+' : '-'),
                             w, cfg.tol,
                             fmt::format("scaled residual {:.3e} at ({}, {})", d.maxScaledResidual,
                                         d.scaledM.str(), d.scaledN.str())));
  }
}

void antisymmetryChecks(const RunConfig& cfg, VerificationReport& r) {
  const HalfInt bound = cfg.indexBound();
  const HalfInt g0 = g0For(cfg);
  const BasisFamily family = structureFamily(cfg, bound, g0);
  const std::vector<HalfInt> idx = indicesUpTo(family, bound);

  Worst c, chi, gamma, qgamma, qchi;
  const bool degenerate = centralDegenerate(cfg.params);
  const bool deformable = cfg.params.q != 1.0;
  for (HalfInt m : idx) {
    for (HalfInt n : idx) {
      if (n < m) continue;
      for (HalfInt s = -g0; s <= g0; s += 1) {
        if (!family.contains(m + n - s)) continue;
        c.update(std::abs(classicalStructureConstant(family, m, n, s) + classicalStructureConstant(family, n, m, s)),
                 m, n, s);
      }
      chi.update(std::abs(classicalCocycle(family, m, n) + classicalCocycle(family, n, m)), m, n);
      gamma.update(std::abs(heisenbergGamma(family, m, n) + heisenbergGamma(family, n, m)), m, n);
      if (deformable) {
        qgamma.update(std::abs(qHeisenbergGamma(family, m, n, cfg.params.q) +
                               qHeisenbergGamma(family, n, m, cfg.params.q)),
                      m, n);
        if (!degenerate) {
          qchi.update(std::abs(qCentralTerm(family, m, n, cfg.params) + qCentralTerm(family, n, m, cfg.params)), m,
                      n);
        }
      }
    }
  }
  r.checks.push_back(judge("antisymmetry.structure", "c^s_(m,n) + c^s_(n,m) = 0 (antisymmetric integrand)", c, cfg.tol));
  r.checks.push_back(judge("antisymmetry.cocycle", "chi_(m,n) + chi_(n,m) = 0 (residue of a total derivative vanishes)",
                           chi, cfg.tol));
  r.checks.push_back(judge("antisymmetry.heisenberg", "gamma_(m,n) + gamma_(n,m) = 0", gamma, cfg.tol));
  if (!deformable) {
    r.checks.push_back(skipped("antisymmetry.q-heisenberg", "gamma^q_(m,n) + gamma^q_(n,m) = 0", "q = 1"));
    r.checks.push_back(skipped("antisymmetry.q-central", "chi^q_(m,n) + chi^q_(n,m)", "q = 1"));
    return;
  }
  r.checks.push_back(judge("antisymmetry.q-heisenberg", "gamma^q_(m,n) + gamma^q_(n,m) = 0", qgamma, cfg.tol));
  if (degenerate) {
    r.checks.push_back(skipped("antisymmetry.q-central", "chi^q_(m,n) + chi^q_(n,m)",
                               "central coefficients degenerate for these alpha, beta"));
  } else {
    r.checks.push_back(measured("antisymmetry.q-central", "chi^q_(m,n) + chi^q_(n,m) (not claimed to vanish)", qchi));
  }
}

void bandChecks(const RunConfig& cfg, VerificationReport& r) {
  const HalfInt bound = cfg.indexBound();
  const HalfInt g0 = g0For(cfg);
  const HalfInt spread = g0 + 2;
  const BasisFamily family = structureFamily(cfg, bound, spread);
  const std::vector<HalfInt> idx = indicesUpTo(family, bound);
  Worst outside, above, twoPoint;
  for (HalfInt m : idx) {
    for (HalfInt n : idx) {
      for (HalfInt s = -spread; s <= spread; s += 1) {
        if (!family.contains(m + n - s)) continue;
        const cplx plus = classicalStructureConstant(family, m, n, s);
        if (abs(s) > g0) {
          outside.update(std::abs(plus), m, n, s);
          if (s > g0) above.update(std::abs(plus), m, n, s);
        } else if (family.hasMinus()) {
          twoPoint.update(std::abs(plus - classicalStructureConstant(family, m, n, s, Point::Minus)), m, n, s);
        }
      }
    }
  }
  r.checks.push_back(judge("band.structure",
                           fmt::format("c^s_(m,n) = 0 for g0 < |s| <= g0 + 2 (almost-graded band of width 2g0+1)"),
                           outside, cfg.tol));
  r.checks.push_back(judge("band.upper-edge", "c^s_(m,n) = 0 for g0 < s <= g0 + 2 (pole order of the bracket at P+)",
                           above, cfg.tol));
  if (family.hasMinus()) {
    r.checks.push_back(judge("band.two-point", "c^s_(m,n) from the residue at P+ equals minus the residue at P-",
                             twoPoint, cfg.tol));
  }
}

void limitChecks(const RunConfig& cfg, VerificationReport& r) {
  const HalfInt bound = cfg.indexBound();
  const HalfInt g0 = g0For(cfg);
  const HalfInt small = std::min(bound, cfg.genus % 2 == 0 ? HalfInt(2) : HalfInt::fromTwice(5));
  const BasisFamily family = structureFamily(cfg, bound, g0);
  const std::vector<HalfInt> idx = indicesUpTo(family, bound);

  // gamma^q -> gamma at rate eps^2
  const double eps = limitEpsilon(cfg.params.q);
  double err1 = 0.0, err2 = 0.0;
  Worst rate;
  for (HalfInt m : idx) {
    for (HalfInt n : idx) {
      const cplx classical = heisenbergGamma(family, m, n);
      err1 = std::max(err1, std::abs(qHeisenbergGamma(family, m, n, 1.0 + eps) - classical));
      err2 = std::max(err2, std::abs(qHeisenbergGamma(family, m, n, 1.0 + 0.5 * eps) - classical));
    }
  }
  const double ratio = err2 > 0.0 ? err1 / err2 : 0.0;
  rate.update(std::fabs(ratio - 4.0), fmt::format("eps = {:.3g}", eps));
  if (err1 < 1e-13) {
    r.checks.push_back(skipped("limits.q-heisenberg-rate", "gamma^q -> gamma with error O(eps^2)",
                               fmt::format("gamma^q equals gamma to {:.1e} at these indices; no rate to measure", err1)));
  } else {
    r.checks.push_back(judge("limits.q-heisenberg-rate",
                             "gamma^q -> gamma with error O(eps^2): halving eps divides the error by 4", rate, 0.5,
                             fmt::format("error {:.3e} at eps, {:.3e} at eps/2, ratio {:.4f}", err1, err2, ratio)));
  }

  // deformed commutator -> classical structure constants
  const double qNear = 1.0 + 1e-5;
  const DeformationParams nearParams{qNear, cfg.params.alpha, cfg.params.beta};
  const std::vector<HalfInt> inner = indicesUpTo(family, small);
  Worst commutator, kernel, inversion;
  for (HalfInt m : inner) {
    for (HalfInt n : inner) {
      const QCommutatorExpansion ex = qCommutator(family, m, n, nearParams);
      for (HalfInt s = -g0; s <= g0; s += 1) {
        commutator.update(std::abs(ex.signedSum(s) - classicalStructureConstant(family, m, n, s)), m, n, s);
      }
      for (const BranchCoefficients& b : ex.branches) {
        for (const auto& [s, value] : b.coefficients) {
          kernel.update(std::abs(value - classicalStructureD(family, m, n, s, b.spec.b, b.spec.c, b.spec.d)), m, n,
                        s);
        }
      }
      if (cfg.params.q != 1.0) {
        for (const BranchSpec& b : commutatorBranches(cfg.params.alpha, cfg.params.beta)) {
          for (HalfInt s = -g0; s <= g0; s += 1) {
            const cplx forward = qStructureD(family, m, n, s, b.b, b.c, b.d, cfg.params.q);
            const cplx backward = qStructureD(family, m, n, s, b.b, b.c, b.d, 1.0 / cfg.params.q);
            inversion.update(std::abs(forward - backward), m, n, s);
          }
        }
      }
    }
  }
  r.checks.push_back(judge("limits.q-commutator",
                           "signed sum of the four branch coefficients tends to c^s_(m,n) as q -> 1 (q = 1 + 1e-5)",
                           commutator, 1e-4));
  r.checks.push_back(judge("limits.q-structure-kernel",
                           "each branch kernel D^s tends to its term-by-term classical limit (q = 1 + 1e-5)", kernel,
                           1e-4));
  if (cfg.params.q != 1.0) {
    Worst gammaInversion;
    for (HalfInt m : idx) {
      for (HalfInt n : idx) {
        gammaInversion.update(std::abs(qHeisenbergGamma(family, m, n, cfg.params.q) -
                                       qHeisenbergGamma(family, m, n, 1.0 / cfg.params.q)),
                              m, n);
      }
    }
    r.checks.push_back(judge("limits.inversion.kernel", "D^s(q) = D^s(1/q) at the configured q, every branch",
                             inversion, cfg.tol));
    r.checks.push_back(judge("limits.inversion.q-heisenberg", "gamma^q(q) = gamma^q(1/q)", gammaInversion, cfg.tol));
  }

  // central term: Richardson over q = 1 + 1e-3, 1 + 1e-4
  Worst central, cocycle;
  const bool degenerate = centralDegenerate(DeformationParams{1.001, cfg.params.alpha, cfg.params.beta});
  const double h1 = std::log(1.0 + 1e-3), h2 = std::log(1.0 + 1e-4);
  for (HalfInt m : idx) {
    for (HalfInt n : idx) {
      const cplx limit = classicalLimitCentral(family, m, n);
      cocycle.update(std::abs(limit - classicalCocycle(family, m, n)), m, n);
      if (degenerate) continue;
      const cplx extrapolated =
          richardson(h1, qCentralTerm(family, m, n, {1.0 + 1e-3, cfg.params.alpha, cfg.params.beta}), h2,
                     qCentralTerm(family, m, n, {1.0 + 1e-4, cfg.params.alpha, cfg.params.beta}));
      central.update(std::abs(extrapolated - limit), m, n);
    }
  }
  if (degenerate) {
    r.checks.push_back(skipped("limits.central", "chi^q -> classical e+ cubic sum as q -> 1",
                               "central coefficients degenerate for these alpha, beta"));
  } else {
    r.checks.push_back(judge("limits.central",
                             "chi^q extrapolated to q = 1 equals the classical e+ cubic sum (q = 1 + 1e-3, 1 + 1e-4)",
                             central, 1e-5));
  }
  r.checks.push_back(judge("limits.central-cocycle", "the classical e+ cubic sum equals (1/12) res(e_m''' e_n)",
                           cocycle, std::max(cfg.tol, 1e-8)));
}

void cocycleChecks(const RunConfig& cfg, VerificationReport& r) {
  const HalfInt bound = cfg.indexBound();
  const HalfInt g0 = g0For(cfg);
  const BasisFamily family = familyFor(cfg, bound);
  const std::vector<HalfInt> idx = indicesUpTo(family, bound);
  const bool degenerate = centralDegenerate(cfg.params);
  const bool deformed = cfg.params.q != 1.0 && !degenerate;
  // order counting at P+ and P- bounds m + n; the exceptional e_(-1/2) widens the lower end by one
  const HalfInt lowest = -(g0 + g0) - 1;
  const HalfInt highest = g0 + g0;
  Worst classical, quantum, gradedClassical, gradedQuantum, twoPoint;
  for (HalfInt m : idx) {
    for (HalfInt n : idx) {
      const cplx chi = classicalCocycle(family, m, n);
      const std::optional<cplx> chiQ =
          deformed ? std::optional<cplx>(qCentralTerm(family, m, n, cfg.params)) : std::nullopt;
      if (family.hasMinus()) twoPoint.update(std::abs(chi - classicalCocycle(family, m, n, Point::Minus)), m, n);
      if (m + n < lowest || m + n > highest) gradedClassical.update(std::abs(chi), m, n);
      if (chiQ && m + n > highest) gradedQuantum.update(std::abs(*chiQ), m, n);
      if (abs(m - n) <= g0 + g0) continue;
      classical.update(std::abs(chi), m, n);
      if (chiQ) quantum.update(std::abs(*chiQ), m, n);
    }
  }
  const std::string why = cfg.params.q == 1.0 ? "q = 1" : "central coefficients degenerate for these alpha, beta";
  if (family.genus() == 0) {
    r.checks.push_back(skipped("cocycle.support.classical", "chi_(m,n) = 0 whenever |m - n| > 2 g0",
                               "stated for positive genus; on the sphere chi is supported on m + n = 0"));
  } else {
    r.checks.push_back(
        judge("cocycle.support.classical", "chi_(m,n) = 0 whenever |m - n| > 2 g0", classical, cfg.tol));
    if (deformed) {
      r.checks.push_back(
          judge("cocycle.support.deformed", "chi^q_(m,n) = 0 whenever |m - n| > 2 g0", quantum, cfg.tol));
    } else {
      r.checks.push_back(skipped("cocycle.support.deformed", "chi^q_(m,n) = 0 whenever |m - n| > 2 g0", why));
    }
  }
  r.checks.push_back(judge("cocycle.graded.classical",
                           fmt::format("chi_(m,n) = 0 unless {} <= m + n <= {} (pole orders at P+ and P-)",
                                       lowest.str(), highest.str()),
                           gradedClassical, cfg.tol));
  if (deformed) {
    r.checks.push_back(judge("cocycle.graded.deformed",
                             fmt::format("chi^q_(m,n) = 0 for m + n > {} (empty e+ coefficient sum)", highest.str()),
                             gradedQuantum, cfg.tol));
  } else {
    r.checks.push_back(skipped("cocycle.graded.deformed", "chi^q_(m,n) = 0 for m + n > 2 g0", why));
  }
  if (family.hasMinus()) {
    r.checks.push_back(judge("cocycle.two-point", "chi_(m,n) from the residue at P+ equals minus the residue at P-",
                             twoPoint, cfg.tol));
  }
}

void jacobiChecks(const RunConfig& cfg, VerificationReport& r) {
  const HalfInt g0 = g0For(cfg);
  const HalfInt safe = std::min(cfg.indexBound(), cfg.genus % 2 == 0 ? HalfInt(2) : HalfInt::fromTwice(5));
  const HalfInt window = g0 + 2;
  // the sphere needs 3 safe + 2 window; the torus family is capped where its pairings stay conditioned
  HalfInt familyBound = safe + safe + safe + window + window;
  if (cfg.genus == 1) familyBound = std::min(familyBound, HalfInt::fromTwice(21));
  const BasisFamily family = familyFor(cfg, familyBound);
  const JacobiResidual j = jacobiResidual(family, safe, window);
  const double tol = family.genus() == 0 ? cfg.tol : std::max(cfg.tol, 1e-6);
  Worst op, central;
  const std::string where = fmt::format("(m, n, k) = ({}, {}, {})", j.m.str(), j.n.str(), j.k.str());
  op.update(j.operatorPart, where);
  central.update(j.centralPart, where);
  const std::string detail = fmt::format("|m|, |n|, |k| <= {}, s and t over [-{}, {}], {} products outside the family",
                                         safe.str(), window.str(), window.str(), j.skippedTerms);
  r.checks.push_back(judge("jacobi.operator", "cyclic sum of [[L_m, L_n], L_k] has no operator part", op, tol, detail));
  r.checks.push_back(judge("jacobi.central", "cyclic sum of c^s_(m,n) chi_(m+n-s,k) vanishes (2-cocycle condition)",
                           central, tol, detail));
}

}  // namespace

JacobiResidual jacobiResidual(const BasisFamily& family, HalfInt bound, HalfInt window) {
  const std::vector<HalfInt> idx = indicesUpTo(family, bound);
  JacobiResidual worst;
  if (!idx.empty()) worst.m = worst.n = worst.k = idx.front();
  std::map<std::tuple<HalfInt, HalfInt, HalfInt>, cplx> cache;
  auto c = [&](HalfInt m, HalfInt n, HalfInt s) {
    const auto key = std::make_tuple(m, n, s);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, classicalStructureConstant(family, m, n, s)).first;
    return it->second;
  };
  for (HalfInt a : idx) {
    for (HalfInt b : idx) {
      for (HalfInt k0 : idx) {
        const std::array<HalfInt, 3> triple{a, b, k0};
        std::map<HalfInt, cplx> op;
        cplx central = 0.0;
        for (int r = 0; r < 3; ++r) {
          const HalfInt m = triple[r], n = triple[(r + 1) % 3], k = triple[(r + 2) % 3];
          for (HalfInt s = -window; s <= window; s += 1) {
            const HalfInt p = m + n - s;
            if (!family.contains(p)) {
              ++worst.skippedTerms;
              continue;
            }
            const cplx cs = c(m, n, s);
            central += cs * classicalCocycle(family, p, k);
            for (HalfInt t = -window; t <= window; t += 1) {
              if (!family.contains(p + k - t)) {
                ++worst.skippedTerms;
                continue;
              }
              op[p + k - t] += cs * c(p, k, t);
            }
          }
        }
        double opMax = 0.0;
        for (const auto& [target, v] : op) opMax = std::max(opMax, std::abs(v));
        if (opMax > worst.operatorPart || std::abs(central) > worst.centralPart) {
          worst.m = a;
          worst.n = b;
          worst.k = k0;
        }
        worst.operatorPart = std::max(worst.operatorPart, opMax);
        worst.centralPart = std::max(worst.centralPart, std::abs(central));
      }
    }
  }
  return worst;
}

VerificationReport runVerification(const RunConfig& cfg, Suite suite) {
  cfg.validate();
  VerificationReport report;
  report.suite = suiteName(suite);
  const BasisFamily base = familyFor(cfg, cfg.indexBound());
  report.metadata = makeMetadata(cfg, base, "verify " + report.suite, true);
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Duality) dualityChecks(cfg, report);
  if (all || suite == Suite::Antisymmetry) antisymmetryChecks(cfg, report);
  if (all || suite == Suite::Band) bandChecks(cfg, report);
  if (all || suite == Suite::Limits) limitChecks(cfg, report);
  if (all || suite == Suite::Cocycle) cocycleChecks(cfg, report);
  if (all || suite == Suite::Jacobi) jacobiChecks(cfg, report);
  return report;
}



std::string reportToJson(const VerificationReport& report) {
  JsonWriter w;
  w.beginObject();
  w.key("suite").value(report.suite);
  w.key("passed").value(report.passed());
  w.key("metadata");
  writeMetadata(w, report.metadata);
  w.key("checks").beginArray();
  for (const CheckResult& c : report.checks) {
    w.beginObject();
    w.key("name").value(c.name);
    w.key("certifies").value(c.certifies);
    w.key("status").value(statusName(c.status));
    w.key("residual").value(c.residual);
    w.key("tolerance").value(c.tolerance);
    w.key("witness").value(c.witness);
    if (!c.detail.empty()) w.key("detail").value(c.detail);
    w.endObject();
  }
  w.endArray();
  w.endObject();
  return w.str();
}

std::string reportToCsv(const VerificationReport& report) {
  std::string out = "name,status,residual,tolerance,witness\n";
  for (const CheckResult& c : report.checks) {
    out += fmt::format("{},{},{},{},\"{}\"\n", c.name, statusName(c.status), formatDouble(c.residual),
                       formatDouble(c.tolerance), c.witness);
  }
  return out;
}

}  // namespace knalg
