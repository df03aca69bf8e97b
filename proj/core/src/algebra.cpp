#include "knalg/algebra.hpp"

#include <cmath>

#include <fmt/format.h>

#include "knalg/error.hpp"
#include "knalg/parallel.hpp"

namespace knalg {

namespace {

// exponents this close to zero are the algebraic zero of a bracket prefactor
constexpr double kZeroExponent = 1e-14;

bool isZeroExponent(double x) { return std::fabs(x) < kZeroExponent; }

LaurentSeries thirdDerivative(const LaurentSeries& a) { return derivative(derivative(derivative(a))); }

int sumLength(const BasisFamily& family, HalfInt m, HalfInt n) {
  // 2 g0 - m - n is an integer for admissible indices
  return (family.g0() + family.g0() - m - n).toInt();
}

}  // namespace

cplx classicalStructureConstant(const BasisFamily& family, HalfInt m, HalfInt n, HalfInt s, Point p) {
  const LaurentSeries& em = family.e(m, p);
  const LaurentSeries& en = family.e(n, p);
  const LaurentSeries& omega = family.omega(m + n - s, p);
  const LaurentSeries bracket = derivative(em) * en - em * derivative(en);
  return orientation(p) * residueOfProduct(bracket, omega);
}

cplx classicalCocycle(const BasisFamily& family, HalfInt m, HalfInt n, Point p) {
  return orientation(p) * residueOfProduct(thirdDerivative(family.e(m, p)), family.e(n, p)) / 12.0;
}

cplx heisenbergGamma(const BasisFamily& family, HalfInt m, HalfInt n, Point p) {
  return orientation(p) * residueOfProduct(derivative(family.a(m, p)), family.a(n, p));
}

cplx qHeisenbergGamma(const BasisFamily& family, HalfInt m, HalfInt n, double q) {
  return residueOfProduct(qDerivative(family.a(m), q), family.a(n));
}

cplx qStructureD(const BasisFamily& family, HalfInt m, HalfInt n, HalfInt s, double b, double c, double d,
                 double q) {
  const double k = kappa(q);  // validates q
  const LaurentSeries& em = family.e(m);
  const LaurentSeries& en = family.e(n);
  const LaurentSeries& omega = family.omega(m + n - s);
  const double x = d - b - c;
  const double qc = std::pow(q, -c);

  cplx total = 0.0;
  if (!isZeroExponent(x)) {
    const LaurentSeries term = qDerivative(em, std::pow(q, x)) * scaleArg(en, std::pow(q, -b));
    total += qc * qBracket(x, q) * residueOfProduct(term, omega);
  }
  if (!isZeroExponent(b)) {
    const LaurentSeries term = scaleArg(em, std::pow(q, -x)) * qDerivative(en, std::pow(q, -b));
    total -= qc * qBracket(b, q) * residueOfProduct(term, omega);
  }
  if (!isZeroExponent(c)) {
    const LaurentSeries term = shift(scaleArg(em, std::pow(q, -x)) * scaleArg(en, std::pow(q, b)), -1);
    total -= qBracket(c, q) * residueOfProduct(term, omega);
  }
  return 0.5 * k * total;
}

cplx classicalStructureD(const BasisFamily& family, HalfInt m, HalfInt n, HalfInt s, double b, double c,
                         double d) {
  const LaurentSeries& em = family.e(m);
  const LaurentSeries& en = family.e(n);
  const LaurentSeries& omega = family.omega(m + n - s);
  const cplx first = residueOfProduct(derivative(em) * en, omega);
  const cplx second = residueOfProduct(em * derivative(en), omega);
  const cplx third = residueOfProduct(shift(em * en, -1), omega);
  return 0.5 * ((d - b - c) * first - b * second - c * third);
}

std::array<BranchSpec, 4> commutatorBranches(double alpha, double beta) {
  const double up = 0.5 * (alpha + 1.0);
  const double down = 0.5 * (alpha - 1.0);
  const double same = 0.5 * (beta - alpha);
  const double opposite = 0.5 * (-beta - alpha);
  return {{
      {"alpha+beta+1", alpha + beta + 1.0, +1, up, same, beta + 1.0},
      {"-alpha+beta+1", -alpha + beta + 1.0, +1, up, opposite, -beta + 1.0},
      {"-alpha-beta+1", -alpha - beta + 1.0, -1, down, same, beta - 1.0},
      {"alpha-beta-1", alpha - beta - 1.0, -1, down, opposite, -beta - 1.0},
  }};
}

cplx QCommutatorExpansion::signedSum(HalfInt s) const {
  cplx total = 0.0;
  for (const BranchCoefficients& branch : branches) {
    bool found = false;
    for (const auto& [index, value] : branch.coefficients) {
      if (index == s) {
        total += static_cast<double>(branch.spec.sign) * value;
        found = true;
      }
    }
    if (!found) throw MissingIndexError(fmt::format("no branch coefficient stored for s = {}", s.str()));
  }
  return total;
}

QCommutatorExpansion qCommutator(const BasisFamily& family, HalfInt m, HalfInt n, const DeformationParams& params) {
  params.validate();
  QCommutatorExpansion out{m, n, params, {}, std::nullopt};
  const std::array<BranchSpec, 4> specs = commutatorBranches(params.alpha, params.beta);
  const HalfInt g0 = family.g0();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out.branches[i].spec = specs[i];
    for (HalfInt s = -g0; s <= g0; s += 1) {
      out.branches[i].coefficients.emplace_back(
          s, qStructureD(family, m, n, s, specs[i].b, specs[i].c, specs[i].d, params.q));
    }
  }
  try {
    out.central = qCentralTerm(family, m, n, params);
  } catch (const DegenerateParameterError&) {
    out.central.reset();
  }
  return out;
}

cplx qCentralTerm(const BasisFamily& family, HalfInt m, HalfInt n, const DeformationParams& params) {
  params.validate();
  const int top = sumLength(family, m, n);
  if (top < 0) return 0.0;
  const double g0 = family.g0().value();
  const double mShifted = m.value() + 1.0;
  const double h = std::log(params.q);
  cplx total = 0.0;
  for (int k = 0; k <= top; ++k) {
    const double weight = cCoeff(mShifted, params.alpha, params.beta, g0, k, params.q) +
                          cCoeff(mShifted, params.alpha, -params.beta, g0, k, params.q);
    if (weight == 0.0) continue;
    total += extractECoeff(family, m, k) * extractECoeff(family, n, top - k) * weight;
  }
  return -total / (16.0 * h * h);
}

cplx classicalLimitCentral(const BasisFamily& family, HalfInt m, HalfInt n) {
  const int top = sumLength(family, m, n);
  if (top < 0) return 0.0;
  const double g0 = family.g0().value();
  cplx total = 0.0;
  for (int k = 0; k <= top; ++k) {
    const double x = m.value() - g0 + k;
    const double weight = (x - 1.0) * x * (x + 1.0);
    if (weight == 0.0) continue;
    total += extractECoeff(family, m, k) * extractECoeff(family, n, top - k) * weight;
  }
  return total / 12.0;
}

// ---------------------------------------------------------------------------
// tables

std::vector<HalfInt> indicesUpTo(const BasisFamily& family, HalfInt range) {
  std::vector<HalfInt> out;
  for (HalfInt n : family.indices()) {
    if (abs(n) <= range) out.push_back(n);
  }
  return out;
}

namespace {

struct IndexPair {
  HalfInt m;
  HalfInt n;
};

std::vector<IndexPair> pairsUpTo(const BasisFamily& family, HalfInt range) {
  const std::vector<HalfInt> idx = indicesUpTo(family, range);
  std::vector<IndexPair> pairs;
  pairs.reserve(idx.size() * idx.size());
  for (HalfInt m : idx) {
    for (HalfInt n : idx) pairs.push_back({m, n});
  }
  return pairs;
}

template <typename Entry, typename Compute>
std::vector<Entry> collect(const std::vector<IndexPair>& pairs, Compute&& compute) {
  std::vector<std::vector<Entry>> slots(pairs.size());
  parallelFor(pairs.size(), [&](std::size_t i) {
    try {
      slots[i] = compute(pairs[i]);
    } catch (const Error& err) {
      throw Error(fmt::format("at (m, n) = ({}, {}): {}", pairs[i].m.str(), pairs[i].n.str(), err.what()));
    }
  });
  std::vector<Entry> out;
  for (auto& slot : slots) out.insert(out.end(), slot.begin(), slot.end());
  return out;
}

}  // namespace

StructureTable buildClassicalTable(const BasisFamily& family, HalfInt range, TableMetadata metadata) {
  const HalfInt g0 = family.g0();
  StructureTable table{std::move(metadata), {}};
  table.entries = collect<StructureEntry>(pairsUpTo(family, range), [&](const IndexPair& p) {
    std::vector<StructureEntry> row;
    for (HalfInt s = -g0; s <= g0; s += 1) {
      if (!family.contains(p.m + p.n - s)) continue;
      row.push_back({p.m, p.n, s, 0, classicalStructureConstant(family, p.m, p.n, s)});
    }
    return row;
  });
  return table;
}

StructureTable buildQTable(const BasisFamily& family, HalfInt range, const DeformationParams& params,
                           TableMetadata metadata) {
  params.validate();
  const HalfInt g0 = family.g0();
  const std::array<BranchSpec, 4> specs = commutatorBranches(params.alpha, params.beta);
  StructureTable table{std::move(metadata), {}};
  table.entries = collect<StructureEntry>(pairsUpTo(family, range), [&](const IndexPair& p) {
    std::vector<StructureEntry> row;
    for (HalfInt s = -g0; s <= g0; s += 1) {
      if (!family.contains(p.m + p.n - s)) continue;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const BranchSpec& b = specs[i];
        row.push_back({p.m, p.n, s, static_cast<int>(i) + 1,
                       qStructureD(family, p.m, p.n, s, b.b, b.c, b.d, params.q)});
      }
    }
    return row;
  });
  return table;
}

CentralTable buildCentralTable(const BasisFamily& family, HalfInt range, CentralKind kind,
                               const DeformationParams& params, TableMetadata metadata) {
  const bool deformed = kind == CentralKind::QCentral || kind == CentralKind::QHeisenberg;
  if (deformed) params.validate();
  CentralTable table{std::move(metadata), deformed, {}};
  table.entries = collect<CentralEntry>(pairsUpTo(family, range), [&](const IndexPair& p) {
    cplx v;
    switch (kind) {
      case CentralKind::Cocycle: v = classicalCocycle(family, p.m, p.n); break;
      case CentralKind::QCentral: v = qCentralTerm(family, p.m, p.n, params); break;
      case CentralKind::Heisenberg: v = heisenbergGamma(family, p.m, p.n); break;
      case CentralKind::QHeisenberg: v = qHeisenbergGamma(family, p.m, p.n, params.q); break;
    }
    return std::vector<CentralEntry>{{p.m, p.n, v}};
  });
  return table;
}

}  // namespace knalg
