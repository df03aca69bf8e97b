#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knalg/elliptic.hpp"
#include "knalg/half_int.hpp"
#include "knalg/series.hpp"

namespace knalg {

/// The two distinguished points. Contour integrals around P- carry the opposite orientation.
enum class Point { Plus, Minus };

constexpr double orientation(Point p) { return p == Point::Plus ? 1.0 : -1.0; }

/// Index range of a basis; integral for even genus, half-odd-integral for odd genus.
struct IndexSet {
  std::vector<HalfInt> indices;
  HalfInt bound;

  /// All admissible n with |n| <= bound, ascending.
  static IndexSet symmetric(HalfInt bound, int genus);
  /// Throws DomainError when an index has the wrong parity for the genus.
  void validate(int genus) const;
};

/// Genus, distinguished-point parameter and lattice. On the torus P+ = z0 and P- = -z0,
/// with local coordinates z - z0 and z + z0; on the sphere P+ = 0 (coordinate z) and
/// P- = infinity (coordinate 1/z).
struct SurfaceSpec {
  int genus = 0;
  cplx z0{0.17, 0.11};
  std::optional<Lattice> lattice;

  static SurfaceSpec sphere() { return SurfaceSpec{}; }
  static SurfaceSpec torus(Lattice lattice, cplx z0) { return SurfaceSpec{1, z0, std::move(lattice)}; }

  /// g0 = 3 g / 2.
  HalfInt g0() const { return HalfInt::fromTwice(3 * genus); }

  /// Genus-1 non-degeneracy: z0, 2 z0 and the moving zeros 2 n z0 of the used indices stay
  /// away from the lattice and from +-z0 modulo the lattice. Throws DomainError otherwise.
  void validate(const IndexSet& indices) const;
};

/// Local expansions of e_n (vector field), Omega_n (quadratic differential) and
/// A_n (function) at P+, optionally mirrored at P-.
struct BasisElement {
  LaurentSeries e;
  LaurentSeries omega;
  LaurentSeries a;
  std::optional<LaurentSeries> eMinus;
  std::optional<LaurentSeries> omegaMinus;
  std::optional<LaurentSeries> aMinus;
};

/// Provenance recorded next to the coefficients.
struct FamilyInfo {
  std::string source = "genus0";  ///< "genus0", "genus1" or "file"
  int depth = 0;
  std::optional<cplx> omega1;
  std::optional<cplx> omega2;
  std::optional<cplx> z0;
  std::string aNormalization = "leading coefficient 1 at P+";
};

class BasisFamily {
 public:
  BasisFamily(int genus, std::map<HalfInt, BasisElement> elements, FamilyInfo info = {});

  int genus() const noexcept { return genus_; }
  HalfInt g0() const noexcept { return HalfInt::fromTwice(3 * genus_); }
  const FamilyInfo& info() const noexcept { return info_; }

  bool contains(HalfInt n) const { return elements_.count(n) != 0; }
  std::vector<HalfInt> indices() const;
  const std::map<HalfInt, BasisElement>& elements() const noexcept { return elements_; }
  bool hasMinus() const noexcept { return hasMinus_; }

  /// Throws MissingIndexError for an index outside the family, and for P- data when absent.
  const BasisElement& at(HalfInt n) const;
  const LaurentSeries& e(HalfInt n, Point p = Point::Plus) const;
  const LaurentSeries& omega(HalfInt n, Point p = Point::Plus) const;
  const LaurentSeries& a(HalfInt n, Point p = Point::Plus) const;

 private:
  int genus_;
  std::map<HalfInt, BasisElement> elements_;
  FamilyInfo info_;
  bool hasMinus_ = false;
};

/// Largest |residue(e_m Omega_n) - delta_mn| over the stored indices, with its witness.
/// The scaled residual divides each pair by max(1, sum_k |e_m,k| |Omega_n,-1-k|), the size of
/// the terms that cancel in the pairing, so it measures accuracy relative to double rounding.
struct DualityResidual {
  double maxResidual = 0.0;
  HalfInt m;
  HalfInt n;
  double maxScaledResidual = 0.0;
  HalfInt scaledM;
  HalfInt scaledN;
};
DualityResidual dualityResidual(const BasisFamily& family, Point p = Point::Plus);

/// Re-checks the exponent laws at P+ and the duality pairing (at both points when
/// P- data is present) against the scaled residual. Throws BasisError naming the offending
/// index or pair.
void validateFamily(const BasisFamily& family, Tolerance tol = Tolerance{});

/// Sphere: e_n = z^(n+1), Omega_n = z^(-n-2), A_n = z^n, with the 1/z mirrors at infinity.
BasisFamily buildGenus0(const IndexSet& indices, int depth);

/// Torus basis from Weierstrass sigma products, normalized to leading coefficient 1 at P+
/// with Omega_n scaled to the duality pairing. Throws BasisError when the duality residual
/// exceeds tol.
BasisFamily buildGenus1(const SurfaceSpec& surface, const IndexSet& indices, int depth,
                        Tolerance tol = Tolerance{});

/// Dispatches on surface.genus (0 or 1).
BasisFamily buildFamily(const SurfaceSpec& surface, const IndexSet& indices, int depth,
                        Tolerance tol = Tolerance{});

/// e+_{m,k}: coefficient of z^(m - g0 + 1 + k) in the P+ expansion of e_m.
/// Throws DomainError for k < 0 and OutOfWindowError when the window is too short.
cplx extractECoeff(const BasisFamily& family, HalfInt m, int k);

// JSON basis files: {genus, g0, indices, elements: {"n": {e, omega, a, ...}}, metadata}.
std::string basisToJson(const BasisFamily& family);
BasisFamily basisFromJson(const std::string& text, Tolerance tol = Tolerance{});
void saveBasisFile(const BasisFamily& family, const std::filesystem::path& path);
BasisFamily loadBasisFile(const std::filesystem::path& path, Tolerance tol = Tolerance{});

}  // namespace knalg
