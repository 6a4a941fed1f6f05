#pragma once

#include <cmath>

#include "cpgeo/core.hpp"
#include "cpgeo/hilbert.hpp"

namespace cpgeo {

/// A point of the complex projective space CP(H): an equivalence class of
/// nonzero vectors under scaling. Stored as a phase-canonical unit
/// representative — the first component whose modulus exceeds the pivot
/// tolerance is made real and strictly positive — so equal points have
/// (componentwise) equal representatives.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const UnitVector& rep) : rep_(canonicalize(rep)) {}

  Index dim() const { return rep_.dim(); }
  const UnitVector& rep() const { return rep_; }

 private:
  static UnitVector canonicalize(const UnitVector& psi) {
    const Vector& v = psi.coeffs();
    for (Index i = 0; i < v.size(); ++i) {
      const double m = std::abs(v[i]);
      if (m > tol::phase_pivot) {
        Vector w = v * (std::conj(v[i]) / m);
        return UnitVector(std::move(w));
      }
    }
    // Unreachable for unit vectors: some component must exceed 1/sqrt(n).
    return psi;
  }

  UnitVector rep_;
};

/// pi_1: H \ {0} -> S(H), v -> v/||v||.
inline UnitVector pi1_normalize(const HilbertVector& v) { return UnitVector(v); }

/// pi_2: S(H) -> CP(H), the quotient by the circle of phases.
inline ProjectivePoint pi2_project(const UnitVector& psi) { return ProjectivePoint(psi); }

/// pi_3 = pi_2 after pi_1.
inline ProjectivePoint pi3_project(const HilbertVector& v) {
  return pi2_project(pi1_normalize(v));
}

/// |<x,y>| on projective points: the modulus of the Hermitian inner product
/// of any (hence the stored) unit representatives. Phase invariant, valued
/// in [0,1], and equal to 1 on the diagonal.
inline double absolute_inner(const ProjectivePoint& x, const ProjectivePoint& y) {
  require_same_dim(x.dim(), y.dim());
  return clamp01(std::abs(x.rep().coeffs().dot(y.rep().coeffs())));
}

/// Fubini-Study distance d(x,y) = arccos |<x,y>|, valued in [0, pi/2].
inline double fs_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  return std::acos(absolute_inner(x, y));
}

/// Great-circle distance on the unit sphere: arccos Re<psi,phi>, in [0, pi].
inline double sphere_distance(const UnitVector& psi, const UnitVector& phi) {
  require_same_dim(psi.dim(), phi.dim());
  double c = real_inner(psi.vector(), phi.vector());
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

/// Angle arccos(|<phi,psi>| / (||phi|| ||psi||)) in [0, pi/2]. Descends to
/// CP(H): it equals fs_distance of the projected rays.
inline double projective_angle(const HilbertVector& phi, const HilbertVector& psi) {
  require_same_dim(phi.dim(), psi.dim());
  const double np = phi.norm();
  const double ns = psi.norm();
  if (np <= tol::zero_norm || ns <= tol::zero_norm) {
    throw ZeroVector("projective angle is undefined at the zero vector");
  }
  return std::acos(clamp01(std::abs(phi.coeffs().dot(psi.coeffs())) / (np * ns)));
}

/// Angle arccos(Re<phi,psi> / (||phi|| ||psi||)) in [0, pi]. This is the
/// ordinary Euclidean angle; it does not descend to CP(H). The two angles
/// coincide exactly when <phi,psi> is real and nonnegative.
inline double euclidean_angle(const HilbertVector& phi, const HilbertVector& psi) {
  require_same_dim(phi.dim(), psi.dim());
  const double np = phi.norm();
  const double ns = psi.norm();
  if (np <= tol::zero_norm || ns <= tol::zero_norm) {
    throw ZeroVector("Euclidean angle is undefined at the zero vector");
  }
  double c = phi.coeffs().dot(psi.coeffs()).real() / (np * ns);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

/// x ⊥ y, i.e. |<x,y>| vanishes to tolerance.
inline bool is_orthogonal(const ProjectivePoint& x, const ProjectivePoint& y) {
  return absolute_inner(x, y) <= tol::orth;
}

/// Componentwise comparison of the canonical representatives.
inline bool approx_equal(const ProjectivePoint& x, const ProjectivePoint& y, double tolerance = 1e-9) {
  if (x.dim() != y.dim()) return false;
  return (x.rep().coeffs() - y.rep().coeffs()).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace cpgeo
