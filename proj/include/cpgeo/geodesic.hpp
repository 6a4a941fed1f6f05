#pragma once

#include <cmath>
#include <utility>

#include "cpgeo/core.hpp"
#include "cpgeo/hilbert.hpp"
#include "cpgeo/projective.hpp"

namespace cpgeo {

enum class GeodesicSpace { sphere, projective };

/// A shortest geodesic, parameterized by arc length as
///   gamma(t) = cos(t) * start + sin(t) * tangent,   t in [0, length],
/// where the tangent is a unit vector orthogonal to the start. Sphere
/// geodesics are great-circle arcs of length up to pi; projective geodesics
/// are carried by a horizontal great circle upstairs (tangent Hermitian-
/// orthogonal to the start representative) of length up to pi/2, and are
/// read downstairs through pi_2.
struct Geodesic {
  GeodesicSpace space;
  UnitVector start;        // representative upstairs in both cases
  UnitVector end;
  double length;
  bool unique;
  HilbertVector tangent;   // the u in cos(t) start + sin(t) u

  /// Point on the carrying great circle at arc length t.
  UnitVector at(double t) const {
    return UnitVector(Vector(std::cos(t) * start.coeffs() + std::sin(t) * tangent.coeffs()));
  }

  /// The projective curve sample pi_2(gamma(t)).
  ProjectivePoint point_at(double t) const { return pi2_project(at(t)); }
};

namespace detail {

/// Deterministic unit vector orthogonal to psi: the lowest-index coordinate
/// direction, orthogonalized. `hermitian` selects complex orthogonality
/// (for horizontal tangents) over the real inner product.
inline HilbertVector first_coordinate_orthogonal(const UnitVector& psi, bool hermitian) {
  const Index n = psi.dim();
  for (Index k = 0; k < n; ++k) {
    Vector w = Vector::Zero(n);
    w[k] = Complex(1.0, 0.0);
    if (hermitian) {
      w -= psi.coeffs() * psi.coeffs().dot(w);
    } else {
      w -= real_inner(psi.vector(), HilbertVector(w)) * psi.coeffs();
    }
    const double norm = w.norm();
    if (norm > 1e-6) {
      return HilbertVector(w / norm);
    }
  }
  throw Error("no coordinate direction orthogonal to the given vector");  // unreachable
}

}  // namespace detail

/// Shortest great-circle arc from psi to phi. Length is the Euclidean angle
/// theta in [0, pi]; the arc is unique iff theta < pi. At the antipode the
/// tie is broken deterministically along the lowest-index coordinate
/// direction orthogonal to psi.
inline Geodesic shortest_geodesic_sphere(const UnitVector& psi, const UnitVector& phi) {
  require_same_dim(psi.dim(), phi.dim());
  double c = real_inner(psi.vector(), phi.vector());
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  const double theta = std::acos(c);

  if (1.0 + c <= 1e-12) {  // antipodal: infinitely many shortest arcs
    return Geodesic{GeodesicSpace::sphere, psi, phi, kPi, false,
                    detail::first_coordinate_orthogonal(psi, false)};
  }

  HilbertVector tangent = [&] {
    Vector residual = phi.coeffs() - c * psi.coeffs();
    const double rnorm = residual.norm();
    if (rnorm <= 1e-8) {  // coincident endpoints: direction is immaterial
      return detail::first_coordinate_orthogonal(psi, false);
    }
    return HilbertVector(residual / rnorm);
  }();
  return Geodesic{GeodesicSpace::sphere, psi, phi, theta, true, std::move(tangent)};
}

/// Shortest projective geodesic from x to y, of length a = d(x,y) in
/// [0, pi/2], unique iff a < pi/2. Construction: phase-align a
/// representative of y so its inner product with rep(x) is real and
/// nonnegative, then take the horizontal great circle between the two
/// representatives. When x ⊥ y every choice of representative for y yields
/// a (distinct) shortest geodesic; the canonical representative is used so
/// the curve still terminates at y.
inline Geodesic shortest_geodesic_projective(const ProjectivePoint& x, const ProjectivePoint& y) {
  require_same_dim(x.dim(), y.dim());
  const Vector& psi = x.rep().coeffs();
  const Vector& phi = y.rep().coeffs();
  const Complex overlap = psi.dot(phi);
  const double r = clamp01(std::abs(overlap));
  const double a = std::acos(r);

  if (r <= tol::orth) {
    return Geodesic{GeodesicSpace::projective, x.rep(), y.rep(), kHalfPi, false,
                    y.rep().vector()};
  }

  const Vector aligned = phi * (std::conj(overlap) / std::abs(overlap));
  HilbertVector tangent = [&] {
    Vector residual = aligned - r * psi;
    const double rnorm = residual.norm();
    if (rnorm <= 1e-8) {  // same point: direction is immaterial
      return detail::first_coordinate_orthogonal(x.rep(), true);
    }
    return HilbertVector(residual / rnorm);
  }();
  return Geodesic{GeodesicSpace::projective, x.rep(), UnitVector(aligned), a, true,
                  std::move(tangent)};
}

/// The unique horizontal lift of a projective geodesic through a chosen
/// representative of its start point. The lift is a sphere geodesic of the
/// same length whose projection recovers the projective curve pointwise.
inline Geodesic horizontal_lift(const Geodesic& g, const UnitVector& start_rep) {
  if (g.space != GeodesicSpace::projective) {
    throw InvalidArgument("horizontal_lift expects a projective geodesic");
  }
  require_same_dim(g.start.dim(), start_rep.dim());
  const Complex phase = g.start.coeffs().dot(start_rep.coeffs());
  if (std::abs(std::abs(phase) - 1.0) > 1e-8 ||
      (start_rep.coeffs() - phase * g.start.coeffs()).norm() > tol::membership) {
    throw InvalidArgument("start representative does not project to the geodesic start");
  }
  // The circle action commutes with the great-circle parameterization, so
  // the lift through phase * start is phase * gamma.
  HilbertVector tangent(Vector(phase * g.tangent.coeffs()));
  UnitVector end = UnitVector(Vector(std::cos(g.length) * start_rep.coeffs() +
                                     std::sin(g.length) * tangent.coeffs()));
  return Geodesic{GeodesicSpace::sphere, start_rep, std::move(end), g.length, true,
                  std::move(tangent)};
}

}  // namespace cpgeo
