#pragma once

#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cpgeo/core.hpp"
#include "cpgeo/hilbert.hpp"
#include "cpgeo/projective.hpp"

namespace cpgeo {

/// The image pi'(E) of an event: a projective subspace of CP(H). Stored as
/// an orthonormal frame of Ran E plus the cached projector. The empty
/// subspace (E = 0) has projective dimension -1; the whole space (E = I)
/// has projective dimension n-1.
class ProjectiveSubspace {
 public:
  static ProjectiveSubspace from_event(const Event& e) {
    std::vector<UnitVector> frame;
    if (e.rank() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(e.matrix());
      if (es.info() != Eigen::Success) {
        throw InvalidEvent("eigendecomposition of the event matrix failed");
      }
      frame.reserve(static_cast<std::size_t>(e.rank()));
      // Eigenvalues of a projector split cleanly at 0 and 1; take the
      // eigenvectors of the 1-cluster as the frame.
      for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i] > 0.5) {
          frame.emplace_back(Vector(es.eigenvectors().col(i)));
        }
      }
      if (static_cast<int>(frame.size()) != e.rank()) {
        throw InvalidEvent("eigenvalue cluster does not match the projector rank");
      }
    }
    return ProjectiveSubspace(std::move(frame), e);
  }

  static ProjectiveSubspace from_frame(const std::vector<UnitVector>& columns) {
    if (columns.empty()) {
      throw InvalidArgument("from_frame needs at least one column; use ProjectiveSubspace::empty");
    }
    const Index n = columns.front().dim();
    std::vector<Vector> raw;
    raw.reserve(columns.size());
    for (const UnitVector& c : columns) {
      require_same_dim(n, c.dim());
      raw.push_back(c.coeffs());
    }
    std::vector<Vector> q = detail::orthonormalize(raw);
    std::vector<UnitVector> frame;
    frame.reserve(q.size());
    Matrix e = Matrix::Zero(n, n);
    for (Vector& u : q) {
      e.noalias() += u * u.adjoint();
      frame.emplace_back(std::move(u));
    }
    return ProjectiveSubspace(std::move(frame), Event(std::move(e)));
  }

  static ProjectiveSubspace empty(Index n) { return ProjectiveSubspace({}, Event::zero(n)); }
  static ProjectiveSubspace whole(Index n) { return from_event(Event::identity(n)); }

  Index dim() const { return event_.dim(); }  // ambient dimension
  int projective_dim() const { return static_cast<int>(frame_.size()) - 1; }
  bool is_empty() const { return frame_.empty(); }
  const std::vector<UnitVector>& frame() const { return frame_; }
  const Event& event() const { return event_; }

 private:
  ProjectiveSubspace(std::vector<UnitVector> frame, Event e)
      : frame_(std::move(frame)), event_(std::move(e)) {}

  std::vector<UnitVector> frame_;
  Event event_;
};

/// pi': events -> projective subspaces, the bijection E -> pi_3((Ran E)^x).
inline ProjectiveSubspace subspace_from_event(const Event& e) {
  return ProjectiveSubspace::from_event(e);
}

/// The set of points orthogonal to all of S; equals pi'(I - E).
inline ProjectiveSubspace orthogonal_complement(const ProjectiveSubspace& s) {
  return ProjectiveSubspace::from_event(s.event().complement());
}

/// Subspaces are equal when their projectors agree to operator tolerance.
/// Frames are not compared: they are far from unique.
inline bool approx_equal(const ProjectiveSubspace& a, const ProjectiveSubspace& b,
                         double tolerance = tol::op) {
  if (a.dim() != b.dim()) return false;
  return (a.event().matrix() - b.event().matrix()).cwiseAbs().maxCoeff() <= tolerance;
}

inline bool point_in_subspace(const ProjectivePoint& x, const ProjectiveSubspace& s) {
  require_same_dim(x.dim(), s.dim());
  const Vector& rep = x.rep().coeffs();
  return (s.event().matrix() * rep - rep).norm() <= tol::membership;
}

namespace detail {

/// ||E rep(x)|| — the cosine of the distance from x to pi'(E).
inline double subspace_cosine(const ProjectivePoint& x, const ProjectiveSubspace& s) {
  require_same_dim(x.dim(), s.dim());
  return (s.event().matrix() * x.rep().coeffs()).norm();
}

}  // namespace detail

/// d(x,S) = inf over y in S of d(x,y). Computable in closed form as
/// arccos ||E rep(x)||; the infimum is attained (see project_onto_subspace).
/// The empty subspace is rejected: the infimum over nothing is undefined.
inline double distance_to_subspace(const ProjectivePoint& x, const ProjectiveSubspace& s) {
  if (s.is_empty()) {
    throw EmptySubspace("distance to the empty subspace is undefined");
  }
  return std::acos(clamp01(detail::subspace_cosine(x, s)));
}

/// Outcome of projecting a point onto a subspace: either the unique nearest
/// point (distance < pi/2), or — when x lies in the orthogonal complement —
/// the whole subspace, every point of which is at distance pi/2.
class ProjectionResult {
 public:
  static ProjectionResult nearest(ProjectivePoint y, double distance) {
    return ProjectionResult(std::move(y), distance);
  }
  static ProjectionResult whole(ProjectiveSubspace s) {
    return ProjectionResult(std::move(s), kHalfPi);
  }

  bool is_nearest_point() const { return std::holds_alternative<ProjectivePoint>(target_); }
  bool is_whole_subspace() const { return !is_nearest_point(); }

  const ProjectivePoint& nearest_point() const {
    if (!is_nearest_point()) throw Error("projection result is the whole subspace, not a point");
    return std::get<ProjectivePoint>(target_);
  }
  const ProjectiveSubspace& subspace() const {
    if (!is_whole_subspace()) throw Error("projection result is a single point, not a subspace");
    return std::get<ProjectiveSubspace>(target_);
  }
  double distance() const { return distance_; }

 private:
  ProjectionResult(ProjectivePoint y, double d) : target_(std::move(y)), distance_(d) {}
  ProjectionResult(ProjectiveSubspace s, double d) : target_(std::move(s)), distance_(d) {}

  std::variant<ProjectivePoint, ProjectiveSubspace> target_;
  double distance_;
};

/// The projection of x on a non-empty subspace S. When x is not orthogonal
/// to S the nearest point is pi_3(E rep(x)) and is unique; when x lies in
/// S^perp every point of S attains the distance pi/2 and the projection is
/// S itself.
inline ProjectionResult project_onto_subspace(const ProjectivePoint& x, const ProjectiveSubspace& s) {
  if (s.is_empty()) {
    throw EmptySubspace("projection onto the empty subspace is undefined");
  }
  require_same_dim(x.dim(), s.dim());
  Vector image = s.event().matrix() * x.rep().coeffs();
  const double r = image.norm();
  if (r <= tol::orth) {
    return ProjectionResult::whole(s);
  }
  return ProjectionResult::nearest(pi3_project(HilbertVector(std::move(image))),
                                   std::acos(clamp01(r)));
}

/// Intersection of subspaces: the null directions of the stacked complement
/// projectors, read off a singular value decomposition. Singular values at
/// or below the operator tolerance count as zero.
inline ProjectiveSubspace meet(const ProjectiveSubspace& a, const ProjectiveSubspace& b) {
  require_same_dim(a.dim(), b.dim());
  const Index n = a.dim();
  const Matrix id = Matrix::Identity(n, n);
  Matrix stacked(2 * n, n);
  stacked.topRows(n) = id - a.event().matrix();
  stacked.bottomRows(n) = id - b.event().matrix();
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  std::vector<UnitVector> frame;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] <= tol::op) {
      frame.emplace_back(Vector(svd.matrixV().col(i)));
    }
  }
  if (frame.empty()) return ProjectiveSubspace::empty(n);
  return ProjectiveSubspace::from_frame(frame);
}

/// Closed span of the union: the column space of the concatenated frames.
inline ProjectiveSubspace join(const ProjectiveSubspace& a, const ProjectiveSubspace& b) {
  require_same_dim(a.dim(), b.dim());
  const Index n = a.dim();
  const Index cols = static_cast<Index>(a.frame().size() + b.frame().size());
  if (cols == 0) return ProjectiveSubspace::empty(n);
  Matrix combined(n, cols);
  Index j = 0;
  for (const UnitVector& f : a.frame()) combined.col(j++) = f.coeffs();
  for (const UnitVector& f : b.frame()) combined.col(j++) = f.coeffs();
  Eigen::JacobiSVD<Matrix> svd(combined, Eigen::ComputeFullU);
  std::vector<UnitVector> frame;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > tol::op) {
      frame.emplace_back(Vector(svd.matrixU().col(i)));
    }
  }
  if (frame.empty()) return ProjectiveSubspace::empty(n);
  return ProjectiveSubspace::from_frame(frame);
}

}  // namespace cpgeo
