#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cpgeo/core.hpp"

namespace cpgeo {

/// An element of C^n, n >= 2, with finite entries. The raw material every
/// other type is built from.
class HilbertVector {
 public:
  explicit HilbertVector(Vector entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) {
      throw InvalidArgument("Hilbert vectors need dimension >= 2, got " +
                            std::to_string(entries_.size()));
    }
    if (!entries_.allFinite()) {
      throw InvalidArgument("Hilbert vector entries must be finite");
    }
  }

  Index dim() const { return entries_.size(); }
  const Vector& coeffs() const { return entries_; }
  double norm() const { return entries_.norm(); }

 private:
  Vector entries_;
};

/// Hermitian inner product <a,b>, conjugate linear in the first slot.
inline Complex hermitian_inner(const HilbertVector& a, const HilbertVector& b) {
  require_same_dim(a.dim(), b.dim());
  return a.coeffs().dot(b.coeffs());
}

/// Re<a,b> — the inner product of the underlying real Hilbert space. Induces
/// the same norm as the Hermitian one.
inline double real_inner(const HilbertVector& a, const HilbertVector& b) {
  require_same_dim(a.dim(), b.dim());
  return a.coeffs().dot(b.coeffs()).real();
}

/// A norm-one vector. Construction normalizes; directionless (near-zero)
/// input is rejected rather than silently scaled up.
class UnitVector {
 public:
  explicit UnitVector(const HilbertVector& v) : vector_(normalized(v)) {}
  explicit UnitVector(Vector entries) : UnitVector(HilbertVector(std::move(entries))) {}

  Index dim() const { return vector_.dim(); }
  const HilbertVector& vector() const { return vector_; }
  const Vector& coeffs() const { return vector_.coeffs(); }

 private:
  static HilbertVector normalized(const HilbertVector& v) {
    const double n = v.norm();
    if (n <= tol::zero_norm) {
      throw ZeroVector("cannot normalize a vector of norm " + std::to_string(n));
    }
    return HilbertVector(v.coeffs() / n);
  }

  HilbertVector vector_;
};

/// An orthogonal projection E = E^2 = E* on C^n. Validity is checked once,
/// at construction; operations may then assume it.
class Event {
 public:
  explicit Event(Matrix m) : matrix_(std::move(m)) {
    const Index n = matrix_.rows();
    if (n < 2 || matrix_.cols() != n) {
      throw InvalidEvent("event matrix must be square with dimension >= 2");
    }
    if (!matrix_.allFinite()) {
      throw InvalidEvent("event matrix entries must be finite");
    }
    const double herm_residual = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_residual > tol::op) {
      throw InvalidEvent("matrix is not self-adjoint (residual " + std::to_string(herm_residual) + ")");
    }
    const double idem_residual = (matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff();
    if (idem_residual > tol::op) {
      throw InvalidEvent("matrix is not idempotent (residual " + std::to_string(idem_residual) + ")");
    }
    // For a valid projector every eigenvalue sits at 0 or 1, so the trace
    // counts the eigenvalues at 1.
    const double tr = matrix_.trace().real();
    const double rounded = std::round(tr);
    if (std::abs(tr - rounded) > 1e-6 || rounded < 0.0 || rounded > static_cast<double>(n)) {
      throw InvalidEvent("projector trace " + std::to_string(tr) + " is not close to an integer rank");
    }
    rank_ = static_cast<int>(rounded);
  }

  static Event zero(Index n) { return Event(Matrix::Zero(n, n)); }
  static Event identity(Index n) { return Event(Matrix::Identity(n, n)); }

  Index dim() const { return matrix_.rows(); }
  int rank() const { return rank_; }
  const Matrix& matrix() const { return matrix_; }

  /// I - E, the event "E does not occur".
  Event complement() const { return Event(Matrix::Identity(dim(), dim()) - matrix_); }

 private:
  Matrix matrix_;
  int rank_ = 0;
};

inline HilbertVector apply_event(const Event& e, const HilbertVector& v) {
  require_same_dim(e.dim(), v.dim());
  return HilbertVector(e.matrix() * v.coeffs());
}

namespace detail {

/// Modified Gram-Schmidt with a second re-orthogonalization pass. Returns
/// the orthonormalized columns; throws when a column is (numerically) a
/// linear combination of the previous ones.
inline std::vector<Vector> orthonormalize(const std::vector<Vector>& columns, double dependence_tol = 1e-8) {
  std::vector<Vector> q;
  q.reserve(columns.size());
  for (const Vector& col : columns) {
    Vector v = col;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& u : q) {
        v -= u * u.dot(v);
      }
    }
    const double n = v.norm();
    if (n <= dependence_tol * col.norm()) {
      throw InvalidEvent("frame columns are linearly dependent");
    }
    q.push_back(v / n);
  }
  return q;
}

}  // namespace detail

/// Projector onto the span of the given columns. The columns are
/// re-orthonormalized internally, so the idempotence invariant holds to
/// operator tolerance no matter how the caller obtained them.
inline Event event_from_frame(const std::vector<UnitVector>& columns) {
  if (columns.empty()) {
    throw InvalidArgument("event_from_frame needs at least one column; use Event::zero for the zero event");
  }
  const Index n = columns.front().dim();
  std::vector<Vector> raw;
  raw.reserve(columns.size());
  for (const UnitVector& c : columns) {
    require_same_dim(n, c.dim());
    raw.push_back(c.coeffs());
  }
  const std::vector<Vector> q = detail::orthonormalize(raw);
  Matrix e = Matrix::Zero(n, n);
  for (const Vector& u : q) {
    e.noalias() += u * u.adjoint();
  }
  return Event(std::move(e));
}

/// |phi><phi| — the rank-one event whose range is the ray of phi.
inline Event rank_one_event(const UnitVector& phi) {
  Matrix e = phi.coeffs() * phi.coeffs().adjoint();
  return Event(std::move(e));
}

// ---------------------------------------------------------------------------
// Hilbert-space probability oracles. These are the reference formulas every
// geometric computation is checked against; they must stay independent of
// the projective code paths.
// ---------------------------------------------------------------------------

/// |<psi,phi>|^2, the transition probability between two unit vectors.
inline double oracle_born(const UnitVector& psi, const UnitVector& phi) {
  require_same_dim(psi.dim(), phi.dim());
  return std::norm(psi.coeffs().dot(phi.coeffs()));
}

/// ||E psi||^2, the probability of the event E in the state psi.
inline double oracle_event_prob(const UnitVector& psi, const Event& e) {
  require_same_dim(psi.dim(), e.dim());
  return (e.matrix() * psi.coeffs()).squaredNorm();
}

/// ||E_k ... E_2 E_1 psi||^2 for time-ordered events: the first entry of
/// `events` is measured first, i.e. applied first. An empty sequence has
/// probability one.
inline double oracle_consecutive_prob(const UnitVector& psi, const std::vector<Event>& events) {
  Vector state = psi.coeffs();
  for (const Event& e : events) {
    require_same_dim(psi.dim(), e.dim());
    state = e.matrix() * state;
  }
  return state.squaredNorm();
}

}  // namespace cpgeo
