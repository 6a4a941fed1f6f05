#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cpgeo {

using Complex = std::complex<double>;
using Vector  = Eigen::VectorXcd;
using Matrix  = Eigen::MatrixXcd;
using Index   = Eigen::Index;

inline constexpr double kPi     = 3.141592653589793238462643383279502884;
inline constexpr double kHalfPi = kPi / 2.0;

// Fixed tolerance regime for 64-bit floats. Comfortably above round-off
// accumulation at ambient dimensions up to a few thousand, far below any
// distance or probability of interest.
namespace tol {
inline constexpr double zero_norm   = 1e-12;  // norms at or below this count as the zero vector
inline constexpr double unit        = 1e-10;  // |norm - 1| bound for unit vectors
inline constexpr double op          = 1e-9;   // operator residuals (E=E*, E=E^2) and projector equality
inline constexpr double frame       = 1e-9;   // orthonormality residual of subspace frames
inline constexpr double orth        = 1e-9;   // |<x,y>| at or below this counts as orthogonal
inline constexpr double phase_pivot = 1e-10;  // first component above this fixes the canonical phase
inline constexpr double membership  = 1e-8;   // ||E rep - rep|| bound for subspace membership
inline constexpr double cond        = 1e-12;  // smallest admissible conditioning probability
}  // namespace tol

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands live in Hilbert spaces of different dimension.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A direction was requested from a (numerically) zero vector.
struct ZeroVector : Error {
  using Error::Error;
};

/// A matrix failed the orthogonal-projection test E = E^2 = E*, or a frame
/// turned out linearly dependent.
struct InvalidEvent : Error {
  using Error::Error;
};

/// An operation whose hypothesis requires a non-empty projective subspace
/// was handed the empty one.
struct EmptySubspace : Error {
  using Error::Error;
};

/// Conditioning on an event whose probability is numerically zero.
struct UndefinedConditional : Error {
  using Error::Error;
};

/// Malformed input document or out-of-range argument.
struct InvalidArgument : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

inline void require_same_dim(Index a, Index b) {
  if (a != b) {
    throw DimensionMismatch("operands live in incompatible spaces: dim " + std::to_string(a) +
                            " vs dim " + std::to_string(b));
  }
}

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace cpgeo
