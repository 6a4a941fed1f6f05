#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cpgeo/core.hpp"
#include "cpgeo/hilbert.hpp"
#include "cpgeo/projective.hpp"
#include "cpgeo/subspace.hpp"

namespace cpgeo {

/// Which computational route produced a probability. The whole point of the
/// library is that the two routes agree; CLI output shows them side by side.
enum class Derivation { geometric, oracle };

struct ProbabilityValue {
  double value;
  Derivation derivation;
};

/// A finite sequence of events in time order: the first subspace is
/// measured first. May be empty (probability one by convention).
class EventChain {
 public:
  explicit EventChain(Index ambient_dim, std::vector<ProjectiveSubspace> subspaces = {})
      : ambient_dim_(ambient_dim), subspaces_(std::move(subspaces)) {
    for (const ProjectiveSubspace& s : subspaces_) {
      require_same_dim(ambient_dim_, s.dim());
    }
  }

  Index ambient_dim() const { return ambient_dim_; }
  const std::vector<ProjectiveSubspace>& subspaces() const { return subspaces_; }
  std::size_t size() const { return subspaces_.size(); }

 private:
  Index ambient_dim_;
  std::vector<ProjectiveSubspace> subspaces_;
};

/// Transition probability between two pure states: cos^2 d(x,y) with d the
/// Fubini-Study distance. Agrees with |<psi,phi>|^2 for any representatives.
inline ProbabilityValue born_probability(const ProjectivePoint& x, const ProjectivePoint& y) {
  const double c = std::cos(fs_distance(x, y));
  return {c * c, Derivation::geometric};
}

/// Probability of a single event, computed from the distance to its
/// subspace: cos^2 d(x,S). The empty subspace is the never-occurring event
/// (probability zero), and a point orthogonal to S yields exactly zero —
/// the two cases the distance formula does not cover on the nose.
inline ProbabilityValue single_event_probability(const ProjectivePoint& x,
                                                 const ProjectiveSubspace& s) {
  require_same_dim(x.dim(), s.dim());
  if (s.is_empty()) {
    return {0.0, Derivation::geometric};
  }
  if (detail::subspace_cosine(x, s) <= tol::orth) {
    return {0.0, Derivation::geometric};
  }
  const double c = std::cos(distance_to_subspace(x, s));
  return {c * c, Derivation::geometric};
}

struct ChainStep {
  std::size_t step;  // 1-based position in time order
  double distance;   // d(current point, S_step)
  double factor;     // cos^2 of that distance
};

struct ChainEvaluation {
  std::vector<ChainStep> steps;          // the completed factors
  std::size_t orthogonal_at = 0;         // 1-based step of a short circuit, 0 if none
  double total = 1.0;
};

/// Walks a time-ordered chain, collapsing the point onto each subspace in
/// turn and accumulating cos^2 of the successive distances. Stops with an
/// exact zero as soon as the current point is orthogonal to the next
/// subspace (or that subspace is empty).
inline ChainEvaluation evaluate_chain(const ProjectivePoint& x, const EventChain& chain) {
  require_same_dim(x.dim(), chain.ambient_dim());
  ChainEvaluation eval;
  ProjectivePoint current = x;
  std::size_t position = 0;
  for (const ProjectiveSubspace& s : chain.subspaces()) {
    ++position;
    if (s.is_empty() || detail::subspace_cosine(current, s) <= tol::orth) {
      eval.orthogonal_at = position;
      eval.total = 0.0;
      return eval;
    }
    const ProjectionResult pr = project_onto_subspace(current, s);
    const double c = std::cos(pr.distance());
    eval.steps.push_back({position, pr.distance(), c * c});
    eval.total *= c * c;
    current = pr.nearest_point();
  }
  return eval;
}

/// Consecutive (Wigner) probability of a time-ordered chain: the product of
/// cos^2 distances along successive projections,
///   P_x(S_1, ..., S_k) = cos^2 d(x, S_1) * cos^2 d(Pj(x->S_1), S_2) * ...
/// An empty chain has probability one.
inline ProbabilityValue consecutive_probability(const ProjectivePoint& x, const EventChain& chain) {
  return {evaluate_chain(x, chain).total, Derivation::geometric};
}

/// Conditional probability of S2 given that S occurred first, as the
/// quotient of the consecutive and single-event probabilities. Defined only
/// when the conditioning probability is strictly positive.
inline ProbabilityValue conditional_probability(const ProjectivePoint& x,
                                                const ProjectiveSubspace& s,
                                                const ProjectiveSubspace& s2) {
  require_same_dim(x.dim(), s.dim());
  require_same_dim(x.dim(), s2.dim());
  const double denom = single_event_probability(x, s).value;
  if (denom <= tol::cond) {
    throw UndefinedConditional("conditioning event has probability " + std::to_string(denom));
  }
  const double numer = consecutive_probability(x, EventChain(x.dim(), {s, s2})).value;
  return {numer / denom, Derivation::geometric};
}

/// Rank-one sanity bridge: for the one-point subspace S = pi'(|phi><phi|),
/// the single-event probability must coincide with the transition
/// probability to that point. Returns the value; throws if the two routes
/// disagree beyond tolerance.
inline ProbabilityValue rank_one_check(const ProjectivePoint& x, const UnitVector& phi) {
  require_same_dim(x.dim(), phi.dim());
  const ProjectiveSubspace s = ProjectiveSubspace::from_event(rank_one_event(phi));
  const ProbabilityValue via_subspace = single_event_probability(x, s);
  const ProbabilityValue via_point = born_probability(x, pi2_project(phi));
  if (std::abs(via_subspace.value - via_point.value) > 1e-10) {
    throw Error("rank-one event probability disagrees with the transition probability: " +
                std::to_string(via_subspace.value) + " vs " + std::to_string(via_point.value));
  }
  return via_subspace;
}

}  // namespace cpgeo
