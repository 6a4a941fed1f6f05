#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cpgeo/core.hpp"
#include "cpgeo/geodesic.hpp"
#include "cpgeo/hilbert.hpp"
#include "cpgeo/probability.hpp"
#include "cpgeo/projective.hpp"
#include "cpgeo/subspace.hpp"

namespace cpgeo {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Deterministic pseudo-random source: a Mersenne Twister (mt19937_64)
/// seeded through splitmix64, with all floating-point mappings hand-rolled
/// so the stream depends only on the seed, never on a standard-library
/// distribution implementation. Child streams derived from (seed, index)
/// make fan-out across trials order- and thread-independent.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed)
      : seed_(seed), engine_(detail::splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  RandomSource child(std::uint64_t index) const {
    return RandomSource(detail::splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * (index + 1)));
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [0, n). Modulo bias is irrelevant for n << 2^64.
  std::uint64_t index_below(std::uint64_t n) { return engine_() % n; }

  /// Standard complex Gaussian (Box-Muller; consumes exactly two uniforms).
  Complex complex_gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Haar-uniform point of the unit sphere: a normalized vector of
/// independent standard complex Gaussians.
inline UnitVector random_unit_vector(RandomSource& rng, Index dim) {
  if (dim < 2) {
    throw InvalidArgument("random unit vectors need dimension >= 2");
  }
  for (;;) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = rng.complex_gaussian();
    if (v.norm() > tol::zero_norm) return UnitVector(std::move(v));
  }
}

/// Random event of the requested rank: the projector onto the span of
/// `rank` Gaussian vectors.
inline Event random_event(RandomSource& rng, Index dim, Index rank) {
  if (rank < 0 || rank > dim) {
    throw InvalidArgument("event rank must lie in [0, dim]");
  }
  if (rank == 0) return Event::zero(dim);
  std::vector<UnitVector> columns;
  columns.reserve(static_cast<std::size_t>(rank));
  for (Index i = 0; i < rank; ++i) columns.push_back(random_unit_vector(rng, dim));
  return event_from_frame(columns);
}

/// Random projective subspace of the given rank (rank 0 gives the empty one).
inline ProjectiveSubspace random_subspace(RandomSource& rng, Index dim, Index rank) {
  if (rank < 0 || rank > dim) {
    throw InvalidArgument("subspace rank must lie in [0, dim]");
  }
  if (rank == 0) return ProjectiveSubspace::empty(dim);
  std::vector<UnitVector> columns;
  columns.reserve(static_cast<std::size_t>(rank));
  for (Index i = 0; i < rank; ++i) columns.push_back(random_unit_vector(rng, dim));
  return ProjectiveSubspace::from_frame(columns);
}

/// Random point of a non-empty subspace: a unit combination of its frame.
inline ProjectivePoint random_point_in_subspace(RandomSource& rng, const ProjectiveSubspace& s) {
  if (s.is_empty()) throw EmptySubspace("cannot sample a point of the empty subspace");
  const std::size_t k = s.frame().size();
  for (;;) {
    Vector c(static_cast<Index>(k));
    for (Index i = 0; i < c.size(); ++i) c[i] = rng.complex_gaussian();
    Vector v = Vector::Zero(s.dim());
    for (std::size_t j = 0; j < k; ++j) v += c[static_cast<Index>(j)] * s.frame()[j].coeffs();
    if (v.norm() > tol::zero_norm) return pi3_project(HilbertVector(std::move(v)));
  }
}

/// Brute-force estimate of inf over y in S of d(x,y): the minimum over
/// random unit combinations of the frame, then a golden-section pass along
/// the in-subspace geodesic from the best sample to the candidate nearest
/// point. Only genuine points of S are evaluated, and the candidate set is
/// produced without the closed-form projection — that is the point of an
/// oracle. (The refinement is allowed to aim at the candidate.)
inline double infimum_oracle(const ProjectivePoint& x, const ProjectiveSubspace& s,
                             RandomSource& rng, std::uint64_t samples) {
  if (s.is_empty()) throw EmptySubspace("infimum over the empty subspace is undefined");
  if (samples < 1) throw InvalidArgument("infimum_oracle needs at least one sample");
  require_same_dim(x.dim(), s.dim());

  const Index n = s.dim();
  const Index k = static_cast<Index>(s.frame().size());
  Matrix frame(n, k);
  for (Index j = 0; j < k; ++j) frame.col(j) = s.frame()[static_cast<std::size_t>(j)].coeffs();

  const Vector& psi = x.rep().coeffs();
  double best = kHalfPi;
  Vector best_sample = frame.col(0);
  Vector coeffs(k);
  Vector sample(n);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (Index j = 0; j < k; ++j) coeffs[j] = rng.complex_gaussian();
    const double cn = coeffs.norm();
    if (cn <= tol::zero_norm) continue;
    sample.noalias() = frame * coeffs;
    const double sn = sample.norm();
    if (sn <= tol::zero_norm) continue;
    const double d = std::acos(clamp01(std::abs(psi.dot(sample)) / sn));
    if (d < best) {
      best = d;
      best_sample = sample / sn;
    }
  }

  const ProjectionResult candidate = project_onto_subspace(x, s);
  if (!candidate.is_nearest_point()) {
    return best;  // every point of S sits at pi/2; nothing to refine toward
  }

  const ProjectivePoint start = pi2_project(UnitVector(Vector(best_sample)));
  const Geodesic g = shortest_geodesic_projective(start, candidate.nearest_point());
  const auto eval = [&](double t) {
    return std::acos(clamp01(std::abs(psi.dot(g.at(t).coeffs()))));
  };
  double lo = 0.0, hi = g.length;
  best = std::min(best, std::min(eval(lo), eval(hi)));
  if (g.length > 1e-14) {
    constexpr double inv_golden = 0.6180339887498949;
    double c = hi - inv_golden * (hi - lo);
    double d = lo + inv_golden * (hi - lo);
    double fc = eval(c), fd = eval(d);
    for (int iter = 0; iter < 60; ++iter) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_golden * (hi - lo);
        fc = eval(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_golden * (hi - lo);
        fd = eval(d);
      }
      best = std::min(best, std::min(fc, fd));
    }
  }
  return best;
}

struct VerificationFailure {
  std::string what;
  double expected;
  double got;
  double error;
};

struct VerificationReport {
  std::uint64_t trials = 0;
  double max_abs_error = 0.0;
  std::vector<VerificationFailure> failures;
  double elapsed_seconds = 0.0;
};

namespace detail {

struct TrialChecks {
  double max_abs_error = 0.0;
  std::vector<VerificationFailure> failures;

  void check(const std::string& what, double expected, double got, double tolerance) {
    const double err = std::abs(expected - got);
    if (err > max_abs_error) max_abs_error = err;
    if (err > tolerance) failures.push_back({what, expected, got, err});
  }

  void require(const std::string& what, bool ok) {
    if (!ok) failures.push_back({what, 1.0, 0.0, 1.0});
  }
};

/// Runs body(i) for i in [0, count) across a small thread pool. Results
/// must be written to preallocated per-index slots; the caller merges them
/// in index order, so the outcome is independent of scheduling.
template <typename Body>
inline void parallel_for(std::size_t count, Body&& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline VerificationReport merge_trials(std::vector<TrialChecks>&& trials,
                                       std::chrono::steady_clock::time_point started) {
  VerificationReport report;
  report.trials = trials.size();
  for (TrialChecks& t : trials) {
    if (t.max_abs_error > report.max_abs_error) report.max_abs_error = t.max_abs_error;
    for (VerificationFailure& f : t.failures) report.failures.push_back(std::move(f));
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace detail

/// Checks the projection theorem on seeded random cases: the closed-form
/// nearest point lies in the subspace and attains the distance, an
/// independent sampling oracle agrees, and constructed orthogonal cases put
/// every point of the subspace at distance pi/2.
inline VerificationReport verify_projection_theorem(const RandomSource& master,
                                                    const std::vector<Index>& dims,
                                                    std::uint64_t trials,
                                                    std::uint64_t oracle_samples = 10000) {
  if (trials < 1) throw InvalidArgument("verification needs at least one trial");
  if (dims.empty()) throw InvalidArgument("verification needs at least one dimension");
  for (Index n : dims) {
    if (n < 2) throw InvalidArgument("verification dimensions must be >= 2");
  }
  const auto started = std::chrono::steady_clock::now();
  const std::size_t total = dims.size() * trials;
  std::vector<detail::TrialChecks> results(total);

  detail::parallel_for(total, [&](std::size_t i) {
    RandomSource rng = master.child(i);
    const Index n = dims[i / trials];
    const std::string tag = "projection dim=" + std::to_string(n) + " trial=" +
                            std::to_string(i % trials);
    detail::TrialChecks& out = results[i];

    const Index rank = 1 + static_cast<Index>(rng.index_below(static_cast<std::uint64_t>(n)));
    const ProjectiveSubspace s = random_subspace(rng, n, rank);
    const ProjectivePoint x = pi2_project(random_unit_vector(rng, n));

    const ProjectionResult pr = project_onto_subspace(x, s);
    if (pr.is_nearest_point()) {
      const ProjectivePoint& y = pr.nearest_point();
      const Vector& rep = y.rep().coeffs();
      const double membership = (s.event().matrix() * rep - rep).norm();
      out.check(tag + ": nearest point membership residual", 0.0, membership, tol::membership);
      const double dist = distance_to_subspace(x, s);
      out.check(tag + ": d(x, nearest) vs d(x, S)", dist, fs_distance(x, y), 1e-9);
      const double sampled = infimum_oracle(x, s, rng, oracle_samples);
      out.check(tag + ": sampling oracle vs d(x, S)", dist, sampled, 1e-6);
      out.require(tag + ": nearest distance below pi/2", pr.distance() < kHalfPi);
    }

    // The orthogonal branch has measure zero, so construct it whenever the
    // complement is non-trivial.
    if (rank < n) {
      const ProjectiveSubspace comp = orthogonal_complement(s);
      const ProjectivePoint xp = random_point_in_subspace(rng, comp);
      const ProjectionResult pr2 = project_onto_subspace(xp, s);
      out.require(tag + ": orthogonal case projects to the whole subspace",
                  pr2.is_whole_subspace());
      out.check(tag + ": orthogonal case distance", kHalfPi, distance_to_subspace(xp, s), 1e-9);
      ProjectivePoint first_sample = random_point_in_subspace(rng, s);
      bool saw_distinct = false;
      for (int m = 0; m < 64; ++m) {
        const ProjectivePoint sample = random_point_in_subspace(rng, s);
        out.check(tag + ": orthogonal case sample distance", kHalfPi,
                  fs_distance(xp, sample), 1e-9);
        if (fs_distance(first_sample, sample) > 0.1) saw_distinct = true;
      }
      if (s.projective_dim() >= 1) {
        out.require(tag + ": pi/2 attained at more than one point", saw_distinct);
      }
    }
  });

  return detail::merge_trials(std::move(results), started);
}

/// Compares every probability law against its Hilbert-space oracle on
/// seeded random states, events and chains, including engineered
/// short-circuit-to-zero chains and representative independence.
inline VerificationReport verify_probability_laws(const RandomSource& master,
                                                  const std::vector<Index>& dims,
                                                  std::uint64_t trials,
                                                  std::uint64_t max_chain = 8) {
  if (trials < 1) throw InvalidArgument("verification needs at least one trial");
  if (max_chain < 1) throw InvalidArgument("max_chain must be >= 1");
  if (dims.empty()) throw InvalidArgument("verification needs at least one dimension");
  for (Index n : dims) {
    if (n < 2) throw InvalidArgument("verification dimensions must be >= 2");
  }
  const auto started = std::chrono::steady_clock::now();
  const std::size_t total = dims.size() * trials;
  std::vector<detail::TrialChecks> results(total);

  detail::parallel_for(total, [&](std::size_t i) {
    RandomSource rng = master.child(i);
    const Index n = dims[i / trials];
    const std::string tag = "probability dim=" + std::to_string(n) + " trial=" +
                            std::to_string(i % trials);
    detail::TrialChecks& out = results[i];

    const UnitVector psi = random_unit_vector(rng, n);
    const ProjectivePoint x = pi2_project(psi);

    // Born rule.
    const UnitVector phi = random_unit_vector(rng, n);
    out.check(tag + ": Born vs |<psi,phi>|^2", oracle_born(psi, phi),
              born_probability(x, pi2_project(phi)).value, 1e-9);

    // Single event, rank anywhere in [0, n].
    const Index rank = static_cast<Index>(rng.index_below(static_cast<std::uint64_t>(n) + 1));
    const ProjectiveSubspace s = random_subspace(rng, n, rank);
    const double single_geo = single_event_probability(x, s).value;
    out.check(tag + ": single event vs ||E psi||^2", oracle_event_prob(psi, s.event()),
              single_geo, 1e-9);

    // Representative independence under a random nonzero scalar.
    const double mag = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const double arg = rng.uniform(0.0, 2.0 * kPi);
    const Complex lambda = mag * Complex(std::cos(arg), std::sin(arg));
    const ProjectivePoint x_scaled = pi3_project(HilbertVector(Vector(lambda * psi.coeffs())));
    out.check(tag + ": scaled representative, single event", single_geo,
              single_event_probability(x_scaled, s).value, 1e-10);

    // Consecutive chain of random length and ranks.
    const std::size_t len = 1 + rng.index_below(max_chain);
    std::vector<ProjectiveSubspace> chain_subspaces;
    std::vector<Event> chain_events;
    chain_subspaces.reserve(len);
    chain_events.reserve(len);
    for (std::size_t c = 0; c < len; ++c) {
      const Index rk = static_cast<Index>(rng.index_below(static_cast<std::uint64_t>(n) + 1));
      chain_subspaces.push_back(random_subspace(rng, n, rk));
      chain_events.push_back(chain_subspaces.back().event());
    }
    const EventChain chain(n, chain_subspaces);
    out.check(tag + ": chain vs ||E_k...E_1 psi||^2", oracle_consecutive_prob(psi, chain_events),
              consecutive_probability(x, chain).value, 1e-9);

    // Engineered short circuit: after collapsing onto S1, the second event
    // is built inside the orthogonal complement of the collapsed point, so
    // both routes must report zero.
    const Index k1 = 1 + static_cast<Index>(rng.index_below(static_cast<std::uint64_t>(n)));
    const ProjectiveSubspace s1 = random_subspace(rng, n, k1);
    const ProjectionResult collapse = project_onto_subspace(x, s1);
    if (collapse.is_nearest_point()) {
      const ProjectiveSubspace ray =
          ProjectiveSubspace::from_event(rank_one_event(collapse.nearest_point().rep()));
      const ProjectiveSubspace avoid = orthogonal_complement(ray);
      const Index k2 = 1 + static_cast<Index>(rng.index_below(static_cast<std::uint64_t>(n) - 1));
      std::vector<UnitVector> cols;
      cols.reserve(static_cast<std::size_t>(k2));
      for (Index c = 0; c < k2; ++c) {
        cols.push_back(random_point_in_subspace(rng, avoid).rep());
      }
      const ProjectiveSubspace s2 = ProjectiveSubspace::from_frame(cols);
      const EventChain blocked(n, {s1, s2});
      const double geo = consecutive_probability(x, blocked).value;
      const double orc = oracle_consecutive_prob(psi, {s1.event(), s2.event()});
      out.check(tag + ": short-circuit chain vs oracle", orc, geo, 1e-9);
      out.require(tag + ": short-circuit chain is exactly zero", geo == 0.0);
    }

    // Conditional probability where the conditioning event is not tiny.
    if (single_geo > 1e-6 && !s.is_empty()) {
      const Index rk2 = 1 + static_cast<Index>(rng.index_below(static_cast<std::uint64_t>(n)));
      const ProjectiveSubspace s2 = random_subspace(rng, n, rk2);
      const double oracle_cond = oracle_consecutive_prob(psi, {s.event(), s2.event()}) /
                                 oracle_event_prob(psi, s.event());
      out.check(tag + ": conditional vs oracle quotient", oracle_cond,
                conditional_probability(x, s, s2).value, 1e-9);
    }
  });

  return detail::merge_trials(std::move(results), started);
}

}  // namespace cpgeo
