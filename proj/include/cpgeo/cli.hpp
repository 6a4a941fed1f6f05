#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpgeo/cpgeo.hpp"
#include "cpgeo/io.hpp"

namespace cpgeo::cli {

// Exit codes, stable across releases:
//   0 success, 2 usage or parse problem, 3 dimension mismatch,
//   4 invalid event, 5 operation requires a non-empty subspace.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kDimensionMismatch = 3;
inline constexpr int kInvalidEvent = 4;
inline constexpr int kEmptySubspace = 5;

namespace detail {

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  return Json::parse(in);
}

inline bool looks_like_event(const Json& doc) {
  return doc.is_object() && (doc.contains("frame") || doc.contains("matrix"));
}

inline Json tolerance_table() {
  return Json{{"zero_norm_tol", tol::zero_norm}, {"unit_tol", tol::unit},
              {"op_tol", tol::op},               {"frame_tol", tol::frame},
              {"orth_tol", tol::orth},           {"membership_tol", tol::membership},
              {"cond_tol", tol::cond}};
}

inline std::vector<Index> parse_dims(const std::string& spec) {
  std::vector<Index> dims;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse dimension list entry '" + item + "'");
    }
    if (used != item.size() || value < 2) {
      throw InvalidArgument("dimensions must be integers >= 2, got '" + item + "'");
    }
    dims.push_back(static_cast<Index>(value));
  }
  if (dims.empty()) {
    throw InvalidArgument("dimension list is empty");
  }
  return dims;
}

inline void emit(std::ostream& out, Json doc, bool tol_report) {
  if (tol_report) {
    doc["tolerances"] = tolerance_table();
  }
  out << doc.dump(2) << "\n";
}

inline int cmd_dist(const std::string& file_a, const std::string& file_b, bool tol_report,
                    std::ostream& out) {
  const ProjectivePoint x = pi3_project(parse_vector_document(load_json(file_a)));
  const Json other = load_json(file_b);
  double distance = 0.0;
  if (looks_like_event(other)) {
    const ProjectiveSubspace s = subspace_from_event(parse_event_document(other));
    distance = distance_to_subspace(x, s);
  } else {
    distance = fs_distance(x, pi3_project(parse_vector_document(other)));
  }
  emit(out, Json{{"distance_radians", distance}, {"absolute_inner", std::cos(distance)}},
       tol_report);
  return kOk;
}

inline int cmd_prob(const std::string& state_file, const std::string& event_file, bool tol_report,
                    std::ostream& out) {
  const HilbertVector raw = parse_vector_document(load_json(state_file));
  const UnitVector psi = pi1_normalize(raw);
  const Event e = parse_event_document(load_json(event_file));
  const double geometric =
      single_event_probability(pi2_project(psi), subspace_from_event(e)).value;
  const double oracle = oracle_event_prob(psi, e);
  emit(out,
       Json{{"geometric", geometric},
            {"oracle", oracle},
            {"abs_diff", std::abs(geometric - oracle)}},
       tol_report);
  return kOk;
}

inline int cmd_seq_prob(const std::string& state_file, const std::vector<std::string>& event_files,
                        bool tol_report, std::ostream& out) {
  const HilbertVector raw = parse_vector_document(load_json(state_file));
  const UnitVector psi = pi1_normalize(raw);
  std::vector<Event> events;
  std::vector<ProjectiveSubspace> subspaces;
  events.reserve(event_files.size());
  subspaces.reserve(event_files.size());
  for (const std::string& file : event_files) {
    events.push_back(parse_event_document(load_json(file)));
    subspaces.push_back(subspace_from_event(events.back()));
  }
  const ChainEvaluation eval =
      evaluate_chain(pi2_project(psi), EventChain(psi.dim(), subspaces));
  const double oracle = oracle_consecutive_prob(psi, events);

  Json steps = Json::array();
  for (const ChainStep& s : eval.steps) {
    steps.push_back({{"step", s.step}, {"distance", s.distance}, {"factor", s.factor}});
  }
  Json doc{{"steps", std::move(steps)},
           {"total", eval.total},
           {"oracle_total", oracle},
           {"abs_diff", std::abs(eval.total - oracle)}};
  if (eval.orthogonal_at != 0) {
    doc["orthogonal_at_step"] = eval.orthogonal_at;
  }
  emit(out, std::move(doc), tol_report);
  return kOk;
}

inline int cmd_project(const std::string& state_file, const std::string& event_file,
                       bool tol_report, std::ostream& out) {
  const ProjectivePoint x = pi3_project(parse_vector_document(load_json(state_file)));
  const ProjectiveSubspace s = subspace_from_event(parse_event_document(load_json(event_file)));
  const ProjectionResult pr = project_onto_subspace(x, s);
  Json doc;
  if (pr.is_nearest_point()) {
    doc = Json{{"nearest_point", vector_document(pr.nearest_point().rep())},
               {"distance", pr.distance()}};
  } else {
    doc = Json{{"whole_subspace", true}, {"distance", pr.distance()}};
  }
  emit(out, std::move(doc), tol_report);
  return kOk;
}

inline int cmd_geodesic(const std::string& file_a, const std::string& file_b, int steps,
                        bool tol_report, std::ostream& out) {
  if (steps < 1) {
    throw InvalidArgument("--steps must be >= 1");
  }
  const ProjectivePoint x = pi3_project(parse_vector_document(load_json(file_a)));
  const ProjectivePoint y = pi3_project(parse_vector_document(load_json(file_b)));
  const Geodesic g = shortest_geodesic_projective(x, y);
  Json points = Json::array();
  if (g.length <= 1e-12) {
    points.push_back(vector_document(x.rep()));
  } else {
    for (int i = 0; i <= steps; ++i) {
      const double t = g.length * static_cast<double>(i) / static_cast<double>(steps);
      points.push_back(vector_document(g.point_at(t).rep()));
    }
  }
  emit(out, Json{{"length", g.length}, {"unique", g.unique}, {"points", std::move(points)}},
       tol_report);
  return kOk;
}

inline int cmd_verify(std::uint64_t seed, const std::string& dims_spec, std::uint64_t trials,
                      std::uint64_t max_chain, std::uint64_t oracle_samples,
                      const std::string& suite, bool tol_report, std::ostream& out) {
  if (trials < 1) throw InvalidArgument("--trials must be >= 1");
  if (max_chain < 1) throw InvalidArgument("--max-chain must be >= 1");
  if (oracle_samples < 1) throw InvalidArgument("--oracle-samples must be >= 1");
  if (suite != "projection" && suite != "probability" && suite != "all") {
    throw InvalidArgument("--suite must be one of projection|probability|all");
  }
  const std::vector<Index> dims = parse_dims(dims_spec);
  const RandomSource master(seed);

  Json suites = Json::object();
  bool clean = true;
  if (suite == "projection" || suite == "all") {
    const VerificationReport r = verify_projection_theorem(master, dims, trials, oracle_samples);
    clean = clean && r.failures.empty();
    suites["projection"] = report_document(r);
  }
  if (suite == "probability" || suite == "all") {
    const VerificationReport r = verify_probability_laws(master, dims, trials, max_chain);
    clean = clean && r.failures.empty();
    suites["probability"] = report_document(r);
  }

  Json dims_json = Json::array();
  for (Index n : dims) dims_json.push_back(n);
  emit(out,
       Json{{"seed", seed},
            {"dims", std::move(dims_json)},
            {"trials", trials},
            {"max_chain", max_chain},
            {"suites", std::move(suites)}},
       tol_report);
  return clean ? kOk : kFailure;
}

}  // namespace detail

/// Parses and runs one command line (without the program name). Writes JSON
/// to `out`, human-readable diagnostics to `err`, and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum probabilities computed from the geometry of complex projective space, "
               "cross-checked against Hilbert-space operator formulas"};
  app.require_subcommand(1);
  bool tol_report = false;
  app.add_flag("--tol-report", tol_report, "include the tolerance table in the output");

  std::string file_a, file_b, state_file, event_file;
  std::vector<std::string> event_files;
  int geodesic_steps = 16;

  CLI::App* dist = app.add_subcommand(
      "dist", "Fubini-Study distance between two states, or from a state to an event subspace");
  dist->add_option("a", file_a, "state JSON file")->required();
  dist->add_option("b", file_b, "state or event JSON file")->required();

  CLI::App* prob = app.add_subcommand(
      "prob", "single-event probability, geometric and operator routes side by side");
  prob->add_option("state", state_file, "state JSON file")->required();
  prob->add_option("event", event_file, "event JSON file")->required();

  CLI::App* seq = app.add_subcommand(
      "seq-prob", "consecutive probability of time-ordered events (first flag measured first)");
  seq->add_option("state", state_file, "state JSON file")->required();
  seq->add_option("-e,--event", event_files, "event JSON file, repeatable in time order");

  CLI::App* project = app.add_subcommand(
      "project", "nearest point of an event subspace, or the whole subspace when orthogonal");
  project->add_option("state", state_file, "state JSON file")->required();
  project->add_option("event", event_file, "event JSON file")->required();

  CLI::App* geodesic = app.add_subcommand(
      "geodesic", "shortest projective geodesic between two states, sampled by arc length");
  geodesic->add_option("a", file_a, "state JSON file")->required();
  geodesic->add_option("b", file_b, "state JSON file")->required();
  geodesic->add_option("--steps", geodesic_steps, "number of arcs to sample (default 16)");

  std::uint64_t seed = 0, trials = 1000, max_chain = 8, oracle_samples = 10000;
  std::string dims_spec = "2,3,4,8,16";
  std::string suite = "all";
  CLI::App* verify = app.add_subcommand(
      "verify", "run the seeded verification suites and print the report");
  verify->add_option("--seed", seed, "random seed (default 0)");
  verify->add_option("--dims", dims_spec, "comma-separated ambient dimensions (default 2,3,4,8,16)");
  verify->add_option("--trials", trials, "trials per dimension (default 1000)");
  verify->add_option("--max-chain", max_chain, "longest random event chain (default 8)");
  verify->add_option("--oracle-samples", oracle_samples,
                     "sample count for the infimum oracle (default 10000)");
  verify->add_option("--suite", suite, "projection|probability|all (default all)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cpgeo");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (app.got_subcommand(dist)) return detail::cmd_dist(file_a, file_b, tol_report, out);
    if (app.got_subcommand(prob)) return detail::cmd_prob(state_file, event_file, tol_report, out);
    if (app.got_subcommand(seq)) return detail::cmd_seq_prob(state_file, event_files, tol_report, out);
    if (app.got_subcommand(project)) return detail::cmd_project(state_file, event_file, tol_report, out);
    if (app.got_subcommand(geodesic))
      return detail::cmd_geodesic(file_a, file_b, geodesic_steps, tol_report, out);
    if (app.got_subcommand(verify))
      return detail::cmd_verify(seed, dims_spec, trials, max_chain, oracle_samples, suite,
                                tol_report, out);
    err << "no subcommand selected\n";
    return kUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    err << "JSON error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const ZeroVector& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const DimensionMismatch& e) {
    err << e.what() << "\n";
    return kDimensionMismatch;
  } catch (const InvalidEvent& e) {
    err << e.what() << "\n";
    return kInvalidEvent;
  } catch (const EmptySubspace& e) {
    err << e.what() << " (the operation requires a non-empty projective subspace)\n";
    return kEmptySubspace;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace cpgeo::cli
