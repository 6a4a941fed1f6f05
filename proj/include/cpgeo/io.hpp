#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpgeo/core.hpp"
#include "cpgeo/harness.hpp"
#include "cpgeo/hilbert.hpp"

namespace cpgeo {

using Json = nlohmann::json;

// Wire formats. A vector document is
//   { "dim": n, "entries": [[re, im], ...] }
// and an event document carries exactly one of
//   { "frame": [vector document, ...] }   or
//   { "matrix": [[[re, im], ...], ...] }  (n x n, row major).
// All numbers are emitted in shortest round-trip decimal form, so emitted
// documents re-parse to the same 64-bit floats.

inline Json vector_document(const HilbertVector& v) {
  Json entries = Json::array();
  for (Index i = 0; i < v.dim(); ++i) {
    entries.push_back({v.coeffs()[i].real(), v.coeffs()[i].imag()});
  }
  return Json{{"dim", v.dim()}, {"entries", std::move(entries)}};
}

inline Json vector_document(const UnitVector& v) { return vector_document(v.vector()); }

namespace detail {

inline Complex parse_complex_pair(const Json& pair, const std::string& where) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw ParseError(where + ": expected a [re, im] pair of numbers");
  }
  const double re = pair[0].get<double>();
  const double im = pair[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw ParseError(where + ": entries must be finite");
  }
  return {re, im};
}

}  // namespace detail

inline HilbertVector parse_vector_document(const Json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
    throw ParseError("vector document needs \"dim\" and \"entries\"");
  }
  if (!doc["dim"].is_number_integer()) {
    throw ParseError("vector document: \"dim\" must be an integer");
  }
  const auto dim = doc["dim"].get<Index>();
  const Json& entries = doc["entries"];
  if (dim < 2) {
    throw ParseError("vector document: dimension must be >= 2");
  }
  if (!entries.is_array() || static_cast<Index>(entries.size()) != dim) {
    throw ParseError("vector document: \"entries\" must hold exactly dim pairs");
  }
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    v[i] = detail::parse_complex_pair(entries[static_cast<std::size_t>(i)],
                                      "entry " + std::to_string(i));
  }
  return HilbertVector(std::move(v));
}

inline Event parse_event_document(const Json& doc) {
  if (!doc.is_object()) {
    throw ParseError("event document must be a JSON object");
  }
  const bool has_frame = doc.contains("frame");
  const bool has_matrix = doc.contains("matrix");
  if (has_frame == has_matrix) {
    throw ParseError("event document needs exactly one of \"frame\" or \"matrix\"");
  }
  if (has_frame) {
    const Json& frame = doc["frame"];
    if (!frame.is_array() || frame.empty()) {
      throw ParseError("event document: \"frame\" must be a non-empty array of vector documents");
    }
    std::vector<UnitVector> columns;
    columns.reserve(frame.size());
    for (const Json& col : frame) {
      try {
        columns.emplace_back(parse_vector_document(col));
      } catch (const ZeroVector&) {
        throw InvalidEvent("frame column is numerically zero");
      }
    }
    return event_from_frame(columns);
  }
  const Json& rows = doc["matrix"];
  if (!rows.is_array() || rows.size() < 2) {
    throw ParseError("event document: \"matrix\" must be an n x n array, n >= 2");
  }
  const Index n = static_cast<Index>(rows.size());
  Matrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw ParseError("event document: matrix row " + std::to_string(r) + " has the wrong length");
    }
    for (Index c = 0; c < n; ++c) {
      m(r, c) = detail::parse_complex_pair(row[static_cast<std::size_t>(c)],
                                           "matrix entry (" + std::to_string(r) + "," +
                                               std::to_string(c) + ")");
    }
  }
  return Event(std::move(m));
}

inline Json report_document(const VerificationReport& report) {
  Json failures = Json::array();
  for (const VerificationFailure& f : report.failures) {
    failures.push_back({{"case", f.what},
                        {"expected", f.expected},
                        {"got", f.got},
                        {"error", f.error}});
  }
  return Json{{"trials", report.trials},
              {"max_abs_error", report.max_abs_error},
              {"failures", std::move(failures)},
              {"elapsed_seconds", report.elapsed_seconds}};
}

}  // namespace cpgeo
