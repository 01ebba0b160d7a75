#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anglekit/core.hpp"
#include "anglekit/dilation.hpp"
#include "anglekit/involution.hpp"
#include "anglekit/subspace.hpp"

namespace anglekit {

using Json = nlohmann::ordered_json;

/// {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order.
/// Entries may also be bare reals.
inline Json matrix_to_json(const ComplexMatrix& a) {
  Json data = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      data.push_back(Json::array({a(i, j).real(), a(i, j).imag()}));
    }
  }
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["data"] = std::move(data);
  return out;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ValidationError("matrix json: need an object with rows, cols and data");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw ValidationError("matrix json: rows and cols must be integers");
  }
  const Index rows = j["rows"].get<Index>();
  const Index cols = j["cols"].get<Index>();
  if (rows < 0 || cols < 0) {
    throw ValidationError("matrix json: rows and cols must be nonnegative");
  }
  const Json& data = j["data"];
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    throw ValidationError("matrix json: data must hold rows*cols entries");
  }
  ComplexMatrix a(rows, cols);
  Index flat = 0;
  for (const Json& entry : data) {
    double re = 0.0, im = 0.0;
    if (entry.is_number()) {
      re = entry.get<double>();
    } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
               entry[1].is_number()) {
      re = entry[0].get<double>();
      im = entry[1].get<double>();
    } else {
      throw ValidationError("matrix json: entries must be reals or [re, im] pairs");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ValidationError("matrix json: entries must be finite");
    }
    a(flat / cols, flat % cols) = Complex(re, im);
    ++flat;
  }
  return a;
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed json in " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

inline Json angles_to_json(const std::vector<double>& angles,
                           const std::vector<double>& cosines) {
  Json out;
  out["angles"] = angles;
  out["cosines"] = cosines;
  return out;
}

inline Json canonical_form_to_json(const InvolutionCanonicalForm& form,
                                   bool with_unitaries = false) {
  Json out;
  out["epsilon"] = form.epsilon;
  out["k"] = form.k;
  out["xs"] = form.xs;
  out["as"] = form.as;
  if (with_unitaries) {
    out["unitary"] = matrix_to_json(form.unitary);
    out["unitary_tri"] = matrix_to_json(form.unitary_tri);
  }
  return out;
}

inline Json dilation_to_json(const DilationResult& result) {
  Json out = matrix_to_json(result.matrix);
  out["corner_dim"] = result.corner_dim;
  out["kind"] = to_string(result.kind);
  return out;
}

inline Json ellipse_to_json(const NumericalRangeEllipse& e) {
  Json out;
  out["operator_norm"] = e.norm;
  out["semi_major"] = e.semi_major;
  out["semi_minor"] = e.semi_minor;
  out["foci"] = Json::array({1.0, -1.0});
  return out;
}

}  // namespace anglekit
