#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "dqkit/bt/bt_cp1.hpp"
#include "dqkit/dfweight/dfweight.hpp"
#include "dqkit/geom/torus.hpp"
#include "dqkit/kahler/sphere.hpp"
#include "dqkit/numerics/trig_poly.hpp"

namespace dqkit::io {

using json = nlohmann::json;

/// Malformed input. `where()` is a JSON pointer into the document, or a byte offset for parse errors.
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Parses text, reporting syntax errors with line, column and byte offset.
json parse_document(const std::string& text, const std::string& source = "input");
json read_file(const std::string& path);

/// A rational from "p/q", "p" or a JSON integer.
Rational rational_from(const json& j, const std::string& where);
json to_json(const Rational& q);

/// Trig polynomial records {"freq": [k_1, ..., k_n], "re": "p/q", "im": "p/q"} in a list;
/// missing re or im mean zero.
TrigPoly trig_poly_from(const json& j, int dim, const std::string& where);
json to_json(const TrigPoly& f);

/// {"m": m, "omega": optional 2m x 2m matrix, "gamma": [{"index": [i, j, k], "value": [records]}]}.
/// Entries may be given on any ordering of (i, j, k); repeats must agree. The tensor is the
/// lowered symmetric one, completed by symmetry.
struct ConnectionSpec {
  SymplecticStructure structure;
  SymTensor3 gamma;
};
ConnectionSpec connection_from(const json& j, const std::string& where);
json to_json(const SymplecticStructure& s, const SymTensor3& gamma);

/// {"psi_coeffs": [...]} or {"correction": [...]} (psi = 1 + (1 - h^2) p) or "round".
SphereProfile profile_from(const json& j, const std::string& where);
json to_json(const SphereProfile& p);

/// Ascending rational coefficients of a polynomial in h.
Polynomial univariate_from(const json& j, const std::string& where);

/// [{"n": n, "re": [coeffs], "im": [coeffs]}] for sum_n c_n(h) (1 - h^2)^{|n|/2} e^{i n theta}.
ModeFunction mode_function_from(const json& j, const std::string& where);

/// {"m": m, "samples": [[k, d, "w"], ...]}.
HilbertWeightData hilbert_data_from(const json& j, const std::string& where);

/// Looks up a required member.
const json& member(const json& j, const std::string& key, const std::string& where);
int int_from(const json& j, const std::string& where);

}  // namespace dqkit::io
