#pragma once

// Conversions between scenario JSON and library types. Complex numbers are [re, im].

#include <nlohmann/json.hpp>

#include <fermifold/fermifold.hpp>

#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermifold::cli {

using json = nlohmann::ordered_json;

/// Malformed scenario structure; maps to exit code 1.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent task payload; reported against the task.
class PayloadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw PayloadError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline double number_from(const json& j, const std::string& where) {
  if (!j.is_number()) throw PayloadError(where + ": expected a number");
  return j.get<double>();
}

inline int integer_from(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw PayloadError(where + ": expected an integer");
  return j.get<int>();
}

inline std::string string_from(const json& j, const std::string& where) {
  if (!j.is_string()) throw PayloadError(where + ": expected a string");
  return j.get<std::string>();
}

/// A bare number is real; otherwise [re, im].
inline cplx complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw PayloadError(where + ": expected a number or an [re, im] pair");
}

inline json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline Eigen::VectorXd vector_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw PayloadError(where + ": expected a non-empty array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number_from(j[i], where);
  return v;
}

inline Eigen::MatrixXd matrix_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw PayloadError(where + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw PayloadError(where + ": ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number_from(row[static_cast<std::size_t>(c)], where);
  }
  return m;
}

/// "[11,1]" (spaces allowed).
inline ModeIndex mode_from(const json& j, const std::string& where) {
  static const std::regex pattern(R"(^\s*\[\s*(11|12|21|22)\s*,\s*([1-9][0-9]*)\s*\]\s*$)");
  const auto text = string_from(j, where);
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw PayloadError(where + ": malformed mode '" + text + "'");
  return {sector_from_code(std::stoi(m[1].str())), std::stoi(m[2].str())};
}

/// {"11": n, "12": n, "21": n, "22": n} with absent sectors empty, or [n11, n12, n21, n22].
inline SectorConfig config_from(const json& j, const std::string& where) {
  std::array<int, 4> n{};
  if (j.is_array()) {
    if (j.size() != 4) throw SchemaError(where + ": config array needs four sector counts");
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j[i].is_number_integer()) throw SchemaError(where + ": sector counts must be integers");
      n[i] = j[i].get<int>();
    }
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      std::size_t slot = 0;
      if (key == "11") slot = 0;
      else if (key == "12") slot = 1;
      else if (key == "21") slot = 2;
      else if (key == "22") slot = 3;
      else throw SchemaError(where + ": unknown sector '" + key + "'");
      if (!value.is_number_integer()) throw SchemaError(where + ": sector counts must be integers");
      n[slot] = value.get<int>();
    }
  } else {
    throw SchemaError(where + ": config must be an object or a four-element array");
  }
  try {
    return make_config(n[0], n[1], n[2], n[3]);
  } catch (const RangeError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

inline std::array<std::uint8_t, 4> base_from(const json& j, const std::string& where) {
  std::array<std::uint8_t, 4> base{};
  if (!j.is_array() || j.size() != 4) throw PayloadError(where + ": base needs four 0/1 flags");
  for (std::size_t i = 0; i < 4; ++i) {
    const int v = integer_from(j[i], where);
    if (v != 0 && v != 1) throw PayloadError(where + ": base flags must be 0 or 1");
    base[i] = static_cast<std::uint8_t>(v);
  }
  return base;
}

inline std::array<double, 3> triple_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw PayloadError(where + ": expected three numbers");
  return {number_from(j[0], where), number_from(j[1], where), number_from(j[2], where)};
}

/// {"plus": [3], "minus": [3]}.
inline PointSector point_from(const json& j, const std::string& where) {
  return {triple_from(require(j, "plus", where), where + ".plus"),
          triple_from(require(j, "minus", where), where + ".minus")};
}

/// A number (constant) or [{"exponents": [...], "coefficient": c}, ...].
inline Polynomial<double> polynomial_from(const json& j, int dim, const std::string& where) {
  if (j.is_number()) return Polynomial<double>::constant(dim, j.get<double>());
  if (!j.is_array()) throw PayloadError(where + ": polynomial must be a number or a list of monomials");
  Polynomial<double> p(dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto at = where + "[" + std::to_string(i) + "]";
    const auto& e = require(j[i], "exponents", at);
    if (!e.is_array() || static_cast<int>(e.size()) != dim) {
      throw PayloadError(at + ": exponents need " + std::to_string(dim) + " entries");
    }
    std::vector<int> exps;
    for (const auto& k : e) {
      const int v = integer_from(k, at);
      if (v < 0) throw PayloadError(at + ": negative exponent");
      exps.push_back(v);
    }
    p.add_monomial(exps, number_from(require(j[i], "coefficient", at), at + ".coefficient"));
  }
  return p;
}

inline json polynomial_json(const Polynomial<double>& p) {
  json out = json::array();
  for (const auto& [e, c] : p.monomials()) out.push_back({{"exponents", e}, {"coefficient", c}});
  return out;
}

/// {"dim": D, "degree": k, "terms": [{"indices": [...], "coefficient": polynomial}, ...]}.
inline FormK form_from(const json& j, const std::string& where) {
  const int dim = integer_from(require(j, "dim", where), where + ".dim");
  const int degree = integer_from(require(j, "degree", where), where + ".degree");
  FormK form(dim, degree);
  const auto& terms = require(j, "terms", where);
  if (!terms.is_array()) throw PayloadError(where + ".terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto at = where + ".terms[" + std::to_string(i) + "]";
    const auto& idx = require(terms[i], "indices", at);
    if (!idx.is_array() || static_cast<int>(idx.size()) != degree) {
      throw PayloadError(at + ": indices need " + std::to_string(degree) + " entries");
    }
    IndexTuple tuple;
    for (const auto& k : idx) {
      const int v = integer_from(k, at);
      if (v < 0 || v >= dim) throw PayloadError(at + ": index out of range");
      tuple.push_back(v);
    }
    form.add_term(tuple, Coefficient<double>(polynomial_from(require(terms[i], "coefficient", at), dim, at)));
  }
  return form;
}

inline json form_json(const FormK& form) {
  json terms = json::array();
  for (const auto& [idx, c] : form.terms()) {
    terms.push_back({{"indices", idx}, {"coefficient", polynomial_json(c.polynomial())}});
  }
  return {{"dim", form.dim()}, {"degree", form.degree()}, {"terms", terms}};
}

/// {"linear": M, "offset": b?} or {"source_dim": n, "components": [polynomial, ...]}.
inline SmoothMap map_from(const json& j, int source_dim, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "identity") return SmoothMap::identity(source_dim);
  if (j.contains("linear")) {
    const auto l = matrix_from(j.at("linear"), where + ".linear");
    if (l.cols() != source_dim) throw PayloadError(where + ": linear map has wrong source dimension");
    const Eigen::VectorXd b =
        j.contains("offset") ? vector_from(j.at("offset"), where + ".offset") : Eigen::VectorXd::Zero(l.rows());
    return SmoothMap::affine(l, b);
  }
  const auto& comps = require(j, "components", where);
  if (!comps.is_array() || comps.empty()) throw PayloadError(where + ".components: expected a non-empty array");
  std::vector<Coefficient<double>> cs;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    cs.emplace_back(polynomial_from(comps[i], source_dim, where + ".components[" + std::to_string(i) + "]"));
  }
  return SmoothMap(source_dim, std::move(cs));
}

/// {"constant": v}, {"linear": L} or {"components": [polynomial, ...]}.
inline VectorField field_from(const json& j, int dim, const std::string& where) {
  if (j.contains("constant")) return VectorField::constant(vector_from(j.at("constant"), where + ".constant"));
  if (j.contains("linear")) return VectorField::linear(matrix_from(j.at("linear"), where + ".linear"));
  const auto& comps = require(j, "components", where);
  if (!comps.is_array() || static_cast<int>(comps.size()) != dim) {
    throw PayloadError(where + ".components: expected " + std::to_string(dim) + " polynomials");
  }
  std::vector<Coefficient<double>> cs;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    cs.emplace_back(polynomial_from(comps[i], dim, where + ".components[" + std::to_string(i) + "]"));
  }
  return VectorField(std::move(cs));
}

}  // namespace fermifold::cli
