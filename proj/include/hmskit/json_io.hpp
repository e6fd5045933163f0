#pragma once

// JSON forms of the library's values. Output objects keep a fixed key order
// so that reports are byte-for-byte reproducible.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmskit/collections.hpp"
#include "hmskit/grading.hpp"
#include "hmskit/hom.hpp"
#include "hmskit/matfac.hpp"
#include "hmskit/symmetry.hpp"
#include "hmskit/verify.hpp"

namespace hmskit {

using ojson = nlohmann::ordered_json;

inline constexpr int schema_version = 1;
inline constexpr const char* tool_version = "0.1.0";

inline ojson matrix_json(const IntMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_int64(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Free part as a number when L has rank one, as an array otherwise.
inline ojson free_json(const LElement& e) {
  if (e.free.size() == 1) return e.free[0];
  return e.free;
}

inline ojson grading_json(const GradingContext& g) {
  ojson j;
  j["rank"] = g.free_rank();
  j["torsion"] = g.torsion();
  ojson deg = ojson::array(), deg_t = ojson::array();
  for (const auto& d : g.deg_x()) {
    deg.push_back(free_json(d));
    deg_t.push_back(d.torsion);
  }
  j["deg"] = std::move(deg);
  j["degc"] = free_json(g.deg_c());
  if (!g.torsion().empty()) {
    j["deg_torsion"] = std::move(deg_t);
    j["degc_torsion"] = g.deg_c().torsion;
  }
  return j;
}

inline ojson element_json(const LElement& e) {
  ojson j;
  j["free"] = e.free;
  j["torsion"] = e.torsion;
  return j;
}

template <ExactField F>
ojson poly_matrix_json(const PolyMatrix<F>& m, const std::vector<std::string>& names) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).to_string(names));
    rows.push_back(std::move(r));
  }
  return rows;
}

template <ExactField F>
ojson mf_json(const MatrixFactorization<F>& K, const std::vector<std::string>& names) {
  ojson j;
  auto shifts = [](const GradedFreeModule& m) {
    ojson a = ojson::array();
    for (const auto& s : m.shifts) a.push_back(element_json(s));
    return a;
  };
  j["W"] = K.W().to_string(names);
  j["P0"] = shifts(K.P0());
  j["P1"] = shifts(K.P1());
  j["d0"] = poly_matrix_json(K.d0(), names);
  j["d1"] = poly_matrix_json(K.d1(), names);
  return j;
}

inline ojson ext_table_json(const ExtTable& t) {
  ojson j;
  j["objects"] = t.objects;
  j["window"] = {t.kmin, t.kmax};
  j["dims"] = t.dims;
  return j;
}

inline ExtTable ext_table_from_json(const nlohmann::json& j) {
  ExtTable t;
  try {
    t.objects = j.at("objects").get<std::vector<std::string>>();
    t.kmin = j.at("window").at(0).get<std::int64_t>();
    t.kmax = j.at("window").at(1).get<std::int64_t>();
    t.dims = j.at("dims").get<std::vector<std::vector<std::vector<std::size_t>>>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("malformed table: ") + e.what());
  }
  const std::size_t n = t.objects.size();
  const auto width = static_cast<std::size_t>(t.kmax - t.kmin + 1);
  if (t.dims.size() != n) fail(ErrorKind::parse, "malformed table: wrong number of rows");
  for (const auto& row : t.dims) {
    if (row.size() != n) fail(ErrorKind::parse, "malformed table: wrong number of columns");
    for (const auto& cell : row)
      if (cell.size() != width) fail(ErrorKind::parse, "malformed table: wrong window width");
  }
  return t;
}

inline ojson symmetry_json(const DiagonalSymmetry& g) {
  ojson a = ojson::array();
  for (const auto& r : g.residues()) a.push_back(r.get_str());
  return a;
}

inline ojson group_json(const SymmetryGroup& G) {
  ojson j;
  ojson gens = ojson::array();
  for (const auto& g : G.generators()) gens.push_back(symmetry_json(g));
  j["generators"] = std::move(gens);
  j["order"] = G.order();
  return j;
}

inline ojson report_json(const VerificationReport& r, const std::vector<std::string>& quivers) {
  ojson j;
  j["schema"] = schema_version;
  j["version"] = tool_version;
  j["input"] = r.input;
  j["quiver"] = quivers;
  j["window"] = {r.bside.kmin, r.bside.kmax};
  j["bside"] = ext_table_json(r.bside);
  j["aside"] = ext_table_json(r.aside);
  ojson assign = ojson::array();
  for (std::size_t i = 0; i < r.assignment.size(); ++i) {
    ojson a;
    a["object"] = r.bside.objects[i];
    a["vertex"] = r.aside.objects[r.assignment[i]];
    assign.push_back(std::move(a));
  }
  j["object_assignment"] = std::move(assign);
  j["verdict"] = r.match() ? "match" : "mismatch";
  if (r.mismatch) {
    const Mismatch& m = *r.mismatch;
    ojson d;
    if (m.i < r.bside.size() && m.j < r.bside.size()) {
      d["source"] = r.bside.objects[m.i];
      d["target"] = r.bside.objects[m.j];
    }
    d["k"] = m.k;
    d["bside"] = m.bside;
    d["aside"] = m.aside;
    j["first_difference"] = std::move(d);
  }
  j["note"] =
      "dimension tables compared exactly over the finite shift window only; this does not see "
      "idempotent completion or summand splitting";
  return j;
}

}  // namespace hmskit
