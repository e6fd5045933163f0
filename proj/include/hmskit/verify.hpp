#pragma once

// Comparison of a B-side Ext table with the A-side quiver model.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hmskit/collections.hpp"
#include "hmskit/hom.hpp"
#include "hmskit/quiver.hpp"

namespace hmskit {

struct Mismatch {
  std::size_t i = 0, j = 0;
  std::int64_t k = 0;
  std::size_t bside = 0, aside = 0;
};

struct VerificationReport {
  std::string input;
  ExtTable bside;
  ExtTable aside;
  std::vector<std::size_t> assignment;  // B-side object i -> A-side object assignment[i]
  std::optional<Mismatch> mismatch;

  bool match() const { return !mismatch; }
};

/// A-side object index of each B-side object.
template <ExactField F>
std::vector<std::size_t> object_assignment(const Collection<F>& c, const BigradedTable& model) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t a = 0; a < model.objects.size(); ++a) index.emplace(model.objects[a], a);
  std::vector<std::size_t> out;
  for (const auto& v : c.vertices) {
    auto it = index.find(v);
    if (it == index.end()) invariant_failure("object assigned to a vertex outside the model");
    out.push_back(it->second);
  }
  return out;
}

/// First (i, j, k) in lexicographic order where the tables disagree.
inline std::optional<Mismatch> compare_tables(const ExtTable& b, const ExtTable& a,
                                              const std::vector<std::size_t>& assignment) {
  if (b.kmin != a.kmin || b.kmax != a.kmax) fail(ErrorKind::domain, "tables cover different windows");
  if (assignment.size() != b.size() || a.size() != b.size()) {
    return Mismatch{0, 0, b.kmin, b.size(), a.size()};
  }
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::int64_t k = b.kmin; k <= b.kmax; ++k) {
        const std::size_t x = b.at(i, j, k), y = a.at(assignment[i], assignment[j], k);
        if (x != y) return Mismatch{i, j, k, x, y};
      }
  return std::nullopt;
}

/// Builds the report from a B-side table already computed for c.
template <ExactField F>
VerificationReport make_report(const std::string& input, const Collection<F>& c, ExtTable bside) {
  VerificationReport r;
  r.input = input;
  BigradedTable model = tensor_model(c.quivers, bside.kmin, bside.kmax);
  r.aside = std::move(model.table);
  r.assignment = object_assignment(c, model);
  r.bside = std::move(bside);
  r.mismatch = compare_tables(r.bside, r.aside, r.assignment);
  return r;
}

template <ExactField F>
VerificationReport verify_collection(const std::string& input, const Collection<F>& c, std::int64_t window,
                                     unsigned threads = 1) {
  if (window < 0) fail(ErrorKind::domain, "window must be non-negative");
  return make_report(input, c, ext_table(c.objects, c.labels, -window, window, threads));
}

}  // namespace hmskit
