#pragma once

// Invertible polynomials in the class of disconnected sums of atoms
//   A_m  : x^{m+1}
//   D_n  : x^{n-1} + x y^2
//   D_nt : x^{n-1} y + y^2   (the transpose of D_n)

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hmskit/grading.hpp"
#include "hmskit/int_matrix.hpp"
#include "hmskit/poly.hpp"

namespace hmskit {

enum class AtomKind { A, D, Dt };

struct Atom {
  AtomKind kind = AtomKind::A;
  int rank = 1;                    // m for A_m, n for D_n
  std::vector<std::size_t> vars;  // A: {x}; D, Dt: {x, y}

  std::string name() const {
    switch (kind) {
      case AtomKind::A: return "A" + std::to_string(rank);
      case AtomKind::D: return "D" + std::to_string(rank);
      case AtomKind::Dt: return "D" + std::to_string(rank) + "t";
    }
    return {};
  }

  bool operator==(const Atom&) const = default;
};

/// Square exponent matrix with non-negative entries, non-zero determinant
/// and no zero row. Row i holds the exponents of the i-th monomial.
class ExponentMatrix {
 public:
  ExponentMatrix() = default;
  explicit ExponentMatrix(IntMatrix a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) fail(ErrorKind::domain, "exponent matrix must be square");
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      bool positive = false;
      for (std::size_t j = 0; j < a_.cols(); ++j) {
        if (a_(i, j) < 0) fail(ErrorKind::domain, "exponent matrix has a negative entry");
        if (a_(i, j) > 0) positive = true;
      }
      if (!positive) fail(ErrorKind::domain, "exponent matrix has a zero row");
    }
    if (determinant(a_) == 0) fail(ErrorKind::domain, "exponent matrix is singular");
  }

  const IntMatrix& matrix() const { return a_; }
  std::size_t size() const { return a_.rows(); }

  ExponentMatrix transpose() const { return ExponentMatrix(a_.transpose()); }

  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;

 private:
  IntMatrix a_;
};

/// W = sum_i prod_j x_j^{a_ij}; all coefficients 1.
inline Poly<Rat> polynomial_from_exponents(const IntMatrix& a) {
  Poly<Rat> w(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Exponent e(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) e[j] = static_cast<std::uint32_t>(to_int64(a(i, j)));
    w.add_term(e, Rat(1));
  }
  return w;
}

class InvertiblePolynomial {
 public:
  const ExponentMatrix& exponents() const { return a_; }
  const Poly<Rat>& W() const { return w_; }
  const GradingContext& grading() const { return *grading_; }
  GradingPtr grading_ptr() const { return grading_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t nvars() const { return a_.size(); }

  /// Atom expression such as "D4t+A2"; atoms in variable order.
  std::string describe() const {
    std::string s;
    for (const auto& at : atoms_) s += (s.empty() ? "" : "+") + at.name();
    return s.empty() ? "0" : s;
  }

  std::vector<std::string> variable_names() const {
    static const char* short_names[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars(); ++i)
      names.push_back(nvars() <= 4 ? short_names[i] : "x" + std::to_string(i + 1));
    return names;
  }

 private:
  friend InvertiblePolynomial build(const ExponentMatrix& A);
  friend InvertiblePolynomial st_sum(const InvertiblePolynomial&, const InvertiblePolynomial&);

  ExponentMatrix a_;
  Poly<Rat> w_;
  GradingPtr grading_;
  std::vector<Atom> atoms_;
};

namespace detail {

// Tries to read the 2x2 block on variables (x, y) as D_n or D_nt.
inline bool match_d_block(const IntMatrix& a, std::size_t x, std::size_t y, Atom& out) {
  // Collect the two monomials restricted to (x, y), as exponent pairs.
  std::vector<std::pair<Integer, Integer>> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a(i, x) == 0 && a(i, y) == 0) continue;
    rows.emplace_back(a(i, x), a(i, y));
  }
  if (rows.size() != 2) return false;
  std::sort(rows.begin(), rows.end());
  // D_n: {(1,2), (n-1,0)} with n-1 >= 2.
  if (rows[0] == std::pair<Integer, Integer>(1, 2) && rows[1].second == 0 && rows[1].first >= 2) {
    out = Atom{AtomKind::D, static_cast<int>(to_int64(rows[1].first)) + 1, {x, y}};
    return true;
  }
  // D_nt: {(0,2), (n-1,1)} with n-1 >= 2.
  if (rows[0] == std::pair<Integer, Integer>(0, 2) && rows[1].second == 1 && rows[1].first >= 2) {
    out = Atom{AtomKind::Dt, static_cast<int>(to_int64(rows[1].first)) + 1, {x, y}};
    return true;
  }
  return false;
}

inline std::vector<Atom> decompose(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](std::size_t v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  // Variables sharing a monomial belong to the same block.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t first = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) == 0) continue;
      if (first == n) {
        first = j;
      } else {
        comp[find(j)] = find(first);
      }
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = find(v);
    if (block_of[r] == n) {
      block_of[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(v);
  }
  std::vector<Atom> atoms;
  for (const auto& b : blocks) {
    if (b.size() == 1) {
      const std::size_t x = b[0];
      std::size_t mono = n;
      for (std::size_t i = 0; i < n; ++i)
        if (a(i, x) != 0) mono = i;
      Integer e = a(mono, x);
      if (e < 2) fail(ErrorKind::unsupported, "out of supported class: monomial x^1 has no singularity");
      atoms.push_back(Atom{AtomKind::A, static_cast<int>(to_int64(e)) - 1, {x}});
      continue;
    }
    if (b.size() == 2) {
      Atom at;
      if (match_d_block(a, b[0], b[1], at) || match_d_block(a, b[1], b[0], at)) {
        atoms.push_back(std::move(at));
        continue;
      }
    }
    fail(ErrorKind::unsupported,
         "out of supported class: block of size " + std::to_string(b.size()) +
             " is not of type A_m, D_n or D_n transpose");
  }
  return atoms;
}

}  // namespace detail

/// Recognizes A as a disconnected sum of A/D atoms and builds W and L.
inline InvertiblePolynomial build(const ExponentMatrix& A) {
  InvertiblePolynomial p;
  p.a_ = A;
  p.w_ = polynomial_from_exponents(A.matrix());
  p.grading_ = std::make_shared<const GradingContext>(grading_group(A.matrix()));
  p.atoms_ = detail::decompose(A.matrix());
  return p;
}

inline InvertiblePolynomial transpose(const InvertiblePolynomial& p) { return build(p.exponents().transpose()); }

/// Disconnected sum; variables of q follow those of p.
inline InvertiblePolynomial st_sum(const InvertiblePolynomial& p, const InvertiblePolynomial& q) {
  InvertiblePolynomial s;
  s.a_ = ExponentMatrix(IntMatrix::direct_sum(p.exponents().matrix(), q.exponents().matrix()));
  s.w_ = polynomial_from_exponents(s.a_.matrix());
  s.grading_ = std::make_shared<const GradingContext>(sum_grading(p.grading(), q.grading()));
  s.atoms_ = p.atoms();
  for (Atom at : q.atoms()) {
    for (auto& v : at.vars) v += p.nvars();
    s.atoms_.push_back(std::move(at));
  }
  return s;
}

/// The polynomial in zero variables (W = 0, L = Z c), the unit for st_sum.
inline InvertiblePolynomial empty_polynomial() { return build(ExponentMatrix(IntMatrix(0, 0))); }

inline IntMatrix atom_matrix(AtomKind kind, int rank) {
  switch (kind) {
    case AtomKind::A:
      if (rank < 1) fail(ErrorKind::domain, "A_m needs m >= 1");
      return IntMatrix{{rank + 1}};
    case AtomKind::D:
      if (rank < 3) fail(ErrorKind::domain, "D_n needs n >= 3");
      return IntMatrix{{rank - 1, 0}, {1, 2}};
    case AtomKind::Dt:
      if (rank < 3) fail(ErrorKind::domain, "D_n needs n >= 3");
      return IntMatrix{{rank - 1, 1}, {0, 2}};
  }
  return {};
}

/// Parses `atom ("+" atom)*` with atom := "A"<int> | "D"<int> | "D"<int>"t".
/// Whitespace is ignored.
inline std::vector<std::pair<AtomKind, int>> parse_atom_list(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorKind::parse, "empty atom expression");
  std::vector<std::pair<AtomKind, int>> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = s.find('+', pos);
    std::string tok = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (tok.size() < 2 || (tok[0] != 'A' && tok[0] != 'D'))
      fail(ErrorKind::parse, "bad atom '" + tok + "' (expected A<m>, D<n> or D<n>t)");
    bool transposed = tok.back() == 't';
    std::string digits = tok.substr(1, tok.size() - 1 - (transposed ? 1 : 0));
    if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      fail(ErrorKind::parse, "bad atom '" + tok + "'");
    if (transposed && tok[0] == 'A') fail(ErrorKind::parse, "type A atoms are self-transpose: '" + tok + "'");
    int rank = std::stoi(digits);
    AtomKind kind = tok[0] == 'A' ? AtomKind::A : transposed ? AtomKind::Dt : AtomKind::D;
    if (kind == AtomKind::A ? rank < 1 : rank < 3) fail(ErrorKind::parse, "atom rank too small in '" + tok + "'");
    out.emplace_back(kind, rank);
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

/// Builds the sum of atoms named by an expression such as "D4t + A2".
/// Atom variable blocks follow the expression order.
inline InvertiblePolynomial parse_atom_expression(const std::string& text) {
  InvertiblePolynomial p = empty_polynomial();
  for (auto [kind, rank] : parse_atom_list(text)) p = st_sum(p, build(ExponentMatrix(atom_matrix(kind, rank))));
  return p;
}

/// JSON array of arrays of integers.
inline IntMatrix parse_matrix_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("matrix is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) fail(ErrorKind::parse, "matrix must be a JSON array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(ErrorKind::parse, "matrix rows must be arrays of equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number_integer()) fail(ErrorKind::parse, "matrix entries must be integers");
      m(i, k) = static_cast<long>(j[i][k].get<std::int64_t>());
    }
  }
  return m;
}

/// Either a JSON matrix (leading '[') or an atom expression.
inline InvertiblePolynomial parse_polynomial_input(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '[') return build(ExponentMatrix(parse_matrix_json(text)));
  return parse_atom_expression(text);
}

}  // namespace hmskit
