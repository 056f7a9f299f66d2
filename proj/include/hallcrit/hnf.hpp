#pragma once

// Submodules of Z^n in canonical Hermite normal form.
//
// Convention (row style): basis rows are ordered by strictly increasing
// pivot column, each pivot is positive, entries left of a row's pivot are
// zero, and entries above each pivot lie in [0, pivot). Two submodules are
// equal iff their canonical bases are identical.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hallcrit/error.hpp"

namespace hallcrit {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

inline IntVector zero_vector(std::size_t n) { return IntVector(n, Integer(0)); }

inline IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v = zero_vector(n);
  v[i] = 1;
  return v;
}

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

namespace detail {

/// floor(a / b) for b > 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if (a % b != 0 && a < 0) --q;
  return q;
}

/// row -= q * other
inline void axpy(IntVector& row, const Integer& q, const IntVector& other) {
  if (q == 0) return;
  for (std::size_t i = 0; i < row.size(); ++i) row[i] -= q * other[i];
}

}  // namespace detail

/// Row-style HNF of the rows' integer span; zero rows dropped.
inline std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows, std::size_t ncols) {
  for (const auto& r : rows)
    if (r.size() != ncols)
      throw StructuralError("vector of length " + std::to_string(r.size()) +
                            " in ambient rank " + std::to_string(ncols));
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
    // Euclid on column `col` among rows pivot_row..end.
    while (true) {
      std::optional<std::size_t> best;
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (!best || abs(rows[r][col]) < abs(rows[*best][col]))) best = r;
      if (!best) break;
      std::swap(rows[pivot_row], rows[*best]);
      bool others = false;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        detail::axpy(rows[r], rows[r][col] / rows[pivot_row][col], rows[pivot_row]);
        others = others || rows[r][col] != 0;
      }
      if (!others) break;
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0)
      for (auto& x : rows[pivot_row]) x = -x;
    const Integer& p = rows[pivot_row][col];
    for (std::size_t r = 0; r < pivot_row; ++r)
      detail::axpy(rows[r], detail::floor_div(rows[r][col], p), rows[pivot_row]);
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

/// A subgroup of Z^n held by its canonical HNF basis.
class Submodule {
 public:
  /// Integer span of `vectors` in Z^ambient.
  static Submodule span(std::size_t ambient, std::vector<IntVector> vectors) {
    Submodule s;
    s.ambient_ = ambient;
    s.basis_ = hermite_normal_form(std::move(vectors), ambient);
    for (const auto& row : s.basis_) {
      std::size_t c = 0;
      while (row[c] == 0) ++c;
      s.pivots_.push_back(c);
    }
    return s;
  }
  static Submodule zero(std::size_t ambient) { return span(ambient, {}); }
  static Submodule whole(std::size_t ambient) {
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < ambient; ++i) rows.push_back(unit_vector(ambient, i));
    return span(ambient, std::move(rows));
  }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Coefficients c with v = sum c_i basis_i, if v lies in the submodule.
  std::optional<IntVector> coordinates(const IntVector& v) const {
    if (v.size() != ambient_)
      throw StructuralError("vector of length " + std::to_string(v.size()) +
                            " in ambient rank " + std::to_string(ambient_));
    IntVector rest = v;
    IntVector coeffs = zero_vector(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Integer& p = basis_[i][pivots_[i]];
      if (rest[pivots_[i]] % p != 0) return std::nullopt;
      coeffs[i] = rest[pivots_[i]] / p;
      detail::axpy(rest, coeffs[i], basis_[i]);
    }
    if (!is_zero(rest)) return std::nullopt;
    return coeffs;
  }
  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
  bool includes(const Submodule& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const IntVector& r) { return contains(r); });
  }
  /// sum c_i basis_i.
  IntVector combine(const IntVector& coeffs) const {
    if (coeffs.size() != basis_.size()) throw StructuralError("coefficient count mismatch");
    IntVector out = zero_vector(ambient_);
    for (std::size_t i = 0; i < basis_.size(); ++i) detail::axpy(out, -coeffs[i], basis_[i]);
    return out;
  }

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator<(const Submodule& a, const Submodule& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    return a.basis_ < b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVector> basis_;
  std::vector<std::size_t> pivots_;
};

inline Submodule submodule_canonicalize(std::size_t ambient, std::vector<IntVector> vectors) {
  return Submodule::span(ambient, std::move(vectors));
}

inline Submodule join_submodules(const Submodule& a, const Submodule& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw StructuralError("join_submodules: rank mismatch");
  std::vector<IntVector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Submodule::span(a.ambient_rank(), std::move(rows));
}

/// { v in Z^n : M v = 0 } for an m x n matrix M, via the HNF of [M^T | I].
inline Submodule integer_kernel(const std::vector<IntVector>& matrix, std::size_t ncols) {
  const std::size_t m = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != ncols) throw StructuralError("integer_kernel: ragged matrix");
  std::vector<IntVector> aug;
  for (std::size_t j = 0; j < ncols; ++j) {
    IntVector row = zero_vector(m + ncols);
    for (std::size_t i = 0; i < m; ++i) row[i] = matrix[i][j];
    row[m + j] = 1;
    aug.push_back(std::move(row));
  }
  std::vector<IntVector> kernel;
  for (const auto& row : hermite_normal_form(std::move(aug), m + ncols)) {
    bool zero_prefix = std::all_of(row.begin(), row.begin() + m, [](const Integer& x) { return x == 0; });
    if (zero_prefix) kernel.emplace_back(row.begin() + m, row.end());
  }
  return Submodule::span(ncols, std::move(kernel));
}

}  // namespace hallcrit
