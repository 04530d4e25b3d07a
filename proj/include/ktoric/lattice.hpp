#pragma once

// Exact integer linear algebra over arbitrary-precision integers.

#include "ktoric/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace ktoric {

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);
  static IntMatrix from_columns(std::span<const IntVector> columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(std::span<const Integer> v) const;
  bool operator==(const IntMatrix& rhs) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  bool is_diagonal() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

/// U·M·V = D with U, V unimodular and D in Smith normal form.
/// `v_inverse` is V⁻¹, tracked alongside for quotient-lattice reductions.
struct SNFResult {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix v_inverse;

  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

SNFResult smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form: pivots positive and increasing in column,
/// entries above a pivot reduced into [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Saturated Z-basis of {v : M·v = 0}, in Hermite-reduced form.
std::vector<IntVector> kernel_basis(const IntMatrix& m);

/// True iff the gcd of the entries is 1. Throws ZeroVector on the zero vector.
bool is_primitive(std::span<const Integer> v);

/// Z^r modulo the sublattice spanned by a set of relation vectors.
class QuotientLattice {
public:
  QuotientLattice(std::size_t ambient_rank, std::span<const IntVector> relations);

  std::size_t ambient_rank() const noexcept { return rank_; }
  const IntMatrix& relations() const noexcept { return relations_; }
  const std::vector<Integer>& torsion_orders() const noexcept { return torsion_; }
  std::size_t free_rank() const noexcept { return free_rank_; }

  /// Canonical coset representative, expressed in ambient coordinates.
  IntVector normal_form(std::span<const Integer> v) const;
  bool equivalent(std::span<const Integer> a, std::span<const Integer> b) const;

  bool operator==(const QuotientLattice& rhs) const {
    return rank_ == rhs.rank_ && relations_ == rhs.relations_;
  }

private:
  std::size_t rank_;
  IntMatrix relations_;
  SNFResult snf_;
  std::vector<Integer> torsion_;
  std::size_t free_rank_ = 0;
};

}  // namespace ktoric
