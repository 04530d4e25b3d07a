#include "ktoric/lattice.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace ktoric {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("DimensionMismatch", "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("DimensionMismatch", "row length differs from column count");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> columns, std::size_t rows) {
  return from_rows(columns, rows).transpose();
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("DimensionMismatch", "matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(std::span<const Integer> v) const {
  if (cols_ != v.size()) throw Error("DimensionMismatch", "matrix-vector shape mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("DimensionMismatch", "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t SNFResult::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(d.rows(), d.cols());
  while (r < n && d(r, r) != 0) ++r;
  return r;
}

std::vector<Integer> SNFResult::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Row and column operations on D, mirrored onto the transforms.
struct SnfWorkspace {
  IntMatrix d, u, v, vinv;

  void row_add(std::size_t dst, std::size_t src, const Integer& f) {
    d.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& f) {
    d.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
    vinv.add_row_multiple(src, dst, -f);
  }
  void row_swap(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    vinv.swap_rows(a, b);
  }
  void row_negate(std::size_t r) {
    d.negate_row(r);
    u.negate_row(r);
  }
};

std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const IntMatrix& d, std::size_t from) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = from; i < d.rows(); ++i)
    for (std::size_t j = from; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {i, j};
    }
  return best;
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
  SnfWorkspace w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
                 IntMatrix::identity(m.cols())};
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    auto pivot = min_abs_entry(w.d, t);
    if (!pivot) break;
    w.row_swap(t, pivot->first);
    w.col_swap(t, pivot->second);
    for (;;) {
      bool residue = false;
      for (std::size_t i = t + 1; i < w.d.rows(); ++i) {
        if (w.d(i, t) == 0) continue;
        Integer q = w.d(i, t) / w.d(t, t);
        w.row_add(i, t, -q);
        if (w.d(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < w.d.cols(); ++j) {
        if (w.d(t, j) == 0) continue;
        Integer q = w.d(t, j) / w.d(t, t);
        w.col_add(j, t, -q);
        if (w.d(t, j) != 0) residue = true;
      }
      if (residue) {
        // A remainder smaller than the pivot survives; promote it and repeat.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < w.d.rows(); ++i)
          if (w.d(i, t) != 0 && abs(w.d(i, t)) < abs(w.d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < w.d.cols(); ++j)
          if (w.d(t, j) != 0 && abs(w.d(t, j)) < abs(w.d(bi, bj))) bi = t, bj = j;
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      // Row and column t are clear; enforce the divisibility chain.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < w.d.rows() && !offender; ++i)
        for (std::size_t j = t + 1; j < w.d.cols(); ++j)
          if (!mpz_divisible_p(w.d(i, j).get_mpz_t(), w.d(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      w.row_add(t, *offender, 1);
    }
    if (w.d(t, t) < 0) w.row_negate(t);
  }
  return SNFResult{std::move(w.u), std::move(w.d), std::move(w.v), std::move(w.vinv)};
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < a.rows(); ++i)
        if (a(i, c) != 0 && (!best || abs(a(i, c)) < abs(a(*best, c)))) best = i;
      if (!best) break;
      a.swap_rows(r, *best);
      bool clear = true;
      for (std::size_t i = r + 1; i < a.rows(); ++i) {
        if (a(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
        a.add_row_multiple(i, r, -q);
        if (a(i, c) != 0) clear = false;
      }
      if (clear) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      a.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  SNFResult snf = smith_normal_form(m);
  const std::size_t rank = snf.rank();
  std::vector<IntVector> raw;
  for (std::size_t j = rank; j < m.cols(); ++j) raw.push_back(snf.v.column(j));
  if (raw.empty()) return {};
  IntMatrix h = hermite_normal_form(IntMatrix::from_rows(raw, m.cols()));
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(h.row(i));
  return out;
}

bool is_primitive(std::span<const Integer> v) {
  if (is_zero(v)) throw Error("ZeroVector", "primitivity is undefined for the zero vector");
  return content(v) == 1;
}

QuotientLattice::QuotientLattice(std::size_t ambient_rank, std::span<const IntVector> relations)
    : rank_(ambient_rank), relations_(IntMatrix::from_rows(relations, ambient_rank)),
      snf_(smith_normal_form(relations_)) {
  const std::size_t r = snf_.rank();
  for (std::size_t i = 0; i < r; ++i)
    if (snf_.d(i, i) > 1) torsion_.push_back(snf_.d(i, i));
  free_rank_ = rank_ - r;
}

IntVector QuotientLattice::normal_form(std::span<const Integer> v) const {
  if (v.size() != rank_) throw Error("DimensionMismatch", "vector rank differs from the lattice rank");
  // Coordinates adapted to the relation sublattice: w = v·V.
  IntVector w(rank_);
  for (std::size_t j = 0; j < rank_; ++j)
    for (std::size_t i = 0; i < rank_; ++i) w[j] += v[i] * snf_.v(i, j);
  const std::size_t r = snf_.rank();
  for (std::size_t j = 0; j < r; ++j) w[j] = mod_floor(w[j], snf_.d(j, j));
  IntVector out(rank_);
  for (std::size_t j = 0; j < rank_; ++j)
    for (std::size_t i = 0; i < rank_; ++i) out[j] += w[i] * snf_.v_inverse(i, j);
  return out;
}

bool QuotientLattice::equivalent(std::span<const Integer> a, std::span<const Integer> b) const {
  return normal_form(a) == normal_form(b);
}

}  // namespace ktoric
