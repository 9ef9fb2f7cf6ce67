#include "thompson/matrix.hpp"

#include <map>
#include <stdexcept>

#include "thompson/arith.hpp"

namespace thompson {

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<Rat> RatMatrix::row(std::size_t i) const {
  return std::vector<Rat>(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
}

void RatMatrix::set_row(std::size_t i, const std::vector<Rat>& r) {
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = r[j];
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not match");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rat& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b.at(k, j) != 0) c.at(i, j) += x * b.at(k, j);
      }
    }
  }
  return c;
}

namespace {

// In-place reduction to row echelon form; returns the pivot columns.
std::vector<std::size_t> echelon(std::vector<std::vector<Rat>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t RatMatrix::rank() const {
  std::vector<std::vector<Rat>> m;
  for (std::size_t i = 0; i < rows_; ++i) m.push_back(row(i));
  return echelon(m, cols_).size();
}

Rat RatMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  std::vector<std::vector<Rat>> m;
  for (std::size_t i = 0; i < rows_; ++i) m.push_back(row(i));
  Rat det = 1;
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t p = c;
    while (p < rows_ && m[p][c] == 0) ++p;
    if (p == rows_) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (m[i][c] == 0) continue;
      const Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < cols_; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

RatMatrix RatMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = at(i, j);
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("matrix is singular");
    std::swap(m[p], m[c]);
    const Rat inv = 1 / m[c][c];
    for (std::size_t j = 0; j < 2 * n; ++j) m[c][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (m[c][j] != 0) m[i][j] -= f * m[c][j];
      }
    }
  }
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = m[i][n + j];
  }
  return out;
}

bool RatMatrix::is_integral() const {
  for (const auto& x : a_) {
    if (x.get_den() != 1) return false;
  }
  return true;
}

bool RatMatrix::is_p_integral(long p) const {
  for (const auto& x : a_) {
    if (mpz_divisible_ui_p(x.get_den_mpz_t(), static_cast<unsigned long>(p))) return false;
  }
  return true;
}

bool RatMatrix::is_lower_triangular() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (at(i, j) != 0) return false;
    }
  }
  return true;
}

std::vector<Rat> RowSpace::reduce(std::vector<Rat> v, std::vector<std::pair<std::size_t, Rat>>& used) const {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Row& b = basis_[k];
    if (v[b.pivot] == 0) continue;
    const Rat f = v[b.pivot];
    for (std::size_t j = b.pivot; j < dim_; ++j) {
      if (b.v[j] != 0) v[j] -= f * b.v[j];
    }
    used.emplace_back(k, f);
  }
  return v;
}

bool RowSpace::add(const std::vector<Rat>& v, std::size_t id) {
  if (v.size() != dim_) throw std::invalid_argument("vector length mismatch");
  std::vector<std::pair<std::size_t, Rat>> used;
  std::vector<Rat> r = reduce(v, used);
  std::size_t pivot = 0;
  while (pivot < dim_ && r[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;
  const Rat inv = 1 / r[pivot];
  for (auto& x : r) x *= inv;
  // r * (1/inv) = v - sum f_k basis_k, basis_k = sum combo_k
  std::map<std::size_t, Rat> combo;
  combo[id] += inv;
  for (const auto& [k, f] : used) {
    for (const auto& [gid, c] : basis_[k].combo) combo[gid] -= inv * f * c;
  }
  Row row{std::move(r), pivot, {}};
  for (const auto& [gid, c] : combo) {
    if (c != 0) row.combo.emplace_back(gid, c);
  }
  basis_.push_back(std::move(row));
  return true;
}

bool RowSpace::express(const std::vector<Rat>& v, std::vector<std::pair<std::size_t, Rat>>& coords) const {
  if (v.size() != dim_) throw std::invalid_argument("vector length mismatch");
  std::vector<std::pair<std::size_t, Rat>> used;
  const std::vector<Rat> r = reduce(v, used);
  for (const auto& x : r) {
    if (x != 0) return false;
  }
  std::map<std::size_t, Rat> combo;
  for (const auto& [k, f] : used) {
    for (const auto& [gid, c] : basis_[k].combo) combo[gid] += f * c;
  }
  coords.clear();
  for (const auto& [gid, c] : combo) {
    if (c != 0) coords.emplace_back(gid, c);
  }
  return true;
}

namespace {

using ModMatrix = std::vector<std::vector<long>>;

ModMatrix reduce_mod(const std::vector<std::vector<Int>>& m, long p) {
  ModMatrix out;
  for (const auto& row : m) {
    std::vector<long> r;
    for (const auto& x : row) r.push_back(static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p))));
    out.push_back(std::move(r));
  }
  return out;
}

// Reduced row echelon form mod p in place; returns pivot columns.
std::vector<std::size_t> rref_mod(ModMatrix& m, long p) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t q = r;
    while (q < m.size() && m[q][c] == 0) ++q;
    if (q == m.size()) continue;
    std::swap(m[q], m[r]);
    const long inv = invmod(m[r][c], p);
    for (auto& x : m[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const long f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = mod(m[i][j] - mulmod(f, m[r][j], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_mod_p(const std::vector<std::vector<Int>>& m, long p) {
  ModMatrix a = reduce_mod(m, p);
  return rref_mod(a, p).size();
}

std::vector<std::vector<long>> left_kernel_mod_p(const std::vector<std::vector<Int>>& m, long p) {
  if (m.empty()) return {};
  const std::size_t rows = m.size(), cols = m[0].size();
  ModMatrix a = reduce_mod(m, p);
  // x m = 0  <=>  m^T x = 0
  ModMatrix t(cols, std::vector<long>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  }
  const auto pivots = rref_mod(t, p);
  std::vector<bool> is_pivot(rows, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<long>> basis;
  for (std::size_t f = 0; f < rows; ++f) {
    if (is_pivot[f]) continue;
    std::vector<long> x(rows, 0);
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = mod(-t[k][f], p);
    basis.push_back(std::move(x));
  }
  return basis;
}

bool in_span_mod_p(const std::vector<std::vector<long>>& basis, const std::vector<long>& v, long p) {
  ModMatrix a = basis;
  const std::size_t r0 = rref_mod(a, p).size();
  a.push_back(v);
  for (auto& x : a.back()) x = mod(x, p);
  return rref_mod(a, p).size() == r0;
}

}  // namespace thompson
