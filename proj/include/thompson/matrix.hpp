#pragma once

#include <vector>

#include "thompson/numerics.hpp"

namespace thompson {

// Dense exact rational matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<Rat> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<Rat>& r);

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::size_t rank() const;
  // Throws std::domain_error when singular.
  RatMatrix inverse() const;
  Rat determinant() const;
  bool is_integral() const;
  // No denominator divisible by p.
  bool is_p_integral(long p) const;
  bool is_lower_triangular() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Row space of a fixed set of rational vectors, kept in echelon form together
// with the change of basis, so membership tests also return coordinates.
class RowSpace {
 public:
  explicit RowSpace(std::size_t dim) : dim_(dim) {}
  std::size_t rank() const { return basis_.size(); }
  // Adds v as generator number `id`; returns false (and leaves the space
  // unchanged) when v is already in the span.
  bool add(const std::vector<Rat>& v, std::size_t id);
  // Coordinates of v with respect to the accepted generators (by id), or
  // nullopt when v is outside the span.
  bool express(const std::vector<Rat>& v, std::vector<std::pair<std::size_t, Rat>>& coords) const;

 private:
  struct Row {
    std::vector<Rat> v;
    std::size_t pivot;
    std::vector<std::pair<std::size_t, Rat>> combo;  // v = sum coeff * generator(id)
  };
  // Reduces v against the basis; returns the residual and the combination
  // that was subtracted.
  std::vector<Rat> reduce(std::vector<Rat> v, std::vector<std::pair<std::size_t, Rat>>& used) const;

  std::size_t dim_;
  std::vector<Row> basis_;
};

// Integer matrices modulo a prime.
std::size_t rank_mod_p(const std::vector<std::vector<Int>>& m, long p);
// Basis of {x : x m = 0 (mod p)}, entries in [0, p).
std::vector<std::vector<long>> left_kernel_mod_p(const std::vector<std::vector<Int>>& m, long p);
// Whether v lies in the span of `basis` modulo p.
bool in_span_mod_p(const std::vector<std::vector<long>>& basis, const std::vector<long>& v, long p);

}  // namespace thompson
