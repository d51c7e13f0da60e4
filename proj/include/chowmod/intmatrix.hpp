#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace chowmod {

// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const;
  IntMatrix transpose() const;
  std::vector<mpz_class> row(std::size_t i) const;
  std::vector<mpz_class> column(std::size_t j) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  IntMatrix operator-() const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  // elementary operations
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void add_row(std::size_t dst, std::size_t src, const mpz_class& k);  // row dst += k row src
  void add_col(std::size_t dst, std::size_t src, const mpz_class& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  std::string to_string() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<mpz_class> a_;
};

struct SmithForm {
  IntMatrix U, S, V;  // U * M * V = S
  std::vector<mpz_class> diagonal;  // nonzero invariant factors, s1 | s2 | ...
  std::size_t rank() const { return diagonal.size(); }
};

// Pivoting by minimal absolute value. With track = false, U and V are left empty.
SmithForm smith_normal_form(const IntMatrix& m, bool track = true);
// nonzero invariant factors only
std::vector<mpz_class> invariant_factors(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);
// Q-rank via fraction-free elimination; determinant of a square matrix.
mpz_class determinant(const IntMatrix& m);

// Saturated basis (columns) of the integer kernel.
IntMatrix kernel_basis(const IntMatrix& m);

}  // namespace chowmod
