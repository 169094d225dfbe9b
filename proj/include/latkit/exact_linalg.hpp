#pragma once

// Exact integer / rational matrix kernel. Everything above this layer
// (Gram matrices, changes of basis, discriminant groups) is expressed in
// these types; there is no floating point here.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace latkit {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0);
  static Matrix diagonal(std::span<const T> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  void set_row(std::size_t i, std::span<const T> values);
  void append_row(std::span<const T> values);
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  Matrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(const T& factor) const;
  bool operator==(const Matrix& rhs) const = default;

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

/// Row vector times matrix.
IntVector mul(std::span<const Integer> v, const IntMatrix& m);
RatVector mul(std::span<const Rational> v, const RatMatrix& m);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
/// a * G * b^T
Integer bilinear(std::span<const Integer> a, const IntMatrix& gram, std::span<const Integer> b);
Rational bilinear(std::span<const Rational> a, const IntMatrix& gram, std::span<const Rational> b);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(std::span<const Integer> v);
/// Returns nullopt if any entry has a nontrivial denominator.
std::optional<IntMatrix> to_integer(const RatMatrix& m);
std::optional<IntVector> to_integer(std::span<const Rational> v);

/// Inertia of a symmetric matrix: counts of positive, zero and negative eigenvalues.
struct Inertia {
  std::size_t n_plus = 0;
  std::size_t n_zero = 0;
  std::size_t n_minus = 0;
  bool operator==(const Inertia&) const = default;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Elementary divisors only (the nonzero diagonal of the Smith form).
std::vector<Integer> elementary_divisors(const IntMatrix& a);

/// Exact symmetric LDL^T with symmetric pivoting and 2x2 blocks when the
/// remaining diagonal is zero.
Inertia inertia_ldlt(const RatMatrix& g);
Inertia inertia_ldlt(const IntMatrix& g);

/// Fraction-free (Bareiss) determinant.
Integer det_exact(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/// Inverse over Q; throws InputError if singular.
RatMatrix inverse(const RatMatrix& a);
/// Inverse of a unimodular integer matrix; throws InputError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Rows form a basis of {x in Z^rows(a) : x * a = 0}. The result is primitive.
IntMatrix left_kernel(const IntMatrix& a);
/// Rows form a Z-basis of the row lattice of a.
IntMatrix row_basis(const IntMatrix& a);
/// Rows form a basis of (Q-row-span of a) intersected with Z^cols.
IntMatrix saturation(const IntMatrix& a);

/// Solve x * a = b for rational x when a has full row rank. Returns nullopt
/// if b is not in the row space.
std::optional<RatVector> solve_left(const RatMatrix& a, std::span<const Rational> b);

/// Reduced row echelon form in place over Q; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a);

Integer lcm_of_denominators(std::span<const Rational> values);

/// Unimodular T such that T * gram * T^T is LLL reduced (delta = 3/4).
/// Requires a positive definite Gram matrix; throws InputError otherwise.
IntMatrix lll_reduce_gram(const IntMatrix& gram);

}  // namespace latkit
