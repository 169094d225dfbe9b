#include "latkit/exact_linalg.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "latkit/errors.hpp"

namespace latkit {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw InputError("ragged matrix initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::diagonal(std::span<const T> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

template <class T>
void Matrix<T>::set_row(std::size_t i, std::span<const T> values) {
  assert(values.size() == cols_);
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
}

template <class T>
void Matrix<T>::append_row(std::span<const T> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw InputError("appended row has wrong length");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

template <class T>
Matrix<T> Matrix<T>::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

template <class T>
bool Matrix<T>::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

template <class T>
bool Matrix<T>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <class T>
void Matrix<T>::add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

template <class T>
void Matrix<T>::add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

template <class T>
void Matrix<T>::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

template <class T>
void Matrix<T>::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix product dimension mismatch");
  Matrix m(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const T& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) m(i, j) += a * rhs(k, j);
    }
  return m;
}

template <class T>
Matrix<T> Matrix<T>::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix sum dimension mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += rhs.data_[i];
  return m;
}

template <class T>
Matrix<T> Matrix<T>::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix difference dimension mismatch");
  Matrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= rhs.data_[i];
  return m;
}

template <class T>
Matrix<T> Matrix<T>::operator-() const {
  Matrix m = *this;
  for (auto& v : m.data_) v = -v;
  return m;
}

template <class T>
Matrix<T> Matrix<T>::scaled(const T& factor) const {
  Matrix m = *this;
  for (auto& v : m.data_) v *= factor;
  return m;
}

template class Matrix<Integer>;
template class Matrix<Rational>;

namespace {

template <class T>
void print_matrix(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  print_matrix(os, m);
  return os;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
  print_matrix(os, m);
  return os;
}

IntVector mul(std::span<const Integer> v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw InputError("vector-matrix dimension mismatch");
  IntVector out(m.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

RatVector mul(std::span<const Rational> v, const RatMatrix& m) {
  if (v.size() != m.rows()) throw InputError("vector-matrix dimension mismatch");
  RatVector out(m.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer bilinear(std::span<const Integer> a, const IntMatrix& gram, std::span<const Integer> b) {
  const IntVector ag = mul(a, gram);
  return dot(ag, b);
}

Rational bilinear(std::span<const Rational> a, const IntMatrix& gram, std::span<const Rational> b) {
  RatVector ag(gram.cols());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    for (std::size_t j = 0; j < gram.cols(); ++j) ag[j] += a[k] * gram(k, j);
  }
  return dot(ag, b);
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(std::span<const Integer> v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

std::optional<IntMatrix> to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

std::optional<IntVector> to_integer(std::span<const Rational> v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) return std::nullopt;
    r[i] = v[i].get_num();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < n; ++i) out.push_back(D(i, i));
  return out;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < n; ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // pivot: smallest nonzero absolute value in the trailing block
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Integer av = abs(d(i, j));
          if (!found || av < best) {
            best = av;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) break;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      const Integer pivot = d(t, t);
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / pivot;  // truncating division
        Integer neg_q = -q;
        d.add_row_multiple(i, t, neg_q);
        u.add_row_multiple(i, t, neg_q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / pivot;
        Integer neg_q = -q;
        d.add_col_multiple(j, t, neg_q);
        v.add_col_multiple(j, t, neg_q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the trailing block by the pivot
      bool divides_all = true;
      for (std::size_t i = t + 1; i < m && divides_all; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % pivot != 0) {
            d.add_row_multiple(t, i, Integer(1));
            u.add_row_multiple(t, i, Integer(1));
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return SmithForm{std::move(u), std::move(d), std::move(v)};
}

std::vector<Integer> elementary_divisors(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  std::vector<Integer> out;
  for (auto& x : snf.diagonal())
    if (x != 0) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Inertia

Inertia inertia_ldlt(const RatMatrix& g_in) {
  if (!g_in.is_symmetric()) throw InputError("inertia_ldlt: matrix is not symmetric");
  RatMatrix s = g_in;
  Inertia out;
  std::size_t sz = s.rows();
  while (sz > 0) {
    // 1x1 pivot: largest |diagonal| among nonzero
    std::size_t p = sz;
    for (std::size_t i = 0; i < sz; ++i)
      if (s(i, i) != 0 && (p == sz || abs(s(i, i)) > abs(s(p, p)))) p = i;
    if (p != sz) {
      s.swap_rows(0, p);
      s.swap_cols(0, p);
      const Rational piv = s(0, 0);
      (piv > 0 ? out.n_plus : out.n_minus)++;
      RatMatrix next(sz - 1, sz - 1);
      for (std::size_t i = 1; i < sz; ++i)
        for (std::size_t j = 1; j < sz; ++j) next(i - 1, j - 1) = s(i, j) - s(i, 0) * s(0, j) / piv;
      s = std::move(next);
      --sz;
      continue;
    }
    // zero diagonal: 2x2 block on a nonzero off-diagonal entry
    std::size_t bi = sz, bj = sz;
    for (std::size_t i = 0; i < sz && bi == sz; ++i)
      for (std::size_t j = i + 1; j < sz; ++j)
        if (s(i, j) != 0) {
          bi = i;
          bj = j;
          break;
        }
    if (bi == sz) {
      out.n_zero += sz;
      break;
    }
    s.swap_rows(0, bi);
    s.swap_cols(0, bi);
    s.swap_rows(1, bj);
    s.swap_cols(1, bj);
    // block [[0,a],[a,0]] has eigenvalues +a and -a
    const Rational a = s(0, 1);
    out.n_plus++;
    out.n_minus++;
    // inverse of [[0,a],[a,0]] is [[0,1/a],[1/a,0]]
    RatMatrix next(sz - 2, sz - 2);
    for (std::size_t i = 2; i < sz; ++i)
      for (std::size_t j = 2; j < sz; ++j) {
        // C B^{-1} C^T with C rows (s(i,0), s(i,1))
        const Rational corr = (s(i, 0) * s(1, j) + s(i, 1) * s(0, j)) / a;
        next(i - 2, j - 2) = s(i, j) - corr;
      }
    s = std::move(next);
    sz -= 2;
  }
  return out;
}

Inertia inertia_ldlt(const IntMatrix& g) { return inertia_ldlt(to_rational(g)); }

// ---------------------------------------------------------------------------

Integer det_exact(const IntMatrix& a_in) {
  if (!a_in.is_square()) throw InputError("det_exact: matrix is not square");
  const std::size_t n = a_in.rows();
  if (n == 0) return 1;
  IntMatrix a = a_in;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = -a(i, c);
      a.add_row_multiple(i, r, f);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RatMatrix inverse(const RatMatrix& a) {
  if (!a.is_square()) throw InputError("inverse: matrix is not square");
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw InputError("inverse: matrix is singular");
  return aug.submatrix(0, n, n, n);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  auto inv = to_integer(inverse(to_rational(a)));
  if (!inv) throw InputError("unimodular_inverse: matrix is not unimodular");
  return *inv;
}

IntMatrix left_kernel(const IntMatrix& a) {
  // U a V = D;  x a = 0  <=>  (x U^{-1}) D = 0
  auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  return snf.U.submatrix(r, 0, a.rows() - r, a.rows());
}

IntMatrix row_basis(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  IntMatrix vinv = unimodular_inverse(snf.V);
  IntMatrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = snf.D(i, i) * vinv(i, j);
  return out;
}

IntMatrix saturation(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  IntMatrix vinv = unimodular_inverse(snf.V);
  return vinv.submatrix(0, 0, r, a.cols());
}

std::optional<RatVector> solve_left(const RatMatrix& a, std::span<const Rational> b) {
  // x a = b  <=>  a^T x^T = b^T ; eliminate on the augmented transpose
  const std::size_t k = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != n) throw InputError("solve_left: dimension mismatch");
  RatMatrix aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = a(j, i);
    aug(i, k) = b[i];
  }
  auto piv = rref(aug);
  RatVector x(k);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == k) return std::nullopt;  // inconsistent
    x[piv[r]] = aug(r, k);
  }
  // verify (handles rank-deficient a)
  RatVector check = mul(std::span<const Rational>(x), a);
  for (std::size_t i = 0; i < n; ++i)
    if (check[i] != b[i]) return std::nullopt;
  return x;
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) {
    Integer d = v.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

namespace {

// Gram-Schmidt coefficients mu and squared lengths B of the basis with Gram g.
void gram_schmidt(const IntMatrix& g, RatMatrix& mu, std::vector<Rational>& b) {
  const std::size_t n = g.rows();
  mu = RatMatrix(n, n);
  b.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * b[k];
      mu(i, j) = s / b[j];
    }
    Rational s = g(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * b[k];
    b[i] = s;
    if (b[i] <= 0) throw InputError("LLL: Gram matrix is not positive definite");
  }
}

Integer nearest_integer(const Rational& x) {
  Integer r;
  const Integer num = 2 * x.get_num() + x.get_den();
  const Integer den = 2 * x.get_den();
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

}  // namespace

IntMatrix lll_reduce_gram(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw InputError("LLL: Gram matrix is not symmetric");
  const std::size_t n = gram.rows();
  IntMatrix t = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && gram(0, 0) <= 0) throw InputError("LLL: Gram matrix is not positive definite");
    return t;
  }
  IntMatrix g = gram;
  RatMatrix mu;
  std::vector<Rational> b;
  gram_schmidt(g, mu, b);
  const Rational delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      const Integer r = nearest_integer(mu(k, j));
      if (r == 0) continue;
      t.add_row_multiple(k, j, -r);
      g = t * gram * t.transpose();
      gram_schmidt(g, mu, b);
    }
    if (b[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * b[k - 1]) {
      ++k;
    } else {
      t.swap_rows(k, k - 1);
      g = t * gram * t.transpose();
      gram_schmidt(g, mu, b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return t;
}

}  // namespace latkit
