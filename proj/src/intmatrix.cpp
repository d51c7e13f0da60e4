#include "chowmod/intmatrix.hpp"

#include <stdexcept>

namespace chowmod {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  for (auto& row : rows) {
    if (row.size() != c_) throw std::invalid_argument("ragged matrix");
    for (long x : row) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (auto& x : a_)
    if (sgn(x)) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<mpz_class> IntMatrix::row(std::size_t i) const {
  return std::vector<mpz_class>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

std::vector<mpz_class> IntMatrix::column(std::size_t j) const {
  std::vector<mpz_class> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
  IntMatrix r(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const auto& x = a(i, k);
      if (!sgn(x)) continue;
      for (std::size_t j = 0; j < b.c_; ++j)
        if (sgn(b(k, j))) r(i, j) += x * b(k, j);
    }
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch in sum");
  IntMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + (-b); }

IntMatrix IntMatrix::operator-() const {
  IntMatrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < c_; ++k) std::swap(a_[i * c_ + k], a_[j * c_ + k]);
}
void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < r_; ++k) std::swap(a_[k * c_ + i], a_[k * c_ + j]);
}
void IntMatrix::add_row(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (!sgn(k)) return;
  for (std::size_t j = 0; j < c_; ++j)
    if (sgn(a_[src * c_ + j])) a_[dst * c_ + j] += k * a_[src * c_ + j];
}
void IntMatrix::add_col(std::size_t dst, std::size_t src, const mpz_class& k) {
  if (!sgn(k)) return;
  for (std::size_t i = 0; i < r_; ++i)
    if (sgn(a_[i * c_ + src])) a_[i * c_ + dst] += k * a_[i * c_ + src];
}
void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < c_; ++j) a_[i * c_ + j] = -a_[i * c_ + j];
}
void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < r_; ++i) a_[i * c_ + j] = -a_[i * c_ + j];
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < r_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < c_; ++j) s += (j ? "," : "") + (*this)(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

SmithForm smith_normal_form(const IntMatrix& m, bool track) {
  SmithForm out;
  IntMatrix S = m;
  std::size_t R = S.rows(), C = S.cols();
  IntMatrix U = track ? IntMatrix::identity(R) : IntMatrix();
  IntMatrix V = track ? IntMatrix::identity(C) : IntMatrix();
  auto row_swap = [&](std::size_t i, std::size_t j) {
    S.swap_rows(i, j);
    if (track) U.swap_rows(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    S.swap_cols(i, j);
    if (track) V.swap_cols(i, j);
  };
  auto row_add = [&](std::size_t d, std::size_t s, const mpz_class& k) {
    S.add_row(d, s, k);
    if (track) U.add_row(d, s, k);
  };
  auto col_add = [&](std::size_t d, std::size_t s, const mpz_class& k) {
    S.add_col(d, s, k);
    if (track) V.add_col(d, s, k);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    while (true) {
      // pivot: minimal nonzero |entry| in the trailing block
      std::size_t pi = R, pj = C;
      mpz_class best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (sgn(S(i, j)) && (pi == R || mpz_cmpabs(S(i, j).get_mpz_t(), best.get_mpz_t()) < 0)) {
            pi = i, pj = j;
            best = S(i, j);
            if (best == 1 || best == -1) goto found;
          }
    found:
      if (pi == R) goto done;
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (!sgn(S(i, t))) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (sgn(S(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (!sgn(S(t, j))) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (sgn(S(t, j))) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == R) break;
      row_add(t, bad, 1);
    }
    if (sgn(S(t, t)) < 0) {
      S.negate_row(t);
      if (track) U.negate_row(t);
    }
    out.diagonal.push_back(S(t, t));
  }
done:
  out.S = std::move(S);
  out.U = std::move(U);
  out.V = std::move(V);
  return out;
}

std::vector<mpz_class> invariant_factors(const IntMatrix& m) { return smith_normal_form(m, false).diagonal; }

std::size_t rank(const IntMatrix& m) { return invariant_factors(m).size(); }

mpz_class determinant(const IntMatrix& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  IntMatrix m = m0;
  std::size_t n = m.rows();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!sgn(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && !sgn(m(p, k))) ++p;
      if (p == n) return 0;
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix kernel_basis(const IntMatrix& m) {
  auto snf = smith_normal_form(m, true);
  std::size_t r = snf.rank();
  IntMatrix k(m.cols(), m.cols() - r);
  for (std::size_t j = r; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - r) = snf.V(i, j);
  return k;
}

}  // namespace chowmod
