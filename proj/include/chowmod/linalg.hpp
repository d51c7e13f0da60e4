#pragma once

#include <optional>
#include <vector>

#include "chowmod/field.hpp"

namespace chowmod {

// Incremental echelon basis over a field, remembering how each row combines the inserted vectors.
template <class F>
class Echelon {
 public:
  using Elem = typename F::Elem;
  using Vec = std::vector<Elem>;

  Echelon(std::shared_ptr<const F> f, std::size_t dim) : f_(std::move(f)), dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return count_; }

  // Expresses v in terms of the inserted vectors, if possible.
  std::optional<Vec> express(const Vec& v) const {
    auto [rest, comb] = reduce(v);
    for (auto& x : rest)
      if (!f_->is_zero(x)) return std::nullopt;
    // v = sum comb_i * inserted_i  (reduce tracks v - sum(...) = rest)
    return comb;
  }

  // Inserts v; returns false (and keeps state) if v is dependent.
  bool insert(const Vec& v) {
    auto [rest, comb] = reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && f_->is_zero(rest[piv])) ++piv;
    if (piv == dim_) return false;
    // new row = v - sum comb_i ins_i, i.e. combination (-comb, +1 at the new slot)
    Vec combo(count_ + 1, f_->zero());
    for (std::size_t i = 0; i < count_; ++i) combo[i] = f_->neg(comb[i]);
    combo[count_] = f_->one();
    Elem li = f_->inv(rest[piv]);
    for (auto& x : rest) x = f_->mul(x, li);
    for (auto& x : combo) x = f_->mul(x, li);
    for (auto& r : combos_) r.resize(count_ + 1, f_->zero());
    rows_.push_back(std::move(rest));
    combos_.push_back(std::move(combo));
    pivots_.push_back(piv);
    ++count_;
    return true;
  }

 private:
  std::pair<Vec, Vec> reduce(Vec v) const {
    Vec comb(count_, f_->zero());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Elem c = v[pivots_[k]];
      if (f_->is_zero(c)) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] = f_->sub(v[j], f_->mul(c, rows_[k][j]));
      for (std::size_t j = 0; j < combos_[k].size(); ++j) comb[j] = f_->add(comb[j], f_->mul(c, combos_[k][j]));
    }
    return {v, comb};
  }

  std::shared_ptr<const F> f_;
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<Vec> rows_, combos_;
  std::vector<std::size_t> pivots_;
};

// Determinant by Gaussian elimination.
template <class F>
typename F::Elem determinant(const F& f, std::vector<std::vector<typename F::Elem>> a) {
  std::size_t n = a.size();
  auto det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && f.is_zero(a[piv][c])) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = f.neg(det);
    }
    det = f.mul(det, a[c][c]);
    auto li = f.inv(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (f.is_zero(a[r][c])) continue;
      auto m = f.mul(a[r][c], li);
      for (std::size_t j = c; j < n; ++j) a[r][j] = f.sub(a[r][j], f.mul(m, a[c][j]));
    }
  }
  return det;
}

}  // namespace chowmod
