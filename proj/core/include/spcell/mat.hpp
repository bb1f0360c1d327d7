#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spcell/dual.hpp"
#include "spcell/errors.hpp"
#include "spcell/rat.hpp"

namespace spcell {

/// Dense row-major matrix over an exact scalar (Rat or DualRat).
/// Indices are 0-based throughout the library; functions that implement
/// 1-based formulas convert at their boundary.
template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), e_(r * c, T(0)) {}
  Mat(std::size_t r, std::size_t c, std::vector<T> entries)
      : rows_(r), cols_(c), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("Mat: entry count mismatch");
  }

  [[nodiscard]] static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) {
    check(i, j);
    return e_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    check(i, j);
    return e_[i * cols_ + j];
  }

  [[nodiscard]] bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  [[nodiscard]] bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat& operator+=(const Mat& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  Mat& operator*=(const T& s) {
    for (auto& x : e_) x *= s;
    return *this;
  }

  [[nodiscard]] Mat operator-() const {
    Mat m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
  }

  [[nodiscard]] Mat transpose() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  [[nodiscard]] Mat block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const {
    if (i0 + h > rows_ || j0 + w > cols_) throw std::out_of_range("Mat::block");
    Mat m(h, w);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < w; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
  }

  void set_block(std::size_t i0, std::size_t j0, const Mat& b) {
    if (i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_) throw std::out_of_range("Mat::set_block");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  /// Submatrix given by explicit 0-based row and column index lists.
  [[nodiscard]] Mat submatrix(const std::vector<std::size_t>& ri,
                              const std::vector<std::size_t>& ci) const {
    Mat m(ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i) {
      if (ri[i] >= rows_) throw std::out_of_range("Mat::submatrix row");
      for (std::size_t j = 0; j < ci.size(); ++j) {
        if (ci[j] >= cols_) throw std::out_of_range("Mat::submatrix col");
        m(i, j) = (*this)(ri[i], ci[j]);
      }
    }
    return m;
  }

  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  [[nodiscard]] bool is_upper_unitriangular() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j <= i && j < cols_; ++j) {
        const T want = (i == j) ? T(1) : T(0);
        if ((*this)(i, j) != want) return false;
      }
    return true;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : e_)
      if (x != T(0)) return false;
    return true;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("Mat: index out of range");
  }
  void require_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<T> e_;
};

template <class T>
[[nodiscard]] Mat<T> operator+(Mat<T> a, const Mat<T>& b) {
  return a += b;
}
template <class T>
[[nodiscard]] Mat<T> operator-(Mat<T> a, const Mat<T>& b) {
  return a -= b;
}

template <class T>
[[nodiscard]] Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Mat: product shape mismatch");
  Mat<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
[[nodiscard]] Mat<T> operator*(const T& s, Mat<T> m) {
  return m *= s;
}

using MatQ = Mat<Rat>;
using MatD = Mat<DualRat>;

/// Fraction-free Bareiss determinant. Pivots are chosen with invertible
/// leading part so the algorithm also runs over dual numbers at generic
/// points; exact division is guaranteed by the Bareiss identity.
template <class T>
[[nodiscard]] T det(const Mat<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("det: non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  Mat<T> a = m;
  T sign(1);
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!is_unit(a(k, k))) {
      std::size_t p = k + 1;
      while (p < n && !is_unit(a(p, k))) ++p;
      if (p == n) {
        // No invertible pivot. Exact-zero column tail means det 0; a nilpotent
        // tail (dual numbers only) falls back to cofactor expansion.
        bool all_zero = true;
        for (std::size_t i = k; i < n; ++i)
          if (a(i, k) != T(0)) all_zero = false;
        if (all_zero) return T(0);
        T acc(0);
        Mat<T> tail = a.block(k, k, n - k, n - k);
        T s(1);
        for (std::size_t i = 0; i < tail.rows(); ++i) {
          if (tail(i, 0) != T(0)) {
            std::vector<std::size_t> ri, ci;
            for (std::size_t q = 0; q < tail.rows(); ++q)
              if (q != i) ri.push_back(q);
            for (std::size_t q = 1; q < tail.cols(); ++q) ci.push_back(q);
            acc += s * tail(i, 0) * det(tail.submatrix(ri, ci));
          }
          s = -s;
        }
        // Undo Bareiss scaling: rows k..n-1 are scaled copies; entries of the
        // current tail equal prev^(n-k-1-...) pattern, but at this point each
        // entry of the tail is the (k+1)x(k+1) minor determinant, so the true
        // determinant of m is acc / prev^(n-k-1).
        T denom(1);
        for (std::size_t q = 0; q + k + 1 < n; ++q) denom *= prev;
        return sign * acc / denom;
      }
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Row rank over the fraction field, by Gaussian elimination.
template <class T>
[[nodiscard]] std::size_t rank(Mat<T> a) {
  std::size_t rk = 0;
  for (std::size_t col = 0; col < a.cols() && rk < a.rows(); ++col) {
    std::size_t p = rk;
    while (p < a.rows() && a(p, col) == T(0)) ++p;
    if (p == a.rows()) continue;
    if (p != rk)
      for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(rk, j), a(p, j));
    for (std::size_t i = rk + 1; i < a.rows(); ++i) {
      if (a(i, col) == T(0)) continue;
      const T c = a(i, col) / a(rk, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= c * a(rk, j);
    }
    ++rk;
  }
  return rk;
}

/// Cofactor-expansion determinant, the independent small-n oracle.
template <class T>
[[nodiscard]] T det_cofactor(const Mat<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("det_cofactor: non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  T acc(0);
  T s(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, 0) != T(0)) {
      std::vector<std::size_t> ri, ci;
      for (std::size_t q = 0; q < n; ++q)
        if (q != i) ri.push_back(q);
      for (std::size_t q = 1; q < n; ++q) ci.push_back(q);
      acc += s * m(i, 0) * det_cofactor(m.submatrix(ri, ci));
    }
    s = -s;
  }
  return acc;
}

/// Gauss-Jordan inverse. Throws SingularMatrixError when no invertible pivot
/// exists in some column.
template <class T>
[[nodiscard]] Mat<T> inverse(const Mat<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: non-square matrix");
  const std::size_t n = m.rows();
  Mat<T> a = m;
  Mat<T> inv = Mat<T>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && !is_unit(a(p, k))) ++p;
    if (p == n) throw SingularMatrixError();
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    const T piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const T f = a(i, k);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Inverse of an upper or lower unitriangular matrix; division-free, so it is
/// valid over any exact coefficient ring including dual numbers.
template <class T>
[[nodiscard]] Mat<T> unitriangular_inverse(const Mat<T>& u) {
  if (!u.is_square()) throw std::invalid_argument("unitriangular_inverse: non-square");
  const std::size_t n = u.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (u(i, i) != T(1)) throw std::invalid_argument("unitriangular_inverse: diagonal not 1");
  // N = u - I is nilpotent; inverse = sum_{k<n} (-N)^k.
  Mat<T> nmat = u;
  for (std::size_t i = 0; i < n; ++i) nmat(i, i) = T(0);
  Mat<T> acc = Mat<T>::identity(n);
  Mat<T> pw = Mat<T>::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    pw = pw * nmat;
    if (pw.is_zero()) break;
    if (k % 2 == 1)
      acc -= pw;
    else
      acc += pw;
  }
  return acc;
}

/// Adjugate via signed cofactors: adjugate(M) * M = det(M) * I, valid for
/// singular M as well.
template <class T>
[[nodiscard]] Mat<T> adjugate(const Mat<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("adjugate: non-square matrix");
  const std::size_t n = m.rows();
  Mat<T> adj(n, n);
  if (n == 0) return adj;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> ri, ci;
      for (std::size_t q = 0; q < n; ++q)
        if (q != i) ri.push_back(q);
      for (std::size_t q = 0; q < n; ++q)
        if (q != j) ci.push_back(q);
      T c = det(m.submatrix(ri, ci));
      if ((i + j) % 2 == 1) c = -c;
      adj(j, i) = c;
    }
  return adj;
}

/// The four nested/cross minor families attached to an r x r matrix Y, all
/// 1-based in (i, j) to mirror the source formulas:
///   lower_nested  Y_i      rows r-i+1..r, cols 1..i
///   upper_nested  Y^(i)    rows 1..i, cols r-i+1..r
///   cross         Y_{i,j}  rows r-j+1..r with r-i+1 omitted, cols 1..j-1 (i <= j)
///   cross_prime   Y'_{ij}  rows i+1..r, cols 1..r-i+1 with r-j+1 omitted (i <= j)
/// Empty selections have determinant 1.
enum class MinorKind { lower_nested, upper_nested, cross, cross_prime };

template <class T>
[[nodiscard]] Mat<T> structured_minor_block(MinorKind kind, const Mat<T>& y, std::size_t i,
                                            std::size_t j = 0) {
  if (!y.is_square()) throw std::invalid_argument("structured_minor: non-square matrix");
  const std::size_t r = y.rows();
  std::vector<std::size_t> ri, ci;
  switch (kind) {
    case MinorKind::lower_nested:
      if (i > r) throw std::out_of_range("structured_minor: Y_i with i > r");
      for (std::size_t q = r - i; q < r; ++q) ri.push_back(q);
      for (std::size_t q = 0; q < i; ++q) ci.push_back(q);
      break;
    case MinorKind::upper_nested:
      if (i > r) throw std::out_of_range("structured_minor: Y^(i) with i > r");
      for (std::size_t q = 0; q < i; ++q) ri.push_back(q);
      for (std::size_t q = r - i; q < r; ++q) ci.push_back(q);
      break;
    case MinorKind::cross:
      if (i < 1 || j < i || j > r) throw std::out_of_range("structured_minor: Y_{i,j} range");
      for (std::size_t q = r - j; q < r; ++q)
        if (q != r - i) ri.push_back(q);
      for (std::size_t q = 0; q + 1 < j; ++q) ci.push_back(q);
      break;
    case MinorKind::cross_prime:
      if (i < 1 || j < i || j > r) throw std::out_of_range("structured_minor: Y'_{ij} range");
      for (std::size_t q = i; q < r; ++q) ri.push_back(q);
      for (std::size_t q = 0; q < r - i + 1; ++q)
        if (q != r - j) ci.push_back(q);
      break;
  }
  return y.submatrix(ri, ci);
}

template <class T>
[[nodiscard]] T structured_minor(MinorKind kind, const Mat<T>& y, std::size_t i,
                                 std::size_t j = 0) {
  return det(structured_minor_block(kind, y, i, j));
}

/// Exact Jacobian of f at `point` via one dual-perturbed evaluation per input
/// coordinate. f must be evaluable on DualRat vectors and have fixed output
/// dimension.
[[nodiscard]] inline MatQ jacobian_exact(
    const std::function<std::vector<DualRat>(const std::vector<DualRat>&)>& f,
    const std::vector<Rat>& point) {
  const std::size_t din = point.size();
  std::vector<DualRat> x(din);
  for (std::size_t j = 0; j < din; ++j) x[j] = DualRat(point[j], Rat(0));
  std::vector<DualRat> probe = f(x);
  const std::size_t dout = probe.size();
  MatQ jac(dout, din);
  for (std::size_t j = 0; j < din; ++j) {
    x[j].b = Rat(1);
    std::vector<DualRat> val = f(x);
    if (val.size() != dout) throw std::invalid_argument("jacobian_exact: output dim varies");
    for (std::size_t i = 0; i < dout; ++i) jac(i, j) = val[i].b;
    x[j].b = Rat(0);
  }
  return jac;
}

}  // namespace spcell
