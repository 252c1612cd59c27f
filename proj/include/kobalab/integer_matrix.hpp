#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "error.hpp"

namespace kobalab {

using IntMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

// Fraction-free elimination; exact for matrices whose minors fit in 64 bits.
inline long long bareiss_det(IntMat m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  long long sign = 1, prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        const __int128 v = static_cast<__int128>(m(i, j)) * m(k, k) - static_cast<__int128>(m(i, k)) * m(k, j);
        m(i, j) = static_cast<long long>(v / prev);
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace detail

// Smith form U A V = D, U and V unimodular, D diagonal with d_1 | d_2 | ... (all positive when det != 0).
struct SmithForm {
  IntMat U, D, V;
};

class IntegerMatrix {
 public:
  IntegerMatrix(IntMat a) : a_(std::move(a)) {
    require(a_.rows() == a_.cols() && a_.rows() >= 1, ErrorCode::InvalidArgument, "integer matrix must be square");
    det_ = detail::bareiss_det(a_);
  }
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) : IntegerMatrix(from_rows(rows)) {}

  static IntegerMatrix identity(Eigen::Index n) { return IntegerMatrix(IntMat::Identity(n, n)); }
  static IntegerMatrix scalar(Eigen::Index n, long long c) { return IntegerMatrix(IntMat(c * IntMat::Identity(n, n))); }
  static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    require(!rows.empty(), ErrorCode::InvalidArgument, "empty matrix");
    IntMat a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == rows.front().size(), ErrorCode::InvalidArgument, "ragged matrix rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return IntegerMatrix(a);
  }

  Eigen::Index n() const { return a_.rows(); }
  long long operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }
  const IntMat& entries() const { return a_; }
  long long det() const { return det_; }
  // The exponent vector of the j-th coordinate.
  std::vector<long long> row(Eigen::Index j) const {
    std::vector<long long> r(static_cast<std::size_t>(n()));
    for (Eigen::Index k = 0; k < n(); ++k) r[static_cast<std::size_t>(k)] = a_(j, k);
    return r;
  }
  Eigen::MatrixXd real() const { return a_.cast<double>(); }

  std::vector<std::vector<long long>> rows() const {
    std::vector<std::vector<long long>> out;
    for (Eigen::Index i = 0; i < n(); ++i) out.push_back(row(i));
    return out;
  }

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) { return a.a_ == b.a_; }

 private:
  static IntMat from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> v;
    for (auto r : rows) v.emplace_back(r);
    IntMat a(static_cast<Eigen::Index>(v.size()), v.empty() ? 0 : static_cast<Eigen::Index>(v.front().size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      require(v[i].size() == v.front().size(), ErrorCode::InvalidArgument, "ragged matrix rows");
      for (std::size_t j = 0; j < v[i].size(); ++j)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i][j];
    }
    return a;
  }

  IntMat a_;
  long long det_;
};

inline SmithForm smith_normal_form(const IntegerMatrix& A) {
  const Eigen::Index n = A.n();
  IntMat D = A.entries(), U = IntMat::Identity(n, n), V = IntMat::Identity(n, n);
  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    D.row(i).swap(D.row(j));
    U.row(i).swap(U.row(j));
  };
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    D.col(i).swap(D.col(j));
    V.col(i).swap(V.col(j));
  };
  for (Eigen::Index k = 0; k < n; ++k) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (k, k).
      Eigen::Index pi = -1, pj = -1;
      long long best = 0;
      for (Eigen::Index i = k; i < n; ++i)
        for (Eigen::Index j = k; j < n; ++j)
          if (D(i, j) != 0 && (pi < 0 || std::llabs(D(i, j)) < best)) best = std::llabs(D(i, j)), pi = i, pj = j;
      if (pi < 0) return {U, D, V};  // the rest is zero
      swap_rows(k, pi);
      swap_cols(k, pj);
      bool clean = true;
      for (Eigen::Index i = k + 1; i < n; ++i) {
        const long long q = D(i, k) / D(k, k);
        if (q != 0) {
          D.row(i) -= q * D.row(k);
          U.row(i) -= q * U.row(k);
        }
        if (D(i, k) != 0) clean = false;
      }
      for (Eigen::Index j = k + 1; j < n; ++j) {
        const long long q = D(k, j) / D(k, k);
        if (q != 0) {
          D.col(j) -= q * D.col(k);
          V.col(j) -= q * V.col(k);
        }
        if (D(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold a row that d_k does not divide into row k and repeat.
      Eigen::Index bad = -1;
      for (Eigen::Index i = k + 1; i < n && bad < 0; ++i)
        for (Eigen::Index j = k + 1; j < n; ++j)
          if (D(i, j) % D(k, k) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      D.row(k) += D.row(bad);
      U.row(k) += U.row(bad);
    }
    if (D(k, k) < 0) {
      D.row(k) *= -1;
      U.row(k) *= -1;
    }
  }
  return {U, D, V};
}

}  // namespace kobalab
