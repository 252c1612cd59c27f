#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "error.hpp"

namespace kobalab {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Point of C^N. Thin value wrapper so that overloads stay unambiguous.
class ComplexPoint {
 public:
  ComplexPoint() = default;
  explicit ComplexPoint(Eigen::Index n) : v_(ComplexVector::Zero(n)) {}
  ComplexPoint(std::initializer_list<Complex> c) : v_(static_cast<Eigen::Index>(c.size())) {
    Eigen::Index i = 0;
    for (const auto& x : c) v_[i++] = x;
  }
  explicit ComplexPoint(ComplexVector v) : v_(std::move(v)) {}
  explicit ComplexPoint(const std::vector<Complex>& c) : v_(static_cast<Eigen::Index>(c.size())) {
    for (std::size_t i = 0; i < c.size(); ++i) v_[static_cast<Eigen::Index>(i)] = c[i];
  }

  static ComplexPoint real(const RealVector& x) { return ComplexPoint(ComplexVector(x.cast<Complex>())); }
  static ComplexPoint from_parts(const RealVector& re, const RealVector& im) {
    ComplexVector v(re.size());
    for (Eigen::Index i = 0; i < re.size(); ++i) v[i] = Complex(re[i], im[i]);
    return ComplexPoint(v);
  }

  Eigen::Index size() const { return v_.size(); }
  Complex& operator[](Eigen::Index i) { return v_[i]; }
  const Complex& operator[](Eigen::Index i) const { return v_[i]; }
  const ComplexVector& vec() const { return v_; }
  ComplexVector& vec() { return v_; }

  RealVector re() const { return v_.real(); }
  RealVector im() const { return v_.imag(); }

  bool finite() const {
    for (Eigen::Index i = 0; i < v_.size(); ++i)
      if (!std::isfinite(v_[i].real()) || !std::isfinite(v_[i].imag())) return false;
    return true;
  }

  friend bool operator==(const ComplexPoint& a, const ComplexPoint& b) {
    return a.size() == b.size() && a.v_ == b.v_;
  }
  friend ComplexPoint operator+(const ComplexPoint& a, const ComplexPoint& b) { return ComplexPoint(ComplexVector(a.v_ + b.v_)); }
  friend ComplexPoint operator-(const ComplexPoint& a, const ComplexPoint& b) { return ComplexPoint(ComplexVector(a.v_ - b.v_)); }
  friend ComplexPoint operator*(Complex s, const ComplexPoint& a) { return ComplexPoint(ComplexVector(s * a.v_)); }
  friend ComplexPoint operator*(double s, const ComplexPoint& a) { return ComplexPoint(ComplexVector(s * a.v_)); }

 private:
  ComplexVector v_;
};

inline void check_point(const ComplexPoint& z, const char* who = "point") {
  require(z.size() >= 1, ErrorCode::InvalidArgument, std::string(who) + " must have N >= 1");
  require(z.finite(), ErrorCode::InvalidArgument, std::string(who) + " has non-finite coordinates");
}

inline void check_same_dim(const ComplexPoint& z, Eigen::Index n, const char* who = "point") {
  require(z.size() == n, ErrorCode::DimensionMismatch,
          std::string(who) + " has dimension " + std::to_string(z.size()) + ", expected " + std::to_string(n));
}

inline double norm_sq(const ComplexPoint& z) { return z.vec().squaredNorm(); }
inline double norm(const ComplexPoint& z) { return z.vec().norm(); }
inline double euclid(const ComplexPoint& a, const ComplexPoint& b) { return (a.vec() - b.vec()).norm(); }
inline double max_abs(const ComplexPoint& a, const ComplexPoint& b) { return (a.vec() - b.vec()).cwiseAbs().maxCoeff(); }

// <z, w> = sum z_j conj(w_j)
inline Complex inner(const ComplexPoint& z, const ComplexPoint& w) { return w.vec().dot(z.vec()); }

inline ComplexPoint e1(Eigen::Index n) {
  ComplexPoint p(n);
  p[0] = 1.0;
  return p;
}

// Lexicographic order on (re, im) of the coordinates; used to canonicalise symmetric calls.
inline bool lex_less(const ComplexPoint& a, const ComplexPoint& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

inline RealVector real_vector(std::initializer_list<double> c) {
  RealVector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v[i++] = x;
  return v;
}

}  // namespace kobalab
