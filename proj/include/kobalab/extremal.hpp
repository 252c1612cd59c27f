#pragma once
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "numerics.hpp"
#include "point.hpp"
#include "quadrature.hpp"

// Extremal discs for tubes over the unit ball of R^m.
//
// A disc f: D -> T_B with f(0) = x (real) has Re f = Poisson integral of boundary values q(theta) in the
// closed ball. Hitting y + i s at lambda = r is the moment problem
//   E q = x,  E[P_r q] = y,  E[Q_r q] = s,
// with P_r, Q_r the Poisson and conjugate Poisson kernels at r. At the extremal radius a dual vector
// (a, b, c) aligns with q: q = (a + b P_r + c Q_r) / |a + b P_r + c Q_r|. We solve that square system by
// damped Newton and certify a lower bound with the dual functional.

namespace kobalab::detail {

struct ExtremalSolution {
  bool converged = false;
  double K = 0.0;         // artanh(r) at the solution
  double lower = 0.0;     // certified by the dual functional
  double residual = 0.0;  // moment mismatch at the solution
  Eigen::VectorXd a, b, c;
};

class BallTubeExtremal {
 public:
  static constexpr GkOptions kQuad{1e-14, 1e-13, 4000};

  // x, y, s in R^m, |x|, |y| < 1. s = 0 selects the real (symmetric) system without c.
  BallTubeExtremal(Eigen::VectorXd x, Eigen::VectorXd y, Eigen::VectorXd s)
      : x_(std::move(x)), y_(std::move(y)), s_(std::move(s)), m_(x_.size()), complex_(s_.norm() > 0) {}

  std::optional<ExtremalSolution> solve(const Eigen::VectorXd& dir, double K_lo, double K_hi) const {
    const std::vector<double> shifts = {0.05, -0.05, 0.2, -0.2, 0.5, 0.0};
    const std::vector<double> ks = {K_lo, 0.5 * (K_lo + K_hi), K_hi};
    for (double k0 : ks) {
      for (double sh : shifts) {
        try {
          auto sol = newton(initial_guess(dir, k0, sh));
          if (sol) return certify(*sol);
        } catch (const Error&) {
          // quadrature trouble at this start; try the next one
        }
      }
    }
    return std::nullopt;
  }

  // Dual functional; positive means no disc reaches (y, s) at radius tanh(K).
  double dual_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double K) const {
    const double r = std::tanh(K);
    auto f = [&](double th) {
      double P, Q;
      kernels(r, th, P, Q);
      return (a + P * b + Q * c).norm() / (2.0 * kPi);
    };
    const double e = integrate_scalar(f, -kPi, 0.0, kQuad) + integrate_scalar(f, 0.0, kPi, kQuad);
    return a.dot(x_) + b.dot(y_) + c.dot(s_) - e;
  }

 private:
  static void kernels(double r, double th, double& P, double& Q) {
    const double den = 1.0 - 2.0 * r * std::cos(th) + r * r;
    P = (1.0 - r) * (1.0 + r) / den;
    Q = 2.0 * r * std::sin(th) / den;
  }

  Eigen::Index nvars() const { return (complex_ ? 3 : 2) * m_ + 1; }

  void unpack(const Eigen::VectorXd& z, Eigen::VectorXd& a, Eigen::VectorXd& b, Eigen::VectorXd& c, double& K) const {
    a = z.segment(0, m_);
    b = z.segment(m_, m_);
    c = complex_ ? Eigen::VectorXd(z.segment(2 * m_, m_)) : Eigen::VectorXd::Zero(m_);
    K = z[nvars() - 1];
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& z) const {
    Eigen::VectorXd a, b, c;
    double K;
    unpack(z, a, b, c, K);
    const double r = std::tanh(K);
    const int blocks = complex_ ? 3 : 2;
    auto f = [&](double th) {
      double P, Q;
      kernels(r, th, P, Q);
      Eigen::VectorXd w = a + P * b + Q * c;
      const double nw = w.norm();
      Eigen::VectorXd q = nw > 0 ? Eigen::VectorXd(w / nw) : Eigen::VectorXd::Zero(m_);
      Eigen::VectorXd out(blocks * m_);
      out.segment(0, m_) = q;
      out.segment(m_, m_) = P * q;
      if (complex_) out.segment(2 * m_, m_) = Q * q;
      return Eigen::VectorXd(out / (2.0 * kPi));
    };
    Eigen::VectorXd mom = integrate_vector(f, -kPi, 0.0, kQuad) + integrate_vector(f, 0.0, kPi, kQuad);
    Eigen::VectorXd R(nvars());
    R.segment(0, m_) = mom.segment(0, m_) - x_;
    R.segment(m_, m_) = mom.segment(m_, m_) - y_;
    if (complex_) R.segment(2 * m_, m_) = mom.segment(2 * m_, m_) - s_;
    R[nvars() - 1] = a.squaredNorm() + b.squaredNorm() + c.squaredNorm() - 1.0;
    return R;
  }

  // Start from the one-dimensional extremal along dir, nudged off the line.
  Eigen::VectorXd initial_guess(const Eigen::VectorXd& dir, double K0, double shift) const {
    const double x0 = dir.dot(x_), y0 = dir.dot(y_);
    const double th0 = 0.5 * kPi * (1.0 + x0);
    const double r = std::tanh(std::max(K0, 1e-6));
    const double p0 = (1.0 - r) * (1.0 + r) / (1.0 - 2.0 * r * std::cos(th0) + r * r);
    Eigen::VectorXd b = dir, a = -p0 * dir;
    if (y0 < x0) {
      a = -a;
      b = -b;
    }
    // A unit vector orthogonal to dir for the nudge.
    Eigen::VectorXd perp = Eigen::VectorXd::Zero(m_);
    for (Eigen::Index j = 0; j < m_ && perp.norm() < 1e-8; ++j) {
      perp = Eigen::VectorXd::Unit(m_, j) - dir[j] * dir;
    }
    if (perp.norm() > 1e-8) perp.normalize();
    a += shift * perp;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(nvars());
    z.segment(0, m_) = a;
    z.segment(m_, m_) = b;
    z.head(nvars() - 1) /= z.head(nvars() - 1).norm();
    z[nvars() - 1] = std::max(K0, 1e-3);
    return z;
  }

  std::optional<ExtremalSolution> newton(Eigen::VectorXd z) const {
    const Eigen::Index n = nvars();
    Eigen::VectorXd R = residual(z);
    for (int it = 0; it < 40; ++it) {
      if (R.norm() < 1e-12) break;
      Eigen::MatrixXd J(n, n);
      for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::VectorXd zz = z;
        const double h = 1e-7 * std::max(1.0, std::abs(z[k]));
        zz[k] += h;
        J.col(k) = (residual(zz) - R) / h;
      }
      const Eigen::VectorXd dz = J.colPivHouseholderQr().solve(-R);
      if (!dz.allFinite()) return std::nullopt;
      double al = 1.0;
      bool moved = false;
      while (al > 1e-4) {
        Eigen::VectorXd zn = z + al * dz;
        if (zn[n - 1] > 0 && zn[n - 1] < 40.0) {
          Eigen::VectorXd Rn = residual(zn);
          if (Rn.norm() < (1.0 - 1e-4 * al) * R.norm()) {
            z = zn;
            R = Rn;
            moved = true;
            break;
          }
        }
        al *= 0.5;
      }
      if (!moved) break;
    }
    if (!(R.norm() < 1e-11)) return std::nullopt;
    ExtremalSolution s;
    double K;
    unpack(z, s.a, s.b, s.c, K);
    s.K = K;
    s.residual = R.head(n - 1).norm();
    s.converged = true;
    return s;
  }

  ExtremalSolution certify(ExtremalSolution s) const {
    s.lower = 0.0;
    for (double delta : {1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5}) {
      if (s.K - delta <= 0) break;
      try {
        if (dual_gap(s.a, s.b, s.c, s.K - delta) > 1e-12) {
          s.lower = s.K - delta;
          break;
        }
      } catch (const Error&) {
        break;
      }
    }
    return s;
  }

  Eigen::VectorXd x_, y_, s_;
  Eigen::Index m_;
  bool complex_;
};

}  // namespace kobalab::detail
