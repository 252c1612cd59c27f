#pragma once
#include <Eigen/Dense>
#include <array>
#include <queue>
#include <cmath>

#include "error.hpp"

namespace kobalab {

struct SimpsonOptions {
  double abs_tol = 1e-8;
  int max_depth = 40;
  int initial_panels = 8;
};

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
                    int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= max_depth) fail(ErrorCode::QuadratureDepth, "adaptive Simpson hit its depth cap");
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive Simpson to an absolute tolerance; throws QuadratureDepth instead of returning a poor value.
template <class F>
double adaptive_simpson(F&& f, double a, double b, const SimpsonOptions& opt = {}) {
  if (a == b) return 0.0;
  const int n = std::max(1, opt.initial_panels);
  const double h = (b - a) / n;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double lo = a + k * h, hi = (k + 1 == n) ? b : a + (k + 1) * h;
    const double flo = f(lo), fhi = f(hi), fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += detail::simpson_step(f, lo, hi, flo, fm, fhi, whole, opt.abs_tol / n, 0, opt.max_depth);
  }
  return total;
}

namespace detail {

// Gauss-Kronrod 7/15 nodes on [-1, 1].
inline constexpr std::array<double, 8> kXk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                              0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                              0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                              0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                              0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                              0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                              0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F& f, double a, double b, Eigen::VectorXd& kron, Eigen::VectorXd& gauss) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Eigen::VectorXd fc = f(c);
  kron = kWk[7] * fc;
  gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    Eigen::VectorXd f1 = f(c - h * kXk[j]);
    Eigen::VectorXd f2 = f(c + h * kXk[j]);
    kron += kWk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
}

struct GkPiece {
  double a, b, err;
  Eigen::VectorXd k;
  bool operator<(const GkPiece& o) const { return err < o.err; }
};

}  // namespace detail

struct GkOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_pieces = 4000;
};

// Globally adaptive Gauss-Kronrod: bisect the worst piece until the summed error meets
// max(abs_tol, rel_tol * |I|). Vector integrands use the max-norm.
template <class F>
Eigen::VectorXd integrate_vector(F&& f, double a, double b, const GkOptions& opt = {}) {
  std::priority_queue<detail::GkPiece> heap;
  Eigen::VectorXd k, g;
  detail::gk15(f, a, b, k, g);
  Eigen::VectorXd total = k;
  double err = (k - g).lpNorm<Eigen::Infinity>();
  heap.push({a, b, err, k});
  int pieces = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * total.lpNorm<Eigen::Infinity>())) {
    if (pieces >= opt.max_pieces) {
      if (err > 1e3 * std::max(opt.abs_tol, opt.rel_tol * total.lpNorm<Eigen::Infinity>()))
        fail(ErrorCode::QuadratureDepth, "Gauss-Kronrod did not converge");
      break;
    }
    detail::GkPiece worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Eigen::VectorXd k1, g1, k2, g2;
    detail::gk15(f, worst.a, m, k1, g1);
    detail::gk15(f, m, worst.b, k2, g2);
    const double e1 = (k1 - g1).lpNorm<Eigen::Infinity>(), e2 = (k2 - g2).lpNorm<Eigen::Infinity>();
    total += k1 + k2 - worst.k;
    err += e1 + e2 - worst.err;
    heap.push({worst.a, m, e1, k1});
    heap.push({m, worst.b, e2, k2});
    ++pieces;
  }
  return total;
}

template <class F>
double integrate_scalar(F&& f, double a, double b, const GkOptions& opt = {}) {
  auto g = [&](double x) {
    Eigen::VectorXd v(1);
    v[0] = f(x);
    return v;
  };
  return integrate_vector(g, a, b, opt)[0];
}

}  // namespace kobalab
