#ifndef CHARVAR_MORSE_HPP
#define CHARVAR_MORSE_HPP

#include <charvar/exact.hpp>
#include <charvar/quat.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace charvar {

// Local analysis of g(q_2..q_{2n-1}) = Re(i q_2 ... q_{2n-1}) at the abelian
// point (i, ..., i), in the chart z -> i e^{x j + y k} on each coordinate.

namespace detail {

inline void check_chart_size(int n, std::size_t size) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "chart needs n >= 2");
  if (size != static_cast<std::size_t>(2 * n - 2))
    throw Error(ErrorCode::invalid_argument, "chart needs 2n-2 coordinates");
}

inline int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace detail

inline double eval_chart_g(int n, std::span<const Complex> zs) {
  detail::check_chart_size(n, zs.size());
  Quaternion acc = kI;
  for (const auto& z : zs) acc = acc * exp_chart(z);
  return re(acc);
}

/// (-1)^{n-1} sum_{l<m} (-1)^{l+m} (y_l x_m - x_l y_m), indices from 1:
/// the quadratic part of eval_chart_g.
inline double chart_quadratic_form(int n, std::span<const Complex> zs) {
  detail::check_chart_size(n, zs.size());
  double s = 0.0;
  for (std::size_t l = 0; l < zs.size(); ++l)
    for (std::size_t m = l + 1; m < zs.size(); ++m)
      s += detail::sign_pow(static_cast<int>(l + m)) *
           (zs[l].imag() * zs[m].real() - zs[l].real() * zs[m].imag());
  return detail::sign_pow(n - 1) * s;
}

/// Circle action z -> e^{2 theta i} z; g is constant on its orbits.
inline std::vector<Complex> s1_orbit(std::span<const Complex> zs, double theta) {
  const Complex u = std::polar(1.0, 2.0 * theta);
  std::vector<Complex> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(u * z);
  return out;
}

/// Coordinate-wise complex conjugation; g changes sign.
inline std::vector<Complex> tau(std::span<const Complex> zs) {
  std::vector<Complex> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(std::conj(z));
  return out;
}

/// A_{ij} = 0 on the diagonal, (-1)^{i+j} above it, (-1)^{i+j+1} below it.
inline IntMatrix matrix_A(int n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "matrix_A needs n >= 2");
  const std::size_t m = static_cast<std::size_t>(2 * n - 2);
  IntMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const int s = detail::sign_pow(static_cast<int>(i + j));
      if (i < j) a(i, j) = s;
      else if (i > j) a(i, j) = -s;
    }
  return a;
}

/// [[0, A], [A^T, 0]] scaled by `sign`, in the ordering (x_1.., y_1..).
inline Eigen::MatrixXd hessian_block(const IntMatrix& a, int sign) {
  const auto m = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const double v = sign * a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).convert_to<double>();
      h(i, m + j) = v;
      h(m + j, i) = v;
    }
  return h;
}

struct HessianReport {
  int n = 0;
  IntMatrix A;
  BigInt det_A;
  std::optional<BigInt> pfaffian;
  bool det_odd = false;
  bool pfaffian_squared_is_det = false;
  bool b_squared_identity_mod2 = false;

  // Numeric part; unset until certify_hessian_numeric runs.
  double step = 0.0;
  int eig_positive = 0;
  int eig_negative = 0;
  double fd_max_error = 0.0;             ///< against (-1)^n [[0,A],[A^T,0]]
  double fd_error_stated_sign = 0.0;     ///< against (-1)^{n-1} [[0,A],[A^T,0]]
  double fd_max_diagonal = 0.0;

  std::string link;
  std::string quotient_link;
  std::string bd_link;

  int dimension() const { return 2 * (2 * n - 2); }

  /// det odd, Pf^2 = det, B^2 = I; numeric clauses use fd_tol.
  bool exact_ok() const { return det_odd && pfaffian_squared_is_det && b_squared_identity_mod2; }
  bool numeric_ok(double fd_tol) const {
    return eig_positive == 2 * n - 2 && eig_negative == 2 * n - 2 && fd_max_error <= fd_tol;
  }
};

/// Sign relating the chart Hessian to [[0,A],[A^T,0]] as observed.
inline int hessian_sign(int n) { return detail::sign_pow(n); }

/// Sign (-1)^{n-1} attached to the block form in the quadratic-form statement.
inline int stated_hessian_sign(int n) { return detail::sign_pow(n - 1); }

inline void fill_link_descriptors(HessianReport& r) {
  const std::string s = "S^" + std::to_string(2 * r.n - 3);
  r.link = s + " x " + s;
  r.quotient_link = "(" + r.link + ")/S^1";
  r.bd_link = "RP^" + std::to_string(2 * r.n - 3);
}

/// Exact data from an explicit A; matrix_A(n) by default.
inline HessianReport certify_hessian_combinatorics(int n, std::optional<IntMatrix> a_override = std::nullopt) {
  HessianReport r;
  r.n = n;
  r.A = a_override ? std::move(*a_override) : matrix_A(n);
  r.det_A = bareiss_determinant(r.A);
  r.det_odd = r.det_A % 2 != 0;
  if (is_antisymmetric(r.A)) {
    r.pfaffian = pfaffian(r.A);
    r.pfaffian_squared_is_det = (*r.pfaffian) * (*r.pfaffian) == r.det_A;
  }
  const Mod2Matrix b = reduce_mod2(r.A);
  r.b_squared_identity_mod2 = is_identity(multiply_mod2(b, b));
  fill_link_descriptors(r);
  return r;
}

/// Central-difference Hessian of eval_chart_g at 0, ordering (x_1.., y_1..).
inline Eigen::MatrixXd fd_hessian(int n, double step) {
  const int m = 2 * n - 2;
  const int d = 2 * m;
  auto eval = [&](int a, double da, int b, double db) {
    std::vector<Complex> zs(static_cast<std::size_t>(m));
    auto bump = [&](int idx, double by) {
      auto& z = zs[static_cast<std::size_t>(idx % m)];
      z += idx < m ? Complex(by, 0.0) : Complex(0.0, by);
    };
    bump(a, da);
    bump(b, db);
    return eval_chart_g(n, zs);
  };
  Eigen::MatrixXd h(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const double v = (eval(a, step, b, step) - eval(a, step, b, -step) - eval(a, -step, b, step) +
                        eval(a, -step, b, -step)) /
                       (4.0 * step * step);
      h(a, b) = v;
      h(b, a) = v;
    }
  return h;
}

/// Eigenvalues above/below +-rel * max|eigenvalue|.
inline std::pair<int, int> eigen_counts(const Eigen::MatrixXd& h, double rel = 1e-6) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > rel * scale) ++pos;
    else if (ev(i) < -rel * scale) ++neg;
  }
  return {pos, neg};
}

inline void certify_hessian_numeric(HessianReport& r, double step) {
  if (!(step >= 1e-6 && step <= 1e-2)) throw Error(ErrorCode::invalid_argument, "step must lie in [1e-6, 1e-2]");
  const Eigen::MatrixXd h = fd_hessian(r.n, step);
  r.step = step;
  r.fd_max_error = (h - hessian_block(r.A, hessian_sign(r.n))).cwiseAbs().maxCoeff();
  r.fd_error_stated_sign = (h - hessian_block(r.A, stated_hessian_sign(r.n))).cwiseAbs().maxCoeff();
  r.fd_max_diagonal = h.diagonal().cwiseAbs().maxCoeff();
  std::tie(r.eig_positive, r.eig_negative) = eigen_counts(h);
}

inline HessianReport certify_hessian(int n, double step = 1e-4) {
  HessianReport r = certify_hessian_combinatorics(n);
  certify_hessian_numeric(r, step);
  return r;
}

// ---------------------------------------------------------------------------
// Link sampling

struct LinkPoint {
  std::vector<Complex> zs;
  bool is_real = false;  ///< member of the binary dihedral sub-link
};

/// x^T A y for z = x + y i; zero exactly on the Hessian quadric.
inline double quadric_residual(const IntMatrix& a, std::span<const Complex> zs) {
  double s = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = 0; j < zs.size(); ++j)
      if (a(i, j) != 0) s += a(i, j).convert_to<double>() * zs[i].real() * zs[j].imag();
  return s;
}

/// Rotates the first coordinate of maximal modulus onto the nonnegative
/// real axis by the circle action.
inline std::vector<Complex> gauge_fix(std::span<const Complex> zs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < zs.size(); ++i)
    if (std::abs(zs[i]) > std::abs(zs[best])) best = i;
  std::vector<Complex> out(zs.begin(), zs.end());
  const double r = std::abs(zs[best]);
  if (r == 0.0) return out;
  const Complex u = std::conj(zs[best]) / r;
  for (auto& z : out) z *= u;
  out[best] = Complex(r, 0.0);
  return out;
}

inline bool all_real(std::span<const Complex> zs, double tol = 1e-12) {
  for (const auto& z : zs)
    if (std::abs(z.imag()) > tol) return false;
  return true;
}

/// Unit points on the quadric x^T A y = 0: x uniform on its sphere, y a
/// Gaussian projected onto the hyperplane (A^T x)^perp, then gauge fixed.
template <class Rng>
LinkPoint sample_link_point(int n, const IntMatrix& a, Rng& rng) {
  const std::size_t m = static_cast<std::size_t>(2 * n - 2);
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(static_cast<Eigen::Index>(m)), y(static_cast<Eigen::Index>(m));
  Eigen::MatrixXd ad(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      ad(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j).convert_to<double>();
  for (;;) {
    for (auto& v : x) v = normal(rng);
    for (auto& v : y) v = normal(rng);
    if (x.norm() < 1e-8) continue;
    x.normalize();
    const Eigen::VectorXd c = ad.transpose() * x;
    y -= (c.dot(y) / c.squaredNorm()) * c;
    const double total = std::sqrt(x.squaredNorm() + y.squaredNorm());
    std::vector<Complex> zs(m);
    for (std::size_t i = 0; i < m; ++i)
      zs[i] = Complex(x(static_cast<Eigen::Index>(i)), y(static_cast<Eigen::Index>(i))) / total;
    LinkPoint p{gauge_fix(zs), false};
    p.is_real = all_real(p.zs);
    return p;
  }
}

template <class Rng>
std::vector<LinkPoint> sample_link(int n, int count, Rng& rng) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "sample_link needs n >= 2");
  if (count < 1) throw Error(ErrorCode::invalid_argument, "sample_link needs count >= 1");
  const IntMatrix a = matrix_A(n);
  std::vector<LinkPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) out.push_back(sample_link_point(n, a, rng));
  return out;
}

/// Newton projection of radius * u onto eval_chart_g = 0 at n = 3, along the
/// numerical gradient. nullopt if the residual does not reach `target`.
inline std::optional<std::vector<Complex>> refine_to_variety(int n, std::span<const Complex> u, double radius,
                                                             double target = 1e-10, int max_iter = 50) {
  if (n != 3) throw Error(ErrorCode::invalid_argument, "exact link refinement is offered at n = 3 only");
  detail::check_chart_size(n, u.size());
  std::vector<Complex> zs;
  for (const auto& z : u) zs.push_back(radius * z);
  const std::size_t m = zs.size();
  const double h = 1e-7;
  for (int it = 0; it < max_iter; ++it) {
    const double g = eval_chart_g(n, zs);
    if (std::abs(g) <= target) return zs;
    std::vector<Complex> grad(m);
    double g2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        auto plus = zs, minus = zs;
        plus[i] += h * dir;
        minus[i] -= h * dir;
        const double d = (eval_chart_g(n, plus) - eval_chart_g(n, minus)) / (2.0 * h);
        grad[i] += d * dir;
        g2 += d * d;
      }
    }
    if (g2 == 0.0) return std::nullopt;
    for (std::size_t i = 0; i < m; ++i) zs[i] -= (g / g2) * grad[i];
  }
  if (std::abs(eval_chart_g(n, zs)) <= target) return zs;
  return std::nullopt;
}

}  // namespace charvar

#endif  // CHARVAR_MORSE_HPP
