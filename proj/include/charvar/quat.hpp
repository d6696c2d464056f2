#ifndef CHARVAR_QUAT_HPP
#define CHARVAR_QUAT_HPP

#include <charvar/error.hpp>
#include <charvar/tolerances.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace charvar {

/// Quaternion w + x i + y j + z k. Unit quaternions model SU(2); pure
/// ones (w = 0) model su(2), and the pure unit ones form S^2_i, the
/// conjugacy class of traceless elements.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr Quaternion imag() const { return {0.0, x, y, z}; }

  Quaternion normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Quaternion inverse() const {
    const double n2 = norm2();
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }

  constexpr bool operator==(const Quaternion&) const = default;
};

inline constexpr Quaternion kOne{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion kI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kK{0.0, 0.0, 0.0, 1.0};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }
constexpr Quaternion operator/(const Quaternion& q, double s) { return {q.w / s, q.x / s, q.y / s, q.z / s}; }

/// Hamilton product.
constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

/// Real part; half the trace of the corresponding SU(2) matrix.
constexpr double re(const Quaternion& q) { return q.w; }

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// Pulls a group element back onto the unit sphere once rounding drift
/// exceeds `tol.renorm`.
inline Quaternion renormalize(const Quaternion& q, const Tolerances& tol = kDefaultTolerances) {
  const double n = q.norm();
  if (std::abs(n - 1.0) > tol.renorm) return q / n;
  return q;
}

/// Ordered group product of unit quaternions with drift control.
inline Quaternion product(std::span<const Quaternion> factors, const Tolerances& tol = kDefaultTolerances) {
  Quaternion acc = kOne;
  for (const auto& f : factors) acc = renormalize(acc * f, tol);
  return acc;
}

inline Quaternion product(std::initializer_list<Quaternion> factors, const Tolerances& tol = kDefaultTolerances) {
  return product(std::span<const Quaternion>(factors.begin(), factors.size()), tol);
}

/// g q g^{-1}
inline Quaternion conjugate_by(const Quaternion& g, const Quaternion& q) { return g * q * g.inverse(); }

inline Quaternion commutator(const Quaternion& a, const Quaternion& b) {
  return a * b * a.inverse() * b.inverse();
}

inline bool is_unit(const Quaternion& q, const Tolerances& tol = kDefaultTolerances) {
  return std::abs(q.norm() - 1.0) <= tol.unit;
}

/// Membership in S^2_i: pure and unit.
inline bool is_pure_unit(const Quaternion& q, const Tolerances& tol = kDefaultTolerances) {
  return std::abs(q.w) <= tol.unit && is_unit(q, tol);
}

/// cos(angle) + sin(angle) axis, for a pure unit axis.
inline Quaternion exp_pure(double angle, const Quaternion& axis, const Tolerances& tol = kDefaultTolerances) {
  if (!is_pure_unit(axis, tol))
    throw Error(ErrorCode::invalid_argument, "exp_pure axis must be a pure unit quaternion");
  const double s = std::sin(angle);
  return renormalize({std::cos(angle), s * axis.x, s * axis.y, s * axis.z}, tol);
}

struct AxisAngle {
  double angle = 0.0;  ///< in [0, pi]
  Quaternion axis = kI;
};

/// Inverse of exp_pure. At q = +-1 the axis is fixed to i.
inline AxisAngle axis_angle(const Quaternion& q) {
  const double im = q.imag_norm();
  const double angle = std::atan2(im, q.w);
  if (im == 0.0) return {angle, kI};
  return {angle, q.imag() / im};
}

using Complex = std::complex<double>;

/// Chart i e^{x j + y k} for z = x + y i; lands in S^2_i.
inline Quaternion exp_chart(Complex z) {
  const double r = std::abs(z);
  Quaternion e = kOne;
  if (r > 0.0) {
    const double s = std::sin(r) / r;
    e = {std::cos(r), 0.0, s * z.real(), s * z.imag()};
  }
  return kI * e;
}

inline std::vector<Quaternion> exp_chart(std::span<const Complex> zs) {
  std::vector<Quaternion> out;
  out.reserve(zs.size());
  for (const auto& z : zs) out.push_back(exp_chart(z));
  return out;
}

/// Uniform point of S^2_i.
template <class Rng>
Quaternion random_pure(Rng& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    Quaternion q{0.0, normal(rng), normal(rng), normal(rng)};
    const double n = q.norm();
    if (n > 1e-8) return q / n;
  }
}

/// Haar-distributed unit quaternion.
template <class Rng>
Quaternion random_unit(Rng& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    Quaternion q{normal(rng), normal(rng), normal(rng), normal(rng)};
    const double n = q.norm();
    if (n > 1e-8) return q / n;
  }
}

// 3-vector views of pure quaternions.
using Vec3 = std::array<double, 3>;

constexpr Vec3 imag_vec(const Quaternion& q) { return {q.x, q.y, q.z}; }
constexpr Quaternion pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Unit quaternion g with g u g^{-1} = v for pure units u, v. When v is
/// (numerically) -u the rotation is by pi about an axis orthogonal to u.
inline Quaternion rotation_between(const Quaternion& u, const Quaternion& v) {
  const Vec3 a = imag_vec(u);
  const Vec3 b = imag_vec(v);
  const double c = dot(a, b);
  if (c < -1.0 + 1e-12) {
    Vec3 helper = std::abs(a[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    Vec3 axis = cross(a, helper);
    return pure(axis).normalized();
  }
  const Vec3 n = cross(a, b);
  return Quaternion{1.0 + c, n[0], n[1], n[2]}.normalized();
}

}  // namespace charvar

#endif  // CHARVAR_QUAT_HPP
