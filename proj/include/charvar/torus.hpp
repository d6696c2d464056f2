#ifndef CHARVAR_TORUS_HPP
#define CHARVAR_TORUS_HPP

#include <charvar/locus.hpp>
#include <charvar/rep.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace charvar {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Binary dihedral locus as a torus quotient

/// Angles theta_2..theta_{2n-1} attached to x_2..x_{2n-1}.
struct TorusCoords {
  int n = 2;
  std::vector<double> thetas;
};

inline double reduce_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

/// Distance on the circle R / 2 pi Z.
inline double angle_distance(double a, double b) {
  const double d = reduce_angle(a - b);
  return std::min(d, kTwoPi - d);
}

/// Coordinates reduced mod 2 pi and replaced by the lexicographically
/// smaller of theta and -theta.
inline TorusCoords canonical(TorusCoords c) {
  constexpr double kSnap = 1e-12;
  auto snap = [](double a) {
    a = reduce_angle(a);
    return kTwoPi - a < kSnap ? 0.0 : a;
  };
  std::vector<double> pos;
  std::vector<double> neg;
  for (double t : c.thetas) {
    pos.push_back(snap(t));
    neg.push_back(snap(-t));
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (std::abs(pos[i] - neg[i]) <= kSnap) continue;
    if (neg[i] < pos[i]) pos = std::move(neg);
    break;
  }
  c.thetas = std::move(pos);
  return c;
}

/// x_1 = i, x_l = e^{theta_l k} i for 1 < l < 2n, and
/// x_{2n} = e^{(n pi - theta_2 + theta_3 - ... + theta_{2n-1}) k} i.
inline PuncturedSphereRep bd_from_torus(const TorusCoords& coords, const Tolerances& tol = kDefaultTolerances) {
  const int n = coords.n;
  if (n < 1 || coords.thetas.size() != static_cast<std::size_t>(2 * n - 2))
    throw Error(ErrorCode::invalid_argument, "torus coordinates need 2n-2 angles");
  auto coset = [](double theta) { return exp_pure(theta, kK) * kI; };
  std::vector<Quaternion> m{kI};
  double last = n * std::numbers::pi;
  for (std::size_t l = 0; l < coords.thetas.size(); ++l) {
    const double t = coords.thetas[l];
    m.push_back(coset(t));
    // theta_2 enters with a minus sign, theta_3 with plus, ...
    last += (l % 2 == 0) ? -t : t;
  }
  m.push_back(coset(last));
  return make_rep(std::move(m), tol);
}

/// Inverse of bd_from_torus on the quotient by theta -> -theta.
///
/// Conjugates rho so that x_1 = i and the common orthogonal axis becomes k;
/// every meridian then reads cos(t) i + sin(t) j = e^{t k} i and t is read
/// off with atan2. Flipping the orthogonal axis is the torus involution, so
/// the result is canonicalized.
inline TorusCoords torus_from_bd(const PuncturedSphereRep& rep, const Tolerances& tol = kDefaultTolerances) {
  const LocusLabel label = classify_locus(rep, tol);
  if (label.locus == Locus::generic || rep.k() % 2 != 0)
    throw Error(ErrorCode::not_binary_dihedral, "representation does not lie in the binary dihedral locus");
  const int n = rep.k() / 2;

  const Quaternion x1 = rep[0];
  Quaternion axis = orthogonal_axis(rep);
  // Remove any component along x1 left over from rounding.
  axis = (axis - dot(imag_vec(axis), imag_vec(x1)) * x1).normalized();

  // g x1 g^{-1} = i, then rotate about i so that g axis g^{-1} = k.
  const Quaternion g1 = rotation_between(x1, kI);
  const Quaternion moved = conjugate_by(g1, axis);
  const double phi = std::atan2(moved.y, moved.z);  // angle from k towards j
  const Quaternion g = exp_pure(phi / 2.0, kI) * g1;

  TorusCoords coords{n, {}};
  for (int l = 1; l + 1 < rep.k(); ++l) {
    const Quaternion q = conjugate_by(g, rep[l]);
    coords.thetas.push_back(std::atan2(q.y, q.x));
  }
  return canonical(std::move(coords));
}

}  // namespace charvar

#endif  // CHARVAR_TORUS_HPP
