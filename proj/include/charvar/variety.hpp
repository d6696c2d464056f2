#ifndef CHARVAR_VARIETY_HPP
#define CHARVAR_VARIETY_HPP

#include <charvar/locus.hpp>
#include <charvar/random.hpp>
#include <charvar/rep.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace charvar {

/// f(q_1..q_{k-1}) = Re(q_1 ... q_{k-1}); its zero set modulo conjugation
/// is R(S^2, k).
inline double eval_f(std::span<const Quaternion> partial) {
  Quaternion acc = kOne;
  for (const auto& q : partial) acc = acc * q;
  return re(acc);
}

/// Exact sampler of f^{-1}(0): q_1..q_{k-2} uniform on S^2_i; q_{k-1} uniform
/// on the great circle orthogonal to Im(q_1...q_{k-2}) (all of S^2_i when
/// that product is +-1); x_k closes the relation.
template <class Rng>
PuncturedSphereRep sample_point(int k, Rng& rng, const Tolerances& tol = kDefaultTolerances) {
  if (k < 3) throw Error(ErrorCode::invalid_argument, "sample_point needs k >= 3");
  std::vector<Quaternion> partial;
  partial.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k - 2; ++i) partial.push_back(random_pure(rng));
  const Quaternion w = product(partial, tol);
  const double wn = w.imag_norm();
  if (wn < 1e-12) {
    partial.push_back(random_pure(rng));
  } else {
    // Orthonormal pair spanning the plane orthogonal to Im(w).
    const Vec3 axis = imag_vec(w.imag() / wn);
    const Vec3 helper = std::abs(axis[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    const Quaternion e1 = pure(cross(axis, helper)).normalized();
    const Quaternion e2 = pure(cross(axis, imag_vec(e1))).normalized();
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double t = angle(rng);
    partial.push_back((std::cos(t) * e1 + std::sin(t) * e2).normalized());
  }
  return complete_rep(std::move(partial), tol);
}

// ---------------------------------------------------------------------------
// Submersion certificate

/// Which meridian the certificate deforms.
enum class DeformedSlot { next, current };

/// For a tuple in f^{-1}(0) off the abelian family: an index l with
/// q_l != +-q_{l+1}, the axis R of x q_l = e^{alpha R} (or q_{l+1} x =
/// e^{alpha R}), the analytic derivative -sin(alpha) along the great-circle
/// deformation of the other slot toward R, and the numerical rank of df.
struct SubmersionCertificate {
  int index = 0;  ///< zero-based l
  DeformedSlot slot = DeformedSlot::next;
  Quaternion axis = kI;
  double alpha = 0.0;
  double derivative = 0.0;
  int jacobian_rank = 0;

  /// zero-based position of the meridian being moved
  int deformed_position() const { return slot == DeformedSlot::next ? index + 1 : index; }
};

namespace detail {

/// Orthonormal basis of the tangent plane of S^2_i at q.
inline std::array<Quaternion, 2> tangent_basis(const Quaternion& q) {
  const Vec3 a = imag_vec(q);
  const Vec3 helper = std::abs(a[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Quaternion e1 = pure(cross(a, helper)).normalized();
  const Quaternion e2 = pure(cross(a, imag_vec(e1))).normalized();
  return {e1, e2};
}

/// Gradient of f in tangent coordinates, 1 x 2(k-1).
inline Eigen::RowVectorXd f_gradient(std::span<const Quaternion> partial) {
  const auto m = static_cast<Eigen::Index>(partial.size());
  Eigen::RowVectorXd grad(2 * m);
  for (Eigen::Index p = 0; p < m; ++p) {
    const auto basis = tangent_basis(partial[static_cast<std::size_t>(p)]);
    for (int b = 0; b < 2; ++b) {
      Quaternion acc = kOne;
      for (Eigen::Index i = 0; i < m; ++i) acc = acc * (i == p ? basis[static_cast<std::size_t>(b)] : partial[static_cast<std::size_t>(i)]);
      grad(2 * p + b) = re(acc);
    }
  }
  return grad;
}

/// Product of `count` consecutive entries starting at `from`, wrapping around.
inline Quaternion cyclic_product(std::span<const Quaternion> partial, std::size_t from, std::size_t count) {
  Quaternion acc = kOne;
  for (std::size_t i = 0; i < count; ++i) acc = acc * partial[(from + i) % partial.size()];
  return acc;
}

}  // namespace detail

/// The moved tuple: position `cert.deformed_position()` replaced by
/// cos(t) q + sin(t) R = q e^{t q^{-1} R}.
inline std::vector<Quaternion> apply_deformation(std::span<const Quaternion> partial,
                                                 const SubmersionCertificate& cert, double t) {
  std::vector<Quaternion> out(partial.begin(), partial.end());
  auto& q = out[static_cast<std::size_t>(cert.deformed_position())];
  q = (std::cos(t) * q + std::sin(t) * cert.axis).normalized();
  return out;
}

/// Adjacent meridians closer than this to +-each other count as equal.
inline constexpr double kAbelianSeparation = 1e-6;

inline SubmersionCertificate submersion_certificate(std::span<const Quaternion> partial,
                                                    const Tolerances& tol = kDefaultTolerances) {
  const std::size_t m = partial.size();
  if (m < 2) throw Error(ErrorCode::invalid_argument, "submersion_certificate needs at least two meridians");
  const double fval = eval_f(partial);
  if (std::abs(fval) > tol.rel)
    throw Error(ErrorCode::constraint_violated, "tuple is not in f^{-1}(0)", -1, std::abs(fval));

  // Pick the adjacent pair furthest from +-parallel.
  std::size_t best = m;
  double best_sep = 0.0;
  for (std::size_t l = 0; l + 1 < m; ++l) {
    const double sep = std::min(distance(partial[l], partial[l + 1]), distance(partial[l], -partial[l + 1]));
    if (sep > best_sep) {
      best_sep = sep;
      best = l;
    }
  }
  if (best == m || best_sep <= kAbelianSeparation)
    throw Error(ErrorCode::abelian_input, "all adjacent meridians agree up to sign");

  const std::size_t l = best;
  // x = q_{l+2} ... q_{k-1} q_1 ... q_{l-1}: the cyclic word skipping q_l, q_{l+1}.
  const Quaternion x = detail::cyclic_product(partial, (l + 2) % m, m - 2);
  const Quaternion a = x * partial[l];      // x q_l, deform q_{l+1}
  const Quaternion b = partial[l + 1] * x;  // q_{l+1} x, deform q_l
  const bool use_next = a.imag_norm() >= b.imag_norm();
  const Quaternion e = use_next ? a : b;
  if (e.imag_norm() <= tol.comm)
    throw Error(ErrorCode::internal_inconsistency, "both deformation branches degenerate");

  const AxisAngle aa = axis_angle(e.normalized());
  SubmersionCertificate cert;
  cert.index = static_cast<int>(l);
  cert.slot = use_next ? DeformedSlot::next : DeformedSlot::current;
  cert.axis = aa.axis;
  cert.alpha = aa.angle;
  cert.derivative = -std::sin(aa.angle);
  cert.jacobian_rank = numerical_rank(detail::f_gradient(partial), tol.rank);
  return cert;
}

/// Central difference of f along apply_deformation.
inline double deformation_derivative_fd(std::span<const Quaternion> partial, const SubmersionCertificate& cert,
                                        double step = 1e-5) {
  const auto plus = apply_deformation(partial, cert, step);
  const auto minus = apply_deformation(partial, cert, -step);
  return (eval_f(plus) - eval_f(minus)) / (2.0 * step);
}

/// Rank of the infinitesimal conjugation action: rows are the directions
/// [xi, q] = 2 xi x q for xi in {i, j, k}, stacked over all q (3 x 3m).
inline int conjugation_action_rank(std::span<const Quaternion> partial, const Tolerances& tol = kDefaultTolerances) {
  const auto m = static_cast<Eigen::Index>(partial.size());
  Eigen::MatrixXd d(3, 3 * m);
  const std::array<Quaternion, 3> gens{kI, kJ, kK};
  for (int g = 0; g < 3; ++g)
    for (Eigen::Index p = 0; p < m; ++p) {
      const Quaternion& q = partial[static_cast<std::size_t>(p)];
      const Quaternion v = gens[static_cast<std::size_t>(g)] * q - q * gens[static_cast<std::size_t>(g)];
      d(g, 3 * p) = v.x;
      d(g, 3 * p + 1) = v.y;
      d(g, 3 * p + 2) = v.z;
    }
  return numerical_rank(d, tol.rank);
}

/// Dimension of R(S^2,k) near a non-abelian point, from numerical ranks:
/// 2(k-1) - rank(df) - rank(conjugation action).
inline int local_dimension(const PuncturedSphereRep& rep, const Tolerances& tol = kDefaultTolerances) {
  if (classify_locus(rep, tol).locus == Locus::abelian)
    throw Error(ErrorCode::abelian_input, "local_dimension is undefined at abelian points");
  const std::span<const Quaternion> partial(rep.meridians().data(), static_cast<std::size_t>(rep.k() - 1));
  const int df_rank = numerical_rank(detail::f_gradient(partial), tol.rank);
  const int orbit_rank = conjugation_action_rank(partial, tol);
  return 2 * (rep.k() - 1) - df_rank - orbit_rank;
}

// ---------------------------------------------------------------------------
// The reduced map g(q_2..q_{2n-1}) = Re(i q_2 ... q_{2n-1})

inline double eval_g(std::span<const Quaternion> partial) {
  Quaternion acc = kI;
  for (const auto& q : partial) acc = acc * q;
  return re(acc);
}

/// Coordinate-wise sign flip; preserves g^{-1}(0) and permutes the fixed
/// points (+-i, ..., +-i).
inline std::vector<Quaternion> sign_transport(std::span<const Quaternion> partial, std::span<const int> signs,
                                              const Tolerances& tol = kDefaultTolerances) {
  if (partial.size() != signs.size())
    throw Error(ErrorCode::invalid_argument, "one sign per coordinate required");
  for (int s : signs)
    if (s != 1 && s != -1) throw Error(ErrorCode::invalid_argument, "signs must be +-1");
  const double g = eval_g(partial);
  if (std::abs(g) > tol.rel) throw Error(ErrorCode::constraint_violated, "tuple is not in g^{-1}(0)", -1, std::abs(g));
  std::vector<Quaternion> out;
  out.reserve(partial.size());
  for (std::size_t i = 0; i < partial.size(); ++i) out.push_back(signs[i] == 1 ? partial[i] : -partial[i]);
  return out;
}

/// The 2^{2n-2} abelian representations x_1 = i, x_l = e_l i (1 < l < 2n),
/// with x_{2n} fixed by the relation. Enumerated by sign_transport of
/// (i, ..., i).
inline std::vector<PuncturedSphereRep> abelian_points(int n, const Tolerances& tol = kDefaultTolerances) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "abelian_points needs n >= 1");
  const int m = 2 * n - 2;
  const std::vector<Quaternion> base(static_cast<std::size_t>(m), kI);
  std::vector<PuncturedSphereRep> out;
  out.reserve(std::size_t{1} << m);
  std::vector<int> signs(static_cast<std::size_t>(m));
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    for (int b = 0; b < m; ++b) signs[static_cast<std::size_t>(b)] = (mask >> b) & 1u ? -1 : 1;
    std::vector<Quaternion> partial{kI};
    const auto moved = sign_transport(base, signs, tol);
    partial.insert(partial.end(), moved.begin(), moved.end());
    out.push_back(complete_rep(std::move(partial), tol));
  }
  return out;
}

/// Number of distinct classes among `reps` under fingerprint equality.
template <class Rep>
std::size_t count_distinct_classes(const std::vector<Rep>& reps, double tol = kDefaultTolerances.fingerprint) {
  std::vector<Fingerprint> seen;
  for (const auto& r : reps) {
    Fingerprint fp = fingerprint(r);
    bool found = false;
    for (const auto& s : seen)
      if (fingerprint_equal(s, fp, tol)) {
        found = true;
        break;
      }
    if (!found) seen.push_back(std::move(fp));
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// Conjugator search

namespace detail {

inline Eigen::VectorXd conjugation_residuals(const Quaternion& g, std::span<const Quaternion> a,
                                             std::span<const Quaternion> b) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(4 * a.size()));
  const Quaternion gi = g.inverse();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Quaternion d = g * a[i] * gi - b[i];
    const auto o = static_cast<Eigen::Index>(4 * i);
    r(o) = d.w;
    r(o + 1) = d.x;
    r(o + 2) = d.y;
    r(o + 3) = d.z;
  }
  return r;
}

inline double max_conjugation_residual(const Quaternion& g, std::span<const Quaternion> a,
                                       std::span<const Quaternion> b) {
  double worst = 0.0;
  const Quaternion gi = g.inverse();
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, distance(g * a[i] * gi, b[i]));
  return worst;
}

/// Gauss-Newton on the unit sphere, parametrized locally by g e^{v},
/// with a central-difference Jacobian and step halving.
inline Quaternion refine_conjugator(Quaternion g, std::span<const Quaternion> a, std::span<const Quaternion> b) {
  constexpr double kStep = 1e-6;
  const std::array<Quaternion, 3> dirs{kI, kJ, kK};
  auto moved = [](const Quaternion& base, const Eigen::Vector3d& v) {
    const double len = v.norm();
    if (len == 0.0) return base;
    return (base * exp_pure(len, Quaternion{0.0, v(0) / len, v(1) / len, v(2) / len})).normalized();
  };
  Eigen::VectorXd r = conjugation_residuals(g, a, b);
  for (int iter = 0; iter < 100 && r.norm() > 1e-15; ++iter) {
    Eigen::MatrixXd jac(r.size(), 3);
    for (int c = 0; c < 3; ++c) {
      const Quaternion gp = g * exp_pure(kStep, dirs[static_cast<std::size_t>(c)]);
      const Quaternion gm = g * exp_pure(-kStep, dirs[static_cast<std::size_t>(c)]);
      jac.col(c) = (conjugation_residuals(gp, a, b) - conjugation_residuals(gm, a, b)) / (2.0 * kStep);
    }
    Eigen::Vector3d step = jac.completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) break;
    if (step.norm() > 1.0) step /= step.norm();
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving) {
      const Quaternion trial = moved(g, step);
      const Eigen::VectorXd rt = conjugation_residuals(trial, a, b);
      if (rt.norm() < r.norm()) {
        g = trial;
        r = rt;
        improved = true;
        break;
      }
      step /= 2.0;
    }
    if (!improved) break;
  }
  return g;
}

}  // namespace detail

/// Looks for g with max_i |g a_i g^{-1} - b_i| <= tol.conjugator by
/// multi-start local minimization. Absent means no conjugator was found,
/// which at this scale signals non-conjugacy.
inline std::optional<Quaternion> conjugator_search(const PuncturedSphereRep& a, const PuncturedSphereRep& b,
                                                   const Tolerances& tol = kDefaultTolerances) {
  if (a.k() != b.k()) throw Error(ErrorCode::invalid_argument, "conjugator_search needs equal k");
  const double h = std::sqrt(0.5);
  const std::array<Quaternion, 8> starts{kOne, kI, kJ, kK, Quaternion{h, h, 0, 0}, Quaternion{h, 0, h, 0},
                                         Quaternion{h, 0, 0, h}, Quaternion{0.5, 0.5, 0.5, 0.5}};
  std::optional<Quaternion> best;
  double best_res = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const Quaternion g = detail::refine_conjugator(s, a.meridians(), b.meridians());
    const double res = detail::max_conjugation_residual(g, a.meridians(), b.meridians());
    if (res < best_res) {
      best_res = res;
      best = g;
    }
  }
  if (best_res <= tol.conjugator) return best;
  return std::nullopt;
}

}  // namespace charvar

#endif  // CHARVAR_VARIETY_HPP
