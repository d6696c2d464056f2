#ifndef CHARVAR_REP_HPP
#define CHARVAR_REP_HPP

#include <charvar/quat.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace charvar {

/// A homomorphism from the k-punctured sphere group
/// <x_1..x_k | x_1 x_2 ... x_k = 1> sending every meridian to S^2_i.
/// Only constructible through make_rep / complete_rep, so every instance
/// satisfies both invariants.
class PuncturedSphereRep {
 public:
  int k() const { return static_cast<int>(meridians_.size()); }
  const std::vector<Quaternion>& meridians() const { return meridians_; }
  const Quaternion& operator[](int i) const { return meridians_[static_cast<std::size_t>(i)]; }

  /// Largest |Re(x_i)|.
  double traceless_residual() const {
    double r = 0.0;
    for (const auto& q : meridians_) r = std::max(r, std::abs(q.w));
    return r;
  }

  /// |x_1 ... x_k - 1| computed without renormalization.
  double product_residual() const {
    Quaternion acc = kOne;
    for (const auto& q : meridians_) acc = acc * q;
    return distance(acc, kOne);
  }

 private:
  explicit PuncturedSphereRep(std::vector<Quaternion> m) : meridians_(std::move(m)) {}
  friend PuncturedSphereRep make_rep(std::vector<Quaternion>, const Tolerances&);

  std::vector<Quaternion> meridians_;
};

/// Validates and wraps meridian images. Reports the first non-traceless
/// index, or the residual of the product relation; never repairs.
inline PuncturedSphereRep make_rep(std::vector<Quaternion> quaternions, const Tolerances& tol = kDefaultTolerances) {
  if (quaternions.empty()) throw Error(ErrorCode::invalid_argument, "representation needs at least one meridian");
  for (std::size_t i = 0; i < quaternions.size(); ++i) {
    const auto& q = quaternions[i];
    if (std::abs(q.w) > tol.rel || std::abs(q.norm() - 1.0) > tol.rel)
      throw Error(ErrorCode::not_traceless, "meridian x" + std::to_string(i + 1) + " is not a pure unit quaternion",
                  static_cast<int>(i), std::max(std::abs(q.w), std::abs(q.norm() - 1.0)));
  }
  Quaternion acc = kOne;
  for (const auto& q : quaternions) acc = acc * q;
  const double residual = distance(acc, kOne);
  if (residual > tol.rel)
    throw Error(ErrorCode::product_not_identity,
                "x1...xk differs from 1 by " + std::to_string(residual), -1, residual);
  return PuncturedSphereRep(std::move(quaternions));
}

/// Appends x_k = (q_1 ... q_{k-1})^{-1} to a tuple in f^{-1}(0).
inline PuncturedSphereRep complete_rep(std::vector<Quaternion> partial, const Tolerances& tol = kDefaultTolerances) {
  if (partial.empty()) throw Error(ErrorCode::invalid_argument, "complete_rep needs at least one meridian");
  const Quaternion w = product(partial, tol);
  if (std::abs(w.w) > tol.rel)
    throw Error(ErrorCode::constraint_violated, "Re(q1...q_{k-1}) = " + std::to_string(w.w), -1, std::abs(w.w));
  // w is pure up to rounding; strip the real part so x_k is exactly traceless.
  partial.push_back(w.imag().normalized().conj());
  return make_rep(std::move(partial), tol);
}

/// Simultaneous conjugation g rho g^{-1}.
inline PuncturedSphereRep conjugate(const PuncturedSphereRep& rep, const Quaternion& g,
                                    const Tolerances& tol = kDefaultTolerances) {
  const Quaternion gn = g.normalized();
  std::vector<Quaternion> out;
  out.reserve(rep.meridians().size());
  for (const auto& q : rep.meridians()) out.push_back(conjugate_by(gn, q));
  return make_rep(std::move(out), tol);
}

/// Images of r1, s1, r2, s2 satisfying [r1,s1][r2,s2] = 1.
class SurfaceRep {
 public:
  const Quaternion& r1() const { return gens_[0]; }
  const Quaternion& s1() const { return gens_[1]; }
  const Quaternion& r2() const { return gens_[2]; }
  const Quaternion& s2() const { return gens_[3]; }
  const std::array<Quaternion, 4>& generators() const { return gens_; }

  double relation_residual() const {
    return distance(commutator(r1(), s1()) * commutator(r2(), s2()), kOne);
  }

 private:
  explicit SurfaceRep(const std::array<Quaternion, 4>& g) : gens_(g) {}
  friend SurfaceRep make_surface_rep(const Quaternion&, const Quaternion&, const Quaternion&, const Quaternion&,
                                     const Tolerances&);

  std::array<Quaternion, 4> gens_;
};

inline SurfaceRep make_surface_rep(const Quaternion& r1, const Quaternion& s1, const Quaternion& r2,
                                   const Quaternion& s2, const Tolerances& tol = kDefaultTolerances) {
  const std::array<Quaternion, 4> g{r1, s1, r2, s2};
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(g[i].norm() - 1.0) > tol.rel)
      throw Error(ErrorCode::invalid_argument, "surface generator is not a unit quaternion", static_cast<int>(i));
  SurfaceRep rep(g);
  const double residual = rep.relation_residual();
  if (residual > tol.rel)
    throw Error(ErrorCode::product_not_identity,
                "[r1,s1][r2,s2] differs from 1 by " + std::to_string(residual), -1, residual);
  return rep;
}

inline SurfaceRep conjugate(const SurfaceRep& rep, const Quaternion& g, const Tolerances& tol = kDefaultTolerances) {
  const Quaternion gn = g.normalized();
  return make_surface_rep(conjugate_by(gn, rep.r1()), conjugate_by(gn, rep.s1()), conjugate_by(gn, rep.r2()),
                          conjugate_by(gn, rep.s2()), tol);
}

// ---------------------------------------------------------------------------
// Fingerprints

/// Canonical word list: all single generators, then increasing pairs,
/// then increasing triples, each group in lexicographic order.
inline std::vector<std::vector<int>> word_list(int generators) {
  std::vector<std::vector<int>> words;
  for (int i = 0; i < generators; ++i) words.push_back({i});
  for (int i = 0; i < generators; ++i)
    for (int j = i + 1; j < generators; ++j) words.push_back({i, j});
  for (int i = 0; i < generators; ++i)
    for (int j = i + 1; j < generators; ++j)
      for (int l = j + 1; l < generators; ++l) words.push_back({i, j, l});
  return words;
}

/// Conjugation invariant: Re of the image of every word in word_list.
struct Fingerprint {
  std::vector<std::string> labels;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

namespace detail {

inline Fingerprint fingerprint_of(std::span<const Quaternion> gens, std::span<const std::string> names) {
  Fingerprint fp;
  for (const auto& word : word_list(static_cast<int>(gens.size()))) {
    Quaternion acc = kOne;
    std::string label;
    for (int idx : word) {
      acc = acc * gens[static_cast<std::size_t>(idx)];
      if (!label.empty()) label += '*';
      label += names[static_cast<std::size_t>(idx)];
    }
    fp.labels.push_back(std::move(label));
    fp.values.push_back(re(acc));
  }
  return fp;
}

}  // namespace detail

inline Fingerprint fingerprint(const PuncturedSphereRep& rep) {
  std::vector<std::string> names;
  for (int i = 1; i <= rep.k(); ++i) names.push_back("x" + std::to_string(i));
  return detail::fingerprint_of(rep.meridians(), names);
}

inline Fingerprint fingerprint(const SurfaceRep& rep) {
  static const std::array<std::string, 4> names{"r1", "s1", "r2", "s2"};
  return detail::fingerprint_of(rep.generators(), names);
}

/// Max coordinate-wise difference; infinity for mismatched lengths.
inline double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

inline bool fingerprint_equal(const Fingerprint& a, const Fingerprint& b, double tol = kDefaultTolerances.fingerprint) {
  return fingerprint_distance(a, b) <= tol;
}

// ---------------------------------------------------------------------------
// The meridian character alpha(x_i) = -1

inline PuncturedSphereRep alpha_star(const PuncturedSphereRep& rep, const Tolerances& tol = kDefaultTolerances) {
  if (rep.k() % 2 != 0)
    throw Error(ErrorCode::invalid_argument, "alpha is only defined for an even number of punctures");
  std::vector<Quaternion> out;
  out.reserve(rep.meridians().size());
  for (const auto& q : rep.meridians()) out.push_back(-q);
  return make_rep(std::move(out), tol);
}

}  // namespace charvar

#endif  // CHARVAR_REP_HPP
