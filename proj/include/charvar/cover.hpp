#ifndef CHARVAR_COVER_HPP
#define CHARVAR_COVER_HPP

#include <charvar/locus.hpp>
#include <charvar/rep.hpp>
#include <charvar/variety.hpp>

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace charvar {

/// Central character on the 6-punctured genus-2 surface group
/// <r1,s1,r2,s2,y1..y6 | r1 y3 s1 y2 r1^-1 y1 s1^-1 r2 y6 s2 y5 r2^-1 y4 s2^-1>.
///
/// The default takes +1 on r_i, s_i and -1 on every y_i. With it the cover
/// map is plain word evaluation and pushforward(extend(rho)) = rho holds
/// on the nose. `from_rho0()` is the character obtained by restricting the
/// representation sending every x_i to i; it differs from the default only
/// by the sign on r_i, s_i.
struct CentralCharacter {
  std::array<int, 4> generators{1, 1, 1, 1};  ///< r1, s1, r2, s2
  std::array<int, 6> meridians{-1, -1, -1, -1, -1, -1};

  static CentralCharacter from_rho0() { return {{-1, -1, -1, -1}, {-1, -1, -1, -1, -1, -1}}; }

  /// Value on the defining relation; a character must send it to +1.
  int relation_value() const {
    // Each r_i, s_i occurs once with each exponent sign; each y_i once.
    int v = 1;
    for (int g : generators) v *= g * g;
    for (int y : meridians) v *= y;
    return v;
  }
};

/// rho restricted to the genus-2 cover: r1 = x1 x2, s1 = x3^-1 x2^-1,
/// r2 = x4 x5, s2 = x6^-1 x5^-1.
inline SurfaceRep pushforward(const PuncturedSphereRep& rep, const Tolerances& tol = kDefaultTolerances) {
  if (rep.k() != 6) throw Error(ErrorCode::invalid_argument, "pushforward is defined for k = 6");
  const auto& x = rep.meridians();
  return make_surface_rep(x[0] * x[1], x[2].inverse() * x[1].inverse(), x[3] * x[4], x[5].inverse() * x[4].inverse(),
                          tol);
}

// ---------------------------------------------------------------------------
// Solving Re(x) = Re(xa) = Re(xb) = Re(xc) = Re(xd) = Re(x (abcd)^-1) = 0

/// Rung of the case ladder that produced x: the first non-commuting pair
/// of [a,b], [b,c], [c,d], [d,a], [a,c], [b,d], or the all-commuting rung.
enum class Lemma52Branch { ab, bc, cd, da, ac, bd, all_commute };

inline constexpr std::array<Lemma52Branch, 7> kLemma52Branches{
    Lemma52Branch::ab, Lemma52Branch::bc, Lemma52Branch::cd,         Lemma52Branch::da,
    Lemma52Branch::ac, Lemma52Branch::bd, Lemma52Branch::all_commute};

inline const char* to_string(Lemma52Branch b) {
  switch (b) {
    case Lemma52Branch::ab: return "[a,b]";
    case Lemma52Branch::bc: return "[b,c]";
    case Lemma52Branch::cd: return "[c,d]";
    case Lemma52Branch::da: return "[d,a]";
    case Lemma52Branch::ac: return "[a,c]";
    case Lemma52Branch::bd: return "[b,d]";
    case Lemma52Branch::all_commute: return "commuting";
  }
  return "unknown";
}

struct Lemma52Solution {
  Quaternion x;
  Lemma52Branch branch = Lemma52Branch::ab;
};

/// Angle margin from {0, pi} for recovering the common axis Q.
inline constexpr double kAxisMargin = 1e-6;

inline Lemma52Solution lemma52_solve(const Quaternion& a, const Quaternion& b, const Quaternion& c,
                                     const Quaternion& d, const Tolerances& tol = kDefaultTolerances) {
  const double pre = distance(a * b * c * d, d * c * b * a);
  if (pre > tol.rel)
    throw Error(ErrorCode::precondition_violated, "abcd != dcba (residual " + std::to_string(pre) + ")", -1, pre);

  const std::array<std::pair<const Quaternion*, const Quaternion*>, 6> ladder{
      {{&a, &b}, {&b, &c}, {&c, &d}, {&d, &a}, {&a, &c}, {&b, &d}}};
  for (std::size_t rung = 0; rung < ladder.size(); ++rung) {
    const Quaternion& u = *ladder[rung].first;
    const Quaternion& v = *ladder[rung].second;
    const Quaternion diff = u * v - v * u;
    const double n = diff.norm();
    if (n > tol.comm) return {diff.imag() / n, kLemma52Branches[rung]};
  }

  // Everything lies on one circle {e^{theta Q}}; any x orthogonal to Q works.
  // Q is read from the element furthest from the center.
  Quaternion axis = kI;
  double best = std::sin(kAxisMargin);
  for (const Quaternion* q : {&a, &b, &c, &d}) {
    const double s = q->imag_norm() / q->norm();
    if (s > best) {
      best = s;
      axis = axis_angle(q->normalized()).axis;
    }
  }
  if (distance(axis, kI) <= kAxisMargin || distance(axis, -kI) <= kAxisMargin) return {kJ, Lemma52Branch::all_commute};
  const Quaternion g = rotation_between(kI, axis);
  return {conjugate_by(g, kJ).imag().normalized(), Lemma52Branch::all_commute};
}

/// |Re(x)|, |Re(xa)|, |Re(xb)|, |Re(xc)|, |Re(xd)|, |Re(x (abcd)^-1)|.
inline std::array<double, 6> lemma52_residuals(const Quaternion& a, const Quaternion& b, const Quaternion& c,
                                               const Quaternion& d, const Quaternion& x) {
  return {std::abs(re(x)),     std::abs(re(x * a)), std::abs(re(x * b)),
          std::abs(re(x * c)), std::abs(re(x * d)), std::abs(re(x * (a * b * c * d).inverse()))};
}

/// a, b, c, d, e built from surface generators; e^-1 = abcd = dcba.
struct SurfaceWords {
  Quaternion a, b, c, d, e;
};

inline SurfaceWords surface_words(const SurfaceRep& s) {
  const Quaternion r1 = s.r1(), s1 = s.s1(), r2 = s.r2(), s2 = s.s2();
  return {r1, s1.inverse() * r1.inverse(), s2 * s1, s1.inverse() * r2 * s2.inverse(), r2.inverse() * s1};
}

/// One of the two traceless lifts of a genus-2 representation:
/// x_1 = sign * lemma52_solve(a, b, c, d), the rest forced by the cover words.
inline PuncturedSphereRep extend(const SurfaceRep& surface, int sign, const Tolerances& tol = kDefaultTolerances) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::invalid_argument, "sign must be +1 or -1");
  const SurfaceWords w = surface_words(surface);
  const double closure = distance(w.e.inverse(), w.a * w.b * w.c * w.d);
  if (closure > tol.rel)
    throw Error(ErrorCode::internal_inconsistency, "e^-1 != abcd", -1, closure);

  const Quaternion x1 = static_cast<double>(sign) * lemma52_solve(w.a, w.b, w.c, w.d, tol).x;
  const Quaternion x1i = x1.inverse();
  const Quaternion r1 = surface.r1(), s1 = surface.s1(), r2 = surface.r2(), s2 = surface.s2();
  return make_rep({x1, x1i * r1, r1.inverse() * x1 * s1.inverse(), s1 * x1i * s2, s2.inverse() * x1 * s1.inverse() * r2,
                   r2.inverse() * s1 * x1i},
                  tol);
}

/// Max over generators of |pushforward(rep)_g - surface_g|.
inline double generator_residual(const SurfaceRep& a, const SurfaceRep& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i) r = std::max(r, distance(a.generators()[i], b.generators()[i]));
  return r;
}

/// Fiber of the cover over one genus-2 representation.
struct FiberReport {
  std::vector<Fingerprint> classes;  ///< 1 on the branch locus, 2 elsewhere
  bool on_branch = false;
  std::array<PuncturedSphereRep, 2> witnesses;  ///< lifts with sign +1, -1
};

inline FiberReport fiber(const SurfaceRep& surface, const Tolerances& tol = kDefaultTolerances) {
  FiberReport report{{}, false, {extend(surface, 1, tol), extend(surface, -1, tol)}};
  Fingerprint plus = fingerprint(report.witnesses[0]);
  Fingerprint minus = fingerprint(report.witnesses[1]);
  const bool same = fingerprint_equal(plus, minus, tol.fingerprint);
  report.classes.push_back(std::move(plus));
  if (!same) report.classes.push_back(std::move(minus));
  report.on_branch = same;
  return report;
}

/// Genus-2 representation sampled through the (surjective) cover map.
template <class Rng>
SurfaceRep surface_sample(Rng& rng, const Tolerances& tol = kDefaultTolerances) {
  return pushforward(sample_point(6, rng, tol), tol);
}

/// True when all pairwise commutators of the generators are within tol of 1.
inline bool has_abelian_image(const SurfaceRep& s, double tol) {
  const auto& g = s.generators();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (distance(commutator(g[i], g[j]), kOne) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Valid lemma52_solve inputs, grouped by the ladder rung they reach

/// [a,c] and [b,d] have no family: once the four cyclic neighbours commute,
/// a non-commuting diagonal forces the other two elements to be central,
/// and then abcd = dcba forces the diagonal to commute too.
enum class Lemma52Family { surface, bc, cd, da, commuting };

inline constexpr std::array<Lemma52Family, 5> kLemma52Families{
    Lemma52Family::surface, Lemma52Family::bc, Lemma52Family::cd, Lemma52Family::da, Lemma52Family::commuting};

struct Lemma52Input {
  Quaternion a, b, c, d;
};

template <class Rng>
Lemma52Input sample_lemma52_input(Lemma52Family family, Rng& rng, const Tolerances& tol = kDefaultTolerances) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::bernoulli_distribution coin(0.5);
  auto central = [&] { return coin(rng) ? kOne : -kOne; };
  auto on_axis_of = [&](const Quaternion& q) { return exp_pure(angle(rng), axis_angle(q).axis); };
  switch (family) {
    case Lemma52Family::surface: {
      const SurfaceWords w = surface_words(surface_sample(rng, tol));
      return {w.a, w.b, w.c, w.d};
    }
    case Lemma52Family::bc: {
      // a = b^-1 and d on the circle of c: abcd = cd = dc = dcba.
      const Quaternion b = random_unit(rng);
      const Quaternion c = random_unit(rng);
      return {b.inverse(), b, c, on_axis_of(c)};
    }
    case Lemma52Family::cd: {
      // b central and a = c^-1: abcd = b d = dcba.
      const Quaternion c = random_unit(rng);
      return {c.inverse(), central(), c, random_unit(rng)};
    }
    case Lemma52Family::da: {
      // b central and c = +-d^-1.
      const Quaternion d = random_unit(rng);
      return {random_unit(rng), central(), central() * d.inverse(), d};
    }
    case Lemma52Family::commuting: {
      // One circle; every third draw uses the axis i, and entries are
      // occasionally central.
      std::uniform_int_distribution<int> pick(0, 5);
      const int mode = pick(rng);
      const Quaternion axis = mode < 2 ? kI : random_pure(rng);
      auto element = [&] { return pick(rng) == 0 ? central() : exp_pure(angle(rng), axis); };
      return {element(), element(), element(), element()};
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown input family");
}

}  // namespace charvar

#endif  // CHARVAR_COVER_HPP
