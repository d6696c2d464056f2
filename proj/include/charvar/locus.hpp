#ifndef CHARVAR_LOCUS_HPP
#define CHARVAR_LOCUS_HPP

#include <charvar/rep.hpp>

#include <Eigen/Dense>

#include <string>

namespace charvar {

enum class Locus { abelian, binary_dihedral, generic };

inline const char* to_string(Locus l) {
  switch (l) {
    case Locus::abelian: return "abelian";
    case Locus::binary_dihedral: return "binary_dihedral";
    case Locus::generic: return "generic";
  }
  return "unknown";
}

/// abelian <=> rank <= 1, binary_dihedral <=> rank 2, generic <=> rank 3.
struct LocusLabel {
  Locus locus = Locus::generic;
  int rank = 3;
};

/// Numerical rank: singular values above rel_tol times the largest.
inline int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

/// 3 x k matrix whose columns are the su(2) parts of the meridian images.
inline Eigen::Matrix3Xd imaginary_part_matrix(const PuncturedSphereRep& rep) {
  Eigen::Matrix3Xd m(3, rep.k());
  for (int i = 0; i < rep.k(); ++i) m.col(i) << rep[i].x, rep[i].y, rep[i].z;
  return m;
}

/// A pure unit g with Re(g rho(x_i)) = 0 for all i exists exactly when the
/// meridian axes span at most a plane; then [g, rho(x_i)] = -1 and rho is
/// fixed by alpha_*.
inline LocusLabel classify_locus(const PuncturedSphereRep& rep, const Tolerances& tol = kDefaultTolerances) {
  const int rank = numerical_rank(imaginary_part_matrix(rep), tol.rank);
  if (rank <= 1) return {Locus::abelian, rank};
  if (rank == 2) return {Locus::binary_dihedral, rank};
  return {Locus::generic, rank};
}

/// Left singular vector of the smallest singular value of the meridian
/// axis matrix, as a pure unit quaternion: the axis orthogonal to every
/// meridian when the rep is binary dihedral.
inline Quaternion orthogonal_axis(const PuncturedSphereRep& rep) {
  const Eigen::Matrix3Xd m = imaginary_part_matrix(rep);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m), Eigen::ComputeFullU);
  const Eigen::Vector3d u = svd.matrixU().col(2);
  return Quaternion{0.0, u(0), u(1), u(2)}.normalized();
}

}  // namespace charvar

#endif  // CHARVAR_LOCUS_HPP
