#ifndef CHARVAR_TOLERANCES_HPP
#define CHARVAR_TOLERANCES_HPP

namespace charvar {

/// Numerical thresholds shared by every module. Defaults are the library
/// constants; the CLI can override each one with a `--tol-*` flag.
struct Tolerances {
  double unit = 1e-12;       ///< |q| = 1 and purity checks after renormalization
  double renorm = 1e-14;     ///< group products renormalize past this drift
  double rel = 1e-10;        ///< relation residuals (product = 1, f = 0, abcd = dcba)
  double fingerprint = 1e-9; ///< coordinate-wise class equality
  double rank = 1e-8;        ///< singular-value cutoff relative to the largest
  double comm = 1e-8;        ///< |uv - vu| below this counts as commuting
  double roundtrip = 1e-9;   ///< generator-wise pushforward(extend(rho)) residual
  double fd = 1e-6;          ///< finite-difference Hessian entry error
  double conjugator = 1e-7;  ///< accepted conjugator residual
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace charvar

#endif  // CHARVAR_TOLERANCES_HPP
