// Builds a binary dihedral representation of the 6-punctured sphere from
// torus coordinates, pushes it to the genus-2 surface and lifts it back.

#include <charvar/charvar.hpp>

#include <cstdio>

int main() {
  using namespace charvar;
  const TorusCoords t{3, {0.3, 1.1, 2.0, 4.2}};
  const PuncturedSphereRep rho = bd_from_torus(t);
  std::printf("locus: %s\n", to_string(classify_locus(rho).locus));

  const TorusCoords back = torus_from_bd(rho);
  std::printf("coordinates:");
  for (double a : back.thetas) std::printf(" %.6f", a);
  std::printf("\n");

  const SurfaceRep s = pushforward(rho);
  std::printf("abelian image: %s\n", has_abelian_image(s, 1e-9) ? "yes" : "no");

  const FiberReport f = fiber(s);
  std::printf("fiber classes: %zu (on branch locus: %s)\n", f.classes.size(), f.on_branch ? "yes" : "no");
  std::printf("round trip residual: %.3g\n", generator_residual(pushforward(f.witnesses[0]), s));
}
