// Mixed volumes of a few small bodies, computed by both engines.

#include <iostream>

#include "mvhr/mixedvol.hpp"

using namespace mvhr;

int main() {
  Zonotope square(2, {Vector{1, 0}, Vector{0, 1}});
  Zonotope diagonal(2, {Vector{1, 1}});
  VPolytope triangle(2, {Vector{0, 0}, Vector{1, 0}, Vector{0, 1}});

  BodyList a(2, {{square, 1}, {diagonal, 1}});
  BodyList b(2, {{triangle, 1}, {negate(triangle), 1}});
  std::cout << "V(square, diagonal)       = " << to_string(mixed_volume(a)) << "  (polarization "
            << to_string(mv_polarization(a)) << ")\n";
  std::cout << "V(triangle, -triangle)    = " << to_string(mixed_volume(b)) << "  (polarization "
            << to_string(mv_polarization(b)) << ")\n";

  // A zonotope in R^4 against the unit cube.
  Zonotope z(4, {Vector{1, 2, 0, 1}, Vector{0, 1, 1, 0}, Vector{3, 0, 1, 1}, Vector{1, 1, 1, 1}, Vector{0, 0, 2, 1}});
  BodyList c(4, {{z, 2}, {unit_cube(4), 2}});
  Scalar v = mixed_volume(c);
  std::cout << "V(Z[2], C[2]) in R^4      = " << to_string(v) << " ~ " << to_decimal(v) << '\n';
  std::cout << "vol(Z)                    = " << to_string(volume(z)) << '\n';
}
