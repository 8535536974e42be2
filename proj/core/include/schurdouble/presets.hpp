#pragma once

#include <string>
#include <vector>

#include "schurdouble/quiver.hpp"
#include "schurdouble/superalgebra.hpp"

namespace schurdouble {

// Named coefficient algebras: "trivial" (Z), "dual" (Z[eps], eps^2 = 0,
// even), "grassmann" (Z[theta], theta odd, theta^2 = 0), "matrix2" /
// "matrix3" (M_n(Z)), "pq-aL" and "zigzag-aL" for the type A_L quivers
// (L = 1,2,3).
Presentation preset(const std::string& name);

std::vector<std::string> preset_names();

Quiver path_quiver(int l);  // A_l: edges i -> i+1

}  // namespace schurdouble
