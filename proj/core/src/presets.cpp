#include "schurdouble/presets.hpp"

namespace schurdouble {

namespace {

Presentation trivial_algebra() {
  Presentation p;
  p.name = "trivial";
  p.basis.labels = {"1"};
  p.basis.parity = {0};
  p.basis.degree = {0};
  p.unit[0] = 1;
  p.kappa.assign(1, std::vector<SparseVec>(1));
  p.kappa[0][0][0] = 1;
  return p;
}

Presentation dual_numbers() {
  Presentation p;
  p.name = "dual";
  p.basis.labels = {"1", "eps"};
  p.basis.parity = {0, 0};
  p.unit[0] = 1;
  p.kappa.assign(2, std::vector<SparseVec>(2));
  p.kappa[0][0][0] = 1;
  p.kappa[0][1][1] = 1;
  p.kappa[1][0][1] = 1;
  // eps^2 = 0
  return p;
}

Presentation grassmann() {
  Presentation p;
  p.name = "grassmann";
  p.basis.labels = {"1", "th"};
  p.basis.parity = {0, 1};
  p.basis.degree = {0, 1};
  p.unit[0] = 1;
  p.kappa.assign(2, std::vector<SparseVec>(2));
  p.kappa[0][0][0] = 1;
  p.kappa[0][1][1] = 1;
  p.kappa[1][0][1] = 1;
  // th^2 = 0
  return p;
}

}  // namespace

Quiver path_quiver(int l) {
  Quiver q;
  q.num_vertices = l;
  for (int i = 1; i < l; ++i) q.edges.emplace_back(i, i + 1);
  q.validate();
  return q;
}

Presentation preset(const std::string& name) {
  if (name == "trivial") return trivial_algebra();
  if (name == "dual") return dual_numbers();
  if (name == "grassmann") return grassmann();
  if (name == "matrix2") return matrix_superalgebra(trivial_algebra(), 2).pres;
  if (name == "matrix3") return matrix_superalgebra(trivial_algebra(), 3).pres;
  if (name == "pq-a1") return build_pq(path_quiver(1));
  if (name == "pq-a2") return build_pq(path_quiver(2));
  if (name == "pq-a3") return build_pq(path_quiver(3));
  if (name == "zigzag-a1") return build_zigzag(path_quiver(1));
  if (name == "zigzag-a2") return build_zigzag(path_quiver(2));
  if (name == "zigzag-a3") return build_zigzag(path_quiver(3));
  throw InputError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"trivial", "dual",   "grassmann", "matrix2",  "matrix3", "pq-a1",
          "pq-a2",   "pq-a3",  "zigzag-a1", "zigzag-a2", "zigzag-a3"};
}

}  // namespace schurdouble
