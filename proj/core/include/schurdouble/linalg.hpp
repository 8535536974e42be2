#pragma once

#include <map>
#include <optional>
#include <vector>

#include "schurdouble/scalars.hpp"

namespace schurdouble {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row major

// Canonical row Hermite normal form of the lattice spanned by the rows:
// zero rows dropped, pivots positive, entries above each pivot reduced into
// [0, pivot).  Two integer matrices span the same row lattice iff their
// canonical HNFs are identical.
IntMat hnf_rows(IntMat m);

// Nonzero Smith invariants d1 | d2 | ... of an integer matrix.
std::vector<Int> smith_invariants(IntMat m);

// Fraction-free determinant (Bareiss) of a square integer matrix.
Int det_bareiss(IntMat m);

long rank_rational(const IntMat& m);

// Incremental builder for a sublattice of Z^n, kept in row echelon form.
class LatticeSpan {
 public:
  explicit LatticeSpan(int ncols) : ncols_(ncols) {}

  // Adds v to the spanned lattice; returns true if the lattice grew or an
  // existing pivot row changed.
  bool add(IntVec v);
  bool contains(IntVec v) const;
  long rank() const { return static_cast<long>(rows_.size()); }
  int ncols() const { return ncols_; }
  // Canonical HNF basis of the lattice built so far.
  IntMat hnf() const;

 private:
  int ncols_;
  std::map<int, IntVec> rows_;  // leading column -> row
};

// ---- sparse exact linear algebra over Q ----

using SpVecQ = std::map<int, Rat>;

SpVecQ sparse_add(const SpVecQ& a, const SpVecQ& b);
SpVecQ sparse_scale(const SpVecQ& a, const Rat& c);
void sparse_axpy(SpVecQ& a, const Rat& c, const SpVecQ& b);  // a += c*b

// Reduced row echelon form over Q, built incrementally.  Pivot of a row is
// its smallest column.
class SparseRREF {
 public:
  // Returns true if the row increased the rank.
  bool add_row(SpVecQ r);
  long rank() const { return static_cast<long>(pivot_rows_.size()); }
  const std::map<int, SpVecQ>& pivot_rows() const { return pivot_rows_; }
  SpVecQ reduce(SpVecQ r) const;
  bool in_row_space(SpVecQ r) const { return reduce(std::move(r)).empty(); }

 private:
  std::map<int, SpVecQ> pivot_rows_;  // pivot column -> row (1 at pivot)
};

// Basis of { x in Q^ncols : r . x = 0 for every row r }.
std::vector<SpVecQ> kernel_basis(const std::vector<SpVecQ>& rows, int ncols);

long rank_sparse(const std::vector<SpVecQ>& rows);

// Dense rational solver: expresses targets in the column span of a fixed
// m x k matrix with independent columns (k small, m possibly large and
// sparse).  Used to re-express endomorphisms in a chosen basis.
class ColumnSolver {
 public:
  // columns[j] = sparse column vector of height m.
  ColumnSolver(const std::vector<SpVecQ>& columns, long height);
  // Returns coordinates c with columns * c == target, or nullopt.
  std::optional<std::vector<Rat>> solve(const SpVecQ& target) const;
  long dim() const { return k_; }

 private:
  long k_;
  std::vector<int> pivot_rows_;                 // k selected row indices
  std::vector<std::vector<Rat>> inv_;           // k x k inverse of selected block
  const std::vector<SpVecQ>* columns_;
  std::vector<SpVecQ> columns_store_;
};

}  // namespace schurdouble
