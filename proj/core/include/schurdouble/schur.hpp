#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "schurdouble/combinatorics.hpp"
#include "schurdouble/superalgebra.hpp"
#include "schurdouble/turner_double.hpp"

namespace schurdouble {

// A matrix tuple C in M^B(n,d): one n x n matrix of multiplicities per basis
// label, {0,1}-valued on odd labels.  Stored flat over the slots of M_n(A)
// in the canonical order (label-major, then row, then column).
struct MatrixTuple {
  int n = 0;
  int num_labels = 0;
  ExpTuple flat;  // size num_labels * n * n

  int entry(int b, int r, int s) const { return flat[(b * n + r) * n + s]; }
  MatrixWeight label_matrix(int b) const;
  int total() const {
    int t = 0;
    for (int x : flat) t += x;
    return t;
  }
  // row sums alpha(C) and column sums beta(C), accumulated over all labels
  Weight alpha() const;
  Weight beta() const;
};

// Structure constants of S^A(n,d) over the xi_C basis, with the eps sign
// table.  Entries are stored sparsely per (C,D) pair.
struct StructureConstantTable {
  int n = 0, d = 0;
  std::string presentation_hash;
  std::string basis_order_version = "1";
  std::string mode;
  std::map<std::pair<int, int>, SparseVec> entries;  // (i,j) -> {k: f^Ek_CiDj}

  const SparseVec& at(int i, int j) const;
};

// The generalized Schur algebra S^A(n,d) = Inv^d M_n(A) over the basis
// {xi_C : C in M^B(n,d)}.
class SchurAlgebra {
 public:
  SchurAlgebra(const Presentation& a, int n, int d);

  const Presentation& algebra() const { return *a_; }
  const MatrixSuperalgebra& matrix_algebra() const { return mna_; }
  int n() const { return n_; }
  int d() const { return d_; }
  int dim() const { return tuples_.size(); }
  const TupleSpace& tuples() const { return tuples_; }

  MatrixTuple matrix_tuple(int i) const;
  int tuple_index(const MatrixTuple& t) const { return tuples_.index(t.flat); }
  std::string label(int i) const;
  int parity(int i) const;
  int z_degree(int i) const;  // requires a graded coefficient algebra

  // Signed orbit expansion of xi_C in Tens^d M_n(A).
  const TensorElement& xi_expand(int i) const { return xi_[i]; }
  // Canonical triples (r, b, s) of C, sorted in the fixed basis order.
  struct Triple {
    int r, b, s;
  };
  std::vector<Triple> canonical_triples(int i) const;

  enum class Mode { Formula, Oracle, Verified };
  static const char* mode_name(Mode m);

  // xi_C xi_D over the basis.  Formula: generalized Green closed form.
  // Oracle: tensor-expansion multiplication.  Verified: both, asserting
  // agreement (CheckError names the offending pair otherwise).
  SparseVec product(int i, int j, Mode mode) const;

  StructureConstantTable build_table(Mode mode) const;

  // eps_{C D} for the flat tuples (0 when C+D leaves M^B(n)).
  int eps(int i, int j) const {
    return tuple_eps(mna_.pres.basis.parity, tuples_.tuple(i), tuples_.tuple(j));
  }

  // Delta(xi_C) = sum eps_{D E} xi_D (x) xi_E over splittings D+E = C; the
  // degrees of D range over 0..d, with indices into TupleSpace(e).
  struct CoproductTerm {
    int e;        // degree of the left part
    ExpTuple left, right;
    int eps;
  };
  std::vector<CoproductTerm> coproduct_xi(int i) const;

  // x^C x^D: the plain coefficient (-1)^{|C||D|} eps_{CD} of x^{C+D}, and the
  // divided coefficient which additionally carries binom(C+D, D).
  std::pair<Int, Int> dual_products(int i, int j) const;

  // Divided structure constants f^(E)_{(C)D} = f C!/E! and f^(E)_{C(D)} =
  // f D!/E!; integrality is asserted.
  Int divided_left(int ci, int di, int ei, const Int& f) const;
  Int divided_right(int ci, int di, int ei, const Int& f) const;

  // Weight idempotent xi_lambda = E_11^{(x)l1} * ... * E_nn^{(x)ln}.
  SparseVec xi_weight(const Weight& lam) const;
  // xi^{x}_{1,g^{-1}1} * ... shuffle for the idempotent-truncation map; word
  // is the tuple (x_1..x_d) of A-labels.
  SparseVec truncation_image(const Word& alabels, const Perm& g) const;

  // element-level product of sparse coordinate vectors via a prebuilt table
  SparseVec table_product(const StructureConstantTable& t, const SparseVec& x,
                          const SparseVec& y) const;

 private:
  const Presentation* a_;
  int n_, d_;
  MatrixSuperalgebra mna_;
  TupleSpace tuples_;
  std::vector<TensorElement> xi_;

  SparseVec product_formula(int i, int j) const;
  SparseVec product_oracle(int i, int j) const;
};

// The Schur double D^A(n,d) inside S^{T_A}(n,d) = 'D^A(n,d): pair basis
// (C, D) in M^B_2(n,d) through the Turner double of M_n(A); closed-form
// product rules cross-check the transport engine.
class SchurDoubleAlgebra {
 public:
  SchurDoubleAlgebra(const Presentation& a, int n, int d);

  const DoubleSpace& dspace() const { return *ds_; }
  const Presentation& coefficient_algebra() const { return *a_; }
  int n() const { return n_; }
  int d() const { return d_; }

  // Product by the printed closed-form rule (signs s, t with the three
  // structure constants and three eps factors), plain or divided variant.
  DoubleElement closed_form_product(const DoubleElement& x,
                                    const DoubleElement& y) const;

  // Structure constants of S^A(n,e) for e <= d, built once (verified mode
  // for e <= 2, formula mode above).
  const SchurAlgebra& schur_at(int e) const { return *schur_[e]; }
  const StructureConstantTable& table_at(int e) const { return tables_[e]; }

  struct GenerationResult {
    bool generated = false;
    int rounds = 0;
    long closure_rank = 0;
    std::string witness;
    std::vector<std::string> certificate;  // generator words spanning the lattice
  };
  // Z-span closure of S^{A_0}(n,d) and {xi^y_{1,1} * 1^{(x)(d-1)}} (or the
  // n >= d corollary form with E_{rr} strings) against the D^A(n,d) lattice.
  GenerationResult dand_generation_check(bool corollary_form) const;

 private:
  const Presentation* a_;
  int n_, d_;
  TrivialExtension ta_;                      // T_A
  MatrixSuperalgebra mna_;                   // M_n(A)
  std::unique_ptr<DoubleSpace> ds_;          // double of M_n(A) in degree d
  std::vector<std::unique_ptr<SchurAlgebra>> schur_;  // S^A(n,e), e = 0..d
  std::vector<StructureConstantTable> tables_;
};

}  // namespace schurdouble
