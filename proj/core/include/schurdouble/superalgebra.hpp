#pragma once

#include <map>
#include <string>
#include <vector>

#include "schurdouble/combinatorics.hpp"
#include "schurdouble/perm.hpp"
#include "schurdouble/scalars.hpp"

namespace schurdouble {

using SparseVec = std::map<int, Int>;  // basis index -> coefficient

void sparse_int_axpy(SparseVec& a, const Int& c, const SparseVec& b);

// An ordered homogeneous basis with parities and optional Z-degrees.
// Even labels always precede odd labels; all sign tables depend on this
// order, so it is part of the wire format.
struct SuperBasis {
  std::vector<std::string> labels;
  std::vector<int> parity;
  std::vector<int> degree;  // empty when ungraded

  int dim() const { return static_cast<int>(labels.size()); }
  bool graded() const { return !degree.empty(); }
  int num_even() const {
    int k = 0;
    for (int p : parity) k += 1 - (p & 1);
    return k;
  }
  void validate() const;  // distinct labels, evens first, degree/parity match
};

// A finite-dimensional associative unital superalgebra given by structure
// constants kappa^b_{b'b''} over Z.
struct Presentation {
  std::string name;
  SuperBasis basis;
  SparseVec unit;
  std::vector<std::vector<SparseVec>> kappa;  // kappa[i][j] = b_i * b_j

  int dim() const { return basis.dim(); }
  const SparseVec& product(int i, int j) const { return kappa[i][j]; }
  int label_index(const std::string& label) const;

  // unit two-sided, multiplication parity- (and degree-) homogeneous,
  // associativity on all basis triples.  Throws CheckError with a witness.
  void check() const;
};

// Coefficientwise reduction mod p (scalar extension Z -> F_p on the
// presentation; reduction commutes with all Z-linear structure maps).
Presentation reduce_presentation_mod(const Presentation& a, unsigned long p);

// ---- elements ----

enum class Carrier { Algebra, Dual };

// Sparse Z-linear combination of basis labels of an algebra or of its dual.
struct Element {
  const Presentation* algebra = nullptr;
  Carrier carrier = Carrier::Algebra;
  SparseVec coeffs;

  Element() = default;
  Element(const Presentation& a, Carrier c) : algebra(&a), carrier(c) {}
  static Element basis_vector(const Presentation& a, Carrier c, int i);
  static Element unit_element(const Presentation& a);
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const Element& o) const;
};

Element add(const Element& x, const Element& y);
Element scale(const Element& x, const Int& c);
// Bilinear kappa-expanded product; both factors over the same algebra.
Element multiply(const Element& x, const Element& y);
// <alpha, a> for alpha in the dual, a in the algebra (or symmetrically).
Int pair_elements(const Element& alpha, const Element& a);
// Dual regular actions: (a . alpha)(b) = alpha(b a), (alpha . a)(b) = alpha(a b).
Element act_left(const Element& a, const Element& alpha);
Element act_right(const Element& alpha, const Element& a);

// ---- tensor words ----

// Sparse element of Tens^d V for a superbasis V; keys are words of basis
// indices.
struct TensorElement {
  int degree = 0;
  std::map<Word, Int> coeffs;

  TensorElement() = default;
  explicit TensorElement(int d) : degree(d) {}
  static TensorElement word_element(int d, Word w, Int c = 1);
  void add_term(const Word& w, const Int& c);
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const TensorElement& o) const {
    return degree == o.degree && coeffs == o.coeffs;
  }
};

TensorElement te_add(const TensorElement& x, const TensorElement& y);
TensorElement te_scale(const TensorElement& x, const Int& c);

std::vector<int> word_parities(const SuperBasis& b, const Word& w);

// Componentwise product in Tens^d A with the Koszul sign.
TensorElement tensor_multiply(const Presentation& a, const TensorElement& x,
                              const TensorElement& y);

// Signed place permutation (v_1 x ... x v_d)^g.
TensorElement place_permute(const SuperBasis& b, const TensorElement& x,
                            const Perm& g);

// Slotwise dual pairing of a word of dual labels against a word of labels
// over the same superbasis: 0 unless the label words agree, otherwise the
// Koszul sign of the parity word.
Int pair_dual_word(const SuperBasis& b, const Word& dual_w, const Word& v_w);

// u^{tensor d} for the unit; degree-d expansion of 1_A^{x d}.
TensorElement unit_tensor_power(const Presentation& a, int d);

// ---- constructions ----

// Trivial extension T_A = A + A*: the dual is a square-zero ideal carrying
// the dual regular bimodule actions.  Label order: [A evens, duals of A
// evens, A odds, duals of A odds].  When A is graded with degrees in {0,1},
// dual labels carry degree 2 - deg (the shift-by-2 convention).
struct TrivialExtension {
  Presentation pres;
  std::vector<int> from_alg;   // A label i -> T label
  std::vector<int> from_dual;  // A label i -> T label of its dual
  std::vector<std::pair<bool, int>> origin;  // T label -> (is_dual, A label)
};

TrivialExtension trivial_extension(const Presentation& a);

// Matrix superalgebra M_n(A) with basis xi^b_{r,s}, ordered label-major then
// row-major; parity and degree inherited from b.
struct MatrixSuperalgebra {
  Presentation pres;
  int n = 0;
  int alg_dim = 0;
  int index(int b, int r, int s) const { return (b * n + r) * n + s; }
  int label_of(int idx) const { return idx / (n * n); }
  int row_of(int idx) const { return (idx / n) % n; }
  int col_of(int idx) const { return idx % n; }
};

MatrixSuperalgebra matrix_superalgebra(const Presentation& a, int n);

// The superalgebra isomorphism M_n(T_A) -> T_{M_n(A)},
// xi^{(a,alpha)}_{r,s} -> (xi^a_{r,s}, x^alpha_{s,r}); returned as the label
// bijection (both sides have free bases).  verify runs the multiplicativity
// check on all basis pairs and throws on failure.
struct MatrixTrivExtIso {
  std::vector<int> map;  // M_n(T_A) label -> T_{M_n(A)} label
  Presentation source;   // M_n(T_A)
  Presentation target;   // T_{M_n(A)}
};

MatrixTrivExtIso matrix_trivext_iso(const Presentation& a, int n,
                                    bool verify = true);

}  // namespace schurdouble
