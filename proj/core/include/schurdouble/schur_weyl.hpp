#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "schurdouble/linalg.hpp"
#include "schurdouble/schur.hpp"
#include "schurdouble/superalgebra.hpp"

namespace schurdouble {

// ---- wreath products ----

class WreathAlgebra;

// Sparse combination over pairs (word in B^d, permutation).
struct WreathElement {
  const WreathAlgebra* algebra = nullptr;
  std::map<std::pair<Word, std::vector<int>>, Int> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const WreathElement& o) const { return coeffs == o.coeffs; }
};

// W^A_d = A^{(x)d} x| kS_d.  With signs=true this is the super wreath
// product (signed place permutations and Koszul commutation); with
// signs=false the ordinary wreath product of the underlying algebra |A|.
class WreathAlgebra {
 public:
  WreathAlgebra(const Presentation& a, int d, bool signs);

  const Presentation& coefficient_algebra() const { return *a_; }
  int d() const { return d_; }
  bool is_signed() const { return signs_; }

  WreathElement zero() const;
  WreathElement unit() const;
  WreathElement monomial(const Word& w, const Perm& g, const Int& c = 1) const;
  WreathElement x_of(int label, int slot) const;  // x[slot+1]
  WreathElement perm_of(const Perm& g) const;
  WreathElement tensor_of(const TensorElement& t) const;  // A^{(x)d} part

  WreathElement add(const WreathElement& x, const WreathElement& y) const;
  WreathElement scale(const WreathElement& x, const Int& c) const;
  WreathElement multiply(const WreathElement& x, const WreathElement& y) const;

 private:
  const Presentation* a_;
  int d_;
  bool signs_;
};

// ---- tensor space ----

// Tens^d V for V = A^{+n}, with the right W^A_d-action and the left action
// of tensor words over M_n(A).  Basis words have slot codes r*dim(A)+b.
class TensorSpace {
 public:
  TensorSpace(const Presentation& a, int n, int d, bool signs);

  int n() const { return n_; }
  int d() const { return d_; }
  bool is_signed() const { return signs_; }
  const MatrixSuperalgebra& matrix_algebra() const { return mna_; }
  long dim() const;

  using VElem = std::map<Word, Int>;

  int slot_code(int r, int b) const { return r * a_->dim() + b; }
  int slot_row(int code) const { return code / a_->dim(); }
  int slot_label(int code) const { return code % a_->dim(); }
  long word_index(const Word& w) const;

  VElem v_weight(const Weight& lam) const;  // v_lambda
  VElem v_omega() const { return v_weight(omega_weight(n_, d_)); }
  // v_boldlambda for a colored weight and idempotent family
  VElem v_colored(const ColoredWeight& lam,
                  const std::vector<Element>& idems) const;

  VElem add(const VElem& x, const VElem& y) const;
  VElem scale(const VElem& x, const Int& c) const;
  VElem right_act(const VElem& v, const WreathElement& w) const;
  // left action of an element of Tens^d M_n(A) (degree d words)
  VElem left_act(const TensorElement& s, const VElem& v) const;

 private:
  const Presentation* a_;
  int n_, d_;
  bool signs_;
  MatrixSuperalgebra mna_;
};

// ---- colored permutation modules ----

// M^A_lam (signs=true, alternating=false) or the alternating M^{|A|}_lam
// (signs=false, alternating=true with the zeta signs).  Basis:
// { m (b_1 x...x b_d) g } with b_a in the block-color basis and g in ^lam D.
class PermModule {
 public:
  PermModule(const Presentation& a, int n, int d, const ColoredWeight& lam,
             const std::vector<Element>& idems, bool signs, bool alternating,
             std::vector<int> zeta);

  long dim() const { return static_cast<long>(bwords_.size() * reps_.size()); }
  const ColoredWeight& colored_weight() const { return lam_; }
  const std::vector<Perm>& reps() const { return reps_; }
  const std::vector<Word>& block_words() const { return bwords_; }
  long basis_index(const Word& bword, int rep) const;
  std::pair<Word, Perm> basis_data(long i) const;
  int label_color(int label) const { return label_color_[label]; }

  using MElem = std::map<long, Int>;
  MElem generator() const;  // m_lam
  MElem act(const MElem& v, const WreathElement& w) const;

  // normal form of m_lam * (word (x) g); zero when the word leaves the
  // idempotent sector
  MElem normalize(const Word& w, const Perm& g, const Int& c) const;

 private:
  const Presentation* a_;
  int n_, d_;
  ColoredWeight lam_;
  bool signs_, alternating_;
  std::vector<int> zeta_;         // per color
  std::vector<int> label_color_;  // basis label -> color
  std::vector<int> pos_color_;    // position in [0,d) -> color of its block
  std::vector<std::pair<int, int>> blocks_;  // flattened Omega^lam blocks
  std::vector<Word> bwords_;
  std::map<Word, int> bword_index_;
  std::vector<Perm> reps_;
  std::map<std::vector<int>, int> rep_index_;
};

// colors of basis labels from an orthogonal idempotent family (label b has
// color i when e_i b = b); throws when the family does not split the basis.
std::vector<int> label_colors(const Presentation& a,
                              const std::vector<Element>& idems);

// ---- commutant ----

// dim End_{W^A_d}(Tens^d V) by solving the commutation linear system against
// the generators x[c] (x in B) and the adjacent transpositions.
long commutant_dimension(const Presentation& a, int n, int d, bool signs);

// Rank over Q of the left-action matrix of the xi_C basis on Tens^d V
// (faithfulness of S^A(n,d) -> End(Tens^d V)).
long schur_action_rank(const SchurAlgebra& s, bool signs);

// Multiplication table of S^A(n,d) recovered from the action on Tens^d V:
// the product of action matrices re-expressed over the xi basis.  Fails with
// CheckError when an action product leaves the span.
StructureConstantTable commutant_table(const SchurAlgebra& s);

// ---- idempotent truncation (d <= n) ----

struct TruncationChecks {
  bool multiplicative = false;   // phi(w w') = phi(w) phi(w') on basis pairs
  bool characterized = false;    // phi(w) v_omega = v_omega w
  bool corner_lattice = false;   // phi(W^A_d) = xi_omega S xi_omega over Z
  bool bimodule_lattice = false; // S xi_omega ~ Tens^d V over Z
  bool intertwines = false;      // psi(s u phi(w)) = s psi(u) w (sampled)
  bool ok() const {
    return multiplicative && characterized && corner_lattice &&
           bimodule_lattice && intertwines;
  }
};

TruncationChecks idempotent_truncation_checks(const Presentation& a, int n,
                                              int d, unsigned long seed);

}  // namespace schurdouble
