#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schurdouble/invariants.hpp"
#include "schurdouble/linalg.hpp"
#include "schurdouble/superalgebra.hpp"

namespace schurdouble {

enum class DoubleVariant { Plain, Divided };

// An element of D^d X (plain) or 'D^d X (divided), as coordinates over the
// pair basis xi_c (x) x^dl  resp.  xi_c (x) x^(dl).
struct DoubleElement {
  DoubleVariant variant = DoubleVariant::Plain;
  int degree = 0;
  std::map<int, Int> coords;

  bool is_zero() const { return coords.empty(); }
  bool operator==(const DoubleElement& o) const {
    return variant == o.variant && degree == o.degree && coords == o.coords;
  }
};

// The Turner double of a superalgebra X in degree d, realized through the
// isomorphism 'D^d X -> Inv^d T_X, xi (x) x -> xi * kappa(x).  The pair
// basis is (c, dl) with c an exponent tuple over the basis of X, dl one over
// the dual basis, |c| + |dl| = d.  Products are computed by transporting to
// Inv^d T_X (one signed engine); the Sweedler-form product is implemented
// independently and used as a cross-check.
class DoubleSpace {
 public:
  DoubleSpace(const Presentation& x, int d);

  const Presentation& X() const { return *x_; }
  const TrivialExtension& TX() const { return tx_; }
  int degree() const { return d_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  const ExpTuple& inv_part(int i) const { return basis_[i].first; }
  const ExpTuple& sym_part(int i) const { return basis_[i].second; }
  int pair_index(const ExpTuple& c, const ExpTuple& dl) const;
  int pair_parity(int i) const;  // parity of xi_c (x) x^dl
  std::string pair_label(int i) const;

  // phi on basis elements: phi(basis i) = phi_sign(i) * (orbit-sum basis
  // element of Inv^d T_X indexed by phi_tuple(i)).
  int phi_tuple(int i) const { return phi_tuple_[i]; }
  int phi_sign(int i) const { return phi_sign_[i]; }
  const TupleSpace& tx_tuples() const { return txts_; }

  DoubleElement basis_element(int i, DoubleVariant v) const;
  DoubleElement zero(DoubleVariant v) const;
  static DoubleElement de_add(const DoubleElement& a, const DoubleElement& b);
  static DoubleElement de_scale(const DoubleElement& a, const Int& c);

  // Exact change of variant; Divided -> Plain throws CheckError if the
  // element is not in the plain lattice.
  DoubleElement convert(const DoubleElement& a, DoubleVariant target) const;

  // Product via transport through Inv^d T_X.  Requires equal variants; the
  // result carries the same variant (with an integrality check on the way
  // back for the plain case).
  DoubleElement multiply(const DoubleElement& a, const DoubleElement& b) const;

  // Independent product along the Sweedler formula
  //   (xi (x) x)(eta (x) y) = sum +- xi_(2) eta_(1) (x) (x.eta_(2))(xi_(1).y),
  // computed over Q on the pair coordinates.  Used to defend the transport
  // engine; accepts either variant.
  DoubleElement multiply_sweedler(const DoubleElement& a,
                                  const DoubleElement& b) const;

  TensorElement phi(const DoubleElement& a) const;  // image in Tens^d T_X
  DoubleElement phi_inverse(const TensorElement& t, DoubleVariant v) const;

  // Turner grading: defined when X_1 X_1 = 0; degree of a pair is
  // |c|_1 + 2|dl|_0 + |dl|_1.
  bool turner_gradable() const { return gradable_; }
  int pair_degree(int i) const;
  std::map<int, DoubleElement> grade_decompose(const DoubleElement& a) const;

  // Symmetric form (xi (x) x, eta (x) y) = <xi,y><x,eta> on the plain basis,
  // plus the functional F with (t,u) = F(tu).
  Int form(int i, int j) const;
  IntMat gram() const;
  Int f_functional(const DoubleElement& plain) const;
  Rat f_functional_divided(const DoubleElement& divided) const;

  // Generating set of the plain double inside Inv^d T_X: a basis of
  // Inv^d X_0 together with 1^(x)(d-1) * t for t in X_1 and X^*.
  std::vector<DoubleElement> generators() const;

  struct GenerationResult {
    bool generated = false;
    int rounds = 0;
    long closure_rank = 0;
    std::string witness;  // missing basis vector on failure
    std::vector<std::string> certificate;  // generator words spanning the lattice
  };
  // Z-span closure of generators() under multiplication compared against the
  // plain lattice (Hermite form equality).
  GenerationResult generation_check() const;

  // Structure constants of the algebra Inv^e X over the orbit-sum basis
  // (used by the Sweedler route); f[k] = coefficient of xi_k in xi_i xi_j.
  const std::map<int, Int>& inv_product(int e, int i, int j) const;
  const TupleSpace& x_tuples(int e) const { return xts_[e]; }

  // Coordinates of 1_X^{(x) e} over the orbit-sum basis of Inv^e X.
  const std::map<int, Int>& unit_coords(int e) const { return unit_coords_[e]; }

  // Shared worker: Z-span closure of named generators under right
  // multiplication, compared against the plain lattice.
  GenerationResult span_closure(const std::vector<DoubleElement>& gens,
                                const std::vector<std::string>& names) const;

 private:
  const Presentation* x_;
  int d_;
  TrivialExtension tx_;
  TupleSpace txts_;
  bool gradable_;
  std::vector<std::pair<ExpTuple, ExpTuple>> basis_;
  std::map<std::pair<ExpTuple, ExpTuple>, int> index_;
  std::vector<int> phi_tuple_;
  std::vector<int> phi_sign_;
  std::vector<TensorElement> tx_orbit_;  // expansion of each T_X orbit sum
  std::vector<TupleSpace> xts_;          // degree e tuples over B_X
  std::vector<std::map<int, Int>> unit_coords_;
  // inv-product cache: key (e, i, j)
  mutable std::map<std::tuple<int, int, int>, std::map<int, Int>> inv_cache_;
};

}  // namespace schurdouble
