#pragma once

#include <map>
#include <utility>
#include <vector>

#include "schurdouble/combinatorics.hpp"
#include "schurdouble/superalgebra.hpp"

namespace schurdouble {

// Shuffle product s * t: sum over the shortest representatives of
// (S_d x S_e) \ S_{d+e} of signed place permutations of s tensor t.
TensorElement shuffle(const SuperBasis& b, const TensorElement& s,
                      const TensorElement& t);

// The orbit-sum basis element x_1^{(x) c_1} * ... * x_m^{(x) c_m} of Inv^d V:
// all distinct rearrangements of the sorted word, with Koszul signs.
TensorElement orbit_sum(const SuperBasis& b, const ExpTuple& c);

// Invariance under all adjacent transpositions (they generate S_d).
bool is_invariant(const SuperBasis& b, const TensorElement& t);

// Coordinates of an invariant element over the orbit-sum basis (read off the
// canonical words).  With verify=true the expansion is recomputed and
// compared, which catches non-invariant input.
std::map<int, Int> invariant_coords(const SuperBasis& b, const TupleSpace& ts,
                                    const TensorElement& t, bool verify = false);

TensorElement expand_invariant(const SuperBasis& b, const TupleSpace& ts,
                               const std::map<int, Int>& coords);

// Deconcatenation coproduct, component in Tens^e x Tens^{d-e}.
std::map<std::pair<Word, Word>, Int> deconcat_component(const TensorElement& t,
                                                        int e);

// Coproduct of an orbit-sum basis element in coordinates:
// Delta(xi_c) = sum_{c'+c''=c} eps_{c'c''} xi_{c'} x xi_{c''}.
// Returns (c', c'', eps) triples with eps = +-1.
std::vector<std::tuple<ExpTuple, ExpTuple, int>> coproduct_orbit_basis(
    const std::vector<int>& slot_parities, const ExpTuple& c);

// A sparse element of the divided-power algebra 'Sym^d V, coordinates over
// the divided monomials indexed by exponent tuples.
struct DividedSymElement {
  int degree = 0;
  std::map<ExpTuple, Int> coeffs;
};

// kappa: 'Sym V -> Inv V, x_1^{(c_1)}...x_m^{(c_m)} -> x_1^{(x)c_1} * ...;
// an algebra isomorphism.
TensorElement kappa_iso(const SuperBasis& b, const DividedSymElement& x);

// Signed slotwise pairing of a dual tensor element against a tensor element
// over the same superbasis.
Int pair_tensor(const SuperBasis& b, const TensorElement& dual,
                const TensorElement& v);

// Direct sum decomposition data for V = U + W given by a slot partition:
// Inv^d V = sum_e (Inv^e U) * (Inv^{d-e} W), as maps on coordinates.
struct DirectSumDecomposition {
  // For each V-tuple index: (e, index of U-part in TupleSpace(U,e),
  // index of W-part in TupleSpace(W,d-e)).
  struct Component {
    int e;
    int u_index;
    int w_index;
  };
  std::vector<Component> split;           // indexed by V-tuple index
  std::vector<std::vector<int>> include;  // include[e][u_idx * W_e_size + w_idx] = V index
};

DirectSumDecomposition invariants_of_direct_sum(
    const SuperBasis& v, const std::vector<bool>& in_u, int d);

}  // namespace schurdouble
