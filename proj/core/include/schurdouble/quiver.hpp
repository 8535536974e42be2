#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schurdouble/schur.hpp"
#include "schurdouble/schur_weyl.hpp"
#include "schurdouble/superalgebra.hpp"

namespace schurdouble {

// A quiver with vertex set {1..l} and directed edges; the underlying graph
// must be connected with no loops and no multiple edges.
struct Quiver {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (source, target), 1-based

  void validate() const;
  bool adjacent(int i, int j) const;  // 1-based, underlying graph
  // BFS 2-coloring with vertex 1 assigned +1; nullopt when the graph has an
  // odd cycle.
  std::optional<std::vector<int>> bipartition_signs() const;
};

// Path algebra of Q modulo all quadratic relations: vertices even (degree 0),
// edges odd (degree 1).
Presentation build_pq(const Quiver& q);

// Zigzag algebra of the underlying graph: basis e_i, a^{i,j} (j a neighbor of
// i), c^(i); degrees 0/1/2, parity = degree mod 2.  For a single vertex this
// is k[c]/(c^2) with c in degree 2.  Paths compose like functions: a^{i,j}
// starts at j and ends at i, and a^{i,j} a^{j,k} is a path through j.
Presentation build_zigzag(const Quiver& q);

// The graded superalgebra isomorphism T_{P_Q} -> Z with e_i -> e_i,
// e_i* -> c^(i), beta -> a^{t,s}, beta* -> a^{s,t}.
struct ZigzagIso {
  Presentation tpq;           // T_{P_Q} with its canonical label order
  Presentation zigzag;        // Z
  std::vector<int> map;       // T_{P_Q} label -> Z label
};

ZigzagIso build_pq_and_zigzag(const Quiver& q, bool verify = true);

// Adapted idempotent pair: e0 + e1 = 1, orthogonal, and conjugation sorts the
// parity components: A_0 = e0Ae0 + e1Ae1, A_1 = e0Ae1 + e1Ae0.
struct AdaptedPair {
  Element e0, e1;
};

// Throws CheckError with a witness basis element when not adapted.
AdaptedPair adapted_pair(const Presentation& a, const Element& e0,
                         const Element& e1);

// Desuperization sigma: W^{|A|}_d -> |W^A_d| determined on generators by
//   x[t] -> sum of signed idempotent-prefixed tensors,
//   tau_r -> tau_r (e^{00}[r] + e^{01}[r] + e^{10}[r] - e^{11}[r]).
// Verified to satisfy all wreath relations on generators; invertible blockwise.
class Desuperization {
 public:
  Desuperization(const Presentation& a, const AdaptedPair& pair, int d,
                 bool verify = true);

  const WreathAlgebra& source() const { return plain_; }  // W^{|A|}_d
  const WreathAlgebra& target() const { return super_; }  // |W^A_d|
  WreathElement sigma(const WreathElement& w) const;
  WreathElement sigma_inverse(const WreathElement& w) const;
  WreathElement sigma_x(int label, int slot) const;  // sigma(x[t]), 0-based slot
  WreathElement sigma_tau(int r) const;              // sigma(tau_r), 0-based r
  // Determinant of sigma restricted to the block A^{(x)d} (x) g (must be +-1).
  Int block_determinant(const Perm& g) const;
  // All wreath generator relations pushed through sigma.
  void verify_relations() const;

 private:
  const Presentation* a_;
  int d_;
  AdaptedPair pair_;
  WreathAlgebra plain_, super_;
  // sigma(u (x) g) = (M_g u) (x) g blockwise; per-permutation dense matrices
  // over the word basis of A^{(x)d}, with inverses for sigma^{-1}.
  std::vector<Word> words_;
  std::map<Word, long> word_index_;
  mutable std::map<std::vector<int>, std::vector<std::vector<Rat>>> block_inv_;
  WreathElement sigma_monomial(const Word& w, const Perm& g) const;
  const std::vector<std::vector<Rat>>& block_inverse(const Perm& g) const;
};

// Alternating colored permutation module data and the isomorphism
// M^{|A|}_lam -> |M^A_lam|^sigma on basis vectors.
struct AlternatingModuleCheck {
  bool basis_bijection = false;
  bool module_map = false;
};

AlternatingModuleCheck check_alternating_module(const Presentation& a,
                                                const AdaptedPair& pair,
                                                const std::vector<Element>& idems,
                                                int n, int d,
                                                const ColoredWeight& lam);

// ---- schiver machinery ----

// End_{W^{|Z|}_d}(M^{|Z|}(n,d)) elements as block sparse matrices over the
// colored-permutation-module bases; built through the tensor-space
// identification and the desuperization sigma.
class SchiverContext {
 public:
  SchiverContext(const Quiver& q, int n, int d);

  const Presentation& zigzag() const { return z_; }
  int n() const { return n_; }
  int d() const { return d_; }
  const std::vector<ColoredWeight>& colored_weights() const { return lams_; }

  // Total dimension of M^{|Z|}(n,d) and the block offsets per colored weight.
  long total_dim() const { return total_dim_; }

  // psi(xi_C) as a sparse endomorphism matrix (column index = basis vector of
  // M_lam, row index = basis vector of M_mu), flattened.
  SpVecQ psi_of_schur_basis(int xi_index) const;

  // i^lam(z) for z a label of Z and lam in Lambda([1,n-1] x I, d-1).
  SpVecQ i_lambda(const ColoredWeight& lam, int z_label) const;

  // Degree-zero component of |S^Z(n,d)|: indices of xi_C supported on the
  // degree-0 labels of Z.
  std::vector<int> degree_zero_basis() const;

  const SchurAlgebra& schur() const { return *schur_; }

  struct GenerationResult {
    bool generated = false;
    long closure_rank = 0;
    int rounds = 0;
    std::string witness;
  };
  // Z-span closure of |S^Z(n,d)|^0 together with all i^lam(Z) inside
  // End_{W^{|Z|}}(M^{|Z|}(n,d)), compared with the |D_Q(n,d)| lattice
  // transported through psi.
  GenerationResult generation_check() const;

  // Coordinates of an endomorphism over the psi(xi_C) basis; integrality is
  // asserted (psi is an isomorphism over Z).
  IntVec endo_coordinates(const SpVecQ& endo) const;

  // connecting wreath elements h_{mu,lam} with y v_lam = sum v_mu h_{mu,lam}
  std::map<int, WreathElement> connecting(int xi_index, int lam_block) const;
  const PermModule& module(int block) const { return *modules_[block]; }
  const Desuperization& desuperization() const { return *desup_; }
  long block_offset(int block) const { return block_offset_[block]; }
  int block_of(const ColoredWeight& lam) const;

 private:
  Quiver q_;
  int n_, d_;
  Presentation z_;
  std::vector<Element> vertex_idems_;
  std::vector<int> zeta_;
  AdaptedPair pair_;
  std::unique_ptr<Desuperization> desup_;
  std::unique_ptr<SchurAlgebra> schur_;    // S^Z(n,d)
  std::unique_ptr<WreathAlgebra> wsuper_;  // W^Z_d
  std::unique_ptr<WreathAlgebra> wplain_;  // W^{|Z|}_d
  std::unique_ptr<TensorSpace> tspace_;
  std::vector<ColoredWeight> lams_;
  std::vector<std::unique_ptr<PermModule>> modules_;  // alternating, over |Z|
  std::vector<long> block_offset_;
  long total_dim_ = 0;
  std::vector<SpVecQ> psi_columns_;
  std::unique_ptr<ColumnSolver> psi_solver_;

  long flat_index(long row, long col) const { return row * total_dim_ + col; }
};

}  // namespace schurdouble
