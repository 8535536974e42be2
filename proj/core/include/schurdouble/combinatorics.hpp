#pragma once

#include <map>
#include <utility>
#include <vector>

#include "schurdouble/perm.hpp"
#include "schurdouble/scalars.hpp"

namespace schurdouble {

// A composition of |lambda| into n non-negative parts.
struct Weight {
  std::vector<int> parts;

  Weight() = default;
  explicit Weight(std::vector<int> p) : parts(std::move(p)) {}
  int n() const { return static_cast<int>(parts.size()); }
  int sum() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  bool operator==(const Weight& o) const { return parts == o.parts; }
  bool operator<(const Weight& o) const { return parts < o.parts; }
};

// All of Lambda(n,d), lexicographically descending; count = binom(n+d-1, d).
std::vector<Weight> enumerate_weights(int n, int d);

// omega = (1,...,1,0,...,0) with d ones (requires d <= n).
Weight omega_weight(int n, int d);

// Half-open position blocks of the standard set partition Omega^lambda:
// block s covers [start_s, start_s + lambda_s) inside [0, d).
std::vector<std::pair<int, int>> weight_blocks(const std::vector<int>& parts);

// The minimal-length permutation g with sorted(seq)^g = seq, i.e.
// seq[a] = sorted(seq)[g(a)].  Works over any ordered integer alphabet.
Perm standardize(const std::vector<int>& seq);

enum class CosetSide { Left, Right };  // Left: S_lambda \ S_d, Right: S_d / S_lambda

struct CosetData {
  Weight lambda;
  CosetSide side;
  std::vector<Perm> reps;  // each shortest in its coset
};

// Shortest coset representatives; |reps| = d! / lambda!.
CosetData shortest_coset_reps(const Weight& lambda, CosetSide side);

// An n x n matrix with non-negative integer entries, row-major.
struct MatrixWeight {
  int n = 0;
  std::vector<int> e;  // size n*n

  MatrixWeight() = default;
  MatrixWeight(int nn, std::vector<int> ee) : n(nn), e(std::move(ee)) {}
  int& at(int r, int s) { return e[r * n + s]; }
  int at(int r, int s) const { return e[r * n + s]; }
  int total() const {
    int t = 0;
    for (int x : e) t += x;
    return t;
  }
  Weight alpha() const;  // row sums
  Weight beta() const;   // column sums
  bool operator==(const MatrixWeight& o) const { return n == o.n && e == o.e; }
};

// The unique shortest double coset representative g(C) with
// |g(C)(Omega^lambda_s) cap Omega^mu_r| = c_{r,s}, lambda = beta(C),
// mu = alpha(C).
Perm double_coset_rep(const MatrixWeight& c);

// A composition indexed by [1,n] x I in lexicographic order; entry (r,i) is
// stored at (r-1)*l + (i-1).
struct ColoredWeight {
  int n = 0, l = 0;
  std::vector<int> entries;  // size n*l

  ColoredWeight() = default;
  ColoredWeight(int nn, int ll, std::vector<int> ee)
      : n(nn), l(ll), entries(std::move(ee)) {}
  int at(int r, int i) const { return entries[r * l + i]; }  // 0-based r, i
  int sum() const {
    int s = 0;
    for (int x : entries) s += x;
    return s;
  }
  Weight pi() const;  // row sums over colors
  bool operator==(const ColoredWeight& o) const { return entries == o.entries && n == o.n && l == o.l; }
  bool operator<(const ColoredWeight& o) const { return entries < o.entries; }
};

std::vector<ColoredWeight> enumerate_colored_weights(int n, int l, int d);

// ---- exponent tuples ----

// A tuple of multiplicities over an ordered homogeneous slot set; odd slots
// carry multiplicity at most 1.  Words are sequences of slot indices.
using ExpTuple = std::vector<int>;
using Word = std::vector<int>;

ExpTuple word_content(const Word& w, int num_slots);

// All exponent tuples of total degree d over the given slot parities,
// enumerated lexicographically descending (the canonical order throughout;
// it is part of the table file format).
class TupleSpace {
 public:
  TupleSpace(std::vector<int> slot_parities, int d);

  int degree() const { return d_; }
  int num_slots() const { return static_cast<int>(parities_.size()); }
  int size() const { return static_cast<int>(tuples_.size()); }
  const ExpTuple& tuple(int i) const { return tuples_[i]; }
  int index(const ExpTuple& t) const;  // -1 if not present
  const std::vector<int>& slot_parities() const { return parities_; }

  // Sorted word of the tuple: slot i repeated t[i] times, ascending.
  Word canonical_word(const ExpTuple& t) const;
  // All distinct rearrangements of the canonical word (the S_d-orbit),
  // starting with the canonical word itself.
  std::vector<Word> orbit_words(const ExpTuple& t) const;
  Int orbit_size(const ExpTuple& t) const;  // d!/t!

 private:
  std::vector<int> parities_;
  int d_;
  std::vector<ExpTuple> tuples_;
  std::map<ExpTuple, int> index_;
};

Int tuple_factorial(const ExpTuple& t);
// Entrywise product of binomials; 0 if some entry of b exceeds a's.
Int tuple_binomial(const ExpTuple& a, const ExpTuple& b);
ExpTuple tuple_add(const ExpTuple& a, const ExpTuple& b);
// True if every odd slot of t carries at most 1.
bool tuple_valid(const std::vector<int>& parities, const ExpTuple& t);
// Number of odd entries |t|_1 (counted with multiplicity).
int tuple_odd_weight(const std::vector<int>& parities, const ExpTuple& t);

// eps_{cd}: 0 if c+d is not a valid tuple; otherwise the sign
// (-1)^{sum over odd slots i > j of c_i d_j}.
int tuple_eps(const std::vector<int>& parities, const ExpTuple& c,
              const ExpTuple& d);

}  // namespace schurdouble
