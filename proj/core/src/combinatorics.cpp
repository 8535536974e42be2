#include "schurdouble/combinatorics.hpp"

#include <algorithm>
#include <functional>

namespace schurdouble {

std::vector<Weight> enumerate_weights(int n, int d) {
  if (n < 1) throw InputError("enumerate_weights: n must be positive");
  if (d < 0) throw InputError("enumerate_weights: d must be non-negative");
  std::vector<Weight> out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int slot, int rest) {
    if (slot == n - 1) {
      cur[slot] = rest;
      out.emplace_back(cur);
      return;
    }
    for (int m = rest; m >= 0; --m) {
      cur[slot] = m;
      rec(slot + 1, rest - m);
    }
  };
  rec(0, d);
  return out;
}

Weight omega_weight(int n, int d) {
  if (d > n) throw InputError("omega_weight: requires d <= n");
  std::vector<int> p(n, 0);
  for (int i = 0; i < d; ++i) p[i] = 1;
  return Weight(std::move(p));
}

std::vector<std::pair<int, int>> weight_blocks(const std::vector<int>& parts) {
  std::vector<std::pair<int, int>> blocks;
  int off = 0;
  for (int p : parts) {
    blocks.emplace_back(off, off + p);
    off += p;
  }
  return blocks;
}

Perm standardize(const std::vector<int>& seq) {
  const int d = static_cast<int>(seq.size());
  std::vector<int> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  // next unused position in `sorted` for each value
  std::map<int, int> next;
  for (int i = d - 1; i >= 0; --i) next[sorted[i]] = i;
  std::vector<int> img(d);
  for (int a = 0; a < d; ++a) img[a] = next[seq[a]]++;
  return Perm(std::move(img));
}

CosetData shortest_coset_reps(const Weight& lambda, CosetSide side) {
  const int d = lambda.sum();
  // r^lambda = (0^{l_0}, 1^{l_1}, ...); its distinct rearrangements biject
  // with the cosets, and standardization picks the shortest representative.
  std::vector<int> base;
  base.reserve(d);
  for (int s = 0; s < lambda.n(); ++s)
    for (int k = 0; k < lambda.parts[s]; ++k) base.push_back(s);
  CosetData out;
  out.lambda = lambda;
  out.side = side;
  std::vector<int> w = base;
  do {
    Perm g = standardize(w);
    out.reps.push_back(side == CosetSide::Left ? g : g.inverse());
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

Weight MatrixWeight::alpha() const {
  std::vector<int> p(n, 0);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) p[r] += at(r, s);
  return Weight(std::move(p));
}

Weight MatrixWeight::beta() const {
  std::vector<int> p(n, 0);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) p[s] += at(r, s);
  return Weight(std::move(p));
}

Perm double_coset_rep(const MatrixWeight& c) {
  const int n = c.n;
  const int d = c.total();
  const Weight lambda = c.beta(), mu = c.alpha();
  auto lb = weight_blocks(lambda.parts);
  auto mb = weight_blocks(mu.parts);
  std::vector<int> img(d, -1);
  // Positions of Omega^lambda_s, in increasing order, go to the values of
  // Omega^mu_r in increasing order, r-blocks consumed top to bottom; the
  // values within Omega^mu_r are consumed as s increases.  This makes g
  // increasing on each lambda-block and g^{-1} increasing on each mu-block,
  // which characterizes the shortest double coset representative.
  std::vector<int> mu_used(n, 0);
  for (int s = 0; s < n; ++s) {
    int pos = lb[s].first;
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < c.at(r, s); ++k) {
        img[pos++] = mb[r].first + mu_used[r]++;
      }
    }
  }
  return Perm(std::move(img));
}

Weight ColoredWeight::pi() const {
  std::vector<int> p(n, 0);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < l; ++i) p[r] += at(r, i);
  return Weight(std::move(p));
}

std::vector<ColoredWeight> enumerate_colored_weights(int n, int l, int d) {
  std::vector<ColoredWeight> out;
  for (const Weight& w : enumerate_weights(n * l, d))
    out.emplace_back(n, l, w.parts);
  return out;
}

ExpTuple word_content(const Word& w, int num_slots) {
  ExpTuple t(num_slots, 0);
  for (int s : w) t[s]++;
  return t;
}

TupleSpace::TupleSpace(std::vector<int> slot_parities, int d)
    : parities_(std::move(slot_parities)), d_(d) {
  if (d < 0) throw InputError("TupleSpace: negative degree");
  const int m = num_slots();
  ExpTuple cur(m, 0);
  std::function<void(int, int)> rec = [&](int slot, int rest) {
    if (slot == m) {
      if (rest == 0) {
        index_.emplace(cur, static_cast<int>(tuples_.size()));
        tuples_.push_back(cur);
      }
      return;
    }
    const int cap = (parities_[slot] & 1) ? std::min(1, rest) : rest;
    for (int k = cap; k >= 0; --k) {
      cur[slot] = k;
      rec(slot + 1, rest - k);
    }
    cur[slot] = 0;
  };
  rec(0, d);
}

int TupleSpace::index(const ExpTuple& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? -1 : it->second;
}

Word TupleSpace::canonical_word(const ExpTuple& t) const {
  Word w;
  w.reserve(d_);
  for (int s = 0; s < num_slots(); ++s)
    for (int k = 0; k < t[s]; ++k) w.push_back(s);
  return w;
}

std::vector<Word> TupleSpace::orbit_words(const ExpTuple& t) const {
  Word w = canonical_word(t);
  std::vector<Word> out;
  Word it = w;
  do {
    out.push_back(it);
  } while (std::next_permutation(it.begin(), it.end()));
  return out;
}

Int TupleSpace::orbit_size(const ExpTuple& t) const {
  return exact_div(factorial(d_), tuple_factorial(t));
}

Int tuple_factorial(const ExpTuple& t) {
  Int f = 1;
  for (int m : t) f *= factorial(m);
  return f;
}

Int tuple_binomial(const ExpTuple& a, const ExpTuple& b) {
  if (a.size() != b.size()) throw InputError("tuple_binomial: size mismatch");
  Int f = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] > a[i]) return 0;
    f *= binomial(a[i], b[i]);
  }
  return f;
}

ExpTuple tuple_add(const ExpTuple& a, const ExpTuple& b) {
  if (a.size() != b.size()) throw InputError("tuple_add: size mismatch");
  ExpTuple c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

bool tuple_valid(const std::vector<int>& parities, const ExpTuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if ((parities[i] & 1) && t[i] > 1) return false;
  return true;
}

int tuple_odd_weight(const std::vector<int>& parities, const ExpTuple& t) {
  int k = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (parities[i] & 1) k += t[i];
  return k;
}

int tuple_eps(const std::vector<int>& parities, const ExpTuple& c,
              const ExpTuple& d) {
  ExpTuple sum = tuple_add(c, d);
  if (!tuple_valid(parities, sum)) return 0;
  int s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(parities[i] & 1) || c[i] == 0) continue;
    for (std::size_t j = 0; j < i; ++j)
      if ((parities[j] & 1) && d[j] != 0) s += c[i] * d[j];
  }
  return (s & 1) ? -1 : 1;
}

}  // namespace schurdouble
