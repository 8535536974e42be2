#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "schurdouble/scalars.hpp"

namespace schurdouble {

// A permutation g of {0,...,d-1}, stored in one-line notation as the images
// g(0),...,g(d-1).  Permutations act on the left of positions; the induced
// right action on words is (w^g)[a] = w[g(a)], so that (w^g)^h = w^{gh} with
// gh meaning "apply h, then g" (ordinary function composition).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images) : img_(std::move(images)) {}

  static Perm identity(int d) {
    std::vector<int> v(d);
    std::iota(v.begin(), v.end(), 0);
    return Perm(std::move(v));
  }

  static Perm transposition(int d, int a, int b) {
    Perm g = identity(d);
    std::swap(g.img_[a], g.img_[b]);
    return g;
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int a) const { return img_[a]; }
  const std::vector<int>& images() const { return img_; }

  Perm compose(const Perm& h) const {  // (g.compose(h))(a) = g(h(a))
    std::vector<int> v(img_.size());
    for (std::size_t a = 0; a < img_.size(); ++a) v[a] = img_[h.img_[a]];
    return Perm(std::move(v));
  }

  Perm inverse() const {
    std::vector<int> v(img_.size());
    for (std::size_t a = 0; a < img_.size(); ++a) v[img_[a]] = static_cast<int>(a);
    return Perm(std::move(v));
  }

  // Coxeter length = number of inversions of the one-line word.  d is tiny
  // throughout, so the O(d^2) count is fine.
  int length() const {
    int inv = 0;
    for (std::size_t a = 0; a < img_.size(); ++a)
      for (std::size_t c = a + 1; c < img_.size(); ++c)
        if (img_[a] > img_[c]) ++inv;
    return inv;
  }

  bool is_identity() const {
    for (std::size_t a = 0; a < img_.size(); ++a)
      if (img_[a] != static_cast<int>(a)) return false;
    return true;
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  static std::vector<Perm> all(int d) {
    std::vector<int> v(d);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Perm> out;
    do {
      out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }

 private:
  std::vector<int> img_;
};

// Koszul bracket [x_1..x_d; y_1..y_d] = sum_{a<c} x_c*y_a over parity words,
// reduced mod 2.
inline int koszul_bracket(const std::vector<int>& xs, const std::vector<int>& ys) {
  int s = 0;
  for (std::size_t a = 0; a + 1 < ys.size(); ++a)
    if (ys[a] & 1)
      for (std::size_t c = a + 1; c < xs.size(); ++c) s += xs[c] & 1;
  return s & 1;
}

// Sign bracket [g; v_1..v_d] = sum over a<c with g^{-1}(a) > g^{-1}(c) of
// v_a*v_c, reduced mod 2.  Governs place permutations of super words.
inline int perm_bracket(const Perm& g, const std::vector<int>& parities) {
  const Perm gi = g.inverse();
  int s = 0;
  const int d = g.degree();
  for (int a = 0; a < d; ++a) {
    if (!(parities[a] & 1)) continue;
    for (int c = a + 1; c < d; ++c)
      if ((parities[c] & 1) && gi(a) > gi(c)) ++s;
  }
  return s & 1;
}

}  // namespace schurdouble
