#include "schurdouble/schur_weyl.hpp"

#include <algorithm>
#include <random>

namespace schurdouble {

namespace {

// slotwise product of label words, with the Koszul sign when signs is set
void word_mult_into(const Presentation& a, bool signs, const Word& u,
                    const Word& v, const Int& base,
                    const std::function<void(const Word&, const Int&)>& sink) {
  const int d = static_cast<int>(u.size());
  Int b = base;
  if (signs) {
    auto up = word_parities(a.basis, u);
    auto vp = word_parities(a.basis, v);
    if (koszul_bracket(up, vp)) b = -b;
  }
  std::vector<const SparseVec*> slot(d);
  for (int s = 0; s < d; ++s) {
    slot[s] = &a.kappa[u[s]][v[s]];
    if (slot[s]->empty()) return;
  }
  Word cur(d, 0);
  std::function<void(int, Int)> rec = [&](int s, Int acc) {
    if (s == d) {
      sink(cur, acc);
      return;
    }
    for (const auto& [lbl, c] : *slot[s]) {
      cur[s] = lbl;
      rec(s + 1, acc * c);
    }
  };
  rec(0, b);
}

std::pair<Word, Int> word_permute(const Presentation& a, bool signs,
                                  const Word& w, const Perm& g) {
  Word nw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) nw[i] = w[g(static_cast<int>(i))];
  Int c = 1;
  if (signs && perm_bracket(g, word_parities(a.basis, w))) c = -1;
  return {std::move(nw), c};
}

}  // namespace

WreathAlgebra::WreathAlgebra(const Presentation& a, int d, bool signs)
    : a_(&a), d_(d), signs_(signs) {
  if (d < 0) throw InputError("WreathAlgebra: negative degree");
}

WreathElement WreathAlgebra::zero() const {
  WreathElement e;
  e.algebra = this;
  return e;
}

WreathElement WreathAlgebra::unit() const {
  WreathElement e = zero();
  TensorElement u = unit_tensor_power(*a_, d_);
  for (const auto& [w, c] : u.coeffs)
    e.coeffs[{w, Perm::identity(d_).images()}] = c;
  return e;
}

WreathElement WreathAlgebra::monomial(const Word& w, const Perm& g,
                                      const Int& c) const {
  if (static_cast<int>(w.size()) != d_ || g.degree() != d_)
    throw InputError("WreathAlgebra::monomial: degree mismatch");
  WreathElement e = zero();
  if (c != 0) e.coeffs[{w, g.images()}] = c;
  return e;
}

WreathElement WreathAlgebra::x_of(int label, int slot) const {
  WreathElement e = zero();
  std::function<void(int, Word&, Int)> rec = [&](int s, Word& cur, Int acc) {
    if (s == d_) {
      auto key = std::make_pair(cur, Perm::identity(d_).images());
      auto it = e.coeffs.find(key);
      if (it == e.coeffs.end())
        e.coeffs.emplace(key, acc);
      else
        it->second += acc;
      return;
    }
    if (s == slot) {
      cur[s] = label;
      rec(s + 1, cur, acc);
    } else {
      for (const auto& [u, c] : a_->unit) {
        cur[s] = u;
        rec(s + 1, cur, acc * c);
      }
    }
  };
  Word cur(d_, 0);
  rec(0, cur, 1);
  return e;
}

WreathElement WreathAlgebra::perm_of(const Perm& g) const {
  WreathElement e = zero();
  TensorElement u = unit_tensor_power(*a_, d_);
  for (const auto& [w, c] : u.coeffs) e.coeffs[{w, g.images()}] = c;
  return e;
}

WreathElement WreathAlgebra::tensor_of(const TensorElement& t) const {
  if (t.degree != d_) throw InputError("tensor_of: degree mismatch");
  WreathElement e = zero();
  for (const auto& [w, c] : t.coeffs)
    e.coeffs[{w, Perm::identity(d_).images()}] = c;
  return e;
}

WreathElement WreathAlgebra::add(const WreathElement& x,
                                 const WreathElement& y) const {
  WreathElement out = x;
  out.algebra = this;
  for (const auto& [k, c] : y.coeffs) {
    auto it = out.coeffs.find(k);
    if (it == out.coeffs.end())
      out.coeffs.emplace(k, c);
    else {
      it->second += c;
      if (it->second == 0) out.coeffs.erase(it);
    }
  }
  return out;
}

WreathElement WreathAlgebra::scale(const WreathElement& x, const Int& c) const {
  WreathElement out = zero();
  if (c != 0)
    for (const auto& [k, v] : x.coeffs) out.coeffs[k] = c * v;
  return out;
}

WreathElement WreathAlgebra::multiply(const WreathElement& x,
                                      const WreathElement& y) const {
  // (u (x) g)(v (x) h) = (u . v^{g^-1}) (x) gh
  WreathElement out = zero();
  for (const auto& [kx, cx] : x.coeffs) {
    const Perm g(kx.second);
    const Perm gi = g.inverse();
    for (const auto& [ky, cy] : y.coeffs) {
      const Perm h(ky.second);
      auto [vw, vsign] = word_permute(*a_, signs_, ky.first, gi);
      const Perm gh = g.compose(h);
      word_mult_into(*a_, signs_, kx.first, vw, cx * cy * vsign,
                     [&](const Word& w, const Int& c) {
                       auto key = std::make_pair(w, gh.images());
                       auto it = out.coeffs.find(key);
                       if (it == out.coeffs.end()) {
                         if (c != 0) out.coeffs.emplace(key, c);
                       } else {
                         it->second += c;
                         if (it->second == 0) out.coeffs.erase(it);
                       }
                     });
    }
  }
  return out;
}

// ---- tensor space ----

TensorSpace::TensorSpace(const Presentation& a, int n, int d, bool signs)
    : a_(&a), n_(n), d_(d), signs_(signs), mna_(matrix_superalgebra(a, n)) {}

long TensorSpace::dim() const {
  long b = static_cast<long>(n_) * a_->dim();
  long r = 1;
  for (int i = 0; i < d_; ++i) r *= b;
  return r;
}

long TensorSpace::word_index(const Word& w) const {
  const long base = static_cast<long>(n_) * a_->dim();
  long idx = 0;
  for (int s : w) idx = idx * base + s;
  return idx;
}

TensorSpace::VElem TensorSpace::v_weight(const Weight& lam) const {
  if (lam.n() != n_ || lam.sum() != d_)
    throw InputError("v_weight: weight not in Lambda(n,d)");
  VElem out;
  out[Word{}] = 1;
  for (int r = 0; r < n_; ++r)
    for (int k = 0; k < lam.parts[r]; ++k) {
      VElem next;
      for (const auto& [w, c] : out)
        for (const auto& [u, cu] : a_->unit) {
          Word nw = w;
          nw.push_back(slot_code(r, u));
          next[nw] = c * cu;
        }
      out = std::move(next);
    }
  return out;
}

TensorSpace::VElem TensorSpace::v_colored(
    const ColoredWeight& lam, const std::vector<Element>& idems) const {
  if (lam.n != n_ || lam.sum() != d_)
    throw InputError("v_colored: colored weight not in Lambda([1,n]xI,d)");
  VElem out;
  out[Word{}] = 1;
  for (int r = 0; r < n_; ++r)
    for (int i = 0; i < lam.l; ++i)
      for (int k = 0; k < lam.at(r, i); ++k) {
        VElem next;
        for (const auto& [w, c] : out)
          for (const auto& [u, cu] : idems[i].coeffs) {
            Word nw = w;
            nw.push_back(slot_code(r, u));
            next[nw] = c * cu;
          }
        out = std::move(next);
      }
  return out;
}

TensorSpace::VElem TensorSpace::add(const VElem& x, const VElem& y) const {
  VElem out = x;
  for (const auto& [w, c] : y) {
    auto it = out.find(w);
    if (it == out.end())
      out.emplace(w, c);
    else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

TensorSpace::VElem TensorSpace::scale(const VElem& x, const Int& c) const {
  VElem out;
  if (c != 0)
    for (const auto& [w, v] : x) out[w] = c * v;
  return out;
}

TensorSpace::VElem TensorSpace::right_act(const VElem& v,
                                          const WreathElement& w) const {
  VElem out;
  auto add_term = [&](const Word& ww, const Int& c) {
    if (c == 0) return;
    auto it = out.find(ww);
    if (it == out.end())
      out.emplace(ww, c);
    else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  };
  for (const auto& [vw, cv] : v) {
    std::vector<int> vpar(d_), vlab(d_);
    for (int s = 0; s < d_; ++s) {
      vlab[s] = slot_label(vw[s]);
      vpar[s] = a_->basis.parity[vlab[s]] & 1;
    }
    for (const auto& [kw, cw] : w.coeffs) {
      const Word& u = kw.first;
      const Perm g(kw.second);
      Int base = cv * cw;
      if (signs_) {
        auto up = word_parities(a_->basis, u);
        if (koszul_bracket(vpar, up)) base = -base;
      }
      // slotwise right multiplication, then the place permutation by g
      std::vector<const SparseVec*> slot(d_);
      bool dead = false;
      for (int s = 0; s < d_ && !dead; ++s) {
        slot[s] = &a_->kappa[vlab[s]][u[s]];
        if (slot[s]->empty()) dead = true;
      }
      if (dead && d_ > 0) continue;
      Word cur(d_, 0);
      std::function<void(int, Int)> rec = [&](int s, Int acc) {
        if (s == d_) {
          // (v.u)^g with the signed place permutation
          Word perm(d_);
          std::vector<int> curp(d_);
          for (int t = 0; t < d_; ++t)
            curp[t] = a_->basis.parity[slot_label(cur[t])] & 1;
          for (int t = 0; t < d_; ++t) perm[t] = cur[g(t)];
          Int c2 = acc;
          if (signs_) {
            Perm gg(g);
            if (perm_bracket(gg, curp)) c2 = -c2;
          }
          add_term(perm, c2);
          return;
        }
        const int row = slot_row(vw[s]);
        for (const auto& [lbl, c] : *slot[s]) {
          cur[s] = slot_code(row, lbl);
          rec(s + 1, acc * c);
        }
      };
      rec(0, base);
    }
  }
  return out;
}

TensorSpace::VElem TensorSpace::left_act(const TensorElement& s,
                                         const VElem& v) const {
  if (s.degree != d_) throw InputError("left_act: degree mismatch");
  VElem out;
  auto add_term = [&](const Word& ww, const Int& c) {
    if (c == 0) return;
    auto it = out.find(ww);
    if (it == out.end())
      out.emplace(ww, c);
    else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  };
  for (const auto& [xw, cx] : s.coeffs) {
    std::vector<int> xpar = word_parities(mna_.pres.basis, xw);
    for (const auto& [vw, cv] : v) {
      Int base = cx * cv;
      if (signs_) {
        std::vector<int> vpar(d_);
        for (int t = 0; t < d_; ++t)
          vpar[t] = a_->basis.parity[slot_label(vw[t])] & 1;
        if (koszul_bracket(xpar, vpar)) base = -base;
      }
      // slotwise: xi^b_{r,s'} v^a_t = delta_{s',t} v^{ba}_r
      std::vector<const SparseVec*> slot(d_);
      std::vector<int> rows(d_);
      bool dead = false;
      for (int t = 0; t < d_ && !dead; ++t) {
        const int b = mna_.label_of(xw[t]);
        const int r = mna_.row_of(xw[t]);
        const int sc = mna_.col_of(xw[t]);
        if (sc != slot_row(vw[t])) {
          dead = true;
          break;
        }
        slot[t] = &a_->kappa[b][slot_label(vw[t])];
        rows[t] = r;
        if (slot[t]->empty()) dead = true;
      }
      if (dead) continue;
      Word cur(d_, 0);
      std::function<void(int, Int)> rec = [&](int t, Int acc) {
        if (t == d_) {
          add_term(cur, acc);
          return;
        }
        for (const auto& [lbl, c] : *slot[t]) {
          cur[t] = slot_code(rows[t], lbl);
          rec(t + 1, acc * c);
        }
      };
      rec(0, base);
    }
  }
  return out;
}

// ---- permutation modules ----

std::vector<int> label_colors(const Presentation& a,
                              const std::vector<Element>& idems) {
  std::vector<int> colors(a.dim(), -1);
  for (int b = 0; b < a.dim(); ++b) {
    Element eb = Element::basis_vector(a, Carrier::Algebra, b);
    for (std::size_t i = 0; i < idems.size(); ++i) {
      Element p = multiply(idems[i], eb);
      if (p == eb) {
        if (colors[b] >= 0)
          throw InputError("label_colors: idempotents do not split the basis");
        colors[b] = static_cast<int>(i);
      } else if (!p.is_zero()) {
        throw InputError("label_colors: idempotent family is not adapted to "
                         "the basis (e_i b is neither b nor 0)");
      }
    }
    if (colors[b] < 0)
      throw InputError("label_colors: basis label '" + a.basis.labels[b] +
                       "' not covered by the idempotent family");
  }
  return colors;
}

PermModule::PermModule(const Presentation& a, int n, int d,
                       const ColoredWeight& lam,
                       const std::vector<Element>& idems, bool signs,
                       bool alternating, std::vector<int> zeta)
    : a_(&a),
      n_(n),
      d_(d),
      lam_(lam),
      signs_(signs),
      alternating_(alternating),
      zeta_(std::move(zeta)) {
  if (lam.sum() != d) throw InputError("PermModule: |lam| != d");
  label_color_ = label_colors(a, idems);
  blocks_ = weight_blocks(lam.entries);
  pos_color_.assign(d, -1);
  for (std::size_t blk = 0; blk < blocks_.size(); ++blk) {
    const int color = static_cast<int>(blk) % lam.l;
    for (int p = blocks_[blk].first; p < blocks_[blk].second; ++p)
      pos_color_[p] = color;
  }
  if (alternating_ && static_cast<int>(zeta_.size()) != lam.l)
    throw InputError("PermModule: alternating module needs zeta per color");
  // block words: slot a ranges over labels of color pos_color_[a]
  std::vector<std::vector<int>> allowed(d);
  for (int p = 0; p < d; ++p)
    for (int b = 0; b < a.dim(); ++b)
      if (label_color_[b] == pos_color_[p]) allowed[p].push_back(b);
  Word cur(d, 0);
  std::function<void(int)> rec = [&](int p) {
    if (p == d) {
      bword_index_.emplace(cur, static_cast<int>(bwords_.size()));
      bwords_.push_back(cur);
      return;
    }
    for (int b : allowed[p]) {
      cur[p] = b;
      rec(p + 1);
    }
  };
  rec(0);
  reps_ = shortest_coset_reps(Weight(lam.entries), CosetSide::Left).reps;
  for (std::size_t i = 0; i < reps_.size(); ++i)
    rep_index_.emplace(reps_[i].images(), static_cast<int>(i));
}

long PermModule::basis_index(const Word& bword, int rep) const {
  auto it = bword_index_.find(bword);
  if (it == bword_index_.end()) throw InputError("basis_index: unknown word");
  return static_cast<long>(it->second) * reps_.size() + rep;
}

std::pair<Word, Perm> PermModule::basis_data(long i) const {
  return {bwords_[i / reps_.size()], reps_[i % reps_.size()]};
}

PermModule::MElem PermModule::generator() const {
  // m_lam = 1 (x) e_lam: normalize the idempotent word against the identity
  MElem out;
  // e_lam as a word element: slot a carries e_{color(a)}; idempotents may be
  // unit combinations, so expand honestly through normalize()
  // e_lam = product over slots of e_{color}; expansion via the presentation
  // is already encoded in normalize (sector truncation), so start from the
  // unit power.
  TensorElement u = unit_tensor_power(*a_, d_);
  for (const auto& [w, c] : u.coeffs) {
    MElem t = normalize(w, Perm::identity(d_), c);
    for (const auto& [k, v] : t) {
      out[k] += v;
      if (out[k] == 0) out.erase(k);
    }
  }
  return out;
}

PermModule::MElem PermModule::normalize(const Word& w, const Perm& g,
                                        const Int& c) const {
  MElem out;
  if (c == 0) return out;
  // sector truncation: slot a must carry a label of the block color
  for (int p = 0; p < d_; ++p)
    if (label_color_[w[p]] != pos_color_[p]) return out;
  // decompose g = s g' with s in S_lam, g' the shortest representative
  std::vector<int> seq(d_);
  for (int p = 0; p < d_; ++p) {
    // r^lam g as a sequence over block indices
    int pos = g(p);
    int blk = -1;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      if (pos >= blocks_[b].first && pos < blocks_[b].second) {
        blk = static_cast<int>(b);
        break;
      }
    seq[p] = blk;
  }
  Perm gp = standardize(seq);
  Perm s = g.compose(gp.inverse());
  // m (w (x) s g') = sign(s) (w^s (x) g')
  auto [nw, sgn] = word_permute(*a_, signs_, w, s);
  Int coeff = c * sgn;
  if (alternating_) {
    // eps_lam(s) = prod over blocks of zeta_color^{length of the block part}
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const int color = static_cast<int>(b) % lam_.l;
      if (zeta_[color] == 1) continue;
      int inv = 0;
      for (int p1 = blocks_[b].first; p1 < blocks_[b].second; ++p1)
        for (int p2 = p1 + 1; p2 < blocks_[b].second; ++p2)
          if (s(p1) > s(p2)) ++inv;
      if (inv & 1) coeff = -coeff;
    }
  }
  auto rit = rep_index_.find(gp.images());
  if (rit == rep_index_.end())
    throw CheckError("PermModule::normalize: representative not found");
  out[basis_index(nw, rit->second)] = coeff;
  return out;
}

PermModule::MElem PermModule::act(const MElem& v, const WreathElement& w) const {
  if (w.algebra->is_signed() != signs_)
    throw InputError("PermModule::act: sign convention mismatch");
  MElem out;
  for (const auto& [i, cv] : v) {
    auto [bw, g] = basis_data(i);
    for (const auto& [kw, cw] : w.coeffs) {
      // ((bw) (x) g)(u (x) h) = (bw . u^{g^-1}) (x) gh
      const Perm h(kw.second);
      auto [uw, usgn] = word_permute(*a_, signs_, kw.first, g.inverse());
      const Perm gh = g.compose(h);
      word_mult_into(*a_, signs_, bw, uw, cv * cw * usgn,
                     [&](const Word& nw, const Int& nc) {
                       MElem t = normalize(nw, gh, nc);
                       for (const auto& [k, x] : t) {
                         out[k] += x;
                         if (out[k] == 0) out.erase(k);
                       }
                     });
    }
  }
  return out;
}

// ---- commutant ----

namespace {

// sparse matrices over the tensor-space word basis, column compressed:
// cols[v] = list of (u, coeff) meaning e_v -> sum coeff e_u
struct SparseOp {
  std::map<long, std::vector<std::pair<long, Int>>> cols;
  std::map<long, std::vector<std::pair<long, Int>>> rows;
  void add(long u, long v, const Int& c) {
    cols[v].emplace_back(u, c);
    rows[u].emplace_back(v, c);
  }
};

SparseOp action_of(const TensorSpace& ts, const WreathElement& w,
                   const std::vector<Word>& words) {
  SparseOp op;
  for (const Word& v : words) {
    TensorSpace::VElem e;
    e[v] = 1;
    TensorSpace::VElem img = ts.right_act(e, w);
    const long vi = ts.word_index(v);
    for (const auto& [u, c] : img) op.add(ts.word_index(u), vi, c);
  }
  return op;
}

std::vector<Word> all_words(const TensorSpace& ts) {
  std::vector<Word> out;
  const int base = ts.n() * ts.matrix_algebra().alg_dim;
  Word cur(ts.d(), 0);
  std::function<void(int)> rec = [&](int p) {
    if (p == ts.d()) {
      out.push_back(cur);
      return;
    }
    for (int s = 0; s < base; ++s) {
      cur[p] = s;
      rec(p + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

long commutant_dimension(const Presentation& a, int n, int d, bool signs) {
  TensorSpace ts(a, n, d, signs);
  WreathAlgebra w(a, d, signs);
  const long N = ts.dim();
  std::vector<Word> words = all_words(ts);
  // generators: x[c] for every basis label and slot, adjacent transpositions
  std::vector<SparseOp> gens;
  for (int c = 0; c < d; ++c)
    for (int b = 0; b < a.dim(); ++b)
      gens.push_back(action_of(ts, w.x_of(b, c), words));
  for (int r = 0; r + 1 < d; ++r)
    gens.push_back(
        action_of(ts, w.perm_of(Perm::transposition(d, r, r + 1)), words));

  // solution space of T R = R T for all generators R, maintained as sparse
  // basis vectors over the N^2 unknowns T[u][v] (index u*N+v)
  std::vector<SpVecQ> space;
  space.reserve(N * N);
  for (long u = 0; u < N; ++u)
    for (long v = 0; v < N; ++v) {
      SpVecQ e;
      e[static_cast<int>(u * N + v)] = 1;
      space.push_back(std::move(e));
    }
  for (const SparseOp& R : gens) {
    // constraint rows over the current space coordinates
    std::map<long, SpVecQ> rows;  // constraint (u,v) -> row over space index
    for (std::size_t j = 0; j < space.size(); ++j) {
      for (const auto& [t, q] : space[j]) {
        const long u = t / N, v = t % N;
        // (T R)[u][v'] via R[v][v']: T entry (u,v) meets column-action
        auto rit = R.rows.find(v);
        if (rit != R.rows.end())
          for (const auto& [vp, rc] : rit->second)
            sparse_axpy(rows[u * N + vp], q * Rat(rc), SpVecQ{{static_cast<int>(j), 1}});
        // (R T)[u'][v] via R[u'][u]
        auto cit = R.cols.find(u);
        if (cit != R.cols.end())
          for (const auto& [up, rc] : cit->second)
            sparse_axpy(rows[up * N + v], q * Rat(-rc), SpVecQ{{static_cast<int>(j), 1}});
      }
    }
    std::vector<SpVecQ> rowvec;
    rowvec.reserve(rows.size());
    for (auto& [k, r] : rows)
      if (!r.empty()) rowvec.push_back(std::move(r));
    std::vector<SpVecQ> ker = kernel_basis(rowvec, static_cast<int>(space.size()));
    std::vector<SpVecQ> next;
    next.reserve(ker.size());
    for (const SpVecQ& k : ker) {
      SpVecQ combo;
      for (const auto& [j, c] : k) sparse_axpy(combo, c, space[j]);
      if (!combo.empty()) next.push_back(std::move(combo));
    }
    space = std::move(next);
    if (space.empty()) break;
  }
  return static_cast<long>(space.size());
}

long schur_action_rank(const SchurAlgebra& s, bool signs) {
  TensorSpace ts(s.algebra(), s.n(), s.d(), signs);
  std::vector<Word> words = all_words(ts);
  std::vector<SpVecQ> rows;
  for (int i = 0; i < s.dim(); ++i) {
    SpVecQ row;
    for (const Word& v : words) {
      TensorSpace::VElem e;
      e[v] = 1;
      TensorSpace::VElem img = ts.left_act(s.xi_expand(i), e);
      const long vi = ts.word_index(v);
      for (const auto& [u, c] : img)
        row[static_cast<int>(ts.word_index(u) * ts.dim() + vi)] = Rat(c);
    }
    rows.push_back(std::move(row));
  }
  return rank_sparse(rows);
}

StructureConstantTable commutant_table(const SchurAlgebra& s) {
  TensorSpace ts(s.algebra(), s.n(), s.d(), true);
  std::vector<Word> words = all_words(ts);
  const long N = ts.dim();
  // columns: flattened action matrices of the xi basis
  std::vector<SpVecQ> cols;
  std::vector<std::vector<TensorSpace::VElem>> images(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    SpVecQ col;
    images[i].reserve(words.size());
    for (const Word& v : words) {
      TensorSpace::VElem e;
      e[v] = 1;
      TensorSpace::VElem img = ts.left_act(s.xi_expand(i), e);
      const long vi = ts.word_index(v);
      for (const auto& [u, c] : img)
        col[static_cast<int>(ts.word_index(u) * N + vi)] = Rat(c);
      images[i].push_back(std::move(img));
    }
    cols.push_back(std::move(col));
  }
  ColumnSolver solver(cols, N * N);
  StructureConstantTable t;
  t.n = s.n();
  t.d = s.d();
  t.mode = "commutant";
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      // action of xi_i after action of xi_j on basis words
      SpVecQ flat;
      for (std::size_t vknd = 0; vknd < words.size(); ++vknd) {
        TensorSpace::VElem img = ts.left_act(s.xi_expand(i), images[j][vknd]);
        const long vi = ts.word_index(words[vknd]);
        for (const auto& [u, c] : img)
          flat[static_cast<int>(ts.word_index(u) * N + vi)] = Rat(c);
      }
      auto coords = solver.solve(flat);
      if (!coords)
        throw CheckError("commutant_table: product of actions leaves the "
                         "span of the xi basis");
      SparseVec f;
      for (int k = 0; k < s.dim(); ++k) {
        const Rat& q = (*coords)[k];
        if (q == 0) continue;
        if (q.get_den() != 1)
          throw CheckError("commutant_table: non-integral coefficient");
        f[k] = q.get_num();
      }
      if (!f.empty()) t.entries.emplace(std::make_pair(i, j), std::move(f));
    }
  return t;
}

// ---- idempotent truncation ----

TruncationChecks idempotent_truncation_checks(const Presentation& a, int n,
                                              int d, unsigned long seed) {
  if (d > n) throw InputError("idempotent_truncation_checks: requires d <= n");
  TruncationChecks out;
  SchurAlgebra s(a, n, d);
  WreathAlgebra w(a, d, true);
  TensorSpace ts(a, n, d, true);
  // lazy memoized products (full tables get large for the bigger instances)
  const auto mode = s.dim() <= 400 ? SchurAlgebra::Mode::Verified
                                   : SchurAlgebra::Mode::Oracle;
  std::map<std::pair<int, int>, SparseVec> memo;
  auto pairprod = [&](int i, int j) -> const SparseVec& {
    auto it = memo.find({i, j});
    if (it == memo.end())
      it = memo.emplace(std::make_pair(i, j), s.product(i, j, mode)).first;
    return it->second;
  };
  auto vec_product = [&](const SparseVec& x, const SparseVec& y) {
    SparseVec out_v;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) sparse_int_axpy(out_v, ci * cj, pairprod(i, j));
    return out_v;
  };

  // wreath basis: (word, perm)
  std::vector<std::pair<Word, Perm>> wbasis;
  {
    std::vector<Perm> perms = Perm::all(d);
    Word cur(d, 0);
    std::function<void(int)> rec = [&](int p) {
      if (p == d) {
        for (const Perm& g : perms) wbasis.emplace_back(cur, g);
        return;
      }
      for (int b = 0; b < a.dim(); ++b) {
        cur[p] = b;
        rec(p + 1);
      }
    };
    rec(0);
  }
  std::vector<SparseVec> phi;  // images in S coordinates
  phi.reserve(wbasis.size());
  for (const auto& [word, g] : wbasis)
    phi.push_back(s.truncation_image(word, g));

  // multiplicativity on all basis pairs
  out.multiplicative = true;
  for (std::size_t i = 0; i < wbasis.size() && out.multiplicative; ++i)
    for (std::size_t j = 0; j < wbasis.size() && out.multiplicative; ++j) {
      WreathElement prod = w.multiply(
          w.monomial(wbasis[i].first, wbasis[i].second),
          w.monomial(wbasis[j].first, wbasis[j].second));
      SparseVec lhs;
      for (const auto& [k, c] : prod.coeffs)
        sparse_int_axpy(lhs, c, s.truncation_image(k.first, Perm(k.second)));
      SparseVec rhs = vec_product(phi[i], phi[j]);
      if (lhs != rhs) out.multiplicative = false;
    }

  // characterization phi(w) v_omega = v_omega w
  out.characterized = true;
  TensorSpace::VElem vom = ts.v_omega();
  for (std::size_t i = 0; i < wbasis.size() && out.characterized; ++i) {
    TensorElement img(d);
    for (const auto& [k, c] : phi[i])
      img = te_add(img, te_scale(s.xi_expand(k), c));
    TensorSpace::VElem lhs = ts.left_act(img, vom);
    TensorSpace::VElem rhs = ts.right_act(
        vom, w.monomial(wbasis[i].first, wbasis[i].second));
    if (lhs != rhs) out.characterized = false;
  }

  // corner lattice phi(W) = xi_omega S xi_omega
  {
    SparseVec xiom = s.xi_weight(omega_weight(n, d));
    LatticeSpan left(s.dim()), right(s.dim());
    for (const auto& p : phi) {
      IntVec v(s.dim(), 0);
      for (const auto& [k, c] : p) v[k] = c;
      left.add(std::move(v));
    }
    for (int i = 0; i < s.dim(); ++i) {
      SparseVec e;
      e[i] = 1;
      SparseVec corner =
          vec_product(vec_product(xiom, e), xiom);
      IntVec v(s.dim(), 0);
      for (const auto& [k, c] : corner) v[k] = c;
      right.add(std::move(v));
    }
    out.corner_lattice = left.hnf() == right.hnf();
  }

  // bimodule lattice: S xi_omega -> Tens^d V, s xi_omega -> s v_omega is onto
  {
    LatticeSpan image(static_cast<int>(ts.dim()));
    for (int i = 0; i < s.dim(); ++i) {
      TensorSpace::VElem img = ts.left_act(s.xi_expand(i), vom);
      IntVec v(static_cast<int>(ts.dim()), 0);
      for (const auto& [u, c] : img) v[ts.word_index(u)] = c;
      image.add(std::move(v));
    }
    // the image lattice is all of Z^dim iff the canonical HNF is the identity
    IntMat h = image.hnf();
    bool full = static_cast<long>(h.size()) == ts.dim();
    for (std::size_t i = 0; i < h.size() && full; ++i)
      for (std::size_t j = 0; j < h[i].size() && full; ++j)
        if (h[i][j] != (i == j ? 1 : 0)) full = false;
    out.bimodule_lattice = full;
  }

  // sampled intertwining: psi(s' (s xi_om) phi(w)) = s' psi(s xi_om) w
  {
    std::mt19937_64 rng(seed);
    out.intertwines = true;
    for (int trial = 0; trial < 24 && out.intertwines; ++trial) {
      const int si = static_cast<int>(rng() % s.dim());
      const int sj = static_cast<int>(rng() % s.dim());
      const auto& [word, g] = wbasis[rng() % wbasis.size()];
      SparseVec xiom = s.xi_weight(omega_weight(n, d));
      SparseVec e;
      e[sj] = 1;
      SparseVec u = vec_product(e, xiom);  // xi_j xi_omega
      // psi(u) = u . v_omega
      TensorElement ut(d);
      for (const auto& [k, c] : u) ut = te_add(ut, te_scale(s.xi_expand(k), c));
      TensorSpace::VElem psi_u = ts.left_act(ut, vom);
      // left action of s_i and right action of w on both sides
      SparseVec su = vec_product(SparseVec{{si, 1}}, u);
      SparseVec suw =
          vec_product(su, s.truncation_image(word, g));
      TensorElement suwt(d);
      for (const auto& [k, c] : suw)
        suwt = te_add(suwt, te_scale(s.xi_expand(k), c));
      TensorSpace::VElem lhs = ts.left_act(suwt, vom);
      TensorSpace::VElem rhs = ts.right_act(
          ts.left_act(s.xi_expand(si), psi_u), w.monomial(word, g));
      if (lhs != rhs) out.intertwines = false;
    }
  }
  return out;
}

}  // namespace schurdouble
