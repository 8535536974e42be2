#include "schurdouble/quiver.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace schurdouble {

void Quiver::validate() const {
  if (num_vertices < 1) throw InputError("Quiver: needs at least one vertex");
  std::vector<std::vector<bool>> seen(num_vertices,
                                      std::vector<bool>(num_vertices, false));
  for (const auto& [s, t] : edges) {
    if (s < 1 || s > num_vertices || t < 1 || t > num_vertices)
      throw InputError("Quiver: edge endpoint out of range");
    if (s == t) throw InputError("Quiver: loops are not allowed");
    if (seen[s - 1][t - 1] || seen[t - 1][s - 1])
      throw InputError("Quiver: multiple edges are not allowed");
    seen[s - 1][t - 1] = seen[t - 1][s - 1] = true;
  }
  // connectivity of the underlying graph
  std::vector<bool> vis(num_vertices, false);
  std::deque<int> queue{0};
  vis[0] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u = 0; u < num_vertices; ++u)
      if (seen[v][u] && !vis[u]) {
        vis[u] = true;
        queue.push_back(u);
      }
  }
  for (bool b : vis)
    if (!b) throw InputError("Quiver: underlying graph is not connected");
}

bool Quiver::adjacent(int i, int j) const {
  for (const auto& [s, t] : edges)
    if ((s == i && t == j) || (s == j && t == i)) return true;
  return false;
}

std::optional<std::vector<int>> Quiver::bipartition_signs() const {
  std::vector<int> sign(num_vertices, 0);
  sign[0] = 1;
  std::deque<int> queue{1};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u = 1; u <= num_vertices; ++u) {
      if (!adjacent(v, u)) continue;
      if (sign[u - 1] == 0) {
        sign[u - 1] = -sign[v - 1];
        queue.push_back(u);
      } else if (sign[u - 1] == sign[v - 1]) {
        return std::nullopt;  // odd cycle
      }
    }
  }
  return sign;
}

Presentation build_pq(const Quiver& q) {
  q.validate();
  const int l = q.num_vertices;
  const int m = static_cast<int>(q.edges.size());
  Presentation p;
  p.name = "P(Q:" + std::to_string(l) + "v" + std::to_string(m) + "e)";
  p.basis.labels.resize(l + m);
  p.basis.parity.resize(l + m);
  p.basis.degree.resize(l + m);
  for (int i = 0; i < l; ++i) {
    p.basis.labels[i] = "e" + std::to_string(i + 1);
    p.basis.parity[i] = 0;
    p.basis.degree[i] = 0;
  }
  for (int b = 0; b < m; ++b) {
    p.basis.labels[l + b] = "b" + std::to_string(b + 1);
    p.basis.parity[l + b] = 1;
    p.basis.degree[l + b] = 1;
  }
  for (int i = 0; i < l; ++i) p.unit[i] = 1;
  p.kappa.assign(l + m, std::vector<SparseVec>(l + m));
  for (int i = 0; i < l; ++i) p.kappa[i][i][i] = 1;
  for (int b = 0; b < m; ++b) {
    const int src = q.edges[b].first - 1, tgt = q.edges[b].second - 1;
    p.kappa[tgt][l + b][l + b] = 1;  // e_{t(beta)} beta = beta
    p.kappa[l + b][src][l + b] = 1;  // beta e_{s(beta)} = beta
  }
  p.check();
  return p;
}

Presentation build_zigzag(const Quiver& q) {
  q.validate();
  const int l = q.num_vertices;
  const int m = static_cast<int>(q.edges.size());
  Presentation z;
  z.name = "Z(" + std::to_string(l) + "v" + std::to_string(m) + "e)";
  const int dim = 2 * l + 2 * m;
  z.basis.labels.resize(dim);
  z.basis.parity.resize(dim);
  z.basis.degree.resize(dim);
  // order: e_1..e_l, c^(1)..c^(l), then a^{t,s} per edge, then a^{s,t}
  auto aname = [](int i, int j) {
    return "a[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
  };
  std::vector<std::pair<int, int>> apairs;  // (i, j): target i, source j
  for (const auto& [s, t] : q.edges) apairs.emplace_back(t - 1, s - 1);
  for (const auto& [s, t] : q.edges) apairs.emplace_back(s - 1, t - 1);
  for (int i = 0; i < l; ++i) {
    z.basis.labels[i] = "e" + std::to_string(i + 1);
    z.basis.parity[i] = 0;
    z.basis.degree[i] = 0;
    z.basis.labels[l + i] = "c" + std::to_string(i + 1);
    z.basis.parity[l + i] = 0;
    z.basis.degree[l + i] = 2;
  }
  for (int k = 0; k < 2 * m; ++k) {
    z.basis.labels[2 * l + k] = aname(apairs[k].first, apairs[k].second);
    z.basis.parity[2 * l + k] = 1;
    z.basis.degree[2 * l + k] = 1;
  }
  for (int i = 0; i < l; ++i) z.unit[i] = 1;
  z.kappa.assign(dim, std::vector<SparseVec>(dim));
  auto E = [&](int i) { return i; };
  auto C = [&](int i) { return l + i; };
  auto A = [&](int k) { return 2 * l + k; };
  for (int i = 0; i < l; ++i) {
    z.kappa[E(i)][E(i)][E(i)] = 1;
    z.kappa[E(i)][C(i)][C(i)] = 1;
    z.kappa[C(i)][E(i)][C(i)] = 1;
  }
  for (int k = 0; k < 2 * m; ++k) {
    const auto [i, j] = apairs[k];
    z.kappa[E(i)][A(k)][A(k)] = 1;  // e_i a^{i,j} = a^{i,j}
    z.kappa[A(k)][E(j)][A(k)] = 1;  // a^{i,j} e_j = a^{i,j}
    for (int k2 = 0; k2 < 2 * m; ++k2) {
      const auto [i2, j2] = apairs[k2];
      // a^{i,j} a^{i2,j2}: needs j = i2; a cycle only when i = j2
      if (j == i2 && i == j2) z.kappa[A(k)][A(k2)][C(i)] = 1;
    }
  }
  z.check();
  return z;
}

ZigzagIso build_pq_and_zigzag(const Quiver& q, bool verify) {
  ZigzagIso iso;
  Presentation pq = build_pq(q);
  TrivialExtension t = trivial_extension(pq);
  iso.tpq = t.pres;
  iso.zigzag = build_zigzag(q);
  const int dim = iso.tpq.dim();
  if (dim != iso.zigzag.dim())
    throw CheckError("build_pq_and_zigzag: dimension mismatch");
  // T_{P_Q} order: [e_i, e_i*, b, b*]; zigzag order: [e_i, c^(i), a^{t,s},
  // a^{s,t}] -- the isomorphism is position preserving.
  iso.map.resize(dim);
  for (int i = 0; i < dim; ++i) iso.map[i] = i;
  if (verify) {
    for (int i = 0; i < dim; ++i) {
      if ((iso.tpq.basis.parity[i] & 1) != (iso.zigzag.basis.parity[i] & 1))
        throw CheckError("zigzag iso: parity mismatch at position " +
                         std::to_string(i));
      if (iso.tpq.basis.degree[i] != iso.zigzag.basis.degree[i])
        throw CheckError("zigzag iso: degree mismatch at position " +
                         std::to_string(i));
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        SparseVec mapped;
        for (const auto& [k, c] : iso.tpq.kappa[i][j]) mapped[iso.map[k]] = c;
        if (mapped != iso.zigzag.kappa[iso.map[i]][iso.map[j]])
          throw CheckError("zigzag iso: multiplicativity fails on (" +
                           iso.tpq.basis.labels[i] + ", " +
                           iso.tpq.basis.labels[j] + ")");
      }
  }
  return iso;
}

AdaptedPair adapted_pair(const Presentation& a, const Element& e0,
                         const Element& e1) {
  Element sum = add(e0, e1);
  if (!(sum == Element::unit_element(a)))
    throw CheckError("adapted_pair: e0 + e1 != 1");
  if (!(multiply(e0, e0) == e0) || !(multiply(e1, e1) == e1))
    throw CheckError("adapted_pair: not idempotent");
  if (!multiply(e0, e1).is_zero() || !multiply(e1, e0).is_zero())
    throw CheckError("adapted_pair: not orthogonal");
  const Element* es[2] = {&e0, &e1};
  for (int b = 0; b < a.dim(); ++b) {
    Element eb = Element::basis_vector(a, Carrier::Algebra, b);
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        Element comp = multiply(multiply(*es[al], eb), *es[be]);
        if (comp.is_zero()) continue;
        if (((al + be) & 1) != (a.basis.parity[b] & 1))
          throw CheckError("adapted_pair: adaptedness fails at basis element '" +
                           a.basis.labels[b] + "'");
      }
  }
  return AdaptedPair{e0, e1};
}

// ---- desuperization ----

namespace {

std::vector<int> adjacent_word(const Perm& g) {
  // g = tau_{w_1} ... tau_{w_k} (left to right product)
  std::vector<int> img = g.images();
  std::vector<int> word;
  const int d = g.degree();
  // repeatedly multiply by tau on the right to sort: img o tau_a swaps the
  // entries at positions a, a+1
  bool sorted = false;
  while (!sorted) {
    sorted = true;
    for (int a = 0; a + 1 < d; ++a)
      if (img[a] > img[a + 1]) {
        std::swap(img[a], img[a + 1]);
        word.push_back(a);
        sorted = false;
      }
  }
  // img * (tau_{w_k} ... tau_{w_1}) = id  =>  g = tau_{w_k}^{-1}... reversed
  std::reverse(word.begin(), word.end());
  return word;
}

}  // namespace

Desuperization::Desuperization(const Presentation& a, const AdaptedPair& pair,
                               int d, bool verify)
    : a_(&a), d_(d), pair_(pair), plain_(a, d, false), super_(a, d, true) {
  // word basis of A^{(x)d}
  Word cur(d_, 0);
  std::function<void(int)> rec = [&](int p) {
    if (p == d_) {
      word_index_.emplace(cur, static_cast<long>(words_.size()));
      words_.push_back(cur);
      return;
    }
    for (int b = 0; b < a_->dim(); ++b) {
      cur[p] = b;
      rec(p + 1);
    }
  };
  rec(0);
  if (verify) verify_relations();
}

WreathElement Desuperization::sigma_x(int label, int slot) const {
  // (e^0 + (-1)^{|x|} e^1)^{(x)slot} (x) x (x) 1^{(x)(d-slot-1)}
  const bool odd = a_->basis.parity[label] & 1;
  Element pref = odd ? add(pair_.e0, scale(pair_.e1, -1)) : add(pair_.e0, pair_.e1);
  WreathElement out = super_.zero();
  std::function<void(int, Word&, Int)> rec = [&](int p, Word& w, Int acc) {
    if (p == d_) {
      auto key = std::make_pair(w, Perm::identity(d_).images());
      auto it = out.coeffs.find(key);
      if (it == out.coeffs.end())
        out.coeffs.emplace(key, acc);
      else
        it->second += acc;
      return;
    }
    if (p == slot) {
      w[p] = label;
      rec(p + 1, w, acc);
    } else if (p < slot) {
      for (const auto& [b, c] : pref.coeffs) {
        w[p] = b;
        rec(p + 1, w, acc * c);
      }
    } else {
      for (const auto& [b, c] : a_->unit) {
        w[p] = b;
        rec(p + 1, w, acc * c);
      }
    }
  };
  Word w(d_, 0);
  rec(0, w, 1);
  return out;
}

WreathElement Desuperization::sigma_tau(int r) const {
  // tau_r (e^{00}[r] + e^{01}[r] + e^{10}[r] - e^{11}[r])
  WreathElement combo = super_.zero();
  const Element* es[2] = {&pair_.e0, &pair_.e1};
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be) {
      const Int sign = (al == 1 && be == 1) ? -1 : 1;
      std::function<void(int, Word&, Int)> rec = [&](int p, Word& w, Int acc) {
        if (p == d_) {
          auto key = std::make_pair(w, Perm::identity(d_).images());
          auto it = combo.coeffs.find(key);
          if (it == combo.coeffs.end())
            combo.coeffs.emplace(key, acc);
          else {
            it->second += acc;
            if (it->second == 0) combo.coeffs.erase(it);
          }
          return;
        }
        const SparseVec* src = (p == r)       ? &es[al]->coeffs
                               : (p == r + 1) ? &es[be]->coeffs
                                              : &a_->unit;
        for (const auto& [b, c] : *src) {
          w[p] = b;
          rec(p + 1, w, acc * c);
        }
      };
      Word w(d_, 0);
      rec(0, w, sign);
    }
  return super_.multiply(super_.perm_of(Perm::transposition(d_, r, r + 1)),
                         combo);
}

WreathElement Desuperization::sigma_monomial(const Word& w, const Perm& g) const {
  WreathElement acc = super_.unit();
  for (int c = 0; c < d_; ++c) acc = super_.multiply(acc, sigma_x(w[c], c));
  for (int r : adjacent_word(g)) acc = super_.multiply(acc, sigma_tau(r));
  return acc;
}

WreathElement Desuperization::sigma(const WreathElement& x) const {
  WreathElement out = super_.zero();
  for (const auto& [k, c] : x.coeffs)
    out = super_.add(out, super_.scale(sigma_monomial(k.first, Perm(k.second)), c));
  return out;
}

const std::vector<std::vector<Rat>>& Desuperization::block_inverse(
    const Perm& g) const {
  auto it = block_inv_.find(g.images());
  if (it != block_inv_.end()) return it->second;
  const long nw = static_cast<long>(words_.size());
  // columns: sigma(u (x) g) coefficients over words (single perm block g)
  std::vector<std::vector<Rat>> m(nw, std::vector<Rat>(2 * nw, Rat(0)));
  for (long j = 0; j < nw; ++j) {
    WreathElement img = sigma_monomial(words_[j], g);
    for (const auto& [k, c] : img.coeffs) {
      if (!(Perm(k.second) == g))
        throw CheckError("desuperization: sigma left its permutation block");
      m[word_index_.at(k.first)][j] = Rat(c);
    }
  }
  for (long i = 0; i < nw; ++i) m[i][nw + i] = 1;
  for (long c = 0; c < nw; ++c) {
    long piv = -1;
    for (long r = c; r < nw; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw CheckError("desuperization: singular block");
    std::swap(m[c], m[piv]);
    Rat inv = 1 / m[c][c];
    for (long j = 0; j < 2 * nw; ++j) m[c][j] *= inv;
    for (long r = 0; r < nw; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (long j = 0; j < 2 * nw; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<std::vector<Rat>> inv(nw, std::vector<Rat>(nw));
  for (long r = 0; r < nw; ++r)
    for (long j = 0; j < nw; ++j) inv[r][j] = m[r][nw + j];
  return block_inv_.emplace(g.images(), std::move(inv)).first->second;
}

WreathElement Desuperization::sigma_inverse(const WreathElement& x) const {
  WreathElement out = plain_.zero();
  // split by permutation block
  std::map<std::vector<int>, std::vector<Rat>> blocks;
  const long nw = static_cast<long>(words_.size());
  for (const auto& [k, c] : x.coeffs) {
    auto& vec = blocks[k.second];
    if (vec.empty()) vec.assign(nw, Rat(0));
    vec[word_index_.at(k.first)] = Rat(c);
  }
  for (const auto& [gimg, vec] : blocks) {
    const auto& inv = block_inverse(Perm(gimg));
    for (long r = 0; r < nw; ++r) {
      Rat v = 0;
      for (long j = 0; j < nw; ++j)
        if (vec[j] != 0) v += inv[r][j] * vec[j];
      if (v == 0) continue;
      if (v.get_den() != 1)
        throw CheckError("sigma_inverse: non-integral coefficient");
      out.coeffs[{words_[r], gimg}] = v.get_num();
    }
  }
  return out;
}

Int Desuperization::block_determinant(const Perm& g) const {
  const long nw = static_cast<long>(words_.size());
  IntMat m(nw, IntVec(nw, 0));
  for (long j = 0; j < nw; ++j) {
    WreathElement img = sigma_monomial(words_[j], g);
    for (const auto& [k, c] : img.coeffs) m[word_index_.at(k.first)][j] = c;
  }
  return det_bareiss(std::move(m));
}

void Desuperization::verify_relations() const {
  // Coxeter relations for sigma(tau)
  for (int r = 0; r + 1 < d_; ++r) {
    WreathElement t = sigma_tau(r);
    if (!(super_.multiply(t, t) == super_.unit()))
      throw CheckError("desuperization: sigma(tau)^2 != 1");
  }
  for (int r = 0; r + 2 < d_; ++r) {
    WreathElement a = sigma_tau(r), b = sigma_tau(r + 1);
    if (!(super_.multiply(super_.multiply(a, b), a) ==
          super_.multiply(super_.multiply(b, a), b)))
      throw CheckError("desuperization: braid relation fails");
  }
  for (int r = 0; r + 1 < d_; ++r)
    for (int t = r + 2; t + 1 < d_; ++t) {
      WreathElement a = sigma_tau(r), b = sigma_tau(t);
      if (!(super_.multiply(a, b) == super_.multiply(b, a)))
        throw CheckError("desuperization: distant taus do not commute");
    }
  // algebra relations in each slot and across slots
  for (int x = 0; x < a_->dim(); ++x)
    for (int y = 0; y < a_->dim(); ++y) {
      for (int c = 0; c < d_; ++c) {
        WreathElement lhs = super_.multiply(sigma_x(x, c), sigma_x(y, c));
        WreathElement rhs = super_.zero();
        for (const auto& [z, coeff] : a_->kappa[x][y])
          rhs = super_.add(rhs, super_.scale(sigma_x(z, c), coeff));
        if (!(lhs == rhs))
          throw CheckError("desuperization: slot product relation fails");
      }
      for (int b = 0; b < d_; ++b)
        for (int c = 0; c < d_; ++c) {
          if (b == c) continue;
          WreathElement lhs = super_.multiply(sigma_x(x, b), sigma_x(y, c));
          WreathElement rhs = super_.multiply(sigma_x(y, c), sigma_x(x, b));
          if (!(lhs == rhs))
            throw CheckError(
                "desuperization: distant slot elements do not commute");
        }
    }
  // tau_r x[t] = x[tau_r t] tau_r
  for (int r = 0; r + 1 < d_; ++r)
    for (int x = 0; x < a_->dim(); ++x)
      for (int t = 0; t < d_; ++t) {
        const int tt = t == r ? r + 1 : (t == r + 1 ? r : t);
        WreathElement lhs = super_.multiply(sigma_tau(r), sigma_x(x, t));
        WreathElement rhs = super_.multiply(sigma_x(x, tt), sigma_tau(r));
        if (!(lhs == rhs))
          throw CheckError("desuperization: tau/slot relation fails");
      }
  // blockwise invertibility over Z
  for (const Perm& g : Perm::all(d_)) {
    Int det = block_determinant(g);
    if (det != 1 && det != -1)
      throw CheckError("desuperization: block determinant is not a unit");
  }
}

AlternatingModuleCheck check_alternating_module(
    const Presentation& a, const AdaptedPair& pair,
    const std::vector<Element>& idems, int n, int d, const ColoredWeight& lam) {
  AlternatingModuleCheck out;
  const int l = static_cast<int>(idems.size());
  std::vector<int> zeta(l, 1);
  for (int i = 0; i < l; ++i) {
    Element p0 = multiply(pair.e0, idems[i]);
    zeta[i] = (p0 == idems[i]) ? 1 : -1;
  }
  Desuperization desup(a, pair, d, /*verify=*/false);
  PermModule msuper(a, n, d, lam, idems, /*signs=*/true, /*alternating=*/false, {});
  PermModule mplain(a, n, d, lam, idems, /*signs=*/false, /*alternating=*/true, zeta);
  if (msuper.dim() != mplain.dim()) return out;
  // basis images m^A . sigma((bw) (x) g)
  std::vector<PermModule::MElem> images(mplain.dim());
  std::vector<long> hit(msuper.dim(), 0);
  bool bijection = true;
  WreathAlgebra wplain(a, d, false);
  for (long i = 0; i < mplain.dim() && bijection; ++i) {
    auto [bw, g] = mplain.basis_data(i);
    WreathElement sig = desup.sigma(wplain.monomial(bw, g));
    images[i] = msuper.act(msuper.generator(), sig);
    if (images[i].size() != 1 || abs(images[i].begin()->second) != 1)
      bijection = false;
    else
      hit[images[i].begin()->first] += 1;
  }
  for (long h : hit)
    if (h != 1) bijection = false;
  out.basis_bijection = bijection;
  if (!bijection) return out;
  // right-module property on generators: phi(v h) = phi(v) sigma(h)
  auto apply_phi = [&](const PermModule::MElem& v) {
    PermModule::MElem img;
    for (const auto& [i, c] : v)
      for (const auto& [k, x] : images[i]) {
        img[k] += c * x;
        if (img[k] == 0) img.erase(k);
      }
    return img;
  };
  bool module_map = true;
  std::vector<WreathElement> gens;
  for (int c = 0; c < d; ++c)
    for (int b = 0; b < a.dim(); ++b) gens.push_back(wplain.x_of(b, c));
  for (int r = 0; r + 1 < d; ++r)
    gens.push_back(wplain.perm_of(Perm::transposition(d, r, r + 1)));
  for (long i = 0; i < mplain.dim() && module_map; ++i) {
    PermModule::MElem v;
    v[i] = 1;
    for (const WreathElement& h : gens) {
      PermModule::MElem lhs = apply_phi(mplain.act(v, h));
      PermModule::MElem rhs = msuper.act(apply_phi(v), desup.sigma(h));
      if (lhs != rhs) {
        module_map = false;
        break;
      }
    }
  }
  out.module_map = module_map;
  return out;
}

// ---- schiver context ----

SchiverContext::SchiverContext(const Quiver& q, int n, int d)
    : q_(q), n_(n), d_(d) {
  q_.validate();
  auto signs = q_.bipartition_signs();
  if (!signs)
    throw InputError(
        "SchiverContext: the underlying graph has an odd cycle; "
        "desuperization requires a bipartite graph");
  z_ = build_pq_and_zigzag(q_, /*verify=*/true).zigzag;
  const int l = q_.num_vertices;
  zeta_.assign(l, 1);
  for (int i = 0; i < l; ++i) zeta_[i] = (*signs)[i];
  for (int i = 0; i < l; ++i)
    vertex_idems_.push_back(Element::basis_vector(z_, Carrier::Algebra, i));
  Element e0(z_, Carrier::Algebra), e1(z_, Carrier::Algebra);
  for (int i = 0; i < l; ++i)
    (zeta_[i] == 1 ? e0 : e1).coeffs[i] = 1;
  pair_ = adapted_pair(z_, e0, e1);
  desup_ = std::make_unique<Desuperization>(z_, pair_, d, /*verify=*/false);
  schur_ = std::make_unique<SchurAlgebra>(z_, n, d);
  wsuper_ = std::make_unique<WreathAlgebra>(z_, d, true);
  wplain_ = std::make_unique<WreathAlgebra>(z_, d, false);
  tspace_ = std::make_unique<TensorSpace>(z_, n, d, true);
  lams_ = enumerate_colored_weights(n, l, d);
  for (const ColoredWeight& lam : lams_) {
    block_offset_.push_back(total_dim_);
    modules_.push_back(std::make_unique<PermModule>(
        z_, n, d, lam, vertex_idems_, false, true, zeta_));
    total_dim_ += modules_.back()->dim();
  }
  // psi columns over the xi basis
  for (int i = 0; i < schur_->dim(); ++i)
    psi_columns_.push_back(psi_of_schur_basis(i));
  psi_solver_ = std::make_unique<ColumnSolver>(psi_columns_,
                                               total_dim_ * total_dim_);
}

int SchiverContext::block_of(const ColoredWeight& lam) const {
  for (std::size_t b = 0; b < lams_.size(); ++b)
    if (lams_[b] == lam) return static_cast<int>(b);
  throw InputError("SchiverContext: unknown colored weight");
}

std::map<int, WreathElement> SchiverContext::connecting(int xi_index,
                                                        int lam_block) const {
  // y v_lam = sum_mu v_mu h_{mu,lam} in Tens^d V
  TensorSpace::VElem img = tspace_->left_act(schur_->xi_expand(xi_index),
                                             tspace_->v_colored(
                                                 lams_[lam_block],
                                                 vertex_idems_));
  const int l = q_.num_vertices;
  std::map<int, WreathElement> out;
  // group words by colored type and invert through v_mu
  for (const auto& [w, c] : img) {
    std::vector<int> seq(d_);
    ColoredWeight mu(n_, l, std::vector<int>(n_ * l, 0));
    for (int p = 0; p < d_; ++p) {
      const int r = tspace_->slot_row(w[p]);
      const int b = tspace_->slot_label(w[p]);
      int color = -1;
      for (int i = 0; i < l; ++i) {
        Element eb = Element::basis_vector(z_, Carrier::Algebra, b);
        if (multiply(vertex_idems_[i], eb) == eb) {
          color = i;
          break;
        }
      }
      if (color < 0) throw CheckError("connecting: label without color");
      seq[p] = r * l + color;
      mu.entries[r * l + color] += 1;
    }
    const int mublock = block_of(mu);
    Perm gp = standardize(seq);
    // w = (w0)^{gp}; peel the signed place permutation off
    TensorSpace::VElem e;
    e[w] = c;
    // place permutation of tensor-space words with the V-signs
    const Perm gpinv = gp.inverse();
    Word w0(d_);
    for (int p = 0; p < d_; ++p) w0[p] = w[gpinv(p)];
    std::vector<int> par(d_);
    for (int p = 0; p < d_; ++p)
      par[p] = z_.basis.parity[tspace_->slot_label(w[p])] & 1;
    // sign of (w)^{gp^{-1}} relative to w
    Int c0 = perm_bracket(gpinv, par) ? Int(-c) : c;
    Word bword(d_);
    for (int p = 0; p < d_; ++p) bword[p] = tspace_->slot_label(w0[p]);
    auto it = out.find(mublock);
    if (it == out.end()) it = out.emplace(mublock, wsuper_->zero()).first;
    it->second = wsuper_->add(it->second,
                              wsuper_->monomial(bword, gp, c0));
  }
  return out;
}

SpVecQ SchiverContext::psi_of_schur_basis(int xi_index) const {
  SpVecQ endo;
  for (std::size_t lb = 0; lb < lams_.size(); ++lb) {
    std::map<int, WreathElement> hs = connecting(xi_index, static_cast<int>(lb));
    std::map<int, WreathElement> hplain;
    for (const auto& [mu, h] : hs) hplain.emplace(mu, desup_->sigma_inverse(h));
    const PermModule& mlam = *modules_[lb];
    for (long col = 0; col < mlam.dim(); ++col) {
      auto [bw, g] = mlam.basis_data(col);
      for (const auto& [mu, h] : hplain) {
        const PermModule& mmu = *modules_[mu];
        WreathElement act = wplain_->multiply(h, wplain_->monomial(bw, g));
        PermModule::MElem img = mmu.act(mmu.generator(), act);
        for (const auto& [row, c] : img)
          endo[static_cast<int>(flat_index(block_offset_[mu] + row,
                                           block_offset_[lb] + col))] = Rat(c);
      }
    }
  }
  return endo;
}

SpVecQ SchiverContext::i_lambda(const ColoredWeight& lam, int z_label) const {
  if (lam.n != n_ - 1 || lam.sum() != d_ - 1)
    throw InputError("i_lambda: lam must lie in Lambda([1,n-1] x I, d-1)");
  const int l = q_.num_vertices;
  // source and target colors of z
  int j = -1, k = -1;
  Element ez = Element::basis_vector(z_, Carrier::Algebra, z_label);
  for (int i = 0; i < l; ++i) {
    if (multiply(vertex_idems_[i], ez) == ez) j = i;
    if (multiply(ez, vertex_idems_[i]) == ez) k = i;
  }
  if (j < 0 || k < 0)
    throw InputError("i_lambda: z is not idempotent-homogeneous");
  auto hat = [&](int color) {
    std::vector<int> e(n_ * l, 0);
    e[color] = 1;
    for (int r = 1; r < n_; ++r)
      for (int i = 0; i < l; ++i) e[r * l + i] = lam.at(r - 1, i);
    return ColoredWeight(n_, l, std::move(e));
  };
  const int src = block_of(hat(k)), dst = block_of(hat(j));
  const PermModule& msrc = *modules_[src];
  const PermModule& mdst = *modules_[dst];
  WreathElement z1 = wplain_->x_of(z_label, 0);
  SpVecQ endo;
  for (long col = 0; col < msrc.dim(); ++col) {
    auto [bw, g] = msrc.basis_data(col);
    PermModule::MElem img = mdst.act(
        mdst.generator(), wplain_->multiply(z1, wplain_->monomial(bw, g)));
    for (const auto& [row, c] : img)
      endo[static_cast<int>(flat_index(block_offset_[dst] + row,
                                       block_offset_[src] + col))] = Rat(c);
  }
  return endo;
}

std::vector<int> SchiverContext::degree_zero_basis() const {
  std::vector<int> out;
  for (int i = 0; i < schur_->dim(); ++i)
    if (schur_->z_degree(i) == 0) out.push_back(i);
  return out;
}

IntVec SchiverContext::endo_coordinates(const SpVecQ& endo) const {
  auto c = psi_solver_->solve(endo);
  if (!c) throw CheckError("endo_coordinates: endomorphism outside psi image");
  IntVec out(schur_->dim(), 0);
  for (int i = 0; i < schur_->dim(); ++i) {
    if ((*c)[i] == 0) continue;
    if ((*c)[i].get_den() != 1)
      throw CheckError("endo_coordinates: non-integral coordinate (psi should "
                       "be a Z-isomorphism)");
    out[i] = (*c)[i].get_num();
  }
  return out;
}

SchiverContext::GenerationResult SchiverContext::generation_check() const {
  GenerationResult res;
  if (n_ < d_)
    throw InputError("schiver generation: requires n >= d");
  // generators in xi coordinates
  std::vector<IntVec> gens;
  for (int i : degree_zero_basis()) {
    IntVec v(schur_->dim(), 0);
    v[i] = 1;
    gens.push_back(std::move(v));
  }
  for (const ColoredWeight& lam :
       enumerate_colored_weights(n_ - 1, q_.num_vertices, d_ - 1))
    for (int z = 0; z < z_.dim(); ++z)
      gens.push_back(endo_coordinates(i_lambda(lam, z)));
  // closure under table products
  StructureConstantTable table = schur_->build_table(
      schur_->dim() <= 400 ? SchurAlgebra::Mode::Verified
                           : SchurAlgebra::Mode::Formula);
  auto sparse_of = [&](const IntVec& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) s[static_cast<int>(i)] = v[i];
    return s;
  };
  LatticeSpan span(schur_->dim());
  std::vector<SparseVec> work;
  std::vector<SparseVec> sgens;
  for (const IntVec& g : gens) {
    SparseVec s = sparse_of(g);
    if (span.add(IntVec(g))) work.push_back(s);
    sgens.push_back(std::move(s));
  }
  int rounds = 0;
  while (!work.empty()) {
    ++rounds;
    std::vector<SparseVec> next;
    for (const SparseVec& w : work)
      for (const SparseVec& g : sgens) {
        SparseVec p = schur_->table_product(table, w, g);
        if (p.empty()) continue;
        IntVec v(schur_->dim(), 0);
        for (const auto& [i, c] : p) v[i] = c;
        if (span.add(std::move(v))) next.push_back(p);
      }
    work = std::move(next);
    if (rounds > 64)
      throw CheckError("schiver generation: closure did not settle");
  }
  res.rounds = rounds;
  res.closure_rank = span.rank();

  // |D_Q(n,d)| lattice inside S^Z(n,d): transport the plain pair basis of the
  // Turner double of M_n(P_Q) through M_n(T_{P_Q}) = T_{M_n(P_Q)} and the
  // position-preserving zigzag identification.
  Presentation pq = build_pq(q_);
  MatrixSuperalgebra mnpq = matrix_superalgebra(pq, n_);
  DoubleSpace dsq(mnpq.pres, d_);
  MatrixTrivExtIso iso = matrix_trivext_iso(pq, n_, /*verify=*/false);
  std::vector<int> back(iso.map.size());  // T_{M_n(P_Q)} label -> M_n(Z) label
  for (std::size_t i = 0; i < iso.map.size(); ++i) back[iso.map[i]] = static_cast<int>(i);
  LatticeSpan dlattice(schur_->dim());
  for (int i = 0; i < dsq.dim(); ++i) {
    DoubleElement plain = dsq.basis_element(i, DoubleVariant::Plain);
    TensorElement img = dsq.phi(plain);
    TensorElement relabeled(d_);
    for (const auto& [w, c] : img.coeffs) {
      Word nw(w.size());
      for (std::size_t p = 0; p < w.size(); ++p) nw[p] = back[w[p]];
      relabeled.add_term(nw, c);
    }
    auto coords = invariant_coords(schur_->matrix_algebra().pres.basis,
                                   schur_->tuples(), relabeled, false);
    IntVec v(schur_->dim(), 0);
    for (const auto& [k, c] : coords) v[k] = c;
    dlattice.add(std::move(v));
  }
  res.generated = span.hnf() == dlattice.hnf();
  if (!res.generated) {
    IntMat dh = dlattice.hnf();
    for (const IntVec& row : dh)
      if (!span.contains(row)) {
        res.witness = "a |D_Q| lattice vector is not generated";
        break;
      }
    if (res.witness.empty())
      res.witness = "closure lattice differs from |D_Q|";
  }
  return res;
}

}  // namespace schurdouble
