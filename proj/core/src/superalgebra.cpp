#include "schurdouble/superalgebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace schurdouble {

void sparse_int_axpy(SparseVec& a, const Int& c, const SparseVec& b) {
  if (c == 0) return;
  for (const auto& [i, v] : b) {
    auto it = a.find(i);
    if (it == a.end()) {
      Int nv = c * v;
      if (nv != 0) a.emplace(i, std::move(nv));
    } else {
      it->second += c * v;
      if (it->second == 0) a.erase(it);
    }
  }
}

void SuperBasis::validate() const {
  if (labels.size() != parity.size())
    throw InputError("SuperBasis: labels/parity size mismatch");
  if (graded() && degree.size() != labels.size())
    throw InputError("SuperBasis: labels/degree size mismatch");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw InputError("SuperBasis: duplicate label '" + l + "'");
  bool odd_seen = false;
  for (std::size_t i = 0; i < parity.size(); ++i) {
    if (parity[i] & 1)
      odd_seen = true;
    else if (odd_seen)
      throw InputError("SuperBasis: even label '" + labels[i] +
                       "' listed after an odd label; even labels must come first");
  }
  if (graded())
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (((degree[i] % 2) + 2) % 2 != (parity[i] & 1))
        throw InputError("SuperBasis: degree parity mismatch at '" + labels[i] + "'");
}

int Presentation::label_index(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (basis.labels[i] == label) return i;
  throw InputError("Presentation '" + name + "': unknown label '" + label + "'");
}

void Presentation::check() const {
  basis.validate();
  const int m = dim();
  if (static_cast<int>(kappa.size()) != m)
    throw CheckError(name + ": kappa has wrong shape");
  for (const auto& row : kappa)
    if (static_cast<int>(row.size()) != m)
      throw CheckError(name + ": kappa has wrong shape");
  // parity / degree homogeneity
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (const auto& [k, c] : kappa[i][j]) {
        if (c == 0) continue;
        if (((basis.parity[i] + basis.parity[j]) & 1) != (basis.parity[k] & 1))
          throw CheckError(name + ": product " + basis.labels[i] + "*" +
                           basis.labels[j] + " is not parity homogeneous");
        if (basis.graded() &&
            basis.degree[i] + basis.degree[j] != basis.degree[k])
          throw CheckError(name + ": product " + basis.labels[i] + "*" +
                           basis.labels[j] + " is not degree homogeneous");
      }
  // two-sided unit
  for (int i = 0; i < m; ++i) {
    SparseVec left, right;
    for (const auto& [u, cu] : unit) {
      sparse_int_axpy(left, cu, kappa[u][i]);
      sparse_int_axpy(right, cu, kappa[i][u]);
    }
    SparseVec ei;
    ei[i] = 1;
    if (left != ei || right != ei)
      throw CheckError(name + ": unit is not two-sided at label " +
                       basis.labels[i]);
  }
  // associativity on all basis triples
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        SparseVec lhs, rhs;
        for (const auto& [t, c] : kappa[i][j]) sparse_int_axpy(lhs, c, kappa[t][k]);
        for (const auto& [t, c] : kappa[j][k]) sparse_int_axpy(rhs, c, kappa[i][t]);
        if (lhs != rhs)
          throw CheckError(name + ": associativity fails on (" +
                           basis.labels[i] + "," + basis.labels[j] + "," +
                           basis.labels[k] + ")");
      }
}

Presentation reduce_presentation_mod(const Presentation& a, unsigned long p) {
  if (!is_prime(p)) throw InputError("reduce_presentation_mod: p must be prime");
  Presentation out = a;
  out.name = a.name + "_mod" + std::to_string(p);
  auto red = [&](SparseVec& v) {
    SparseVec r;
    for (const auto& [i, c] : v) {
      Int m = mod_reduce(c, p);
      if (m != 0) r[i] = m;
    }
    v = std::move(r);
  };
  red(out.unit);
  for (auto& row : out.kappa)
    for (auto& v : row) red(v);
  return out;
}

Element Element::basis_vector(const Presentation& a, Carrier c, int i) {
  Element e(a, c);
  e.coeffs[i] = 1;
  return e;
}

Element Element::unit_element(const Presentation& a) {
  Element e(a, Carrier::Algebra);
  e.coeffs = a.unit;
  return e;
}

bool Element::operator==(const Element& o) const {
  return algebra == o.algebra && carrier == o.carrier && coeffs == o.coeffs;
}

namespace {
void require_same_carrier(const Element& x, const Element& y, Carrier c,
                          const char* op) {
  if (x.algebra == nullptr || x.algebra != y.algebra)
    throw InputError(std::string(op) + ": carrier mismatch (different algebras)");
  if (x.carrier != c || y.carrier != c)
    throw InputError(std::string(op) + ": carrier mismatch (algebra vs dual)");
}
}  // namespace

Element add(const Element& x, const Element& y) {
  if (x.algebra != y.algebra || x.carrier != y.carrier)
    throw InputError("add: carrier mismatch");
  Element out = x;
  sparse_int_axpy(out.coeffs, 1, y.coeffs);
  return out;
}

Element scale(const Element& x, const Int& c) {
  Element out(*x.algebra, x.carrier);
  if (c != 0)
    for (const auto& [i, v] : x.coeffs) out.coeffs[i] = c * v;
  return out;
}

Element multiply(const Element& x, const Element& y) {
  require_same_carrier(x, y, Carrier::Algebra, "multiply");
  Element out(*x.algebra, Carrier::Algebra);
  for (const auto& [i, ci] : x.coeffs)
    for (const auto& [j, cj] : y.coeffs)
      sparse_int_axpy(out.coeffs, ci * cj, x.algebra->kappa[i][j]);
  return out;
}

Int pair_elements(const Element& alpha, const Element& a) {
  if (alpha.algebra != a.algebra || alpha.carrier == a.carrier)
    throw InputError("pair_elements: needs one dual and one algebra element");
  Int s = 0;
  const SparseVec& d = alpha.carrier == Carrier::Dual ? alpha.coeffs : a.coeffs;
  const SparseVec& v = alpha.carrier == Carrier::Dual ? a.coeffs : alpha.coeffs;
  for (const auto& [i, c] : d) {
    auto it = v.find(i);
    if (it != v.end()) s += c * it->second;
  }
  return s;
}

Element act_left(const Element& a, const Element& alpha) {
  if (a.carrier != Carrier::Algebra || alpha.carrier != Carrier::Dual ||
      a.algebra != alpha.algebra)
    throw InputError("act_left: expects (algebra, dual) over one algebra");
  const Presentation& p = *a.algebra;
  Element out(p, Carrier::Dual);
  // (a . c*) = sum_b kappa^c_{b,a} b*
  for (const auto& [c, cc] : alpha.coeffs)
    for (const auto& [ai, ca] : a.coeffs)
      for (int b = 0; b < p.dim(); ++b) {
        auto it = p.kappa[b][ai].find(c);
        if (it != p.kappa[b][ai].end())
          sparse_int_axpy(out.coeffs, cc * ca * it->second, SparseVec{{b, 1}});
      }
  return out;
}

Element act_right(const Element& alpha, const Element& a) {
  if (a.carrier != Carrier::Algebra || alpha.carrier != Carrier::Dual ||
      a.algebra != alpha.algebra)
    throw InputError("act_right: expects (dual, algebra) over one algebra");
  const Presentation& p = *a.algebra;
  Element out(p, Carrier::Dual);
  // (c* . a) = sum_b kappa^c_{a,b} b*
  for (const auto& [c, cc] : alpha.coeffs)
    for (const auto& [ai, ca] : a.coeffs)
      for (int b = 0; b < p.dim(); ++b) {
        auto it = p.kappa[ai][b].find(c);
        if (it != p.kappa[ai][b].end())
          sparse_int_axpy(out.coeffs, cc * ca * it->second, SparseVec{{b, 1}});
      }
  return out;
}

TensorElement TensorElement::word_element(int d, Word w, Int c) {
  if (static_cast<int>(w.size()) != d)
    throw InputError("word_element: wrong word length");
  TensorElement t(d);
  if (c != 0) t.coeffs.emplace(std::move(w), std::move(c));
  return t;
}

void TensorElement::add_term(const Word& w, const Int& c) {
  if (c == 0) return;
  auto it = coeffs.find(w);
  if (it == coeffs.end()) {
    coeffs.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

TensorElement te_add(const TensorElement& x, const TensorElement& y) {
  if (x.degree != y.degree) throw InputError("te_add: degree mismatch");
  TensorElement out = x;
  for (const auto& [w, c] : y.coeffs) out.add_term(w, c);
  return out;
}

TensorElement te_scale(const TensorElement& x, const Int& c) {
  TensorElement out(x.degree);
  if (c != 0)
    for (const auto& [w, v] : x.coeffs) out.coeffs[w] = c * v;
  return out;
}

std::vector<int> word_parities(const SuperBasis& b, const Word& w) {
  std::vector<int> p(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) p[i] = b.parity[w[i]] & 1;
  return p;
}

TensorElement tensor_multiply(const Presentation& a, const TensorElement& x,
                              const TensorElement& y) {
  if (x.degree != y.degree) throw InputError("tensor_multiply: degree mismatch");
  const int d = x.degree;
  TensorElement out(d);
  for (const auto& [u, cu] : x.coeffs) {
    const auto up = word_parities(a.basis, u);
    for (const auto& [w, cw] : y.coeffs) {
      const auto wp = word_parities(a.basis, w);
      Int base = cu * cw;
      if (koszul_bracket(up, wp)) base = -base;
      // slotwise kappa expansion
      std::vector<const SparseVec*> slot(d);
      bool dead = false;
      for (int s = 0; s < d && !dead; ++s) {
        slot[s] = &a.kappa[u[s]][w[s]];
        if (slot[s]->empty()) dead = true;
      }
      if (dead && d > 0) continue;
      Word cur(d, 0);
      std::function<void(int, Int)> rec = [&](int s, Int acc) {
        if (s == d) {
          out.add_term(cur, acc);
          return;
        }
        for (const auto& [b, c] : *slot[s]) {
          cur[s] = b;
          rec(s + 1, acc * c);
        }
      };
      rec(0, base);
    }
  }
  return out;
}

TensorElement place_permute(const SuperBasis& b, const TensorElement& x,
                            const Perm& g) {
  if (g.degree() != x.degree)
    throw InputError("place_permute: degree mismatch");
  TensorElement out(x.degree);
  for (const auto& [w, c] : x.coeffs) {
    Word nw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) nw[i] = w[g(static_cast<int>(i))];
    Int nc = perm_bracket(g, word_parities(b, w)) ? Int(-c) : c;
    out.add_term(nw, nc);
  }
  return out;
}

Int pair_dual_word(const SuperBasis& b, const Word& dual_w, const Word& v_w) {
  if (dual_w.size() != v_w.size())
    throw InputError("pair_dual_word: degree mismatch");
  if (dual_w != v_w) return 0;
  return koszul_bracket(word_parities(b, dual_w), word_parities(b, v_w)) ? -1 : 1;
}

TensorElement unit_tensor_power(const Presentation& a, int d) {
  TensorElement out(0);
  out.coeffs[Word{}] = 1;
  for (int i = 0; i < d; ++i) {
    TensorElement next(out.degree + 1);
    for (const auto& [w, c] : out.coeffs)
      for (const auto& [u, cu] : a.unit) {
        Word nw = w;
        nw.push_back(u);
        next.add_term(nw, c * cu);
      }
    out = std::move(next);
  }
  return out;
}

TrivialExtension trivial_extension(const Presentation& a) {
  const int m = a.dim();
  const int n0 = a.basis.num_even(), n1 = m - n0;
  TrivialExtension t;
  t.from_alg.resize(m);
  t.from_dual.resize(m);
  t.origin.resize(2 * m);
  for (int i = 0; i < m; ++i) {
    t.from_alg[i] = i < n0 ? i : n0 + i;
    t.from_dual[i] = i < n0 ? n0 + i : n0 + n1 + i;
    t.origin[t.from_alg[i]] = {false, i};
    t.origin[t.from_dual[i]] = {true, i};
  }
  SuperBasis b;
  b.labels.resize(2 * m);
  b.parity.resize(2 * m);
  const bool graded = a.basis.graded() &&
                      std::all_of(a.basis.degree.begin(), a.basis.degree.end(),
                                  [](int d) { return d == 0 || d == 1; });
  if (graded) b.degree.resize(2 * m);
  for (int i = 0; i < m; ++i) {
    b.labels[t.from_alg[i]] = a.basis.labels[i];
    b.labels[t.from_dual[i]] = a.basis.labels[i] + "*";
    b.parity[t.from_alg[i]] = a.basis.parity[i];
    b.parity[t.from_dual[i]] = a.basis.parity[i];
    if (graded) {
      b.degree[t.from_alg[i]] = a.basis.degree[i];
      b.degree[t.from_dual[i]] = 2 - a.basis.degree[i];
    }
  }
  t.pres.name = "T(" + a.name + ")";
  t.pres.basis = std::move(b);
  for (const auto& [u, c] : a.unit) t.pres.unit[t.from_alg[u]] = c;
  const int tm = 2 * m;
  t.pres.kappa.assign(tm, std::vector<SparseVec>(tm));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // algebra * algebra
      SparseVec& aa = t.pres.kappa[t.from_alg[i]][t.from_alg[j]];
      for (const auto& [k, c] : a.kappa[i][j]) aa[t.from_alg[k]] = c;
      // algebra * dual: b_i . c_j* = sum_b kappa^{c_j}_{b, b_i} b*
      SparseVec& ad = t.pres.kappa[t.from_alg[i]][t.from_dual[j]];
      for (int bb = 0; bb < m; ++bb) {
        auto it = a.kappa[bb][i].find(j);
        if (it != a.kappa[bb][i].end() && it->second != 0)
          ad[t.from_dual[bb]] = it->second;
      }
      // dual * algebra: c_i* . b_j = sum_b kappa^{c_i}_{b_j, b} b*
      SparseVec& da = t.pres.kappa[t.from_dual[i]][t.from_alg[j]];
      for (int bb = 0; bb < m; ++bb) {
        auto it = a.kappa[j][bb].find(i);
        if (it != a.kappa[j][bb].end() && it->second != 0)
          da[t.from_dual[bb]] = it->second;
      }
      // dual * dual = 0
    }
  return t;
}

MatrixSuperalgebra matrix_superalgebra(const Presentation& a, int n) {
  if (n < 1) throw InputError("matrix_superalgebra: n must be positive");
  MatrixSuperalgebra m;
  m.n = n;
  m.alg_dim = a.dim();
  const int dim = a.dim() * n * n;
  SuperBasis b;
  b.labels.resize(dim);
  b.parity.resize(dim);
  if (a.basis.graded()) b.degree.resize(dim);
  for (int l = 0; l < a.dim(); ++l)
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        const int idx = m.index(l, r, s);
        b.labels[idx] = a.basis.labels[l] + "[" + std::to_string(r + 1) + "," +
                        std::to_string(s + 1) + "]";
        b.parity[idx] = a.basis.parity[l];
        if (a.basis.graded()) b.degree[idx] = a.basis.degree[l];
      }
  m.pres.name = "M" + std::to_string(n) + "(" + a.name + ")";
  m.pres.basis = std::move(b);
  for (const auto& [u, c] : a.unit)
    for (int r = 0; r < n; ++r) m.pres.unit[m.index(u, r, r)] = c;
  m.pres.kappa.assign(dim, std::vector<SparseVec>(dim));
  for (int l1 = 0; l1 < a.dim(); ++l1)
    for (int l2 = 0; l2 < a.dim(); ++l2) {
      const SparseVec& prod = a.kappa[l1][l2];
      if (prod.empty()) continue;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          for (int u = 0; u < n; ++u) {
            SparseVec& out = m.pres.kappa[m.index(l1, r, s)][m.index(l2, s, u)];
            for (const auto& [k, c] : prod) out[m.index(k, r, u)] = c;
          }
    }
  return m;
}

MatrixTrivExtIso matrix_trivext_iso(const Presentation& a, int n, bool verify) {
  TrivialExtension ta = trivial_extension(a);
  MatrixSuperalgebra mta = matrix_superalgebra(ta.pres, n);   // M_n(T_A)
  MatrixSuperalgebra ma = matrix_superalgebra(a, n);          // M_n(A)
  TrivialExtension tma = trivial_extension(ma.pres);          // T_{M_n(A)}

  MatrixTrivExtIso iso;
  iso.source = mta.pres;
  iso.target = tma.pres;
  iso.map.assign(mta.pres.dim(), -1);
  for (int y = 0; y < ta.pres.dim(); ++y) {
    auto [is_dual, al] = ta.origin[y];
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        const int src = mta.index(y, r, s);
        // xi^{(a,alpha)}_{r,s} -> (xi^a_{r,s}, x^alpha_{s,r}): dual labels
        // transpose their matrix position.
        iso.map[src] = is_dual ? tma.from_dual[ma.index(al, s, r)]
                               : tma.from_alg[ma.index(al, r, s)];
      }
  }
  if (verify) {
    const int dim = mta.pres.dim();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        SparseVec mapped;  // image of the product
        for (const auto& [k, c] : mta.pres.kappa[i][j]) mapped[iso.map[k]] = c;
        const SparseVec& direct = tma.pres.kappa[iso.map[i]][iso.map[j]];
        if (mapped != direct)
          throw CheckError(
              "matrix_trivext_iso: multiplicativity fails on (" +
              mta.pres.basis.labels[i] + ", " + mta.pres.basis.labels[j] +
              "); this signals an internal sign error");
      }
  }
  return iso;
}

}  // namespace schurdouble
