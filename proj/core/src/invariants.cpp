#include "schurdouble/invariants.hpp"

#include <algorithm>
#include <tuple>

namespace schurdouble {

TensorElement shuffle(const SuperBasis& b, const TensorElement& s,
                      const TensorElement& t) {
  const int d = s.degree, e = t.degree;
  TensorElement concat(d + e);
  for (const auto& [u, cu] : s.coeffs)
    for (const auto& [w, cw] : t.coeffs) {
      Word uw = u;
      uw.insert(uw.end(), w.begin(), w.end());
      concat.add_term(uw, cu * cw);
    }
  if (concat.is_zero()) return TensorElement(d + e);
  CosetData reps = shortest_coset_reps(Weight({d, e}), CosetSide::Left);
  TensorElement out(d + e);
  for (const Perm& g : reps.reps)
    out = te_add(out, place_permute(b, concat, g));
  return out;
}

TensorElement orbit_sum(const SuperBasis& b, const ExpTuple& c) {
  if (static_cast<int>(c.size()) != b.dim())
    throw InputError("orbit_sum: tuple size != basis dimension");
  if (!tuple_valid(b.parity, c))
    throw InputError("orbit_sum: odd exponent exceeds 1");
  int d = 0;
  for (int m : c) d += m;
  TupleSpace ts(b.parity, d);
  Word w0 = ts.canonical_word(c);
  const auto p0 = word_parities(b, w0);
  TensorElement out(d);
  for (const Word& w : ts.orbit_words(c)) {
    Perm g = standardize(w);  // w = (w0)^g
    out.add_term(w, perm_bracket(g, p0) ? Int(-1) : Int(1));
  }
  return out;
}

bool is_invariant(const SuperBasis& b, const TensorElement& t) {
  for (int r = 0; r + 1 < t.degree; ++r) {
    Perm tau = Perm::transposition(t.degree, r, r + 1);
    if (!(place_permute(b, t, tau) == t)) return false;
  }
  return true;
}

std::map<int, Int> invariant_coords(const SuperBasis& b, const TupleSpace& ts,
                                    const TensorElement& t, bool verify) {
  std::map<int, Int> coords;
  for (int i = 0; i < ts.size(); ++i) {
    Word w0 = ts.canonical_word(ts.tuple(i));
    auto it = t.coeffs.find(w0);
    if (it != t.coeffs.end() && it->second != 0) coords[i] = it->second;
  }
  if (verify) {
    if (!(expand_invariant(b, ts, coords) == t))
      throw CheckError("invariant_coords: element is not S_d-invariant");
  }
  return coords;
}

TensorElement expand_invariant(const SuperBasis& b, const TupleSpace& ts,
                               const std::map<int, Int>& coords) {
  TensorElement out(ts.degree());
  for (const auto& [i, c] : coords)
    out = te_add(out, te_scale(orbit_sum(b, ts.tuple(i)), c));
  return out;
}

std::map<std::pair<Word, Word>, Int> deconcat_component(const TensorElement& t,
                                                        int e) {
  if (e < 0 || e > t.degree) throw InputError("deconcat_component: bad degree");
  std::map<std::pair<Word, Word>, Int> out;
  for (const auto& [w, c] : t.coeffs) {
    Word left(w.begin(), w.begin() + e), right(w.begin() + e, w.end());
    auto key = std::make_pair(std::move(left), std::move(right));
    auto it = out.find(key);
    if (it == out.end())
      out.emplace(std::move(key), c);
    else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

std::vector<std::tuple<ExpTuple, ExpTuple, int>> coproduct_orbit_basis(
    const std::vector<int>& slot_parities, const ExpTuple& c) {
  std::vector<std::tuple<ExpTuple, ExpTuple, int>> out;
  // enumerate all entrywise splittings c = c' + c''
  ExpTuple cp(c.size(), 0);
  std::vector<ExpTuple> splits;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c.size()) {
      splits.push_back(cp);
      return;
    }
    for (int k = 0; k <= c[i]; ++k) {
      cp[i] = k;
      rec(i + 1);
    }
    cp[i] = 0;
  };
  rec(0);
  for (const ExpTuple& a : splits) {
    ExpTuple rest(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) rest[i] = c[i] - a[i];
    int eps = tuple_eps(slot_parities, a, rest);
    if (eps != 0) out.emplace_back(a, rest, eps);
  }
  return out;
}

TensorElement kappa_iso(const SuperBasis& b, const DividedSymElement& x) {
  TensorElement out(x.degree);
  for (const auto& [c, v] : x.coeffs)
    out = te_add(out, te_scale(orbit_sum(b, c), v));
  return out;
}

Int pair_tensor(const SuperBasis& b, const TensorElement& dual,
                const TensorElement& v) {
  if (dual.degree != v.degree) throw InputError("pair_tensor: degree mismatch");
  Int s = 0;
  for (const auto& [dw, dc] : dual.coeffs) {
    auto it = v.coeffs.find(dw);
    if (it != v.coeffs.end()) s += dc * it->second * pair_dual_word(b, dw, dw);
  }
  return s;
}

DirectSumDecomposition invariants_of_direct_sum(const SuperBasis& v,
                                                const std::vector<bool>& in_u,
                                                int d) {
  if (static_cast<int>(in_u.size()) != v.dim())
    throw InputError("invariants_of_direct_sum: partition size mismatch");
  std::vector<int> u_slots, w_slots, up, wp;
  for (int i = 0; i < v.dim(); ++i)
    (in_u[i] ? u_slots : w_slots).push_back(i);
  for (int i : u_slots) up.push_back(v.parity[i]);
  for (int i : w_slots) wp.push_back(v.parity[i]);
  TupleSpace full(v.parity, d);
  DirectSumDecomposition out;
  out.split.resize(full.size());
  out.include.resize(d + 1);
  std::vector<TupleSpace> uts, wts;
  for (int e = 0; e <= d; ++e) {
    uts.emplace_back(up, e);
    wts.emplace_back(wp, d - e);
    out.include[e].assign(uts[e].size() * wts[e].size(), -1);
  }
  for (int i = 0; i < full.size(); ++i) {
    const ExpTuple& t = full.tuple(i);
    ExpTuple ut(u_slots.size()), wt(w_slots.size());
    int e = 0;
    for (std::size_t k = 0; k < u_slots.size(); ++k) {
      ut[k] = t[u_slots[k]];
      e += ut[k];
    }
    for (std::size_t k = 0; k < w_slots.size(); ++k) wt[k] = t[w_slots[k]];
    const int ui = uts[e].index(ut), wi = wts[e].index(wt);
    out.split[i] = {e, ui, wi};
    out.include[e][ui * wts[e].size() + wi] = i;
  }
  return out;
}

}  // namespace schurdouble
