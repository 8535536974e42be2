#include "schurdouble/turner_double.hpp"

#include <algorithm>
#include <tuple>

namespace schurdouble {

namespace {

int odd_parity(const std::vector<int>& parities, const ExpTuple& t) {
  return tuple_odd_weight(parities, t) & 1;
}

}  // namespace

DoubleSpace::DoubleSpace(const Presentation& x, int d)
    : x_(&x),
      d_(d),
      tx_(trivial_extension(x)),
      txts_(tx_.pres.basis.parity, d) {
  if (d < 0) throw InputError("DoubleSpace: negative degree");
  const int m = x.dim();
  // X_1 X_1 = 0 makes the Turner grading available.
  gradable_ = true;
  for (int i = 0; i < m && gradable_; ++i)
    for (int j = 0; j < m && gradable_; ++j)
      if ((x.basis.parity[i] & 1) && (x.basis.parity[j] & 1) &&
          !x.kappa[i][j].empty())
        gradable_ = false;

  for (int e = 0; e <= d; ++e) {
    xts_.emplace_back(x.basis.parity, e);
    unit_coords_.push_back(invariant_coords(
        x.basis, xts_.back(), unit_tensor_power(x, e), /*verify=*/false));
  }

  // pair basis, inv degree descending
  for (int e = d; e >= 0; --e) {
    const TupleSpace& ci = xts_[e];
    const TupleSpace& di = xts_[d - e];
    for (int a = 0; a < ci.size(); ++a)
      for (int b = 0; b < di.size(); ++b) {
        index_.emplace(std::make_pair(ci.tuple(a), di.tuple(b)),
                       static_cast<int>(basis_.size()));
        basis_.emplace_back(ci.tuple(a), di.tuple(b));
      }
  }
  if (static_cast<int>(basis_.size()) != txts_.size())
    throw CheckError("DoubleSpace: pair basis / T_X tuple count mismatch");

  tx_orbit_.reserve(txts_.size());
  for (int i = 0; i < txts_.size(); ++i)
    tx_orbit_.push_back(orbit_sum(tx_.pres.basis, txts_.tuple(i)));

  // phi on the basis: xi_c * kappa(x^(dl)) must be +-1 times a single
  // orbit-sum basis element of Inv^d T_X.
  phi_tuple_.resize(basis_.size());
  phi_sign_.resize(basis_.size());
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    const auto& [c, dl] = basis_[i];
    ExpTuple ce(tx_.pres.dim(), 0), de(tx_.pres.dim(), 0);
    for (int k = 0; k < m; ++k) {
      ce[tx_.from_alg[k]] = c[k];
      de[tx_.from_dual[k]] = dl[k];
    }
    TensorElement xi = orbit_sum(tx_.pres.basis, ce);
    TensorElement kx = orbit_sum(tx_.pres.basis, de);
    // x^dl is the dual-basis vector; as a divided monomial it carries the
    // sign (-1)^{k(k-1)/2} with k odd entries.
    const int k1 = tuple_odd_weight(x.basis.parity, dl);
    Int sgn = (((k1 * (k1 - 1) / 2) % 2) == 1) ? -1 : 1;
    TensorElement img = te_scale(shuffle(tx_.pres.basis, xi, kx), sgn);
    auto coords = invariant_coords(tx_.pres.basis, txts_, img, false);
    if (coords.size() != 1 || (abs(coords.begin()->second) != 1))
      throw CheckError("DoubleSpace: phi image of a basis pair is not a "
                       "single signed orbit sum");
    const int ti = coords.begin()->first;
    const Int s = coords.begin()->second;
    if (!(img == te_scale(tx_orbit_[ti], s)))
      throw CheckError("DoubleSpace: phi image expansion mismatch");
    phi_tuple_[i] = ti;
    phi_sign_[i] = static_cast<int>(s.get_si());
  }
}

int DoubleSpace::pair_index(const ExpTuple& c, const ExpTuple& dl) const {
  auto it = index_.find(std::make_pair(c, dl));
  return it == index_.end() ? -1 : it->second;
}

int DoubleSpace::pair_parity(int i) const {
  return (tuple_odd_weight(x_->basis.parity, basis_[i].first) +
          tuple_odd_weight(x_->basis.parity, basis_[i].second)) &
         1;
}

std::string DoubleSpace::pair_label(int i) const {
  auto fmt = [&](const ExpTuple& t, bool dual) {
    std::string s = "{";
    bool first = true;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k] == 0) continue;
      if (!first) s += ",";
      first = false;
      s += x_->basis.labels[k] + (dual ? "*" : "") + ":" + std::to_string(t[k]);
    }
    return s + "}";
  };
  return "xi" + fmt(basis_[i].first, false) + "(x)x" + fmt(basis_[i].second, true);
}

DoubleElement DoubleSpace::basis_element(int i, DoubleVariant v) const {
  DoubleElement e;
  e.variant = v;
  e.degree = d_;
  e.coords[i] = 1;
  return e;
}

DoubleElement DoubleSpace::zero(DoubleVariant v) const {
  DoubleElement e;
  e.variant = v;
  e.degree = d_;
  return e;
}

DoubleElement DoubleSpace::de_add(const DoubleElement& a, const DoubleElement& b) {
  if (a.variant != b.variant || a.degree != b.degree)
    throw InputError("de_add: variant/degree mismatch");
  DoubleElement out = a;
  for (const auto& [i, c] : b.coords) {
    auto it = out.coords.find(i);
    if (it == out.coords.end())
      out.coords.emplace(i, c);
    else {
      it->second += c;
      if (it->second == 0) out.coords.erase(it);
    }
  }
  return out;
}

DoubleElement DoubleSpace::de_scale(const DoubleElement& a, const Int& c) {
  DoubleElement out;
  out.variant = a.variant;
  out.degree = a.degree;
  if (c != 0)
    for (const auto& [i, v] : a.coords) out.coords[i] = c * v;
  return out;
}

DoubleElement DoubleSpace::convert(const DoubleElement& a,
                                   DoubleVariant target) const {
  if (a.variant == target) return a;
  DoubleElement out;
  out.variant = target;
  out.degree = a.degree;
  for (const auto& [i, c] : a.coords) {
    Int f = tuple_factorial(basis_[i].second);
    if (target == DoubleVariant::Divided)
      out.coords[i] = c * f;  // xi (x) x^dl = dl! (xi (x) x^(dl))
    else
      out.coords[i] = exact_div(c, f);  // throws when outside the plain lattice
  }
  return out;
}

TensorElement DoubleSpace::phi(const DoubleElement& a) const {
  DoubleElement div = convert(a, DoubleVariant::Divided);
  TensorElement out(d_);
  for (const auto& [i, c] : div.coords)
    out = te_add(out, te_scale(tx_orbit_[phi_tuple_[i]],
                               phi_sign_[i] > 0 ? c : Int(-c)));
  return out;
}

DoubleElement DoubleSpace::phi_inverse(const TensorElement& t,
                                       DoubleVariant v) const {
  auto coords = invariant_coords(tx_.pres.basis, txts_, t, false);
  DoubleElement out = zero(DoubleVariant::Divided);
  for (int i = 0; i < dim(); ++i) {
    auto it = coords.find(phi_tuple_[i]);
    if (it != coords.end() && it->second != 0)
      out.coords[i] = phi_sign_[i] > 0 ? it->second : Int(-it->second);
  }
  return convert(out, v);
}

DoubleElement DoubleSpace::multiply(const DoubleElement& a,
                                    const DoubleElement& b) const {
  if (a.variant != b.variant)
    throw InputError("DoubleSpace::multiply: variant mismatch");
  if (a.degree != d_ || b.degree != d_)
    throw InputError("DoubleSpace::multiply: degree mismatch");
  TensorElement prod = tensor_multiply(tx_.pres, phi(a), phi(b));
  return phi_inverse(prod, a.variant);
}

const std::map<int, Int>& DoubleSpace::inv_product(int e, int i, int j) const {
  auto key = std::make_tuple(e, i, j);
  auto it = inv_cache_.find(key);
  if (it != inv_cache_.end()) return it->second;
  const TupleSpace& ts = xts_[e];
  TensorElement p = tensor_multiply(*x_, orbit_sum(x_->basis, ts.tuple(i)),
                                    orbit_sum(x_->basis, ts.tuple(j)));
  auto coords = invariant_coords(x_->basis, ts, p, false);
  return inv_cache_.emplace(key, std::move(coords)).first->second;
}

DoubleElement DoubleSpace::multiply_sweedler(const DoubleElement& a,
                                             const DoubleElement& b) const {
  const auto& par = x_->basis.parity;
  // plain coordinates over Q
  auto plain_q = [&](const DoubleElement& e) {
    std::map<int, Rat> out;
    for (const auto& [i, c] : e.coords) {
      Rat v(c);
      if (e.variant == DoubleVariant::Divided)
        v /= Rat(tuple_factorial(basis_[i].second));
      out[i] = v;
    }
    return out;
  };
  std::map<int, Rat> qa = plain_q(a), qb = plain_q(b), res;

  for (const auto& [ia, ca] : qa) {
    const ExpTuple& cA = basis_[ia].first;
    const ExpTuple& dA = basis_[ia].second;
    int eA = 0;
    for (int v : cA) eA += v;
    const int fA = d_ - eA;
    const int idA = xts_[fA].index(dA);
    for (const auto& [ib, cb] : qb) {
      const ExpTuple& cB = basis_[ib].first;
      const ExpTuple& dB = basis_[ib].second;
      int eB = 0;
      for (int v : cB) eB += v;
      const int fB = d_ - eB;
      const int idB = xts_[fB].index(dB);
      const int pB = odd_parity(par, cB);   // parity of eta
      const int pdA = odd_parity(par, dA);  // parity of x
      if (fA + fB > d_) continue;           // no surviving Sweedler components
      const int erest = d_ - fA - fB;
      // splittings of cA with |c1| = fB and of cB with |h2| = fA
      for (const auto& [c1, c2, epsA] : coproduct_orbit_basis(par, cA)) {
        int s1 = 0;
        for (int v : c1) s1 += v;
        if (s1 != fB) continue;
        for (const auto& [h1, h2, epsB] : coproduct_orbit_basis(par, cB)) {
          int s2 = 0;
          for (int v : h2) s2 += v;
          if (s2 != fA) continue;
          int sign = (odd_parity(par, c1) *
                      ((odd_parity(par, c2) + pB + pdA) & 1)) +
                     odd_parity(par, h1) * pdA;
          Rat base = ca * cb * epsA * epsB;
          if (sign & 1) base = -base;
          if (base == 0) continue;
          const int ih2 = xts_[fA].index(h2);
          const int ic1 = xts_[fB].index(c1);
          const int ic2 = xts_[erest].index(c2);
          const int ih1 = xts_[erest].index(h1);
          // x . eta_(2) = sum_u f^{dA}_{h2,u} x^u   (degree fA)
          for (int u = 0; u < xts_[fA].size(); ++u) {
            const auto& pu = inv_product(fA, ih2, u);
            auto itu = pu.find(idA);
            if (itu == pu.end()) continue;
            // xi_(1) . y = sum_v f^{dB}_{v,c1} x^v   (degree fB)
            for (int v = 0; v < xts_[fB].size(); ++v) {
              const auto& pv = inv_product(fB, v, ic1);
              auto itv = pv.find(idB);
              if (itv == pv.end()) continue;
              // product in Sym(X^*): x^u x^v = (-1)^{|u||v|} eps_{uv} x^{u+v}
              int epsuv =
                  tuple_eps(par, xts_[fA].tuple(u), xts_[fB].tuple(v));
              if (epsuv == 0) continue;
              int su = odd_parity(par, xts_[fA].tuple(u)) *
                       odd_parity(par, xts_[fB].tuple(v));
              ExpTuple uv =
                  tuple_add(xts_[fA].tuple(u), xts_[fB].tuple(v));
              Rat term = base * itu->second * itv->second * epsuv;
              if (su & 1) term = -term;
              if (term == 0) continue;
              // xi_(2) eta_(1) in Inv^{erest} X
              for (const auto& [g, fg] : inv_product(erest, ic2, ih1)) {
                int pi = pair_index(xts_[erest].tuple(g), uv);
                if (pi < 0) throw CheckError("multiply_sweedler: missing pair");
                Rat add = term * fg;
                auto rit = res.find(pi);
                if (rit == res.end())
                  res.emplace(pi, add);
                else {
                  rit->second += add;
                  if (rit->second == 0) res.erase(rit);
                }
              }
            }
          }
        }
      }
    }
  }
  // back to divided integer coordinates
  DoubleElement out = zero(DoubleVariant::Divided);
  for (const auto& [i, q] : res) {
    Rat v = q * Rat(tuple_factorial(basis_[i].second));
    if (v.get_den() != 1)
      throw CheckError(
          "multiply_sweedler: non-integral divided coordinate at " +
          pair_label(i));
    if (v != 0) out.coords[i] = v.get_num();
  }
  if (a.variant == DoubleVariant::Plain && b.variant == DoubleVariant::Plain)
    return convert(out, DoubleVariant::Plain);
  return out;
}

int DoubleSpace::pair_degree(int i) const {
  if (!gradable_)
    throw InputError("pair_degree: Turner grading needs X_1 X_1 = 0");
  const auto& par = x_->basis.parity;
  const ExpTuple& c = basis_[i].first;
  const ExpTuple& dl = basis_[i].second;
  int deg = tuple_odd_weight(par, c);
  for (std::size_t k = 0; k < dl.size(); ++k)
    deg += ((par[k] & 1) ? 1 : 2) * dl[k];
  return deg;
}

std::map<int, DoubleElement> DoubleSpace::grade_decompose(
    const DoubleElement& a) const {
  std::map<int, DoubleElement> out;
  for (const auto& [i, c] : a.coords) {
    int deg = pair_degree(i);
    auto it = out.find(deg);
    if (it == out.end()) {
      DoubleElement e = zero(a.variant);
      e.coords[i] = c;
      out.emplace(deg, std::move(e));
    } else {
      it->second.coords[i] = c;
    }
  }
  return out;
}

Int DoubleSpace::form(int i, int j) const {
  // (xi_c (x) x^d, xi_c' (x) x^d') = <xi_c, x^d'><x^d, xi_c'>
  return (basis_[i].first == basis_[j].second &&
          basis_[i].second == basis_[j].first)
             ? 1
             : 0;
}

IntMat DoubleSpace::gram() const {
  IntMat g(dim(), IntVec(dim(), 0));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) g[i][j] = form(i, j);
  return g;
}

Int DoubleSpace::f_functional(const DoubleElement& plain) const {
  if (plain.variant != DoubleVariant::Plain)
    throw InputError("f_functional: expects a plain element");
  Int s = 0;
  for (const auto& [i, c] : plain.coords) {
    int e = 0;
    for (int v : basis_[i].first) e += v;
    if (e != 0) continue;  // F vanishes off the e = 0 component
    int di = xts_[d_].index(basis_[i].second);
    auto it = unit_coords_[d_].find(di);
    if (it != unit_coords_[d_].end()) s += c * it->second;
  }
  return s;
}

Rat DoubleSpace::f_functional_divided(const DoubleElement& divided) const {
  if (divided.variant != DoubleVariant::Divided)
    throw InputError("f_functional_divided: expects a divided element");
  Rat s = 0;
  for (const auto& [i, c] : divided.coords) {
    int e = 0;
    for (int v : basis_[i].first) e += v;
    if (e != 0) continue;
    int di = xts_[d_].index(basis_[i].second);
    auto it = unit_coords_[d_].find(di);
    if (it != unit_coords_[d_].end())
      s += Rat(c * it->second) / Rat(tuple_factorial(basis_[i].second));
  }
  return s;
}

std::vector<DoubleElement> DoubleSpace::generators() const {
  std::vector<DoubleElement> gens;
  const int m = x_->dim();
  // basis of Inv^d X_0: pairs (c, 0) with c supported on even labels
  ExpTuple zero_t(m, 0);
  for (int t = 0; t < xts_[d_].size(); ++t) {
    const ExpTuple& c = xts_[d_].tuple(t);
    bool even_only = true;
    for (int k = 0; k < m && even_only; ++k)
      if (c[k] != 0 && (x_->basis.parity[k] & 1)) even_only = false;
    if (!even_only) continue;
    int pi = pair_index(c, zero_t);
    gens.push_back(basis_element(pi, DoubleVariant::Plain));
  }
  if (d_ == 0) return gens;
  // 1^(x)(d-1) * t for t in X_1 and X^*
  TensorElement unit_power = unit_tensor_power(tx_.pres, d_ - 1);
  std::vector<int> y_labels;
  for (int k = 0; k < m; ++k) {
    if (x_->basis.parity[k] & 1) y_labels.push_back(tx_.from_alg[k]);
    y_labels.push_back(tx_.from_dual[k]);
  }
  for (int lbl : y_labels) {
    TensorElement t = TensorElement::word_element(1, {lbl});
    TensorElement img = shuffle(tx_.pres.basis, unit_power, t);
    gens.push_back(phi_inverse(img, DoubleVariant::Plain));
  }
  return gens;
}

DoubleSpace::GenerationResult DoubleSpace::span_closure(
    const std::vector<DoubleElement>& gens,
    const std::vector<std::string>& names) const {
  GenerationResult res;
  auto vec_of = [&](const DoubleElement& e) {
    DoubleElement div = convert(e, DoubleVariant::Divided);
    IntVec v(dim(), 0);
    for (const auto& [i, c] : div.coords) v[i] = c;
    return v;
  };
  LatticeSpan span(dim());
  std::vector<std::pair<DoubleElement, std::string>> work;
  std::vector<DoubleElement> divided_gens;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    DoubleElement g = convert(gens[k], DoubleVariant::Divided);
    if (span.add(vec_of(g))) {
      res.certificate.push_back(names[k]);
      work.emplace_back(g, names[k]);
    }
    divided_gens.push_back(std::move(g));
  }
  int rounds = 0;
  while (!work.empty()) {
    ++rounds;
    std::vector<std::pair<DoubleElement, std::string>> next;
    for (const auto& [w, wname] : work)
      for (std::size_t k = 0; k < divided_gens.size(); ++k) {
        DoubleElement p = multiply(w, divided_gens[k]);
        if (p.is_zero()) continue;
        if (span.add(vec_of(p))) {
          std::string word = wname + "*" + names[k];
          res.certificate.push_back(word);
          next.emplace_back(p, std::move(word));
        }
      }
    work = std::move(next);
    if (rounds > 64) throw CheckError("span_closure: closure did not settle");
  }
  res.rounds = rounds;
  res.closure_rank = span.rank();
  // plain lattice: dl! times each basis vector
  LatticeSpan plain(dim());
  for (int i = 0; i < dim(); ++i) {
    IntVec v(dim(), 0);
    v[i] = tuple_factorial(basis_[i].second);
    plain.add(std::move(v));
  }
  res.generated = span.hnf() == plain.hnf();
  if (!res.generated) {
    res.certificate.clear();
    for (int i = 0; i < dim(); ++i) {
      IntVec v(dim(), 0);
      v[i] = tuple_factorial(basis_[i].second);
      if (!span.contains(v)) {
        res.witness = "plain basis vector not generated: " + pair_label(i);
        break;
      }
    }
    if (res.witness.empty())
      res.witness = "closure lattice strictly larger than the plain lattice";
  }
  return res;
}

DoubleSpace::GenerationResult DoubleSpace::generation_check() const {
  std::vector<DoubleElement> gens = generators();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < gens.size(); ++k)
    names.push_back("g" + std::to_string(k));
  return span_closure(gens, names);
}

}  // namespace schurdouble
