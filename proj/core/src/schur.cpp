#include "schurdouble/schur.hpp"

#include <algorithm>
#include <sstream>

namespace schurdouble {

MatrixWeight MatrixTuple::label_matrix(int b) const {
  std::vector<int> e(n * n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) e[r * n + s] = entry(b, r, s);
  return MatrixWeight(n, std::move(e));
}

Weight MatrixTuple::alpha() const {
  std::vector<int> p(n, 0);
  for (int b = 0; b < num_labels; ++b)
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) p[r] += entry(b, r, s);
  return Weight(std::move(p));
}

Weight MatrixTuple::beta() const {
  std::vector<int> p(n, 0);
  for (int b = 0; b < num_labels; ++b)
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) p[s] += entry(b, r, s);
  return Weight(std::move(p));
}

const SparseVec& StructureConstantTable::at(int i, int j) const {
  static const SparseVec empty;
  auto it = entries.find({i, j});
  return it == entries.end() ? empty : it->second;
}

SchurAlgebra::SchurAlgebra(const Presentation& a, int n, int d)
    : a_(&a),
      n_(n),
      d_(d),
      mna_(matrix_superalgebra(a, n)),
      tuples_(mna_.pres.basis.parity, d) {
  xi_.reserve(tuples_.size());
  for (int i = 0; i < tuples_.size(); ++i)
    xi_.push_back(orbit_sum(mna_.pres.basis, tuples_.tuple(i)));
}

MatrixTuple SchurAlgebra::matrix_tuple(int i) const {
  MatrixTuple t;
  t.n = n_;
  t.num_labels = a_->dim();
  t.flat = tuples_.tuple(i);
  return t;
}

std::string SchurAlgebra::label(int i) const {
  const ExpTuple& t = tuples_.tuple(i);
  std::string s = "xi{";
  bool first = true;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] == 0) continue;
    if (!first) s += ",";
    first = false;
    s += mna_.pres.basis.labels[k] + ":" + std::to_string(t[k]);
  }
  return s + "}";
}

int SchurAlgebra::parity(int i) const {
  return tuple_odd_weight(mna_.pres.basis.parity, tuples_.tuple(i)) & 1;
}

int SchurAlgebra::z_degree(int i) const {
  if (!mna_.pres.basis.graded())
    throw InputError("z_degree: coefficient algebra is not graded");
  const ExpTuple& t = tuples_.tuple(i);
  int deg = 0;
  for (std::size_t k = 0; k < t.size(); ++k)
    deg += t[k] * mna_.pres.basis.degree[k];
  return deg;
}

std::vector<SchurAlgebra::Triple> SchurAlgebra::canonical_triples(int i) const {
  std::vector<Triple> out;
  for (int slot : tuples_.canonical_word(tuples_.tuple(i)))
    out.push_back({mna_.row_of(slot), mna_.label_of(slot), mna_.col_of(slot)});
  return out;
}

const char* SchurAlgebra::mode_name(Mode m) {
  switch (m) {
    case Mode::Formula: return "formula";
    case Mode::Oracle: return "oracle";
    default: return "verified";
  }
}

SparseVec SchurAlgebra::product_oracle(int i, int j) const {
  TensorElement p = tensor_multiply(mna_.pres, xi_[i], xi_[j]);
  auto coords = invariant_coords(mna_.pres.basis, tuples_, p, false);
  SparseVec out;
  for (const auto& [k, c] : coords) out[k] = c;
  return out;
}

SparseVec SchurAlgebra::product_formula(int i, int j) const {
  const auto& par = mna_.pres.basis.parity;
  const ExpTuple& tc = tuples_.tuple(i);
  const ExpTuple& td = tuples_.tuple(j);
  const Weight ac = matrix_tuple(i).alpha();
  const Weight bc = matrix_tuple(i).beta();
  const Weight ad = matrix_tuple(j).alpha();
  const Weight bd = matrix_tuple(j).beta();
  // middle sequences must pair column content of C with row content of D
  if (!(bc == ad)) return SparseVec{};
  // Arrangements of C grouped by row sequence, of D by (row, col) sequences.
  const auto c0p = word_parities(mna_.pres.basis, tuples_.canonical_word(tc));
  const auto d0p = word_parities(mna_.pres.basis, tuples_.canonical_word(td));
  struct Arr {
    Word slots;
    int sign;  // (-1)^{[r,b,s]}
    std::vector<int> rows, cols, labels, lpar;
  };
  auto arrange = [&](const ExpTuple& t,
                     const std::vector<int>& w0p) {
    std::vector<Arr> out;
    for (const Word& w : tuples_.orbit_words(t)) {
      Arr a;
      a.slots = w;
      a.sign = perm_bracket(standardize(w), w0p) ? -1 : 1;
      for (int slot : w) {
        a.rows.push_back(mna_.row_of(slot));
        a.cols.push_back(mna_.col_of(slot));
        a.labels.push_back(mna_.label_of(slot));
        a.lpar.push_back(par[slot] & 1);
      }
      out.push_back(std::move(a));
    }
    return out;
  };
  std::vector<Arr> carr = arrange(tc, c0p);
  std::vector<Arr> darr = arrange(td, d0p);
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<const Arr*>>
      d_by_rowcol;
  for (const Arr& a : darr) d_by_rowcol[{a.rows, a.cols}].push_back(&a);

  SparseVec out;
  for (int ei = 0; ei < tuples_.size(); ++ei) {
    MatrixTuple e = matrix_tuple(ei);
    if (!(e.alpha() == ac) || !(e.beta() == bd)) continue;
    const Word e0 = tuples_.canonical_word(tuples_.tuple(ei));
    std::vector<int> er, es, eb;
    for (int slot : e0) {
      er.push_back(mna_.row_of(slot));
      es.push_back(mna_.col_of(slot));
      eb.push_back(mna_.label_of(slot));
    }
    // f^E_{CD} = sum over (b', t, b'') with (r0, b', t) in C, (t, b'', s0) in D
    // of the product of signs and kappa coefficients; [r0,b0,s0] = 0 since the
    // representative is canonical.
    Int f = 0;
    for (const Arr& u : carr) {
      if (u.rows != er) continue;
      auto it = d_by_rowcol.find({u.cols, es});
      if (it == d_by_rowcol.end()) continue;
      for (const Arr* w : it->second) {
        int sgn = (koszul_bracket(u.lpar, w->lpar) & 1) ? -1 : 1;
        sgn *= u.sign * w->sign;
        Int prod = sgn;
        for (int k = 0; k < d_ && prod != 0; ++k) {
          const SparseVec& kap = a_->kappa[u.labels[k]][w->labels[k]];
          auto kit = kap.find(eb[k]);
          if (kit == kap.end()) {
            prod = 0;
            break;
          }
          prod *= kit->second;
        }
        f += prod;
      }
    }
    if (f != 0) out[ei] = f;
  }
  return out;
}

SparseVec SchurAlgebra::product(int i, int j, Mode mode) const {
  switch (mode) {
    case Mode::Formula: return product_formula(i, j);
    case Mode::Oracle: return product_oracle(i, j);
    case Mode::Verified: {
      SparseVec f = product_formula(i, j);
      SparseVec o = product_oracle(i, j);
      if (f != o)
        throw CheckError("structure constants disagree between the closed "
                         "form and the tensor oracle at (" + label(i) + ", " +
                         label(j) + ")");
      return f;
    }
  }
  throw InputError("product: bad mode");
}

StructureConstantTable SchurAlgebra::build_table(Mode mode) const {
  StructureConstantTable t;
  t.n = n_;
  t.d = d_;
  t.mode = mode_name(mode);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      SparseVec f = product(i, j, mode);
      if (!f.empty()) {
        // divided-power integrality (both one-sided divided families)
        for (const auto& [k, c] : f) {
          divided_left(i, j, k, c);
          divided_right(i, j, k, c);
        }
        t.entries.emplace(std::make_pair(i, j), std::move(f));
      }
    }
  return t;
}

std::vector<SchurAlgebra::CoproductTerm> SchurAlgebra::coproduct_xi(int i) const {
  std::vector<CoproductTerm> out;
  for (const auto& [l, r, eps] :
       coproduct_orbit_basis(mna_.pres.basis.parity, tuples_.tuple(i))) {
    CoproductTerm t;
    t.e = 0;
    for (int v : l) t.e += v;
    t.left = l;
    t.right = r;
    t.eps = eps;
    out.push_back(std::move(t));
  }
  return out;
}

std::pair<Int, Int> SchurAlgebra::dual_products(int i, int j) const {
  const auto& par = mna_.pres.basis.parity;
  int eps = tuple_eps(par, tuples_.tuple(i), tuples_.tuple(j));
  if (eps == 0) return {0, 0};
  int sign = (parity(i) & parity(j)) ? -eps : eps;
  ExpTuple sum = tuple_add(tuples_.tuple(i), tuples_.tuple(j));
  Int plain = sign;
  Int divided = plain * tuple_binomial(sum, tuples_.tuple(j));
  return {plain, divided};
}

Int SchurAlgebra::divided_left(int ci, int di, int ei, const Int& f) const {
  (void)di;
  Int num = f * tuple_factorial(tuples_.tuple(ci));
  return exact_div(num, tuple_factorial(tuples_.tuple(ei)));
}

Int SchurAlgebra::divided_right(int ci, int di, int ei, const Int& f) const {
  (void)ci;
  Int num = f * tuple_factorial(tuples_.tuple(di));
  return exact_div(num, tuple_factorial(tuples_.tuple(ei)));
}

SparseVec SchurAlgebra::xi_weight(const Weight& lam) const {
  if (lam.n() != n_ || lam.sum() != d_)
    throw InputError("xi_weight: weight must lie in Lambda(n,d)");
  TensorElement acc(0);
  acc.coeffs[Word{}] = 1;
  for (int r = 0; r < n_; ++r)
    for (int k = 0; k < lam.parts[r]; ++k) {
      TensorElement err(1);
      for (const auto& [u, c] : a_->unit)
        err.add_term(Word{mna_.index(u, r, r)}, c);
      acc = shuffle(mna_.pres.basis, acc, err);
    }
  auto coords = invariant_coords(mna_.pres.basis, tuples_, acc, false);
  SparseVec out;
  for (const auto& [k, c] : coords) out[k] = c;
  return out;
}

SparseVec SchurAlgebra::truncation_image(const Word& alabels, const Perm& g) const {
  if (d_ > n_) throw InputError("truncation_image: requires d <= n");
  if (static_cast<int>(alabels.size()) != d_ || g.degree() != d_)
    throw InputError("truncation_image: degree mismatch");
  const Perm gi = g.inverse();
  TensorElement acc(0);
  acc.coeffs[Word{}] = 1;
  for (int k = 0; k < d_; ++k) {
    TensorElement f(1);
    f.add_term(Word{mna_.index(alabels[k], k, gi(k))}, 1);
    acc = shuffle(mna_.pres.basis, acc, f);
  }
  auto coords = invariant_coords(mna_.pres.basis, tuples_, acc, false);
  SparseVec out;
  for (const auto& [k, c] : coords) out[k] = c;
  return out;
}

SparseVec SchurAlgebra::table_product(const StructureConstantTable& t,
                                      const SparseVec& x,
                                      const SparseVec& y) const {
  SparseVec out;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y)
      sparse_int_axpy(out, ci * cj, t.at(i, j));
  return out;
}

// ---- Schur double ----

SchurDoubleAlgebra::SchurDoubleAlgebra(const Presentation& a, int n, int d)
    : a_(&a), n_(n), d_(d), ta_(trivial_extension(a)),
      mna_(matrix_superalgebra(a, n)) {
  ds_ = std::make_unique<DoubleSpace>(mna_.pres, d);
  for (int e = 0; e <= d; ++e) {
    schur_.push_back(std::make_unique<SchurAlgebra>(a, n, e));
    const auto mode =
        e <= 2 ? SchurAlgebra::Mode::Verified : SchurAlgebra::Mode::Formula;
    tables_.push_back(schur_[e]->build_table(mode));
  }
}

DoubleElement SchurDoubleAlgebra::closed_form_product(
    const DoubleElement& x, const DoubleElement& y) const {
  if (x.variant != y.variant)
    throw InputError("closed_form_product: variant mismatch");
  const bool divided = x.variant == DoubleVariant::Divided;
  const DoubleSpace& ds = *ds_;
  const auto& par = mna_.pres.basis.parity;
  auto deg_of = [](const ExpTuple& t) {
    int s = 0;
    for (int v : t) s += v;
    return s;
  };
  auto p_of = [&](const ExpTuple& t) { return tuple_odd_weight(par, t) & 1; };
  DoubleElement out = ds.zero(x.variant);
  for (const auto& [ix, cx] : x.coords) {
    const ExpTuple& C = ds.inv_part(ix);
    const ExpTuple& D = ds.sym_part(ix);
    const int dD = deg_of(D);
    const int idD = ds.x_tuples(dD).index(D);
    for (const auto& [iy, cy] : y.coords) {
      const ExpTuple& E = ds.inv_part(iy);
      const ExpTuple& F = ds.sym_part(iy);
      const int dF = deg_of(F);
      const int idF = ds.x_tuples(dF).index(F);
      const int erest = deg_of(C) - dF;
      if (erest < 0 || deg_of(E) - dD < 0 || erest != deg_of(E) - dD) continue;
      for (const auto& [c1, c2, epsC] : coproduct_orbit_basis(par, C)) {
        if (deg_of(c1) != dF) continue;
        const int ic1 = schur_[dF]->tuples().index(c1);
        const int ic2 = schur_[erest]->tuples().index(c2);
        for (const auto& [e1, e2, epsE] : coproduct_orbit_basis(par, E)) {
          if (deg_of(e2) != dD) continue;
          const int ie1 = schur_[erest]->tuples().index(e1);
          const int ie2 = schur_[dD]->tuples().index(e2);
          const int s_base = p_of(c1) * p_of(c2) + p_of(c1) * p_of(e1) +
                             p_of(e1) * p_of(e2);
          // sum over D' (degree dD) and F' (degree dF)
          for (int dpi = 0; dpi < schur_[dD]->tuples().size(); ++dpi) {
            const SparseVec& rowD = tables_[dD].at(ie2, dpi);
            auto itD = rowD.find(idD);
            if (itD == rowD.end()) continue;
            const ExpTuple& Dp = schur_[dD]->tuples().tuple(dpi);
            Int fD = itD->second;
            if (divided)  // f^{(D)}_{E2 (D')} = f D'!/D!
              fD = exact_div(fD * tuple_factorial(Dp), tuple_factorial(D));
            for (int fpi = 0; fpi < schur_[dF]->tuples().size(); ++fpi) {
              const SparseVec& rowF = tables_[dF].at(fpi, ic1);
              auto itF = rowF.find(idF);
              if (itF == rowF.end()) continue;
              const ExpTuple& Fp = schur_[dF]->tuples().tuple(fpi);
              int epsDF = tuple_eps(par, Dp, Fp);
              if (epsDF == 0) continue;
              Int fF = itF->second;
              if (divided)  // f^{(F)}_{(F') C1} = f F'!/F!
                fF = exact_div(fF * tuple_factorial(Fp), tuple_factorial(F));
              int t_sign = s_base + p_of(c1) * p_of(Dp) + p_of(Dp) * p_of(e1) +
                           p_of(Dp) * p_of(Fp);
              Int coeff = cx * cy * epsC * epsE * epsDF * fD * fF;
              if (t_sign & 1) coeff = -coeff;
              if (coeff == 0) continue;
              ExpTuple DpFp = tuple_add(Dp, Fp);
              if (divided) coeff *= tuple_binomial(DpFp, Dp);
              for (const auto& [gi, fG] : tables_[erest].at(ic2, ie1)) {
                int pi = ds.pair_index(schur_[erest]->tuples().tuple(gi), DpFp);
                if (pi < 0)
                  throw CheckError("closed_form_product: missing pair label");
                auto it = out.coords.find(pi);
                Int add = coeff * fG;
                if (it == out.coords.end())
                  out.coords.emplace(pi, add);
                else {
                  it->second += add;
                  if (it->second == 0) out.coords.erase(it);
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

SchurDoubleAlgebra::GenerationResult SchurDoubleAlgebra::dand_generation_check(
    bool corollary_form) const {
  if (corollary_form && n_ < d_)
    throw InputError("dand_generation_check: corollary form needs n >= d");
  const DoubleSpace& ds = *ds_;
  const int m = mna_.pres.dim();
  std::vector<DoubleElement> gens;
  std::vector<std::string> names;
  // S^{A_0}(n,d): pairs (C, 0) supported on even labels
  ExpTuple zero_t(m, 0);
  for (int t = 0; t < ds.x_tuples(d_).size(); ++t) {
    const ExpTuple& c = ds.x_tuples(d_).tuple(t);
    bool even_only = true;
    for (int k = 0; k < m && even_only; ++k)
      if (c[k] != 0 && (mna_.pres.basis.parity[k] & 1)) even_only = false;
    if (!even_only) continue;
    gens.push_back(ds.basis_element(ds.pair_index(c, zero_t), DoubleVariant::Plain));
    names.push_back("s" + std::to_string(t));
  }
  // xi^y_{1,1}-type generators for y in A_1 and A^*
  const TrivialExtension& tx = ds.TX();
  std::vector<std::pair<int, std::string>> ys;  // (T_{M_n(A)} label, name)
  for (int k = 0; k < a_->dim(); ++k) {
    if (a_->basis.parity[k] & 1)
      ys.emplace_back(tx.from_alg[mna_.index(k, 0, 0)],
                      "y(" + a_->basis.labels[k] + ")");
    ys.emplace_back(tx.from_dual[mna_.index(k, 0, 0)],
                    "y(" + a_->basis.labels[k] + "*)");
  }
  if (d_ >= 1) {
    if (!corollary_form) {
      TensorElement unit_power = unit_tensor_power(tx.pres, d_ - 1);
      for (const auto& [lbl, nm] : ys) {
        TensorElement t = TensorElement::word_element(1, Word{lbl});
        gens.push_back(ds.phi_inverse(shuffle(tx.pres.basis, t, unit_power),
                                      DoubleVariant::Plain));
        names.push_back(nm + "*1^" + std::to_string(d_ - 1));
      }
    } else {
      // xi^y_{1,1} * E_{2,2}^{(x) l2} * ... * E_{n,n}^{(x) ln}
      for (const auto& [lbl, nm] : ys)
        for (const Weight& lam : enumerate_weights(n_ - 1, d_ - 1)) {
          TensorElement acc = TensorElement::word_element(1, Word{lbl});
          for (int r = 1; r < n_; ++r)
            for (int k = 0; k < lam.parts[r - 1]; ++k) {
              TensorElement err(1);
              for (const auto& [u, cu] : a_->unit)
                err.add_term(Word{tx.from_alg[mna_.index(u, r, r)]}, cu);
              acc = shuffle(tx.pres.basis, acc, err);
            }
          gens.push_back(ds.phi_inverse(acc, DoubleVariant::Plain));
          std::string nm2 = nm;
          for (int r = 1; r < n_; ++r)
            nm2 += "*E" + std::to_string(r + 1) + "^" +
                   std::to_string(lam.parts[r - 1]);
          names.push_back(std::move(nm2));
        }
    }
  }
  DoubleSpace::GenerationResult r = ds.span_closure(gens, names);
  GenerationResult out;
  out.generated = r.generated;
  out.rounds = r.rounds;
  out.closure_rank = r.closure_rank;
  out.witness = r.witness;
  out.certificate = std::move(r.certificate);
  return out;
}

}  // namespace schurdouble
