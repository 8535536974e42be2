#include "schurdouble/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace schurdouble {

namespace {

int leading_col(const IntVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return -1;
}

void vec_axpy(IntVec& a, const Int& c, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

}  // namespace

bool LatticeSpan::add(IntVec v) {
  if (static_cast<int>(v.size()) != ncols_)
    throw InputError("LatticeSpan::add: wrong vector length");
  bool changed = false;
  for (;;) {
    int c = leading_col(v);
    if (c < 0) return changed;
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      if (v[c] < 0)
        for (auto& x : v) x = -x;
      rows_.emplace(c, std::move(v));
      return true;
    }
    IntVec& r = it->second;
    const Int& p = r[c];
    if (v[c] % p == 0) {
      Int q = -v[c] / p;
      vec_axpy(v, q, r);
      continue;  // leading entry cleared, move right
    }
    // Replace the pivot row by the gcd combination, keep reducing v.
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t(),
               v[c].get_mpz_t());
    Int pr = p / g, vq = v[c] / g;
    IntVec newr(ncols_, 0), newv(ncols_, 0);
    for (int i = 0; i < ncols_; ++i) {
      newr[i] = x * r[i] + y * v[i];
      newv[i] = pr * v[i] - vq * r[i];  // zero at column c
    }
    r = std::move(newr);
    if (r[c] < 0)
      for (auto& e : r) e = -e;
    v = std::move(newv);
    changed = true;
  }
}

bool LatticeSpan::contains(IntVec v) const {
  if (static_cast<int>(v.size()) != ncols_)
    throw InputError("LatticeSpan::contains: wrong vector length");
  for (;;) {
    int c = leading_col(v);
    if (c < 0) return true;
    auto it = rows_.find(c);
    if (it == rows_.end()) return false;
    const IntVec& r = it->second;
    if (v[c] % r[c] != 0) return false;
    Int q = -v[c] / r[c];
    vec_axpy(v, q, r);
  }
}

IntMat LatticeSpan::hnf() const {
  IntMat m;
  m.reserve(rows_.size());
  for (const auto& [c, r] : rows_) m.push_back(r);
  return hnf_rows(std::move(m));
}

namespace {

// Echelonize rows over Z (leading column strictly increasing, pivots
// positive), destructively.
std::map<int, IntVec> echelon_rows(IntMat m, int ncols) {
  std::map<int, IntVec> ech;
  for (auto& v : m) {
    for (;;) {
      int c = leading_col(v);
      if (c < 0) break;
      auto it = ech.find(c);
      if (it == ech.end()) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        ech.emplace(c, std::move(v));
        v = IntVec();
        break;
      }
      IntVec& r = it->second;
      if (v[c] % r[c] == 0) {
        Int q = -v[c] / r[c];
        vec_axpy(v, q, r);
        continue;
      }
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), r[c].get_mpz_t(),
                 v[c].get_mpz_t());
      IntVec newr(ncols, 0), newv(ncols, 0);
      Int pr = r[c] / g, vq = v[c] / g;
      for (int i = 0; i < ncols; ++i) {
        newr[i] = x * r[i] + y * v[i];
        newv[i] = pr * v[i] - vq * r[i];
      }
      if (newr[c] < 0)
        for (auto& e : newr) e = -e;
      r = std::move(newr);
      v = std::move(newv);
    }
  }
  return ech;
}

}  // namespace

IntMat hnf_rows(IntMat m) {
  if (m.empty()) return m;
  const int ncols = static_cast<int>(m[0].size());
  std::map<int, IntVec> ech = echelon_rows(std::move(m), ncols);
  // Reduce entries above each pivot into [0, pivot), in increasing pivot
  // order so a finished column is never disturbed again (rows used later are
  // zero on all earlier pivot columns).
  for (auto it = ech.begin(); it != ech.end(); ++it) {
    const int c = it->first;
    const IntVec& r = it->second;
    for (auto jt = ech.begin(); jt != it; ++jt) {
      IntVec& u = jt->second;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), u[c].get_mpz_t(), r[c].get_mpz_t());
      if (q != 0) vec_axpy(u, Int(-q), r);
    }
  }
  IntMat out;
  out.reserve(ech.size());
  for (auto& [c, r] : ech) out.push_back(std::move(r));
  return out;
}

std::vector<Int> smith_invariants(IntMat m) {
  std::vector<Int> out;
  if (m.empty()) return out;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find nonzero pivot
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows && pr == rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        while (m[i][t] != 0) {
          Int q = m[t][t] == 0 ? Int(0) : Int(m[i][t] / m[t][t]);
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
          if (m[i][t] != 0) {
            std::swap(m[i], m[t]);
            clean = false;
          } else {
            break;
          }
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        while (m[t][j] != 0) {
          Int q = m[t][t] == 0 ? Int(0) : Int(m[t][j] / m[t][t]);
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
          if (m[t][j] != 0) {
            for (std::size_t i = t; i < rows; ++i) std::swap(m[i][j], m[i][t]);
            clean = false;
          } else {
            break;
          }
        }
      }
    }
    ++t;
  }
  // enforce divisibility chain
  for (std::size_t i = 0; i + 1 < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      if (m[i][i] == 0) std::swap(m[i][i], m[j][j]);
      if (m[j][j] % m[i][i] != 0) {
        Int a = m[i][i], b = m[j][j], g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        m[i][i] = g;
        m[j][j] = a / g * b;
      }
    }
  }
  for (std::size_t i = 0; i < t; ++i)
    if (m[i][i] != 0) out.push_back(abs(m[i][i]));
  return out;
}

Int det_bareiss(IntMat m) {
  const std::size_t n = m.size();
  for (const auto& r : m)
    if (r.size() != n) throw InputError("det_bareiss: matrix not square");
  if (n == 0) return 1;
  Int denom = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], denom);
    denom = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

long rank_rational(const IntMat& m) {
  std::vector<SpVecQ> rows;
  rows.reserve(m.size());
  for (const auto& r : m) {
    SpVecQ s;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[j] != 0) s[static_cast<int>(j)] = Rat(r[j]);
    rows.push_back(std::move(s));
  }
  return rank_sparse(rows);
}

SpVecQ sparse_add(const SpVecQ& a, const SpVecQ& b) {
  SpVecQ out = a;
  sparse_axpy(out, Rat(1), b);
  return out;
}

SpVecQ sparse_scale(const SpVecQ& a, const Rat& c) {
  SpVecQ out;
  if (c == 0) return out;
  for (const auto& [i, v] : a) out[i] = v * c;
  return out;
}

void sparse_axpy(SpVecQ& a, const Rat& c, const SpVecQ& b) {
  if (c == 0) return;
  for (const auto& [i, v] : b) {
    auto it = a.find(i);
    if (it == a.end()) {
      Rat nv = c * v;
      if (nv != 0) a.emplace(i, std::move(nv));
    } else {
      it->second += c * v;
      if (it->second == 0) a.erase(it);
    }
  }
}

bool SparseRREF::add_row(SpVecQ r) {
  r = reduce(std::move(r));
  if (r.empty()) return false;
  const int p = r.begin()->first;
  Rat inv = 1 / r.begin()->second;
  for (auto& [i, v] : r) v *= inv;
  // clear column p from existing pivot rows
  for (auto& [pc, row] : pivot_rows_) {
    auto it = row.find(p);
    if (it != row.end()) {
      Rat c = -it->second;
      sparse_axpy(row, c, r);
    }
  }
  pivot_rows_.emplace(p, std::move(r));
  return true;
}

SpVecQ SparseRREF::reduce(SpVecQ r) const {
  for (;;) {
    if (r.empty()) return r;
    bool hit = false;
    for (auto it = r.begin(); it != r.end();) {
      auto pit = pivot_rows_.find(it->first);
      if (pit != pivot_rows_.end()) {
        Rat c = -it->second;
        sparse_axpy(r, c, pit->second);
        hit = true;
        it = r.begin();  // restart; entries shifted
        break;
      }
      ++it;
    }
    if (!hit) return r;
  }
}

std::vector<SpVecQ> kernel_basis(const std::vector<SpVecQ>& rows, int ncols) {
  SparseRREF rref;
  for (const auto& r : rows) rref.add_row(r);
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& [p, row] : rref.pivot_rows()) {
    if (p >= ncols) throw InputError("kernel_basis: column out of range");
    is_pivot[p] = true;
  }
  std::map<int, SpVecQ> kers;  // free column -> kernel vector
  for (int f = 0; f < ncols; ++f)
    if (!is_pivot[f]) kers[f][f] = 1;
  for (const auto& [p, row] : rref.pivot_rows())
    for (const auto& [c, v] : row)
      if (c != p && !is_pivot[c]) kers[c][p] = -v;
  std::vector<SpVecQ> out;
  out.reserve(kers.size());
  for (auto& [f, k] : kers) out.push_back(std::move(k));
  return out;
}

long rank_sparse(const std::vector<SpVecQ>& rows) {
  SparseRREF rref;
  for (const auto& r : rows) rref.add_row(r);
  return rref.rank();
}

ColumnSolver::ColumnSolver(const std::vector<SpVecQ>& columns, long height) {
  columns_store_ = columns;
  columns_ = &columns_store_;
  k_ = static_cast<long>(columns.size());
  (void)height;
  // Row-reduce the transpose to select k independent rows (pivot columns of
  // the transpose = row indices of the original matrix).
  SparseRREF rref;
  for (long j = 0; j < k_; ++j) rref.add_row(columns[static_cast<std::size_t>(j)]);
  if (rref.rank() != k_)
    throw InputError("ColumnSolver: columns are not independent");
  pivot_rows_.clear();
  for (const auto& [p, r] : rref.pivot_rows()) pivot_rows_.push_back(p);
  std::sort(pivot_rows_.begin(), pivot_rows_.end());
  // Dense k x k block B[s][j] = columns[j][pivot_rows_[s]]; invert it.
  std::vector<std::vector<Rat>> a(k_, std::vector<Rat>(2 * k_, Rat(0)));
  for (long s = 0; s < k_; ++s) {
    for (long j = 0; j < k_; ++j) {
      auto it = columns[static_cast<std::size_t>(j)].find(pivot_rows_[s]);
      if (it != columns[static_cast<std::size_t>(j)].end()) a[s][j] = it->second;
    }
    a[s][k_ + s] = 1;
  }
  for (long c = 0; c < k_; ++c) {
    long piv = -1;
    for (long r = c; r < k_; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw InputError("ColumnSolver: singular pivot block");
    std::swap(a[c], a[piv]);
    Rat inv = 1 / a[c][c];
    for (long j = 0; j < 2 * k_; ++j) a[c][j] *= inv;
    for (long r = 0; r < k_; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (long j = 0; j < 2 * k_; ++j) a[r][j] -= f * a[c][j];
    }
  }
  inv_.assign(k_, std::vector<Rat>(k_, Rat(0)));
  for (long r = 0; r < k_; ++r)
    for (long j = 0; j < k_; ++j) inv_[r][j] = a[r][k_ + j];
}

std::optional<std::vector<Rat>> ColumnSolver::solve(const SpVecQ& target) const {
  std::vector<Rat> rhs(k_, Rat(0));
  for (long s = 0; s < k_; ++s) {
    auto it = target.find(pivot_rows_[s]);
    if (it != target.end()) rhs[s] = it->second;
  }
  std::vector<Rat> c(k_, Rat(0));
  for (long r = 0; r < k_; ++r)
    for (long j = 0; j < k_; ++j) c[r] += inv_[r][j] * rhs[j];
  // verify on the full (sparse) columns
  SpVecQ acc;
  for (long j = 0; j < k_; ++j)
    sparse_axpy(acc, c[j], (*columns_)[static_cast<std::size_t>(j)]);
  if (acc != target) return std::nullopt;
  return c;
}

}  // namespace schurdouble
