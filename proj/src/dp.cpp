#include "pudp/dp.hpp"

#include <algorithm>

#include "pudp/errors.hpp"

namespace pudp {

namespace {

void check_shape(const DesignProblem& d) {
  if (!d.fun || !d.res) throw Error(Errc::shape_mismatch, "null interface poset");
  if (d.rows.size() != d.fun->size())
    throw Error(Errc::shape_mismatch, "row count differs from |fun|");
  for (const auto& row : d.rows)
    if (row.size() != d.res->size())
      throw Error(Errc::shape_mismatch, "row width differs from |res|");
}

// Monotone iff every row is an up-set and rows only grow when f shrinks.
void check_monotone(const DesignProblem& d) {
  const size_t nf = d.fun->size();
  std::vector<Bitset> closure(nf);
  for (size_t f = 0; f < nf; ++f) {
    Bitset up(d.res->size());
    const Bitset& row = d.rows[f];
    for (size_t r = row.find_first(); r != Bitset::npos; r = row.find_next(r))
      up |= d.res->upset(r);
    closure[f] = std::move(up);
  }
  for (size_t f = 0; f < nf; ++f) {
    const Bitset& below = d.fun->downset(f);
    for (size_t f2 = below.find_first(); f2 != Bitset::npos; f2 = below.find_next(f2))
      if (!closure[f].is_subset_of(d.rows[f2]))
        throw Error(Errc::monotonicity_violation,
                    "feasibility not monotone at fun '" + label_str(d.fun->label(f)) + "'");
  }
}

}  // namespace

DesignProblem mk_dp(Poset fun, Poset res, std::vector<Bitset> rows) {
  DesignProblem d{std::move(fun), std::move(res), std::move(rows)};
  check_shape(d);
  check_monotone(d);
  return d;
}

DesignProblem mk_dp(Poset fun, Poset res, const std::vector<std::vector<bool>>& rows) {
  std::vector<Bitset> bits;
  bits.reserve(rows.size());
  const size_t nr = res->size();
  for (const auto& row : rows) {
    if (row.size() != nr) throw Error(Errc::shape_mismatch, "row width differs from |res|");
    Bitset b(nr);
    for (size_t r = 0; r < nr; ++r)
      if (row[r]) b.set(r);
    bits.push_back(std::move(b));
  }
  return mk_dp(std::move(fun), std::move(res), std::move(bits));
}

DesignProblem threshold_dp(const Poset& fun_grid, const Poset& res_grid,
                           const ThresholdFn& phi) {
  const size_t nf = fun_grid->size(), nr = res_grid->size();
  std::vector<std::vector<Rat>> res_coords(nr);
  for (size_t r = 0; r < nr; ++r) res_coords[r] = label_coords(res_grid->label(r));
  std::vector<Bitset> rows(nf, Bitset(nr));
  for (size_t f = 0; f < nf; ++f) {
    std::vector<Rat> need = phi(label_coords(fun_grid->label(f)));
    if (need.size() != res_grid->arity())
      throw Error(Errc::shape_mismatch, "threshold arity differs from res factor count");
    for (size_t r = 0; r < nr; ++r) {
      bool ok = true;
      for (size_t k = 0; k < need.size() && ok; ++k) ok = need[k] <= res_coords[r][k];
      if (ok) rows[f].set(r);
    }
  }
  return mk_dp(fun_grid, res_grid, std::move(rows));
}

DesignProblem compose(const DesignProblem& a, const DesignProblem& b) {
  if (!poset_equal(*a.res, *b.fun))
    throw Error(Errc::interface_mismatch, "middle posets differ in composition");
  const size_t nf = a.fun->size(), nq = b.res->size();
  std::vector<Bitset> rows(nf, Bitset(nq));
  for (size_t f = 0; f < nf; ++f) {
    const Bitset& mid = a.rows[f];
    for (size_t r = mid.find_first(); r != Bitset::npos; r = mid.find_next(r))
      rows[f] |= b.rows[r];
  }
  return DesignProblem{a.fun, b.res, std::move(rows)};
}

DesignProblem tensor(const DesignProblem& a, const DesignProblem& b) {
  Poset fun = product(a.fun, b.fun);
  Poset res = product(a.res, b.res);
  const size_t nf2 = b.fun->size(), nr2 = b.res->size();
  std::vector<Bitset> rows(fun->size(), Bitset(res->size()));
  for (size_t f1 = 0; f1 < a.fun->size(); ++f1)
    for (size_t f2 = 0; f2 < nf2; ++f2) {
      Bitset& row = rows[f1 * nf2 + f2];
      const Bitset& r1s = a.rows[f1];
      const Bitset& r2s = b.rows[f2];
      for (size_t r1 = r1s.find_first(); r1 != Bitset::npos; r1 = r1s.find_next(r1))
        for (size_t r2 = r2s.find_first(); r2 != Bitset::npos; r2 = r2s.find_next(r2))
          row.set(r1 * nr2 + r2);
    }
  return DesignProblem{std::move(fun), std::move(res), std::move(rows)};
}

DesignProblem identity_dp(const Poset& p) {
  std::vector<Bitset> rows;
  rows.reserve(p->size());
  for (size_t i = 0; i < p->size(); ++i) rows.push_back(p->upset(i));
  return DesignProblem{p, p, std::move(rows)};
}

DesignProblem cap(const Poset& p) {
  const size_t n = p->size();
  Poset res = product(opposite(p), p);
  Bitset row(n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (p->leq(a, b)) row.set(a * n + b);
  return DesignProblem{unit_poset(), std::move(res), {row}};
}

DesignProblem cup(const Poset& p) {
  const size_t n = p->size();
  Poset fun = product(p, opposite(p));
  std::vector<Bitset> rows(n * n, Bitset(1));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (p->leq(a, b)) rows[a * n + b].set(0);
  return DesignProblem{std::move(fun), unit_poset(), std::move(rows)};
}

DesignProblem sym_dp(const Poset& p, const Poset& q) {
  const size_t np = p->size(), nq = q->size();
  Poset fun = product(p, q);
  Poset res = product(q, p);
  std::vector<Bitset> rows(np * nq, Bitset(nq * np));
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < nq; ++j) {
      Bitset& row = rows[i * nq + j];
      const Bitset& pi = p->upset(i);
      const Bitset& qj = q->upset(j);
      for (size_t j2 = qj.find_first(); j2 != Bitset::npos; j2 = qj.find_next(j2))
        for (size_t i2 = pi.find_first(); i2 != Bitset::npos; i2 = pi.find_next(i2))
          row.set(j2 * np + i2);
    }
  return DesignProblem{std::move(fun), std::move(res), std::move(rows)};
}

bool same_interfaces(const DesignProblem& a, const DesignProblem& b) {
  return poset_equal(*a.fun, *b.fun) && poset_equal(*a.res, *b.res);
}

bool dp_equal(const DesignProblem& a, const DesignProblem& b) {
  return same_interfaces(a, b) && a.rows == b.rows;
}

bool leq_dp(const DesignProblem& a, const DesignProblem& b) {
  if (!same_interfaces(a, b))
    throw Error(Errc::interface_mismatch, "DP order needs equal interfaces");
  for (size_t f = 0; f < a.rows.size(); ++f)
    if (!a.rows[f].is_subset_of(b.rows[f])) return false;
  return true;
}

DesignProblem meet_dp(const DesignProblem& a, const DesignProblem& b) {
  if (!same_interfaces(a, b)) throw Error(Errc::interface_mismatch, "meet needs equal interfaces");
  DesignProblem out = a;
  for (size_t f = 0; f < out.rows.size(); ++f) out.rows[f] &= b.rows[f];
  return out;
}

DesignProblem join_dp(const DesignProblem& a, const DesignProblem& b) {
  if (!same_interfaces(a, b)) throw Error(Errc::interface_mismatch, "join needs equal interfaces");
  DesignProblem out = a;
  for (size_t f = 0; f < out.rows.size(); ++f) out.rows[f] |= b.rows[f];
  return out;
}

DesignProblem none_feasible(Poset fun, Poset res) {
  std::vector<Bitset> rows(fun->size(), Bitset(res->size()));
  return DesignProblem{std::move(fun), std::move(res), std::move(rows)};
}

DesignProblem all_feasible(Poset fun, Poset res) {
  std::vector<Bitset> rows(fun->size(), Bitset(res->size()).set());
  return DesignProblem{std::move(fun), std::move(res), std::move(rows)};
}

DesignProblem permutation_dp(const std::vector<Poset>& factors,
                             const std::vector<size_t>& perm) {
  const size_t m = factors.size();
  if (perm.size() != m) throw Error(Errc::shape_mismatch, "permutation arity mismatch");
  std::vector<Poset> permuted(m);
  for (size_t k = 0; k < m; ++k) permuted[k] = factors[perm[k]];
  Poset fun = product_all(factors);
  Poset res = product_all(permuted);
  std::vector<size_t> stride_fun(m, 1), stride_res(m, 1);
  for (size_t k = m; k-- > 1;) {
    stride_fun[k - 1] = stride_fun[k] * factors[k]->size();
    stride_res[k - 1] = stride_res[k] * permuted[k]->size();
  }
  const size_t nf = fun->size(), nr = res->size();
  std::vector<Bitset> rows(nf, Bitset(nr));
  for (size_t x = 0; x < nf; ++x) {
    std::vector<size_t> xc(m);
    size_t rem = x;
    for (size_t k = 0; k < m; ++k) {
      xc[k] = rem / stride_fun[k];
      rem %= stride_fun[k];
    }
    for (size_t y = 0; y < nr; ++y) {
      size_t remy = y;
      bool ok = true;
      for (size_t k = 0; k < m && ok; ++k) {
        size_t yk = remy / stride_res[k];
        remy %= stride_res[k];
        ok = factors[perm[k]]->leq(xc[perm[k]], yk);
      }
      if (ok) rows[x].set(y);
    }
  }
  return DesignProblem{std::move(fun), std::move(res), std::move(rows)};
}

bool dp_less(const DesignProblem& a, const DesignProblem& b) {
  if (a.fun->labels() != b.fun->labels()) return a.fun->labels() < b.fun->labels();
  if (a.res->labels() != b.res->labels()) return a.res->labels() < b.res->labels();
  return a.rows < b.rows;
}

}  // namespace pudp
