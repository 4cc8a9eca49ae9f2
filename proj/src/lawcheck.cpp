#include "pudp/lawcheck.hpp"

#include <string>
#include <utility>

namespace pudp {

namespace {

std::string atom(const char* stem, size_t i) { return std::string(stem) + std::to_string(i); }

}  // namespace

Poset random_poset(Rng& rng, size_t max_size) {
  size_t n = 1 + rng.uniform(max_size);
  std::vector<std::string> atoms;
  atoms.reserve(n);
  for (size_t i = 0; i < n; ++i) atoms.push_back(atom("e", i));
  // Edges only from lower to higher index: acyclic by construction, the
  // constructor closes transitively.
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (rng.coin(0.45)) pairs.emplace_back(atoms[i], atoms[j]);
  return mk_poset(atoms, pairs);
}

Poset random_grid(Rng& rng, size_t max_axes, size_t max_points) {
  size_t na = 1 + rng.uniform(max_axes);
  std::vector<GridAxis> axes;
  for (size_t a = 0; a < na; ++a) {
    GridAxis ax;
    ax.name = atom("x", a);
    size_t np = 1 + rng.uniform(max_points);
    Rat v(static_cast<long long>(rng.uniform(3)), 1);
    for (size_t i = 0; i < np; ++i) {
      ax.values.push_back(v);
      v += Rat(1 + static_cast<long long>(rng.uniform(3)), 1);
    }
    ax.ascending = rng.coin(0.8);
    axes.push_back(std::move(ax));
  }
  return grid_poset(axes);
}

DesignProblem random_dp(Rng& rng, const Poset& fun, const Poset& res) {
  size_t nf = fun->size(), nr = res->size();
  std::vector<Bitset> rows(nf, Bitset(nr));
  // Union of rectangles {f <= f0} x {r0 <= r}: monotone by construction.
  size_t k = rng.uniform(nf * nr / 2 + 2);
  for (size_t t = 0; t < k; ++t) {
    size_t f0 = rng.uniform(nf), r0 = rng.uniform(nr);
    for (size_t f = 0; f < nf; ++f)
      if (fun->leq(f, f0)) rows[f] |= res->upset(r0);
  }
  return mk_dp(fun, res, std::move(rows));
}

Uncertain<DesignProblem> random_payload(Rng& rng, MonadKind kind, const Poset& src,
                                        const Poset& tgt) {
  switch (kind) {
    case MonadKind::identity: return unit(kind, random_dp(rng, src, tgt));
    case MonadKind::powerset: {
      std::vector<DesignProblem> items;
      size_t n = 1 + rng.uniform(3);
      for (size_t i = 0; i < n; ++i) items.push_back(random_dp(rng, src, tgt));
      return make_powerset(std::move(items));
    }
    case MonadKind::interval: {
      DesignProblem a = random_dp(rng, src, tgt), b = random_dp(rng, src, tgt);
      return make_interval(meet_dp(a, b), join_dp(a, b),
                           [](const DesignProblem& x, const DesignProblem& y) {
                             return leq_dp(x, y);
                           });
    }
    case MonadKind::distribution: {
      size_t n = 1 + rng.uniform(3);
      std::vector<DesignProblem> items;
      std::vector<double> probs;
      double total = 0.0;
      for (size_t i = 0; i < n; ++i) {
        items.push_back(random_dp(rng, src, tgt));
        double w = 0.05 + rng.unit();
        probs.push_back(w);
        total += w;
      }
      for (double& p : probs) p /= total;
      return make_distribution(std::move(items), std::move(probs));
    }
  }
  throw Error(Errc::kind_mismatch, "unknown monad kind");
}

ParamSpace random_space(Rng& rng, size_t max_factors, size_t max_points, bool ordered) {
  size_t nf = rng.uniform(max_factors + 1);
  std::vector<ParamFactor> factors;
  for (size_t i = 0; i < nf; ++i) {
    ParamFactor f;
    f.name = atom("q", i);
    size_t np = 1 + rng.uniform(max_points);
    for (size_t j = 0; j < np; ++j) f.points.push_back(atom("u", j));
    if (ordered) f.order = chain(f.points, f.name);
    factors.push_back(std::move(f));
  }
  return ParamSpace(std::move(factors));
}

ParamCell random_cell(Rng& rng, MonadKind kind, const Poset& src, const Poset& tgt,
                      size_t max_factors, size_t max_points) {
  ParamSpace dom = random_space(rng, max_factors, max_points, false);
  std::vector<Uncertain<DesignProblem>> table;
  table.reserve(dom.num_points());
  for (size_t p = 0; p < dom.num_points(); ++p)
    table.push_back(random_payload(rng, kind, src, tgt));
  return make_cell(kind, std::move(dom), src, tgt, std::move(table));
}

std::vector<DesignProblem> all_dps(const Poset& fun, const Poset& res) {
  size_t nf = fun->size(), nr = res->size();
  size_t bits = nf * nr;
  std::vector<DesignProblem> out;
  for (size_t mask = 0; mask < (size_t{1} << bits); ++mask) {
    std::vector<Bitset> rows(nf, Bitset(nr));
    for (size_t f = 0; f < nf; ++f)
      for (size_t r = 0; r < nr; ++r)
        if (mask >> (f * nr + r) & 1) rows[f].set(r);
    bool ok = true;
    for (size_t f = 0; f < nf && ok; ++f) {
      for (size_t r = 0; r < nr && ok; ++r)
        if (rows[f].test(r) && !res->upset(r).is_subset_of(rows[f])) ok = false;
      for (size_t g = 0; g < nf && ok; ++g)
        if (fun->leq(g, f) && !rows[f].is_subset_of(rows[g])) ok = false;
    }
    if (ok) out.push_back(DesignProblem{fun, res, std::move(rows)});
  }
  return out;
}

std::vector<Poset> poset_catalog_2() {
  return {
      mk_poset({"a"}, {}),
      mk_poset({"a", "b"}, {{"a", "b"}}),
      mk_poset({"a", "b"}, {}),
  };
}

std::vector<Poset> poset_catalog_4() {
  auto cat = poset_catalog_2();
  cat.push_back(mk_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  cat.push_back(mk_poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}));
  cat.push_back(mk_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}));
  cat.push_back(mk_poset({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"b", "d"}}));
  cat.push_back(mk_poset({"a", "b", "c", "d"},
                         {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}));
  return cat;
}

bool LawReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

void LawReport::add(std::string name, bool pass, std::string witness) {
  results.push_back({std::move(name), pass, std::move(witness)});
}

// ---------------------------------------------------------------------------
// Plain design problems.

LawReport dp_law_suite(const LawOptions& opt) {
  LawReport rep;
  Rng rng(opt.seed);

  auto cat2 = poset_catalog_2();
  std::vector<std::vector<std::vector<DesignProblem>>> homs(cat2.size());
  for (size_t i = 0; i < cat2.size(); ++i) {
    homs[i].resize(cat2.size());
    for (size_t j = 0; j < cat2.size(); ++j) homs[i][j] = all_dps(cat2[i], cat2[j]);
  }

  {
    bool ok = true;
    std::string w;
    for (size_t p = 0; p < cat2.size() && ok; ++p)
      for (size_t q = 0; q < cat2.size() && ok; ++q)
        for (size_t r = 0; r < cat2.size() && ok; ++r)
          for (size_t s = 0; s < cat2.size() && ok; ++s)
            for (const auto& e : homs[p][q])
              for (const auto& f : homs[q][r]) {
                for (const auto& g : homs[r][s])
                  if (!dp_equal(compose(compose(e, f), g), compose(e, compose(f, g)))) {
                    ok = false;
                    w = "objects (" + std::to_string(p) + "," + std::to_string(q) + "," +
                        std::to_string(r) + "," + std::to_string(s) + ")";
                    break;
                  }
                if (!ok) break;
              }
    rep.add("dp: compose associativity (exhaustive, posets <= 2)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (size_t p = 0; p < cat2.size() && ok; ++p)
      for (size_t q = 0; q < cat2.size() && ok; ++q)
        for (const auto& e : homs[p][q])
          if (!dp_equal(compose(identity_dp(cat2[p]), e), e) ||
              !dp_equal(compose(e, identity_dp(cat2[q])), e)) {
            ok = false;
            w = "objects (" + std::to_string(p) + "," + std::to_string(q) + ")";
            break;
          }
    rep.add("dp: compose unitality (exhaustive, posets <= 2)", ok, w);
  }

  {
    // Interchange is exhaustive over {point, 2-chain}; larger shapes are
    // covered by the sampled pass below.
    bool ok = true;
    std::string w;
    for (size_t p = 0; p < 2 && ok; ++p)
      for (size_t q = 0; q < 2 && ok; ++q)
        for (size_t r = 0; r < 2 && ok; ++r)
          for (size_t s = 0; s < 2 && ok; ++s)
            for (size_t t = 0; t < 2 && ok; ++t)
              for (size_t u = 0; u < 2 && ok; ++u)
                for (const auto& e1 : homs[p][q])
                  for (const auto& f1 : homs[q][r]) {
                    for (const auto& e2 : homs[s][t])
                      for (const auto& f2 : homs[t][u])
                        if (!dp_equal(compose(tensor(e1, e2), tensor(f1, f2)),
                                      tensor(compose(e1, f1), compose(e2, f2)))) {
                          ok = false;
                          w = "objects (" + std::to_string(p) + ".." + std::to_string(u) + ")";
                          break;
                        }
                    if (!ok) break;
                  }
    rep.add("dp: tensor/compose interchange (exhaustive, chains <= 2)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (const auto& p : poset_catalog_4()) {
      auto pop = opposite(p);
      DesignProblem s1 =
          compose(tensor(identity_dp(p), cap(p)), tensor(cup(p), identity_dp(p)));
      DesignProblem s2 =
          compose(tensor(cap(p), identity_dp(pop)), tensor(identity_dp(pop), cup(p)));
      if (!dp_equal(s1, identity_dp(p)) || !dp_equal(s2, identity_dp(pop))) {
        ok = false;
        w = "poset of size " + std::to_string(p->size());
        break;
      }
    }
    rep.add("dp: snake equations (catalog, posets <= 4)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      Poset p = random_poset(rng, 5), q = random_poset(rng, 5), r = random_poset(rng, 5),
            s = random_poset(rng, 5);
      DesignProblem e = random_dp(rng, p, q), f = random_dp(rng, q, r),
                    g = random_dp(rng, r, s);
      if (!dp_equal(compose(compose(e, f), g), compose(e, compose(f, g))) ||
          !dp_equal(compose(identity_dp(p), e), e) ||
          !dp_equal(compose(e, identity_dp(q)), e)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add("dp: compose associativity/unitality (sampled, posets <= 5)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      Poset p = random_poset(rng, 4), q = random_poset(rng, 4), r = random_poset(rng, 4);
      Poset s = random_poset(rng, 4), t = random_poset(rng, 4), u = random_poset(rng, 4);
      DesignProblem e1 = random_dp(rng, p, q), f1 = random_dp(rng, q, r);
      DesignProblem e2 = random_dp(rng, s, t), f2 = random_dp(rng, t, u);
      if (!dp_equal(compose(tensor(e1, e2), tensor(f1, f2)),
                    tensor(compose(e1, f1), compose(e2, f2)))) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add("dp: tensor/compose interchange (sampled, posets <= 4)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      Poset p = random_poset(rng, 5);
      auto pop = opposite(p);
      if (!dp_equal(compose(tensor(identity_dp(p), cap(p)), tensor(cup(p), identity_dp(p))),
                    identity_dp(p)) ||
          !dp_equal(
              compose(tensor(cap(p), identity_dp(pop)), tensor(identity_dp(pop), cup(p))),
              identity_dp(pop))) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add("dp: snake equations (sampled, posets <= 5)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      Poset p = random_poset(rng, 4), q = random_poset(rng, 4);
      DesignProblem e = random_dp(rng, p, q);
      DesignProblem lhs = tensor(e, identity_dp(unit_poset()));
      DesignProblem rhs = tensor(identity_dp(unit_poset()), e);
      if (!dp_equal(lhs, e) || !dp_equal(rhs, e)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add("dp: tensor unit is strict (sampled)", ok, w);
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Uncertainty kinds over a small numeric carrier.

namespace {

using Nat = size_t;
using MNat = Uncertain<Nat>;

MNat random_mnat(Rng& rng, MonadKind kind, size_t n) {
  switch (kind) {
    case MonadKind::identity: return unit(kind, rng.uniform(n));
    case MonadKind::powerset: {
      std::vector<Nat> items;
      size_t k = 1 + rng.uniform(std::min<size_t>(n, 3));
      for (size_t i = 0; i < k; ++i) items.push_back(rng.uniform(n));
      return make_powerset(std::move(items));
    }
    case MonadKind::interval: {
      Nat a = rng.uniform(n), b = rng.uniform(n);
      return make_interval(std::min(a, b), std::max(a, b), std::less_equal<>{});
    }
    case MonadKind::distribution: {
      size_t k = 1 + rng.uniform(std::min<size_t>(n, 3));
      std::vector<Nat> items;
      std::vector<double> probs;
      double total = 0.0;
      for (size_t i = 0; i < k; ++i) {
        items.push_back(rng.uniform(n));
        double w = 0.05 + rng.unit();
        probs.push_back(w);
        total += w;
      }
      for (double& p : probs) p /= total;
      return make_distribution(std::move(items), std::move(probs));
    }
  }
  throw Error(Errc::kind_mismatch, "unknown monad kind");
}

// A Kleisli arrow n -> M(m) as a table.  For intervals the endpoint
// sequences are nondecreasing, so the arrow is monotone as required.
std::vector<MNat> random_knat(Rng& rng, MonadKind kind, size_t n, size_t m) {
  std::vector<MNat> kv;
  kv.reserve(n);
  if (kind == MonadKind::interval) {
    std::vector<Nat> lo(n), hi(n);
    for (size_t i = 0; i < n; ++i) {
      lo[i] = rng.uniform(m);
      hi[i] = rng.uniform(m);
    }
    std::sort(lo.begin(), lo.end());
    std::sort(hi.begin(), hi.end());
    for (size_t i = 0; i < n; ++i) {
      Nat h = std::max(lo[i], hi[i]);
      kv.push_back(MNat{kind, {lo[i], h}, {}});
    }
    // max of two nondecreasing sequences is nondecreasing
    for (size_t i = 1; i < n; ++i)
      kv[i].items[1] = std::max(kv[i].items[1], kv[i - 1].items[1]);
    return kv;
  }
  for (size_t i = 0; i < n; ++i) kv.push_back(random_mnat(rng, kind, m));
  return kv;
}

// A monotone plain map n -> m (needed so intervals stay well formed).
std::vector<Nat> random_fnat(Rng& rng, size_t n, size_t m) {
  std::vector<Nat> f(n);
  for (size_t i = 0; i < n; ++i) f[i] = rng.uniform(m);
  std::sort(f.begin(), f.end());
  return f;
}

// Kleisli extension with an optional injected fault: the interval join uses
// the wrong endpoints, [k(hi).lo, k(lo).hi] instead of [k(lo).lo, k(hi).hi].
template <class T, class K>
auto bind_faulty(const Uncertain<T>& m, K&& k, bool corrupt) -> decltype(k(m.items[0])) {
  if (corrupt && m.kind == MonadKind::interval) {
    auto a = k(m.items[0]), b = k(m.items[1]);
    return {m.kind, {b.items[0], a.items[1]}, {}};
  }
  return bind_uncertain(m, std::forward<K>(k));
}

}  // namespace

LawReport monad_law_suite(MonadKind kind, const LawOptions& opt) {
  LawReport rep;
  Rng rng(opt.seed);
  const std::string tag = kind_name(kind);
  const size_t N = 5;
  const bool corrupt = opt.corrupt_interval_join;

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      auto kv = random_knat(rng, kind, N, N);
      Nat x = rng.uniform(N);
      auto lhs = bind_faulty(unit(kind, x), [&](Nat y) { return kv[y]; }, corrupt);
      if (!values_equal(lhs, kv[x], opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": left unit", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      MNat m = random_mnat(rng, kind, N);
      auto lhs = bind_faulty(m, [&](Nat y) { return unit(kind, y); }, corrupt);
      if (!values_equal(lhs, m, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": right unit", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      MNat m = random_mnat(rng, kind, N);
      auto kv = random_knat(rng, kind, N, N);
      auto hv = random_knat(rng, kind, N, N);
      auto k = [&](Nat y) { return kv[y]; };
      auto h = [&](Nat y) { return hv[y]; };
      auto lhs = bind_faulty(bind_faulty(m, k, corrupt), h, corrupt);
      auto rhs =
          bind_faulty(m, [&](Nat y) { return bind_faulty(k(y), h, corrupt); }, corrupt);
      if (!values_equal(lhs, rhs, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": bind associativity", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      MNat ma = random_mnat(rng, kind, N), mb = random_mnat(rng, kind, N);
      auto f = random_fnat(rng, N, N), g = random_fnat(rng, N, N);
      auto lhs = strength(map_uncertain(ma, [&](Nat x) { return f[x]; }),
                          map_uncertain(mb, [&](Nat x) { return g[x]; }));
      auto rhs = map_uncertain(strength(ma, mb), [&](const std::pair<Nat, Nat>& p) {
        return std::make_pair(f[p.first], g[p.second]);
      });
      if (!values_equal(lhs, rhs, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": strength naturality", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      Nat x = rng.uniform(N), y = rng.uniform(N);
      auto lhs = strength(unit(kind, x), unit(kind, y));
      if (!values_equal(lhs, unit(kind, std::make_pair(x, y)), opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": unit monoidality", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    auto join = [&](const Uncertain<MNat>& mm) {
      return bind_faulty(mm, [](const MNat& v) { return v; }, corrupt);
    };
    auto random_mmnat = [&]() -> Uncertain<MNat> {
      switch (kind) {
        case MonadKind::identity: return unit(kind, random_mnat(rng, kind, N));
        case MonadKind::powerset: {
          std::vector<MNat> items;
          size_t k = 1 + rng.uniform(size_t{2});
          for (size_t j = 0; j < k; ++j) items.push_back(random_mnat(rng, kind, N));
          return make_powerset(std::move(items));
        }
        case MonadKind::interval: {
          // q0<=q1<=q2<=q3 gives [q0,q2] <= [q1,q3] pointwise.
          std::vector<Nat> q;
          for (int j = 0; j < 4; ++j) q.push_back(rng.uniform(N));
          std::sort(q.begin(), q.end());
          MNat lo{kind, {q[0], q[2]}, {}}, hi{kind, {q[1], q[3]}, {}};
          return Uncertain<MNat>{kind, {lo, hi}, {}};
        }
        case MonadKind::distribution: {
          size_t k = 1 + rng.uniform(size_t{2});
          std::vector<MNat> items;
          std::vector<double> probs;
          double total = 0.0;
          for (size_t j = 0; j < k; ++j) {
            items.push_back(random_mnat(rng, kind, N));
            double p = 0.05 + rng.unit();
            probs.push_back(p);
            total += p;
          }
          for (double& p : probs) p /= total;
          return make_distribution(std::move(items), std::move(probs));
        }
      }
      throw Error(Errc::kind_mismatch, "unknown monad kind");
    };
    for (int i = 0; i < opt.samples && ok; ++i) {
      auto mma = random_mmnat(), mmb = random_mmnat();
      auto lhs = strength(join(mma), join(mmb));
      auto rhs = bind_faulty(
          strength(mma, mmb),
          [](const std::pair<MNat, MNat>& p) { return strength(p.first, p.second); },
          corrupt);
      if (!values_equal(lhs, rhs, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": join monoidality", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      MNat m = random_mnat(rng, kind, N);
      auto lhs = map_uncertain(m, [](Nat) { return Nat{0}; });
      if (!values_equal(lhs, unit(kind, Nat{0}), opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": affineness (image of the constant map is a unit)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < opt.samples && ok; ++i) {
      MNat ma = random_mnat(rng, kind, N), mb = random_mnat(rng, kind, N);
      auto lhs = map_uncertain(strength(ma, mb), [](const std::pair<Nat, Nat>& p) {
        return std::make_pair(p.second, p.first);
      });
      auto rhs = strength(mb, ma);
      if (!values_equal(lhs, rhs, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": strength commutes with the symmetry", ok, w);
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Parametrized cells.

namespace {

Repar random_repar(Rng& rng, MonadKind kind, const ParamSpace& dom, const ParamSpace& cod) {
  std::vector<Uncertain<uint32_t>> table;
  table.reserve(dom.num_points());
  size_t n = cod.num_points();
  for (size_t p = 0; p < dom.num_points(); ++p) {
    switch (kind) {
      case MonadKind::identity:
      case MonadKind::interval:
        // Discrete codomain: intervals collapse to units.
        table.push_back(unit(kind, static_cast<uint32_t>(rng.uniform(n))));
        break;
      case MonadKind::powerset: {
        std::vector<uint32_t> items;
        size_t k = 1 + rng.uniform(std::min<size_t>(n, 3));
        for (size_t i = 0; i < k; ++i) items.push_back(static_cast<uint32_t>(rng.uniform(n)));
        table.push_back(make_powerset(std::move(items)));
        break;
      }
      case MonadKind::distribution: {
        size_t k = 1 + rng.uniform(std::min<size_t>(n, 3));
        std::vector<uint32_t> items;
        std::vector<double> probs;
        double total = 0.0;
        for (size_t i = 0; i < k; ++i) {
          items.push_back(static_cast<uint32_t>(rng.uniform(n)));
          double w = 0.05 + rng.unit();
          probs.push_back(w);
          total += w;
        }
        for (double& p : probs) p /= total;
        table.push_back(make_distribution(std::move(items), std::move(probs)));
        break;
      }
    }
  }
  return make_repar(kind, dom, cod, std::move(table));
}

}  // namespace

LawReport para_law_suite(MonadKind kind, const LawOptions& opt) {
  LawReport rep;
  Rng rng(opt.seed);
  const std::string tag = kind_name(kind);
  int samples = std::max(1, opt.samples / 4);

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3), r = random_poset(rng, 3),
            s = random_poset(rng, 3);
      ParamCell f = random_cell(rng, kind, p, q, 1, 3);
      ParamCell g = random_cell(rng, kind, q, r, 1, 3);
      ParamCell h = random_cell(rng, kind, r, s, 1, 3);
      if (!cells_equal(hcompose(hcompose(f, g), h), hcompose(f, hcompose(g, h)), opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": hcompose associativity", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3);
      ParamCell f = random_cell(rng, kind, p, q, 2, 3);
      ParamCell lu = hcompose(include(kind, identity_dp(p)), f);
      ParamCell ru = hcompose(f, include(kind, identity_dp(q)));
      if (!cells_equal(lu, f, opt.tol) || !cells_equal(ru, f, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": hcompose unitality (inclusion of identities)", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p1 = random_poset(rng, 2), q1 = random_poset(rng, 2), r1 = random_poset(rng, 2);
      Poset p2 = random_poset(rng, 2), q2 = random_poset(rng, 2), r2 = random_poset(rng, 2);
      ParamCell f1 = random_cell(rng, kind, p1, q1, 1, 2);
      ParamCell f2 = random_cell(rng, kind, p2, q2, 1, 2);
      ParamCell g1 = random_cell(rng, kind, q1, r1, 1, 2);
      ParamCell g2 = random_cell(rng, kind, q2, r2, 1, 2);
      ParamCell lhs = hcompose(tensor_cell(f1, f2), tensor_cell(g1, g2));
      ParamCell rhs = tensor_cell(hcompose(f1, g1), hcompose(f2, g2));
      if (!check_2cell(tensorator(f1, f2, g1, g2), lhs, rhs, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": interchange up to the tensorator", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3), r = random_poset(rng, 3);
      DesignProblem e = random_dp(rng, p, q), f = random_dp(rng, q, r);
      Poset s = random_poset(rng, 2), t = random_poset(rng, 2);
      DesignProblem g = random_dp(rng, s, t);
      bool comp = cells_equal(include(kind, compose(e, f)),
                              hcompose(include(kind, e), include(kind, f)), opt.tol);
      bool tens = cells_equal(include(kind, tensor(e, g)),
                              tensor_cell(include(kind, e), include(kind, g)), opt.tol);
      if (!comp || !tens) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": inclusion is strict monoidal", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3);
      DesignProblem e = random_dp(rng, p, q), f = random_dp(rng, p, q);
      bool same = dp_equal(e, f);
      if (cells_equal(include(kind, e), include(kind, f), opt.tol) != same) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": inclusion is faithful", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3), r = random_poset(rng, 3);
      auto a = coherence_cell(kind, Coherence::assoc, {p, q, r});
      auto l = coherence_cell(kind, Coherence::lunit, {p});
      auto ru = coherence_cell(kind, Coherence::runit, {p});
      auto pq = product(p, q);
      bool idc = cells_equal(a, include(kind, identity_dp(product(pq, r))), opt.tol) &&
                 cells_equal(l, include(kind, identity_dp(p)), opt.tol) &&
                 cells_equal(ru, include(kind, identity_dp(p)), opt.tol);
      if (!idc) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": strictified coherence cells are identities", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3);
      ParamCell lhs = hcompose(include(kind, sym_dp(p, q)), include(kind, sym_dp(q, p)));
      if (!cells_equal(lhs, include(kind, identity_dp(product(p, q))), opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": braiding is an involution", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p1 = random_poset(rng, 2), q1 = random_poset(rng, 2);
      Poset p2 = random_poset(rng, 2), q2 = random_poset(rng, 2);
      ParamCell f1 = random_cell(rng, kind, p1, q1, 1, 3);
      ParamCell f2 = random_cell(rng, kind, p2, q2, 1, 3);
      ParamCell lhs = hcompose(tensor_cell(f1, f2), include(kind, sym_dp(q1, q2)));
      ParamCell rhs = hcompose(include(kind, sym_dp(p1, p2)), tensor_cell(f2, f1));
      if (!check_2cell(swap_repar(kind, f1.dom, f2.dom), lhs, rhs, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": braiding naturality up to the swap 2-cell", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3);
      ParamCell f = random_cell(rng, kind, p, q, 2, 3);
      if (!check_2cell(identity_repar(kind, f.dom), f, f, opt.tol)) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": identity 2-cell relates every cell to itself", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      ParamSpace a = random_space(rng, 2, 3, false), b = random_space(rng, 2, 3, false),
                 c = random_space(rng, 2, 3, false), d = random_space(rng, 2, 3, false);
      Repar phi = random_repar(rng, kind, a, b);
      Repar psi = random_repar(rng, kind, b, c);
      Repar chi = random_repar(rng, kind, c, d);
      bool assoc = repars_equal(vcompose(vcompose(phi, psi), chi),
                                vcompose(phi, vcompose(psi, chi)), opt.tol);
      bool unital = repars_equal(vcompose(identity_repar(kind, a), phi), phi, opt.tol) &&
                    repars_equal(vcompose(phi, identity_repar(kind, b)), phi, opt.tol);
      if (!assoc || !unital) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": vertical composition is associative and unital", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p = random_poset(rng, 3), q = random_poset(rng, 3);
      ParamCell f = random_cell(rng, kind, p, q, 2, 3);
      ParamSpace a = random_space(rng, 2, 3, false), b = random_space(rng, 2, 3, false);
      Repar phi = random_repar(rng, kind, a, b);
      Repar psi = random_repar(rng, kind, b, f.dom);
      bool unital = cells_equal(reparametrize(f, identity_repar(kind, f.dom)), f, opt.tol);
      bool functorial = cells_equal(reparametrize(reparametrize(f, psi), phi),
                                    reparametrize(f, vcompose(phi, psi)), opt.tol);
      if (!unital || !functorial) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": reparametrization is functorial", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < samples && ok; ++i) {
      Poset p1 = random_poset(rng, 2), q1 = random_poset(rng, 2);
      Poset p2 = random_poset(rng, 2), q2 = random_poset(rng, 2);
      ParamCell g1 = random_cell(rng, kind, p1, q1, 1, 3);
      ParamCell g2 = random_cell(rng, kind, p2, q2, 1, 3);
      ParamSpace a1 = random_space(rng, 1, 3, false), a2 = random_space(rng, 1, 3, false);
      Repar phi1 = random_repar(rng, kind, a1, g1.dom);
      Repar phi2 = random_repar(rng, kind, a2, g2.dom);
      ParamCell f1 = reparametrize(g1, phi1), f2 = reparametrize(g2, phi2);
      bool witness1 = check_2cell(phi1, f1, g1, opt.tol);
      bool joint = check_2cell(hcompose_2cells(phi1, phi2), tensor_cell(f1, f2),
                               tensor_cell(g1, g2), opt.tol);
      if (!witness1 || !joint) {
        ok = false;
        w = "sample " + std::to_string(i);
      }
    }
    rep.add(tag + ": horizontal composition of 2-cells", ok, w);
  }

  return rep;
}

}  // namespace pudp
