#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pudp/dp.hpp"
#include "pudp/errors.hpp"

namespace pudp {

enum class MonadKind { identity, powerset, interval, distribution };

const char* kind_name(MonadKind k);
std::optional<MonadKind> kind_from_name(std::string_view name);

// Default tolerance for comparing distributions (total variation) and for
// accepting a distribution as normalized.
inline constexpr double kTvTol = 1e-9;

// Canonical comparisons per carrier.  The default works for any type with
// built-in ordering; carriers that need structural comparison specialize.
template <class T>
struct carrier_traits {
  static bool less(const T& a, const T& b) { return a < b; }
  static bool equal(const T& a, const T& b) { return a == b; }
};

template <>
struct carrier_traits<DesignProblem> {
  static bool less(const DesignProblem& a, const DesignProblem& b) { return dp_less(a, b); }
  static bool equal(const DesignProblem& a, const DesignProblem& b) { return dp_equal(a, b); }
};

template <>
struct carrier_traits<Antichain> {
  static bool less(const Antichain& a, const Antichain& b) {
    if (a.poset->size() != b.poset->size()) return a.poset->size() < b.poset->size();
    return a.members < b.members;
  }
  static bool equal(const Antichain& a, const Antichain& b) { return antichain_equal(a, b); }
};

template <class A, class B>
struct carrier_traits<std::pair<A, B>> {
  static bool less(const std::pair<A, B>& x, const std::pair<A, B>& y) {
    if (!carrier_traits<A>::equal(x.first, y.first))
      return carrier_traits<A>::less(x.first, y.first);
    return carrier_traits<B>::less(x.second, y.second);
  }
  static bool equal(const std::pair<A, B>& x, const std::pair<A, B>& y) {
    return carrier_traits<A>::equal(x.first, y.first) &&
           carrier_traits<B>::equal(x.second, y.second);
  }
};

// A value of M(T) for the bundle's monad kind.
//   identity:      items = {x}
//   powerset:      items = nonempty sorted set
//   interval:      items = {lo, hi}
//   distribution:  items = sorted support, probs aligned, mass ~ 1
template <class T>
struct Uncertain {
  MonadKind kind;
  std::vector<T> items;
  std::vector<double> probs;
};

template <class T>
struct carrier_traits<Uncertain<T>> {
  static bool less(const Uncertain<T>& a, const Uncertain<T>& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    for (size_t i = 0; i < a.items.size(); ++i)
      if (!carrier_traits<T>::equal(a.items[i], b.items[i]))
        return carrier_traits<T>::less(a.items[i], b.items[i]);
    return a.probs < b.probs;
  }
  static bool equal(const Uncertain<T>& a, const Uncertain<T>& b) {
    if (a.kind != b.kind || a.items.size() != b.items.size() || a.probs != b.probs)
      return false;
    for (size_t i = 0; i < a.items.size(); ++i)
      if (!carrier_traits<T>::equal(a.items[i], b.items[i])) return false;
    return true;
  }
};

namespace detail {

// Sort/dedup for powerset, sort/merge/drop-zeros for distribution.
template <class T>
void canonicalize(Uncertain<T>& v) {
  switch (v.kind) {
    case MonadKind::powerset: {
      std::sort(v.items.begin(), v.items.end(), carrier_traits<T>::less);
      auto last = std::unique(v.items.begin(), v.items.end(), carrier_traits<T>::equal);
      v.items.erase(last, v.items.end());
      break;
    }
    case MonadKind::distribution: {
      std::vector<size_t> order(v.items.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return carrier_traits<T>::less(v.items[a], v.items[b]);
      });
      std::vector<T> items;
      std::vector<double> probs;
      for (size_t i : order) {
        if (!items.empty() && carrier_traits<T>::equal(items.back(), v.items[i]))
          probs.back() += v.probs[i];
        else {
          items.push_back(v.items[i]);
          probs.push_back(v.probs[i]);
        }
      }
      for (size_t i = items.size(); i-- > 0;)
        if (probs[i] == 0.0) {
          items.erase(items.begin() + static_cast<long>(i));
          probs.erase(probs.begin() + static_cast<long>(i));
        }
      v.items = std::move(items);
      v.probs = std::move(probs);
      break;
    }
    default: break;
  }
}

}  // namespace detail

template <class T>
Uncertain<T> unit(MonadKind kind, T x) {
  switch (kind) {
    case MonadKind::identity: return {kind, {std::move(x)}, {}};
    case MonadKind::powerset: return {kind, {std::move(x)}, {}};
    case MonadKind::interval: return {kind, {x, x}, {}};
    case MonadKind::distribution: return {kind, {std::move(x)}, {1.0}};
  }
  throw Error(Errc::kind_mismatch, "unknown monad kind");
}

template <class T>
Uncertain<T> make_powerset(std::vector<T> items) {
  if (items.empty()) throw Error(Errc::invalid_value, "powerset value must be nonempty");
  Uncertain<T> v{MonadKind::powerset, std::move(items), {}};
  detail::canonicalize(v);
  return v;
}

// `leq` is the carrier's partial order; intervals over unordered carriers
// are rejected by passing a predicate that returns false.
template <class T, class Leq>
Uncertain<T> make_interval(T lo, T hi, Leq&& leq) {
  if (!leq(lo, hi)) throw Error(Errc::invalid_interval, "interval endpoints out of order");
  return {MonadKind::interval, {std::move(lo), std::move(hi)}, {}};
}

template <class T>
Uncertain<T> make_distribution(std::vector<T> items, std::vector<double> probs) {
  if (items.empty() || items.size() != probs.size())
    throw Error(Errc::invalid_distribution, "atoms and probabilities must align");
  double mass = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(Errc::invalid_distribution, "negative probability");
    mass += p;
  }
  if (std::abs(mass - 1.0) > kTvTol)
    throw Error(Errc::invalid_distribution, "mass differs from 1 beyond tolerance");
  Uncertain<T> v{MonadKind::distribution, std::move(items), std::move(probs)};
  detail::canonicalize(v);
  if (v.items.empty()) throw Error(Errc::invalid_distribution, "no mass left");
  return v;
}

// Functorial action M(f).  For intervals f must be order-preserving.
template <class T, class F>
auto map_uncertain(const Uncertain<T>& m, F&& f) -> Uncertain<decltype(f(m.items[0]))> {
  using U = decltype(f(m.items[0]));
  Uncertain<U> out{m.kind, {}, m.probs};
  out.items.reserve(m.items.size());
  for (const auto& x : m.items) out.items.push_back(f(x));
  detail::canonicalize(out);
  return out;
}

// Kleisli extension; the continuation must return the same kind.
//   powerset: union; interval: [k(lo).lo, k(hi).hi]; distribution: mixture.
template <class T, class K>
auto bind_uncertain(const Uncertain<T>& m, K&& k) -> decltype(k(m.items[0])) {
  using MU = decltype(k(m.items[0]));
  auto check = [&](const MU& inner) {
    if (inner.kind != m.kind)
      throw Error(Errc::kind_mismatch, "continuation changed the monad kind");
  };
  switch (m.kind) {
    case MonadKind::identity: {
      MU r = k(m.items[0]);
      check(r);
      return r;
    }
    case MonadKind::powerset: {
      MU out{m.kind, {}, {}};
      for (const auto& x : m.items) {
        MU inner = k(x);
        check(inner);
        out.items.insert(out.items.end(), inner.items.begin(), inner.items.end());
      }
      detail::canonicalize(out);
      return out;
    }
    case MonadKind::interval: {
      MU a = k(m.items[0]), b = k(m.items[1]);
      check(a);
      check(b);
      return MU{m.kind, {a.items[0], b.items[1]}, {}};
    }
    case MonadKind::distribution: {
      MU out{m.kind, {}, {}};
      for (size_t i = 0; i < m.items.size(); ++i) {
        MU inner = k(m.items[i]);
        check(inner);
        for (size_t j = 0; j < inner.items.size(); ++j) {
          out.items.push_back(inner.items[j]);
          out.probs.push_back(m.probs[i] * inner.probs[j]);
        }
      }
      detail::canonicalize(out);
      return out;
    }
  }
  throw Error(Errc::kind_mismatch, "unknown monad kind");
}

// M(op) after the monoidal strength: combines independent uncertainty.
// For intervals op must be monotone in both arguments.
template <class A, class B, class Op>
auto map2_uncertain(const Uncertain<A>& ma, const Uncertain<B>& mb, Op&& op)
    -> Uncertain<decltype(op(ma.items[0], mb.items[0]))> {
  using U = decltype(op(ma.items[0], mb.items[0]));
  if (ma.kind != mb.kind) throw Error(Errc::kind_mismatch, "mixed monad kinds");
  Uncertain<U> out{ma.kind, {}, {}};
  switch (ma.kind) {
    case MonadKind::identity:
      out.items.push_back(op(ma.items[0], mb.items[0]));
      return out;
    case MonadKind::powerset:
      for (const auto& x : ma.items)
        for (const auto& y : mb.items) out.items.push_back(op(x, y));
      detail::canonicalize(out);
      return out;
    case MonadKind::interval:
      out.items.push_back(op(ma.items[0], mb.items[0]));
      out.items.push_back(op(ma.items[1], mb.items[1]));
      return out;
    case MonadKind::distribution:
      for (size_t i = 0; i < ma.items.size(); ++i)
        for (size_t j = 0; j < mb.items.size(); ++j) {
          out.items.push_back(op(ma.items[i], mb.items[j]));
          out.probs.push_back(ma.probs[i] * mb.probs[j]);
        }
      detail::canonicalize(out);
      return out;
  }
  throw Error(Errc::kind_mismatch, "unknown monad kind");
}

// The strength itself, with pairs as carrier.
template <class A, class B>
Uncertain<std::pair<A, B>> strength(const Uncertain<A>& ma, const Uncertain<B>& mb) {
  return map2_uncertain(ma, mb, [](const A& a, const B& b) { return std::make_pair(a, b); });
}

template <class T>
double tv_distance(const Uncertain<T>& a, const Uncertain<T>& b) {
  double d = 0.0;
  size_t i = 0, j = 0;
  while (i < a.items.size() || j < b.items.size()) {
    if (j == b.items.size() ||
        (i < a.items.size() && carrier_traits<T>::less(a.items[i], b.items[j]))) {
      d += a.probs[i++];
    } else if (i == a.items.size() || carrier_traits<T>::less(b.items[j], a.items[i])) {
      d += b.probs[j++];
    } else {
      d += std::abs(a.probs[i++] - b.probs[j++]);
    }
  }
  return d / 2.0;
}

// Exact for identity/powerset/interval; total variation for distributions.
template <class T>
bool values_equal(const Uncertain<T>& a, const Uncertain<T>& b, double tol = kTvTol) {
  if (a.kind != b.kind) return false;
  if (a.kind == MonadKind::distribution) return tv_distance(a, b) <= tol;
  if (a.items.size() != b.items.size()) return false;
  for (size_t i = 0; i < a.items.size(); ++i)
    if (!carrier_traits<T>::equal(a.items[i], b.items[i])) return false;
  return true;
}

template <class T, class Leq>
void validate_interval(const Uncertain<T>& v, Leq&& leq) {
  if (v.kind == MonadKind::interval && !leq(v.items[0], v.items[1]))
    throw Error(Errc::invalid_interval, "interval endpoints out of order");
}

// A Kleisli arrow out of a finite set of labelled points.
template <class T>
struct KleisliMap {
  MonadKind kind;
  std::vector<std::string> dom;
  std::vector<Uncertain<T>> values;  // aligned with dom
};

template <class T, class F>
KleisliMap<T> lift(MonadKind kind, std::vector<std::string> dom, F&& f) {
  KleisliMap<T> out{kind, std::move(dom), {}};
  out.values.reserve(out.dom.size());
  for (const auto& d : out.dom) out.values.push_back(unit(kind, f(d)));
  return out;
}

// g after f, where `index` locates each intermediate value in g's domain.
template <class A, class B, class Index>
KleisliMap<B> kleisli_compose(const KleisliMap<A>& f, const KleisliMap<B>& g, Index&& index) {
  if (f.kind != g.kind) throw Error(Errc::kind_mismatch, "mixed monad kinds");
  KleisliMap<B> out{f.kind, f.dom, {}};
  out.values.reserve(f.values.size());
  for (const auto& v : f.values)
    out.values.push_back(bind_uncertain(v, [&](const A& x) { return g.values[index(x)]; }));
  return out;
}

}  // namespace pudp
