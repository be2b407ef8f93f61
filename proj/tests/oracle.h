#pragma once
// Brute-force reference implementations used only by tests. They share
// nothing with the library beyond the Perm type.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>
#include <vector>

#include "sporadic/perm.h"
#include "sporadic/random.h"

namespace oracle {

using spor::Perm;
using spor::point;

inline Perm mul(const Perm &a, const Perm &b) {
  std::vector<point> r(a.degree());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = b[a[i]];
  return Perm::from_images_unchecked(r);
}

inline Perm inv(const Perm &a) {
  std::vector<point> r(a.degree());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[a[i]] = static_cast<point>(i);
  return Perm::from_images_unchecked(r);
}

// closure by breadth-first multiplication
inline std::vector<Perm> elements(const std::vector<Perm> &gens, std::size_t n,
                                  std::size_t limit = 200000) {
  std::unordered_set<Perm, spor::PermHash> seen;
  std::vector<Perm> out{Perm(n)};
  seen.insert(out[0]);
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const Perm &g : gens) {
      Perm h = mul(out[k], g);
      if (seen.insert(h).second) {
        out.push_back(h);
        if (out.size() > limit)
          throw std::length_error("oracle: group too large");
      }
    }
  return out;
}

inline bool same_set(std::vector<Perm> a, std::vector<Perm> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline std::size_t order_by_power(const Perm &p) {
  Perm x = p;
  std::size_t k = 1;
  while (!x.is_identity()) {
    x = mul(x, p);
    ++k;
  }
  return k;
}

inline Perm random_perm(std::size_t n, spor::Rng &rng) {
  std::vector<point> v(n);
  std::iota(v.begin(), v.end(), point{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(v[i - 1], v[rng.below(i)]);
  return Perm::from_images_unchecked(v);
}

// Conjugation: x^g = g^-1 x g
inline Perm conj(const Perm &x, const Perm &g) { return mul(mul(inv(g), x), g); }

inline std::vector<Perm> centralizer(const std::vector<Perm> &elts, const std::vector<Perm> &targets) {
  std::vector<Perm> r;
  for (const Perm &g : elts) {
    bool ok = true;
    for (const Perm &t : targets)
      if (mul(g, t) != mul(t, g)) {
        ok = false;
        break;
      }
    if (ok)
      r.push_back(g);
  }
  return r;
}

inline std::vector<Perm> normalizer(const std::vector<Perm> &elts, const std::vector<Perm> &h_elts) {
  std::set<Perm> hs(h_elts.begin(), h_elts.end());
  std::vector<Perm> r;
  for (const Perm &g : elts) {
    bool ok = true;
    for (const Perm &x : h_elts)
      if (!hs.count(conj(x, g))) {
        ok = false;
        break;
      }
    if (ok)
      r.push_back(g);
  }
  return r;
}

inline std::vector<Perm> intersect(const std::vector<Perm> &a, const std::vector<Perm> &b) {
  std::set<Perm> bs(b.begin(), b.end());
  std::vector<Perm> r;
  for (const Perm &x : a)
    if (bs.count(x))
      r.push_back(x);
  return r;
}

// number of conjugacy classes and their sizes
inline std::vector<std::size_t> class_sizes(const std::vector<Perm> &elts) {
  std::set<Perm> done;
  std::vector<std::size_t> sizes;
  for (const Perm &x : elts) {
    if (done.count(x))
      continue;
    std::set<Perm> cls;
    for (const Perm &g : elts)
      cls.insert(conj(x, g));
    sizes.push_back(cls.size());
    done.insert(cls.begin(), cls.end());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline bool is_power_of(std::size_t v, unsigned p) {
  while (v > 1 && v % p == 0)
    v /= p;
  return v == 1;
}

// O_p(G): x lies in it exactly when the normal closure of x is a p-group
inline std::vector<Perm> p_core(const std::vector<Perm> &elts, std::size_t n, unsigned p) {
  std::set<Perm> core, rejected;
  for (const Perm &x : elts) {
    if (core.count(x) || rejected.count(x))
      continue;
    std::set<Perm> cls;
    for (const Perm &g : elts)
      cls.insert(conj(x, g));
    bool ok = is_power_of(order_by_power(x), p);
    if (ok) {
      try {
        ok = is_power_of(elements({cls.begin(), cls.end()}, n, elts.size()).size(), p);
      } catch (const std::length_error &) {
        ok = false;
      }
    }
    (ok ? core : rejected).insert(cls.begin(), cls.end());
  }
  return {core.begin(), core.end()};
}

// p-rank of G/[G,G]G^p, from the subgroup generated by all commutators
// [a,s] and p-th powers
inline std::size_t ab_rank(const std::vector<Perm> &gens, std::size_t n, unsigned p) {
  auto elts = elements(gens, n);
  std::set<Perm> sub;
  for (const Perm &a : elts) {
    for (const Perm &s : gens)
      sub.insert(mul(mul(inv(a), inv(s)), mul(a, s)));
    Perm x(n);
    for (unsigned i = 0; i < p; ++i)
      x = mul(x, a);
    sub.insert(x);
  }
  std::size_t q = elts.size() / elements({sub.begin(), sub.end()}, n).size();
  std::size_t r = 0;
  for (; q > 1; q /= p) {
    if (q % p != 0)
      throw std::logic_error("oracle: quotient is not a p-group");
    ++r;
  }
  return r;
}

}  // namespace oracle
