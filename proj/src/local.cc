#include "sporadic/local.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sporadic/orbits.h"

namespace spor {

namespace {

StabilizerChain trivial_chain(std::size_t n) { return schreier_sims(std::vector<Perm>{}, n); }

StabilizerChain chain_of(const std::vector<Perm> &gens, std::size_t n, const BigInt &order, std::uint64_t seed) {
  ChainOptions o;
  o.known_order = order;
  o.seed = seed;
  return schreier_sims(gens, n, o);
}

Perm restrict_prefix(const Perm &g, std::size_t n) {
  std::vector<point> img(g.images().begin(), g.images().begin() + static_cast<long>(n));
  return Perm(std::move(img));
}

std::optional<Perm> random_p_element(const StabilizerChain &h, unsigned p, Rng &rng, int tries = 4000) {
  for (int t = 0; t < tries; ++t) {
    Perm r = h.random_element(rng);
    std::uint64_t o;
    try {
      o = order_u64(r);
    } catch (const std::overflow_error &) {
      continue;
    }
    if (o % p == 0)
      return power(r, static_cast<long long>(o / p));
  }
  return std::nullopt;
}

std::vector<Perm> order_p_elements(const StabilizerChain &z, unsigned p) {
  std::vector<Perm> r;
  if (z.order() <= 100000) {
    for (const Perm &x : enumerate_elements(z))
      if (!x.is_identity() && order_u64(x) == p)
        r.push_back(x);
  } else {
    for (const Perm &x : z.generators()) {
      std::uint64_t o = order_u64(x);
      if (o > 1)
        r.push_back(power(x, static_cast<long long>(o / p)));
    }
  }
  return r;
}

struct SylowSearch {
  unsigned p;
  SearchOptions opt;
  Rng rng;

  StabilizerChain run(const StabilizerChain &h) {
    BigInt target = p_part(h.order(), p);
    std::size_t n = h.degree();
    if (target == 1)
      return trivial_chain(n);
    if (h.order() == target)
      return h;
    // an orbit of length prime to p: the point stabilizer has full p-part
    OrbitPartition orbs = orbits(h.generators(), n);
    const std::vector<point> *best = nullptr;
    for (const auto &o : orbs.orbits)
      if (o.size() > 1 && o.size() % p != 0 && (!best || o.size() > best->size()))
        best = &o;
    if (best)
      return run(point_stabilizer_chain(h, best->front()));

    auto x = random_p_element(h, p, rng);
    if (!x)
      throw std::runtime_error("sylow: no element of order p found");
    StabilizerChain cx = centralizer(h, *x, opt);
    if (cx.order() == h.order())
      return through_central(h, *x);
    StabilizerChain t0 = run(cx);
    // A p-subgroup T is Sylow in H iff it is Sylow in C_H(z) for every z of
    // order p in Z(T); otherwise some such centralizer has a larger p-part.
    for (;;) {
      if (t0.order() == target)
        return t0;
      StabilizerChain z = center(t0, opt);
      bool grew = false;
      for (const Perm &e : order_p_elements(z, p)) {
        StabilizerChain ce = centralizer(h, e, opt);
        if (p_part(ce.order(), p) > t0.order()) {
          t0 = ce.order() == h.order() ? through_central(h, e) : run(ce);
          grew = true;
          break;
        }
      }
      if (!grew)
        throw std::logic_error("sylow: p-subgroup cannot be enlarged but has the wrong order");
    }
  }

  // z has order p and is central in h: pass to the action on <z>-orbits,
  // whose kernel is a p-group, and lift a Sylow subgroup of the image.
  StabilizerChain through_central(const StabilizerChain &h, const Perm &z) {
    std::size_t n = h.degree();
    OrbitPartition zo = orbits({z}, n);
    std::size_t nb = zo.orbits.size();
    auto hat = [&](const Perm &g) {
      std::vector<point> img(nb);
      for (std::size_t b = 0; b < nb; ++b)
        img[b] = static_cast<point>(zo.label[g[zo.orbits[b][0]]]);
      return Perm(std::move(img));
    };
    auto diag = [&](const Perm &g) {
      std::vector<point> img(n + nb);
      for (point a = 0; a < n; ++a)
        img[a] = g[a];
      for (std::size_t b = 0; b < nb; ++b)
        img[n + b] = static_cast<point>(n + zo.label[g[zo.orbits[b][0]]]);
      return Perm(std::move(img));
    };
    std::vector<Perm> hg, dg;
    for (const Perm &g : h.generators()) {
      hg.push_back(hat(g));
      dg.push_back(diag(g));
    }
    ChainOptions ro;
    ro.random_only = true;
    ro.seed = rng.next();
    std::vector<point> hbase = schreier_sims(hg, nb, ro).base();
    StabilizerChain d;
    std::size_t m = 0;
    for (;;) {
      ChainOptions o;
      o.known_order = h.order();
      o.seed = rng.next();
      for (point b : hbase)
        o.base_prefix.push_back(static_cast<point>(n + b));
      Rng local(rng.next());
      std::function<Perm()> src = [&] { return diag(h.random_element(local)); };
      d = schreier_sims_with_source(dg, n + nb, o, src);
      m = hbase.size();
      std::optional<point> moved;
      for (const Perm &k : d.level_generators(m))
        for (point q = static_cast<point>(n); q < n + nb && !moved; ++q)
          if (k[q] != q)
            moved = q;
      if (!moved)
        break;
      hbase.push_back(static_cast<point>(*moved - n));
    }
    BigInt image_order = 1;
    for (std::size_t i = 0; i < m && i < d.length(); ++i)
      image_order *= d.orbit_size(i);
    BigInt kernel_order = h.order() / image_order;
    if (!is_p_power(kernel_order, p))
      throw std::logic_error("sylow: kernel of the central quotient is not a p-group");
    std::vector<Perm> pgens;
    for (const Perm &k : d.level_generators(m))
      pgens.push_back(restrict_prefix(k, n));
    StabilizerChain hatchain = chain_of(hg, nb, image_order, rng.next());
    StabilizerChain phat = run(hatchain);
    for (const Perm &y : phat.generators()) {
      std::vector<point> img(n + nb);
      for (point a = 0; a < n; ++a)
        img[a] = a;
      for (std::size_t b = 0; b < nb; ++b)
        img[n + b] = static_cast<point>(n + y[static_cast<point>(b)]);
      auto lift = lift_prefix(d, Perm(std::move(img)), m);
      if (!lift)
        throw std::logic_error("sylow: cannot lift from the central quotient");
      pgens.push_back(restrict_prefix(*lift, n));
    }
    return chain_of(pgens, n, phat.order() * kernel_order, rng.next());
  }
};

}  // namespace

StabilizerChain sylow(const StabilizerChain &g, unsigned p, const SearchOptions &opt) {
  if (!is_prime(p))
    throw std::invalid_argument("sylow: p must be prime");
  SylowSearch s{p, opt, Rng(opt.seed ^ (0x5157ULL * p))};
  StabilizerChain r = s.run(g);
  // final certification
  if (r.order() != p_part(g.order(), p) || !is_p_power(r.order(), p))
    throw std::logic_error("sylow: result has the wrong order");
  for (const Perm &x : r.generators())
    if (!g.contains(x))
      throw std::logic_error("sylow: generator outside the group");
  return r;
}

StabilizerChain center(const StabilizerChain &h, const SearchOptions &opt) {
  SearchOptions o = opt;
  return centralizer(h, h.generators(), o);
}

bool is_normal(const StabilizerChain &g, const StabilizerChain &h) {
  for (const Perm &a : g.generators())
    if (!normalizes(a, h))
      return false;
  return true;
}

bool is_subgroup(const StabilizerChain &h, const StabilizerChain &g) {
  for (const Perm &x : h.generators())
    if (!g.contains(x))
      return false;
  return true;
}

bool is_p_group(const StabilizerChain &h, unsigned p) { return is_p_power(h.order(), p); }

StabilizerChain p_core(const StabilizerChain &g, unsigned p, const SearchOptions &opt) {
  StabilizerChain s = sylow(g, p, opt);
  StabilizerChain q = s;
  Rng rng(opt.seed + 17);
  for (int it = 0; !is_normal(g, q); ++it) {
    if (it > 10000)
      throw std::runtime_error("p_core: intersection did not stabilize");
    Perm w = g.random_element(rng);
    std::vector<Perm> cg;
    for (const Perm &x : s.generators())
      cg.push_back(conjugate(x, w));
    StabilizerChain sw = chain_of(cg, g.degree(), s.order(), rng.next());
    q = intersection(q, sw, opt);
  }
  return q;
}

StabilizerChain normal_closure(const StabilizerChain &g, const std::vector<Perm> &s,
                               const std::optional<BigInt> &expected) {
  std::size_t n = g.degree();
  std::vector<Perm> gens;
  for (const Perm &x : s)
    if (!x.is_identity())
      gens.push_back(x);
  if (gens.empty())
    return trivial_chain(n);
  ChainOptions ro;
  ro.random_only = true;
  for (;;) {
    StabilizerChain c = schreier_sims(gens, n, ro);
    std::vector<Perm> extra;
    for (const Perm &x : gens)
      for (const Perm &a : g.generators()) {
        Perm y = conjugate(x, a);
        if (!c.contains(y))
          extra.push_back(std::move(y));
      }
    if (extra.empty())
      break;
    gens.insert(gens.end(), extra.begin(), extra.end());
  }
  // positive membership is exact, so <gens> is normal; now certify the chain
  ChainOptions o;
  o.known_order = expected;
  return schreier_sims(gens, n, o);
}

StabilizerChain derived_subgroup(const StabilizerChain &h, const std::optional<BigInt> &expected) {
  std::vector<Perm> comm;
  const auto &gs = h.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      comm.push_back(commutator(gs[i], gs[j]));
  return normal_closure(h, comm, expected);
}
namespace {

struct SmallGroup {
  std::vector<Perm> elts;
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  std::vector<std::uint32_t> cls;  // class id per element
  std::vector<std::size_t> cls_size;
  std::vector<std::uint64_t> ord;

  explicit SmallGroup(const StabilizerChain &x) {
    elts = enumerate_elements(x);
    for (std::uint32_t i = 0; i < elts.size(); ++i)
      index.emplace(elts[i], i);
    cls.assign(elts.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < elts.size(); ++i) {
      if (cls[i] != UINT32_MAX)
        continue;
      std::vector<std::uint32_t> orb{i};
      cls[i] = next;
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (const Perm &g : x.generators()) {
          std::uint32_t j = index.at(conjugate(elts[orb[k]], g));
          if (cls[j] == UINT32_MAX) {
            cls[j] = next;
            orb.push_back(j);
          }
        }
      cls_size.push_back(orb.size());
      ++next;
    }
    for (const Perm &e : elts)
      ord.push_back(order_u64(e));
  }
  std::uint32_t at(const Perm &p) const { return index.at(p); }
};

// Does gens[i] -> imgs[i] extend to an injective homomorphism from
// <gens> (= a) into b? Checked along every edge of a's Cayley graph.
bool extends(const SmallGroup &a, const std::vector<Perm> &gens, const SmallGroup &b,
             const std::vector<Perm> &imgs) {
  std::size_t n = a.elts.size();
  std::vector<std::uint32_t> phi(n, UINT32_MAX);
  std::vector<char> used(b.elts.size(), 0);
  std::uint32_t id_a = a.at(Perm(a.elts[0].degree())), id_b = b.at(Perm(b.elts[0].degree()));
  phi[id_a] = id_b;
  used[id_b] = 1;
  std::vector<std::uint32_t> queue{id_a};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::uint32_t e = queue[q];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::uint32_t t = a.at(a.elts[e] * gens[i]);
      std::uint32_t im = b.at(b.elts[phi[e]] * imgs[i]);
      if (phi[t] == UINT32_MAX) {
        if (used[im])
          return false;
        used[im] = 1;
        phi[t] = im;
        queue.push_back(t);
      } else if (phi[t] != im) {
        return false;
      }
    }
  }
  return queue.size() == n;
}

// Enumerate generator images with matching order and class size, and
// pairwise products of matching order; calls f on each candidate tuple
// until it returns true.
bool for_each_image_tuple(const SmallGroup &a, const std::vector<Perm> &gens, const SmallGroup &b,
                          const std::function<bool(const std::vector<Perm> &)> &f, std::size_t fixed = 0) {
  std::vector<std::vector<std::uint32_t>> cand(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::uint32_t gi = a.at(gens[i]);
    if (i < fixed) {
      cand[i].push_back(b.at(gens[i]));
      continue;
    }
    for (std::uint32_t j = 0; j < b.elts.size(); ++j)
      if (b.ord[j] == a.ord[gi] && b.cls_size[b.cls[j]] == a.cls_size[a.cls[gi]])
        cand[i].push_back(j);
  }
  std::vector<Perm> t(gens.size(), Perm(b.elts[0].degree()));
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size())
      return f(t);
    for (std::uint32_t j : cand[i]) {
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = order_u64(t[k] * b.elts[j]) == a.ord[a.at(gens[k] * gens[i])];
      if (!ok)
        continue;
      t[i] = b.elts[j];
      if (rec(i + 1))
        return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

SmallGroupAut automorphism_group_small(const StabilizerChain &x, std::size_t bound) {
  if (x.order() > bound)
    throw bound_error("automorphism_group_small: order " + to_string(x.order()) + " exceeds bound " +
                      std::to_string(bound));
  SmallGroupAut r;
  SmallGroup a(x);
  std::vector<Perm> gens = small_generating_set(x);
  std::uint64_t zsize = 0;
  for (std::size_t c = 0; c < a.cls_size.size(); ++c)
    zsize += a.cls_size[c] == 1;
  r.inner = a.elts.size() / zsize;
  if (gens.empty()) {
    r.automorphisms = 1;
  } else {
    for_each_image_tuple(a, gens, a, [&](const std::vector<Perm> &t) {
      if (extends(a, gens, a, t))
        ++r.automorphisms;
      return false;
    });
  }
  r.complete = r.automorphisms == r.inner && zsize == 1;
  return r;
}

std::uint64_t centralizing_automorphisms_small(const StabilizerChain &x, const StabilizerChain &y,
                                              std::size_t bound) {
  if (x.order() > bound)
    throw bound_error("centralizing_automorphisms_small: order " + to_string(x.order()) + " exceeds bound " +
                      std::to_string(bound));
  for (const Perm &h : y.generators())
    if (!x.contains(h))
      throw std::invalid_argument("centralizing_automorphisms_small: y is not a subgroup of x");
  SmallGroup a(x);
  std::vector<Perm> gens;
  for (const Perm &h : small_generating_set(y))
    gens.push_back(h);
  std::size_t fixed = gens.size();
  // extend to a generating set of x
  StabilizerChain cur = schreier_sims(gens, x.degree());
  for (const Perm &g : small_generating_set(x)) {
    if (cur.order() == x.order())
      break;
    if (!cur.contains(g)) {
      gens.push_back(g);
      cur = schreier_sims(gens, x.degree());
    }
  }
  if (gens.empty())
    return 1;
  std::uint64_t count = 0;
  for_each_image_tuple(
      a, gens, a,
      [&](const std::vector<Perm> &t) {
        if (extends(a, gens, a, t))
          ++count;
        return false;
      },
      fixed);
  return count;
}

std::optional<std::pair<std::vector<Perm>, std::vector<Perm>>> isomorphism_small(const StabilizerChain &x,
                                                                                 const StabilizerChain &y,
                                                                                 std::size_t bound) {
  if (x.order() != y.order())
    return std::nullopt;
  if (x.order() > bound)
    throw bound_error("isomorphism_small: order exceeds bound");
  SmallGroup a(x), b(y);
  std::vector<Perm> gens = small_generating_set(x);
  if (gens.empty())
    return std::make_pair(gens, gens);
  std::optional<std::vector<Perm>> found;
  for_each_image_tuple(a, gens, b, [&](const std::vector<Perm> &t) {
    if (extends(a, gens, b, t)) {
      found = t;
      return true;
    }
    return false;
  });
  if (!found)
    return std::nullopt;
  return std::make_pair(gens, *found);
}

ClassTable conjugacy_classes(const StabilizerChain &g, ClassMode mode, const SearchOptions &opt,
                             std::size_t sample_budget) {
  ClassTable t;
  BigInt order = g.order();
  auto add_class = [&](const Perm &x, const BigInt &csize) {
    ClassInfo c;
    c.representative = x;
    c.element_order = order_u64(x);
    c.class_size = csize;
    c.centralizer_order = order / csize;
    t.classes.push_back(std::move(c));
  };
  auto finish = [&] {
    std::stable_sort(t.classes.begin(), t.classes.end(), [](const ClassInfo &a, const ClassInfo &b) {
      if (a.element_order != b.element_order)
        return a.element_order < b.element_order;
      return a.class_size < b.class_size;
    });
  };
  auto find_class = [&](const Perm &x) -> long {
    auto ct = cycle_type(x);
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      const Perm &r = t.classes[i].representative;
      if (cycle_type(r) != ct)
        continue;
      if (conjugacy_witness(g, x, r, opt))
        return static_cast<long>(i);
    }
    return -1;
  };

  if (mode == ClassMode::involutions) {
    t.involutions_only = true;
    StabilizerChain s = sylow(g, 2, opt);
    if (s.order() > (BigInt(1) << 18))
      throw bound_error("conjugacy_classes: Sylow 2-subgroup too large to enumerate");
    std::vector<Perm> elts = enumerate_elements(s);
    std::unordered_set<Perm, PermHash> seen;
    for (const Perm &x : elts) {
      if (x.is_identity() || seen.count(x) || !power(x, 2).is_identity())
        continue;
      // the class of x in the Sylow subgroup
      std::vector<Perm> orb{x};
      seen.insert(x);
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (const Perm &a : s.generators()) {
          Perm y = conjugate(orb[k], a);
          if (seen.insert(y).second)
            orb.push_back(y);
        }
      if (find_class(x) < 0)
        add_class(x, order / centralizer(g, x, opt).order());
    }
    t.complete = true;
    finish();
    return t;
  }

  std::size_t n = g.degree();
  if (order <= 200000) {
    std::vector<Perm> elts = enumerate_elements(g);
    std::unordered_set<Perm, PermHash> seen;
    for (const Perm &x : elts) {
      if (seen.count(x))
        continue;
      std::vector<Perm> orb{x};
      seen.insert(x);
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (const Perm &a : g.generators()) {
          Perm y = conjugate(orb[k], a);
          if (seen.insert(y).second)
            orb.push_back(y);
        }
      add_class(x, BigInt(orb.size()));
    }
    t.complete = true;
    finish();
    return t;
  }
  if (order > BigInt(1000000000))
    throw bound_error("conjugacy_classes: complete tables need |G| <= 10^9");
  Rng rng(opt.seed + 3);
  add_class(Perm(n), 1);
  BigInt total = 1;
  for (std::size_t it = 0; it < sample_budget && total < order; ++it) {
    Perm r = g.random_element(rng);
    std::uint64_t o = order_u64(r);
    for (std::uint64_t d = 1; d <= o; ++d) {
      if (o % d)
        continue;
      Perm y = power(r, static_cast<long long>(d));
      if (find_class(y) >= 0)
        continue;
      BigInt csize = order / centralizer(g, y, opt).order();
      add_class(y, csize);
      total += csize;
    }
  }
  t.complete = total == order;
  finish();
  return t;
}

std::size_t fused_E_p2_class_count(const StabilizerChain &g, unsigned p, const SearchOptions &opt) {
  StabilizerChain s = sylow(g, p, opt);
  if (s.order() < p * p)
    return 0;
  if (s.order() > BigInt(1000000))
    throw bound_error("fused_E_p2_class_count: Sylow subgroup too large");
  std::size_t n = g.degree();
  std::vector<Perm> elts = enumerate_elements(s);
  std::vector<Perm> ord_p;
  for (const Perm &x : elts)
    if (!x.is_identity() && order_u64(x) == p)
      ord_p.push_back(x);
  // G-class label of every element of order p
  std::vector<Perm> reps;
  std::unordered_map<Perm, std::size_t, PermHash> label;
  for (const Perm &x : ord_p) {
    long found = -1;
    for (std::size_t i = 0; i < reps.size() && found < 0; ++i)
      if (cycle_type(reps[i]) == cycle_type(x) && conjugacy_witness(g, x, reps[i], opt))
        found = static_cast<long>(i);
    if (found < 0) {
      found = static_cast<long>(reps.size());
      reps.push_back(x);
    }
    label[x] = static_cast<std::size_t>(found);
  }
  // elementary abelian subgroups of order p^2, keyed by their element sets
  std::set<std::vector<Perm>> seen;
  std::vector<std::vector<Perm>> fused;
  for (std::size_t i = 0; i < ord_p.size(); ++i)
    for (std::size_t j = i + 1; j < ord_p.size(); ++j) {
      const Perm &a = ord_p[i], &b = ord_p[j];
      if (!commute(a, b))
        continue;
      std::vector<Perm> u;
      Perm ai(n);
      for (unsigned x = 0; x < p; ++x, ai = ai * a) {
        Perm e = ai;
        for (unsigned y = 0; y < p; ++y, e = e * b)
          u.push_back(e);
      }
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (u.size() != static_cast<std::size_t>(p) * p || !seen.insert(u).second)
        continue;
      bool all = true;
      std::size_t l0 = label.at(a);
      for (const Perm &e : u)
        if (!e.is_identity() && label.at(e) != l0)
          all = false;
      if (all)
        fused.push_back({a, b});
    }
  std::vector<StabilizerChain> classes;
  for (const auto &ab : fused) {
    StabilizerChain u = chain_of(ab, n, BigInt(p) * p, 3);
    bool known = false;
    for (const StabilizerChain &c : classes)
      if (subgroup_conjugacy_witness(g, u, c, opt)) {
        known = true;
        break;
      }
    if (!known)
      classes.push_back(std::move(u));
  }
  return classes.size();
}

bool is_2_constrained(const StabilizerChain &x, const SearchOptions &opt) {
  StabilizerChain q = p_core(x, 2, opt);
  if (q.is_trivial())
    return x.is_trivial();
  StabilizerChain c = centralizer(x, q.generators(), opt);
  return is_subgroup(c, q);
}

std::vector<StabilizerChain> normal_four_subgroups(const StabilizerChain &t) {
  if (!is_p_group(t, 2))
    throw std::invalid_argument("normal_four_subgroups: not a 2-group");
  if (t.order() > BigInt(1) << 16)
    throw bound_error("normal_four_subgroups: 2-group too large to enumerate");
  std::size_t n = t.degree();
  std::vector<Perm> elts = enumerate_elements(t);
  std::vector<Perm> inv;
  for (const Perm &x : elts)
    if (!x.is_identity() && power(x, 2).is_identity())
      inv.push_back(x);
  auto central = [&](const Perm &x) {
    for (const Perm &a : t.generators())
      if (!commute(x, a))
        return false;
    return true;
  };
  std::vector<StabilizerChain> out;
  std::set<std::vector<Perm>> seen;
  for (const Perm &z : inv) {
    if (!central(z))
      continue;
    for (const Perm &u : inv) {
      if (u == z || !commute(u, z))
        continue;
      // [u, T] <= <z>
      bool ok = true;
      Perm uz = u * z;
      for (const Perm &a : t.generators()) {
        Perm c = conjugate(u, a);
        if (c != u && c != uz) {
          ok = false;
          break;
        }
      }
      if (!ok)
        continue;
      std::vector<Perm> key{Perm(n), z, u, uz};
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second)
        continue;
      StabilizerChain uc = chain_of({z, u}, n, 4, 5);
      if (!is_normal(t, uc))
        throw std::logic_error("normal_four_subgroups: candidate is not normal");
      out.push_back(std::move(uc));
    }
  }
  return out;
}

std::vector<StabilizerChain> normal_elementary_abelian_subgroups(const StabilizerChain &t, unsigned p,
                                                                  std::size_t rank) {
  if (!is_p_group(t, p))
    throw std::invalid_argument("normal_elementary_abelian_subgroups: not a p-group");
  if (t.order() > BigInt(1) << 16)
    throw bound_error("normal_elementary_abelian_subgroups: p-group too large to enumerate");
  std::size_t n = t.degree();
  std::vector<Perm> elts = enumerate_elements(t);
  std::vector<Perm> ords;
  for (const Perm &x : elts)
    if (!x.is_identity() && power(x, p).is_identity())
      ords.push_back(x);
  // A p-group acting on a normal subgroup stabilizes a chain with steps of
  // order p, so every normal E_{p^r} contains a normal E_{p^(r-1)}.
  using Elts = std::vector<Perm>;
  std::set<Elts> layer{Elts{Perm(n)}};
  for (std::size_t r = 1; r <= rank; ++r) {
    std::set<Elts> next;
    for (const Elts &u : layer) {
      for (const Perm &x : ords) {
        if (std::binary_search(u.begin(), u.end(), x))
          continue;
        bool ok = true;
        for (const Perm &y : u)
          if (!commute(x, y)) {
            ok = false;
            break;
          }
        if (!ok)
          continue;
        Elts v;
        Perm xi(n);
        for (unsigned i = 0; i < p; ++i, xi = xi * x)
          for (const Perm &y : u)
            v.push_back(y * xi);
        std::sort(v.begin(), v.end());
        for (const Perm &a : t.generators()) {
          if (!std::binary_search(v.begin(), v.end(), conjugate(x, a))) {
            ok = false;
            break;
          }
        }
        if (ok)
          next.insert(std::move(v));
      }
    }
    layer = std::move(next);
  }
  std::vector<StabilizerChain> out;
  BigInt order = 1;
  for (std::size_t r = 0; r < rank; ++r)
    order *= p;
  for (const Elts &u : layer) {
    StabilizerChain c = chain_of(small_generating_set(chain_of(u, n, order, 3)), n, order, 5);
    if (!is_normal(t, c))
      throw std::logic_error("normal_elementary_abelian_subgroups: candidate is not normal");
    out.push_back(std::move(c));
  }
  return out;
}

bool is_extremal(const StabilizerChain &g, const StabilizerChain &t, const Perm &x, unsigned p,
                 const SearchOptions &opt) {
  BigInt ct = centralizer(t, x, opt).order();
  BigInt cg = centralizer(g, x, opt).order();
  return ct == p_part(cg, p);
}

StabilizerChain symmetric_group(std::size_t n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<point> c(n), s(n);
    for (point i = 0; i < n; ++i) {
      c[i] = static_cast<point>((i + 1) % n);
      s[i] = i;
    }
    std::swap(s[0], s[1]);
    gens = {Perm(c), Perm(s)};
  }
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i)
    f *= i;
  return chain_of(gens, std::max<std::size_t>(n, 1), f, 1);
}

StabilizerChain alternating_group(std::size_t n) {
  std::vector<Perm> gens;
  for (point i = 2; i < n; ++i) {
    std::vector<point> c(n);
    for (point j = 0; j < n; ++j)
      c[j] = j;
    c[0] = 1;
    c[1] = i;
    c[i] = 0;
    gens.push_back(Perm(c));
  }
  BigInt f = 1;
  for (std::size_t i = 3; i <= n; ++i)
    f *= i;
  return chain_of(gens, std::max<std::size_t>(n, 1), f, 1);
}

}  // namespace spor
