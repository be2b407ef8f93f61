#include "sporadic/orbits.h"

#include "sporadic/local.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace spor {

std::vector<std::size_t> OrbitPartition::sorted_lengths() const {
  std::vector<std::size_t> r;
  for (const auto &o : orbits)
    r.push_back(o.size());
  std::sort(r.begin(), r.end());
  return r;
}

OrbitPartition orbits(const std::vector<Perm> &gens, std::size_t n, const std::vector<point> *domain) {
  OrbitPartition p;
  p.label.assign(n, -1);
  std::vector<point> starts;
  if (domain) {
    starts = *domain;
    std::sort(starts.begin(), starts.end());
  } else {
    starts.resize(n);
    std::iota(starts.begin(), starts.end(), point{0});
  }
  for (point x : starts) {
    if (p.label[x] != -1)
      continue;
    int id = static_cast<int>(p.orbits.size());
    std::vector<point> orb{x};
    p.label[x] = id;
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const Perm &g : gens) {
        point y = g[orb[k]];
        if (p.label[y] == -1) {
          p.label[y] = id;
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    p.orbits.push_back(std::move(orb));
  }
  return p;
}

std::vector<point> orbit_of(const std::vector<Perm> &gens, point x) {
  std::size_t n = gens.empty() ? x + 1 : gens[0].degree();
  std::vector<point> d{x};
  return orbits(gens, n, &d).orbits[0];
}

bool is_transitive(const std::vector<Perm> &gens, std::size_t n) {
  if (n <= 1)
    return true;
  return orbits(gens, n).orbits.size() == 1;
}

std::size_t BlockSystem::num_blocks() const {
  return block_of.empty() ? 0 : static_cast<std::size_t>(*std::max_element(block_of.begin(), block_of.end())) + 1;
}

std::vector<std::vector<point>> BlockSystem::blocks() const {
  std::vector<std::vector<point>> b(num_blocks());
  for (point x = 0; x < block_of.size(); ++x)
    b[block_of[x]].push_back(x);
  return b;
}

namespace {

struct UnionFind {
  std::vector<point> parent;
  std::vector<std::size_t> size;
  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), point{0}); }
  point find(point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(point a, point b, point &merged_away) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (size[a] < size[b])
      std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    merged_away = b;
    return true;
  }
};

}  // namespace

BlockSystem minimal_block(const std::vector<Perm> &gens, std::size_t n, point a, point b) {
  // Atkinson: merge classes and propagate merges through every generator
  UnionFind uf(n);
  std::vector<std::pair<point, point>> queue;
  point dummy;
  if (uf.unite(a, b, dummy))
    queue.push_back({a, b});
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto [x, y] = queue[k];
    for (const Perm &g : gens) {
      point u = g[x], v = g[y];
      if (uf.unite(u, v, dummy))
        queue.push_back({u, v});
    }
  }
  BlockSystem bs;
  bs.block_of.assign(n, -1);
  std::vector<int> id(n, -1);
  int next = 0;
  for (point x = 0; x < n; ++x) {
    point r = uf.find(x);
    if (id[r] == -1)
      id[r] = next++;
    bs.block_of[x] = id[r];
  }
  bs.block_size = uf.size[uf.find(a)];
  return bs;
}

bool is_block_system(const std::vector<Perm> &gens, const BlockSystem &b) {
  std::size_t n = b.block_of.size();
  std::size_t nb = b.num_blocks();
  std::vector<std::size_t> sizes(nb, 0);
  for (int x : b.block_of)
    ++sizes[x];
  for (std::size_t s : sizes)
    if (s != b.block_size)
      return false;
  for (const Perm &g : gens) {
    std::vector<int> target(nb, -1);
    for (point x = 0; x < n; ++x) {
      int from = b.block_of[x], to = b.block_of[g[x]];
      if (target[from] == -1)
        target[from] = to;
      else if (target[from] != to)
        return false;
    }
  }
  return true;
}

PrimitivityResult is_primitive(const std::vector<Perm> &gens, std::size_t n) {
  if (!is_transitive(gens, n))
    throw intransitive_error("primitivity test needs a transitive group");
  PrimitivityResult r;
  for (point x = 1; x < n; ++x) {
    BlockSystem b = minimal_block(gens, n, 0, x);
    if (b.block_size < n) {
      r.primitive = false;
      r.witness = std::move(b);
      return r;
    }
  }
  return r;
}

std::vector<std::vector<point>> suborbits(const StabilizerChain &g, point x) {
  if (!is_transitive(g.generators(), g.degree()))
    throw intransitive_error("subdegrees need a transitive group");
  StabilizerChain s = point_stabilizer_chain(g, x);
  OrbitPartition p = orbits(s.generators(), g.degree());
  std::vector<std::vector<point>> r = p.orbits;
  std::stable_sort(r.begin(), r.end(), [](const auto &a, const auto &b) { return a.size() < b.size(); });
  // the fixed point x first among orbits of length one
  auto it = std::find_if(r.begin(), r.end(), [x](const auto &o) { return o.size() == 1 && o[0] == x; });
  std::rotate(r.begin(), it, it + 1);
  return r;
}

std::vector<std::size_t> subdegrees(const StabilizerChain &g, point x) {
  std::vector<std::size_t> r;
  for (const auto &o : suborbits(g, x))
    r.push_back(o.size());
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<Perm> action_on_blocks(const std::vector<Perm> &gens, const std::vector<int> &block_of,
                                   std::size_t num_blocks) {
  std::vector<point> any(num_blocks, 0);
  for (point x = block_of.size(); x-- > 0;)
    any[block_of[x]] = x;
  std::vector<Perm> r;
  for (const Perm &g : gens) {
    std::vector<point> img(num_blocks);
    for (std::size_t b = 0; b < num_blocks; ++b)
      img[b] = static_cast<point>(block_of[g[any[b]]]);
    r.push_back(Perm(std::move(img)));
  }
  return r;
}

std::vector<Perm> restrict_to(const std::vector<Perm> &gens, const std::vector<point> &set) {
  std::unordered_map<point, point> pos;
  for (point i = 0; i < set.size(); ++i)
    pos[set[i]] = i;
  std::vector<Perm> r;
  for (const Perm &g : gens) {
    std::vector<point> img(set.size());
    for (point i = 0; i < set.size(); ++i) {
      auto it = pos.find(g[set[i]]);
      if (it == pos.end())
        throw std::invalid_argument("restrict_to: set is not invariant");
      img[i] = it->second;
    }
    r.push_back(Perm(std::move(img)));
  }
  return r;
}

CosetAction coset_action(const StabilizerChain &g, const GeneratorSet &h, std::size_t bound) {
  StabilizerChain hc = schreier_sims(h);
  return coset_action(g, hc, bound);
}

CosetAction coset_action(const StabilizerChain &g, const StabilizerChain &h, std::size_t bound) {
  std::size_t n = g.degree();
  for (const Perm &x : h.generators())
    if (!g.contains(x))
      throw std::invalid_argument("coset_action: H is not contained in G");
  BigInt idx = g.order() / h.order();
  if (idx > bound)
    throw index_bound_error("coset_action: index " + to_string(idx) + " exceeds bound " +
                            std::to_string(bound));
  // short H-orbits give a key that is constant on each coset Hg
  OrbitPartition ho = orbits(h.generators(), n);
  std::vector<std::vector<point>> keys;
  std::vector<std::vector<point>> sorted = ho.orbits;
  std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.size() < b.size(); });
  std::size_t budget = 0;
  for (const auto &o : sorted) {
    if (o.size() == n || budget + o.size() > 64)
      break;
    keys.push_back(o);
    budget += o.size();
  }
  auto key_of = [&](const Perm &x) {
    std::uint64_t k = 0x9e3779b97f4a7c15ULL;
    for (const auto &o : keys) {
      std::vector<point> img;
      for (point p : o)
        img.push_back(x[p]);
      std::sort(img.begin(), img.end());
      for (point p : img)
        k = (k ^ p) * 0x100000001b3ULL;
      k ^= 0xff;
    }
    return k;
  };

  std::size_t index = static_cast<std::size_t>(idx);
  CosetAction r;
  r.index = index;
  std::unordered_multimap<std::uint64_t, std::size_t> bucket;
  std::vector<Perm> reps{Perm(n)};
  std::vector<Perm> rep_inv{Perm(n)};
  bucket.emplace(key_of(reps[0]), 0);
  const auto &gens = g.generators();
  std::vector<std::vector<point>> act(gens.size(), std::vector<point>(index, 0));
  auto find = [&](const Perm &x) -> long {
    auto range = bucket.equal_range(key_of(x));
    for (auto it = range.first; it != range.second; ++it)
      if (h.contains(x * rep_inv[it->second]))
        return static_cast<long>(it->second);
    return -1;
  };
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Perm y = reps[k] * gens[s];
      long j = find(y);
      if (j < 0) {
        j = static_cast<long>(reps.size());
        if (reps.size() >= index)
          throw std::logic_error("coset_action: more cosets than the index");
        bucket.emplace(key_of(y), reps.size());
        rep_inv.push_back(inverse(y));
        reps.push_back(std::move(y));
      }
      act[s][k] = static_cast<point>(j);
    }
  }
  if (reps.size() != index)
    throw std::logic_error("coset_action: coset count differs from the index");
  std::vector<Perm> img;
  for (auto &a : act)
    img.push_back(Perm(std::move(a)));
  r.image = GeneratorSet(index, std::move(img));
  r.representatives = std::move(reps);
  StabilizerChain ic = schreier_sims(r.image);
  r.image_order = ic.order();
  r.faithful = r.image_order == g.order();
  return r;
}

const char *verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    default:
      return "unevaluated";
  }
}

bool Lemma3Result::hypotheses_hold() const {
  return a == Verdict::holds && b == Verdict::holds && c == Verdict::holds && e == Verdict::holds &&
         (d1 == Verdict::holds || d2 == Verdict::holds);
}

namespace {

bool is_cyclic(const StabilizerChain &h) {
  const auto &gs = h.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!commute(gs[i], gs[j]))
        return false;
  // an abelian group has exponent lcm of its generator orders
  BigInt ex = 1;
  for (const Perm &x : gs) {
    BigInt o = order_of(x);
    ex = ex / boost::multiprecision::gcd(ex, o) * o;
  }
  return ex == h.order();
}

}  // namespace

Lemma3Result lemma3_check(const StabilizerChain &g, const Lemma3Options &opt) {
  std::size_t n = g.degree();
  if (!is_transitive(g.generators(), n))
    throw intransitive_error("lemma3_check: group is not transitive");
  Lemma3Result r;
  // a permutation group is faithful on its own domain
  PrimitivityResult pr = is_primitive(g.generators(), n);
  r.a = pr.primitive ? Verdict::holds : Verdict::fails;
  r.a_witness = pr.witness;

  StabilizerChain ga = point_stabilizer_chain(g, opt.alpha);
  r.e = is_cyclic(ga) ? Verdict::fails : Verdict::holds;
  std::vector<std::vector<point>> subs = suborbits(g, opt.alpha);
  std::map<std::size_t, int> count;
  for (std::size_t i = 1; i < subs.size(); ++i)
    ++count[subs[i].size()];
  for (std::size_t i = 1; i < subs.size(); ++i) {
    SuborbitReport s;
    s.orbit = subs[i];
    std::vector<Perm> res = restrict_to(ga.generators(), s.orbit);
    s.faithful = schreier_sims(res, s.orbit.size()).order() == ga.order();
    if (s.orbit.size() == 1) {
      s.primitive = true;
    } else {
      PrimitivityResult p = is_primitive(res, s.orbit.size());
      s.primitive = p.primitive;
      s.witness = p.witness;
    }
    s.unique_length = count[s.orbit.size()] == 1;
    r.suborbits.push_back(std::move(s));
  }
  const SuborbitReport *psi = nullptr;
  for (const auto &s : r.suborbits) {
    if (opt.psi_length && s.orbit.size() != *opt.psi_length)
      continue;
    if (!psi || (s.faithful && s.primitive && s.unique_length && !(psi->faithful && psi->primitive && psi->unique_length)))
      psi = &s;
  }
  if (!psi) {
    r.b = r.c = r.d1 = r.d2 = Verdict::fails;
    r.d2_note = "no orbit of the requested length";
    return r;
  }
  r.psi_length = psi->orbit.size();
  r.b = psi->faithful && psi->primitive ? Verdict::holds : Verdict::fails;
  r.c = psi->unique_length ? Verdict::holds : Verdict::fails;
  bool all = !r.suborbits.empty() && std::all_of(r.suborbits.begin(), r.suborbits.end(), [](const auto &s) {
    return s.faithful && s.primitive && s.unique_length;
  });
  r.d1 = all ? Verdict::holds : Verdict::fails;

  if (ga.order() > opt.aut_bound) {
    r.d2 = Verdict::unevaluated;
    r.d2_note = "|G_alpha| = " + to_string(ga.order()) + " exceeds the small-group bound " +
                std::to_string(opt.aut_bound);
  } else {
    point beta = psi->orbit.front();
    StabilizerChain gab = point_stabilizer_chain(ga, beta);
    std::uint64_t c = centralizing_automorphisms_small(ga, gab, opt.aut_bound);
    r.d2 = c == 1 ? Verdict::holds : Verdict::fails;
    r.d2_note = "checked at one point of Psi; |C| = " + std::to_string(c);
  }
  return r;
}

}  // namespace spor
