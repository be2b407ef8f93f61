#include "sporadic/backtrack.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "sporadic/orbits.h"

namespace spor {

struct Backtrack::Impl {
  StabilizerChain G;
  SearchProblem P;
  std::vector<Perm> xinv, yinv;
  std::vector<StabilizerChain> F;
  std::size_t n = 0, L = 0;
  std::vector<point> base;
  std::vector<std::vector<int>> lab;                // [depth][point]
  std::vector<std::vector<std::vector<int>>> flab;  // [filter][depth][point]
  std::vector<int> img, pre;
  std::vector<point> trail;
  std::vector<Perm> gk, ginv;                       // per depth
  std::vector<std::vector<Perm>> finv;              // [filter][depth]
  std::vector<std::pair<point, point>> queue;
  std::uint64_t nodes = 0, max_nodes = 0;
  std::optional<Perm> found;

  Impl(const StabilizerChain &g, SearchProblem prob, std::uint64_t budget)
      : P(std::move(prob)), max_nodes(budget) {
    n = g.degree();
    for (const auto &[x, y] : P.pairs) {
      if (x.degree() != n || y.degree() != n)
        throw degree_error("search: pair degree mismatch");
      xinv.push_back(inverse(x));
      yinv.push_back(inverse(y));
    }
    if (!P.color_from.empty() && (P.color_from.size() != n || P.color_to.size() != n))
      throw std::invalid_argument("search: color arrays must cover the domain");
    std::vector<point> hint;
    for (point b : P.base_hint)
      if (std::find(hint.begin(), hint.end(), b) == hint.end())
        hint.push_back(b);
    G = hint.empty() ? g : change_base(g, hint);
    base = G.base();
    L = base.size();
    for (std::size_t k = 0; k <= L; ++k)
      lab.push_back(G.orbit_labels(k));
    for (const StabilizerChain *f : P.filters) {
      if (f->degree() != n)
        throw degree_error("search: filter degree mismatch");
      F.push_back(change_base(*f, base));
      std::vector<std::vector<int>> fl;
      for (std::size_t k = 0; k <= L; ++k)
        fl.push_back(F.back().orbit_labels(k));
      flab.push_back(std::move(fl));
    }
    img.assign(n, -1);
    pre.assign(n, -1);
    gk.assign(L + 1, Perm(n));
    ginv.assign(L + 1, Perm(n));
    finv.assign(F.size(), std::vector<Perm>(L + 1, Perm(n)));
  }

  void reset() {
    for (point a : trail) {
      pre[img[a]] = -1;
      img[a] = -1;
    }
    trail.clear();
    gk[0] = Perm(n);
    ginv[0] = Perm(n);
    for (auto &f : finv)
      f[0] = Perm(n);
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      point a = trail.back();
      trail.pop_back();
      pre[img[a]] = -1;
      img[a] = -1;
    }
  }

  bool consistent(point a, point c, std::size_t k) const {
    if (lab[k][ginv[k][c]] != lab[k][a])
      return false;
    for (std::size_t j = 0; j < F.size(); ++j)
      if (flab[j][k][finv[j][k][c]] != flab[j][k][a])
        return false;
    return true;
  }

  bool assign(point a0, point c0, std::size_t k) {
    queue.clear();
    queue.push_back({a0, c0});
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto [a, c] = queue[q];
      if (img[a] != -1) {
        if (img[a] != static_cast<int>(c))
          return false;
        continue;
      }
      if (pre[c] != -1)
        return false;
      if (!P.color_from.empty() && P.color_from[a] != P.color_to[c])
        return false;
      if (!consistent(a, c, k))
        return false;
      img[a] = static_cast<int>(c);
      pre[c] = static_cast<int>(a);
      trail.push_back(a);
      for (std::size_t i = 0; i < P.pairs.size(); ++i) {
        queue.push_back({P.pairs[i].first[a], P.pairs[i].second[c]});
        queue.push_back({xinv[i][a], yinv[i][c]});
      }
    }
    return true;
  }

  // base[k] is mapped to c; move the coset representatives down one level
  bool descend(std::size_t k, point c) {
    point o = ginv[k][c];
    if (o == base[k]) {
      gk[k + 1] = gk[k];
      ginv[k + 1] = ginv[k];
    } else {
      gk[k + 1] = G.coset_rep(k, o) * gk[k];
      ginv[k + 1] = ginv[k] * G.coset_rep_inverse(k, o);
    }
    for (std::size_t j = 0; j < F.size(); ++j) {
      const StabilizerChain &f = F[j];
      point of = finv[j][k][c];
      if (k < f.length() && of != base[k]) {
        if (!f.in_orbit(k, of))
          return false;
        finv[j][k + 1] = finv[j][k] * f.coset_rep_inverse(k, of);
      } else {
        if (of != base[k])
          return false;
        finv[j][k + 1] = finv[j][k];
      }
    }
    for (point a : trail)
      if (!consistent(a, static_cast<point>(img[a]), k + 1))
        return false;
    return true;
  }

  bool leaf_ok(const Perm &g) const {
    for (const auto &[x, y] : P.pairs)
      for (point a = 0; a < n; ++a)
        if (g[x[a]] != y[g[a]])
          return false;
    if (!P.color_from.empty())
      for (point a = 0; a < n; ++a)
        if (P.color_from[a] != P.color_to[g[a]])
          return false;
    for (const StabilizerChain &f : F)
      if (!f.contains(g))
        return false;
    if (P.leaf && !P.leaf(g))
      return false;
    return true;
  }

  void count() {
    if (++nodes > max_nodes)
      throw search_undecided("search exceeded node budget of " + std::to_string(max_nodes));
  }

  bool try_image(std::size_t k, point c) {
    count();
    std::size_t mark = trail.size();
    if (assign(base[k], c, k) && descend(k, c) && search(k + 1))
      return true;
    undo(mark);
    return false;
  }

  bool search(std::size_t k) {
    if (k == L) {
      if (leaf_ok(gk[L])) {
        found = gk[L];
        return true;
      }
      return false;
    }
    point b = base[k];
    if (img[b] != -1)
      return try_image(k, static_cast<point>(img[b]));
    std::vector<point> cand;
    for (point o : G.level(k).orbit) {
      point c = gk[k][o];
      if (pre[c] == -1)
        cand.push_back(c);
    }
    std::sort(cand.begin(), cand.end());
    for (point c : cand)
      if (try_image(k, c))
        return true;
    return false;
  }

  bool identity_prefix(std::size_t k) {
    reset();
    for (std::size_t j = 0; j < k; ++j)
      if (!assign(base[j], base[j], j) || !descend(j, base[j]))
        return false;
    return true;
  }
};

Backtrack::Backtrack(const StabilizerChain &g, SearchProblem prob, std::uint64_t max_nodes)
    : impl_(new Impl(g, std::move(prob), max_nodes)) {}

Backtrack::~Backtrack() { delete impl_; }

std::uint64_t Backtrack::nodes() const { return impl_->nodes; }

std::optional<Perm> Backtrack::find_element() {
  Impl &s = *impl_;
  s.reset();
  s.found.reset();
  if (s.search(0))
    return s.found;
  return std::nullopt;
}

StabilizerChain Backtrack::find_subgroup(const std::vector<Perm> &known) {
  Impl &s = *impl_;
  std::size_t L = s.L, n = s.n;
  std::vector<std::vector<Perm>> at(L);
  for (const Perm &x : known) {
    if (x.degree() != n)
      throw degree_error("search: seed degree mismatch");
    if (!s.G.contains(x) || !s.leaf_ok(x))
      throw std::invalid_argument("search: seed element is not a solution");
    for (std::size_t i = 0; i < L; ++i)
      if (x[s.base[i]] != s.base[i]) {
        at[i].push_back(x);
        break;
      }
  }
  for (std::size_t k = L; k-- > 0;) {
    std::vector<Perm> kg;
    for (std::size_t j = k; j < L; ++j)
      kg.insert(kg.end(), at[j].begin(), at[j].end());
    if (!s.identity_prefix(k))
      throw std::logic_error("search: identity rejected by the constraints");
    point b = s.base[k];
    if (s.img[b] != -1)
      continue;  // forced to stay fixed
    OrbitPartition part = orbits(kg, n);
    std::vector<point> orb = s.G.level(k).orbit;
    std::sort(orb.begin(), orb.end());
    for (point c : orb) {
      if (c == b || part.label[c] == part.label[b] || part.representative(c) != c)
        continue;
      if (s.pre[c] != -1)
        continue;
      s.found.reset();
      if (s.try_image(k, c)) {
        at[k].push_back(*s.found);
        kg.push_back(*s.found);
        part = orbits(kg, n);
        s.identity_prefix(k);
      }
    }
  }
  std::vector<std::vector<Perm>> lg(L);
  for (std::size_t j = L; j-- > 0;) {
    lg[j] = at[j];
    if (j + 1 < L)
      lg[j].insert(lg[j].end(), lg[j + 1].begin(), lg[j + 1].end());
  }
  std::vector<Perm> gens = L ? lg[0] : std::vector<Perm>{};
  return StabilizerChain::from_strong_generators(n, gens, s.base, lg, s.G.certified());
}

std::vector<point> orbit_base_hint(const std::vector<Perm> &xs, std::size_t n, std::size_t limit) {
  OrbitPartition p = orbits(xs, n);
  std::vector<const std::vector<point> *> os;
  for (const auto &o : p.orbits)
    if (o.size() > 1)
      os.push_back(&o);
  std::stable_sort(os.begin(), os.end(), [](auto a, auto b) { return a->size() > b->size(); });
  std::vector<point> r;
  for (auto o : os) {
    if (r.size() >= limit)
      break;
    r.push_back(o->front());
  }
  return r;
}

namespace {

// cycle lengths of each point under each permutation, numbered jointly
void tuple_colors(const std::vector<Perm> &xs, const std::vector<Perm> &ys, std::vector<int> &cf,
                  std::vector<int> &ct) {
  std::size_t n = xs[0].degree();
  auto lengths = [n](const Perm &p) {
    std::vector<std::uint32_t> len(n, 0);
    for (point a = 0; a < n; ++a) {
      if (len[a])
        continue;
      std::uint32_t l = 0;
      point b = a;
      do {
        ++l;
        b = p[b];
      } while (b != a);
      b = a;
      do {
        len[b] = l;
        b = p[b];
      } while (b != a);
    }
    return len;
  };
  std::map<std::vector<std::uint32_t>, int> ids;
  auto colour = [&](const std::vector<Perm> &ps, std::vector<int> &out) {
    std::vector<std::vector<std::uint32_t>> ls;
    for (const Perm &p : ps)
      ls.push_back(lengths(p));
    out.assign(n, 0);
    std::vector<std::uint32_t> key(ps.size());
    for (point a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < ps.size(); ++i)
        key[i] = ls[i][a];
      out[a] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
    }
  };
  colour(xs, cf);
  colour(ys, ct);
}

std::vector<int> orbit_length_colors(const std::vector<Perm> &gens, std::size_t n) {
  OrbitPartition p = orbits(gens, n);
  std::vector<int> c(n);
  for (point a = 0; a < n; ++a)
    c[a] = static_cast<int>(p.orbits[p.label[a]].size());
  return c;
}

std::vector<Perm> nontrivial(const std::vector<Perm> &xs) {
  std::vector<Perm> r;
  for (const Perm &x : xs)
    if (!x.is_identity())
      r.push_back(x);
  return r;
}

}  // namespace

StabilizerChain centralizer(const StabilizerChain &g, const std::vector<Perm> &xs_in, const SearchOptions &opt) {
  std::vector<Perm> xs = nontrivial(xs_in);
  if (xs.empty())
    return g;
  SearchProblem P;
  for (const Perm &x : xs)
    P.pairs.push_back({x, x});
  tuple_colors(xs, xs, P.color_from, P.color_to);
  P.base_hint = orbit_base_hint(xs, g.degree());
  std::vector<Perm> known;
  for (const Perm &k : opt.known)
    if (!k.is_identity())
      known.push_back(k);
  for (const Perm &x : xs) {
    bool central = std::all_of(xs.begin(), xs.end(), [&](const Perm &y) { return commute(x, y); });
    if (central && g.contains(x))
      known.push_back(x);
  }
  Backtrack bt(g, std::move(P), opt.max_nodes);
  return bt.find_subgroup(known);
}

StabilizerChain centralizer(const StabilizerChain &g, const Perm &x, const SearchOptions &opt) {
  return centralizer(g, std::vector<Perm>{x}, opt);
}

bool normalizes(const Perm &g, const StabilizerChain &h) {
  for (const Perm &x : h.generators())
    if (!h.contains(conjugate(x, g)))
      return false;
  return true;
}

std::vector<Perm> small_generating_set(const StabilizerChain &h, std::uint64_t seed) {
  if (h.is_trivial())
    return {};
  BigInt target = h.order();
  Rng rng(seed);
  auto generates = [&](const std::vector<Perm> &t) {
    ChainOptions o;
    o.known_order = target;
    o.max_random = 400;
    try {
      StabilizerChain c = schreier_sims(t, h.degree(), o);
      return c.order() == target;
    } catch (const chain_error &) {
      return false;
    }
  };
  for (std::size_t k = 1; k <= 4; ++k) {
    int tries = k == 1 ? 8 : 24;
    for (int t = 0; t < tries; ++t) {
      std::vector<Perm> cand = h.random_elements(rng, k);
      if (generates(cand))
        return cand;
    }
  }
  std::vector<Perm> gens = nontrivial(h.generators());
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<Perm> fewer = gens;
    fewer.erase(fewer.begin() + static_cast<long>(i));
    if (!fewer.empty() && generates(fewer))
      gens = std::move(fewer);
  }
  return gens;
}

std::optional<Perm> multi_conjugacy_witness(const StabilizerChain &g, const std::vector<Perm> &xs,
                                            const std::vector<Perm> &ys, const SearchOptions &opt) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("conjugacy: tuple lengths differ");
  if (xs.empty())
    return Perm(g.degree());
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (cycle_type(xs[i]) != cycle_type(ys[i]))
      return std::nullopt;
  SearchProblem P;
  for (std::size_t i = 0; i < xs.size(); ++i)
    P.pairs.push_back({xs[i], ys[i]});
  tuple_colors(xs, ys, P.color_from, P.color_to);
  P.base_hint = orbit_base_hint(xs, g.degree());
  Backtrack bt(g, std::move(P), opt.max_nodes);
  return bt.find_element();
}

std::optional<Perm> conjugacy_witness(const StabilizerChain &g, const Perm &x, const Perm &y,
                                      const SearchOptions &opt) {
  return multi_conjugacy_witness(g, {x}, {y}, opt);
}

namespace {

constexpr std::size_t kSmallSubgroup = 20000;

StabilizerChain normalizer_by_tuples(const StabilizerChain &g, const StabilizerChain &h, const SearchOptions &opt) {
  std::size_t n = g.degree();
  std::vector<Perm> hg = small_generating_set(h, opt.seed);
  StabilizerChain c = centralizer(g, hg, opt);
  std::vector<Perm> elts = enumerate_elements(h);
  std::vector<std::vector<const Perm *>> cand(hg.size());
  for (std::size_t i = 0; i < hg.size(); ++i) {
    auto ct = cycle_type(hg[i]);
    for (const Perm &e : elts)
      if (cycle_type(e) == ct)
        cand[i].push_back(&e);
  }
  std::vector<Perm> kgens = c.generators();
  for (const Perm &x : h.generators())
    if (g.contains(x))
      kgens.push_back(x);
  for (const Perm &x : opt.known)
    if (g.contains(x) && normalizes(x, h))
      kgens.push_back(x);

  using Tuple = std::vector<std::uint64_t>;
  auto key = [&](const std::vector<Perm> &t) {
    Tuple k;
    for (const Perm &x : t)
      k.push_back(element_rank(h, x));
    return k;
  };
  auto spread = [&](const std::vector<Perm> &start, std::set<Tuple> &into) {
    std::vector<std::vector<Perm>> queue{start};
    into.insert(key(start));
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const Perm &w : kgens) {
        std::vector<Perm> t;
        for (const Perm &x : queue[q])
          t.push_back(conjugate(x, w));
        if (into.insert(key(t)).second)
          queue.push_back(std::move(t));
      }
  };
  std::set<Tuple> orbit;
  // tuples not conjugate to hg; closed under the elements found so far
  std::set<Tuple> failed;
  auto rebuild_orbit = [&] {
    orbit.clear();
    spread(hg, orbit);
  };
  rebuild_orbit();

  // word invariants: cycle types of pairwise products must match
  std::vector<std::vector<std::vector<std::size_t>>> prod_type(hg.size(),
                                                               std::vector<std::vector<std::size_t>>(hg.size()));
  for (std::size_t i = 0; i < hg.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      prod_type[i][j] = cycle_type(hg[j] * hg[i]);

  std::vector<Perm> t(hg.size(), Perm(n));
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == hg.size()) {
      Tuple k = key(t);
      if (orbit.count(k) || failed.count(k))
        return;
      auto w = multi_conjugacy_witness(g, hg, t, opt);
      if (w) {
        kgens.push_back(*w);
        rebuild_orbit();
      } else {
        spread(t, failed);
      }
      return;
    }
    for (const Perm *e : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = cycle_type(t[j] * *e) == prod_type[i][j];
      if (!ok)
        continue;
      t[i] = *e;
      rec(i + 1);
    }
  };
  rec(0);
  BigInt order = c.order() * BigInt(orbit.size());
  return make_chain(kgens, n, order, opt.seed);
}

}  // namespace

StabilizerChain normalizer(const StabilizerChain &g, const StabilizerChain &h, const SearchOptions &opt) {
  if (h.degree() != g.degree())
    throw degree_error("normalizer: degree mismatch");
  if (h.is_trivial())
    return g;
  if (h.order() <= kSmallSubgroup)
    return normalizer_by_tuples(g, h, opt);
  SearchProblem P;
  P.color_from = orbit_length_colors(h.generators(), g.degree());
  P.color_to = P.color_from;
  P.base_hint = orbit_base_hint(h.generators(), g.degree());
  StabilizerChain hc = h;
  P.leaf = [&hc](const Perm &x) { return normalizes(x, hc); };
  std::vector<Perm> known;
  for (const Perm &x : h.generators())
    if (g.contains(x))
      known.push_back(x);
  for (const Perm &x : opt.known)
    known.push_back(x);
  Backtrack bt(g, std::move(P), opt.max_nodes);
  return bt.find_subgroup(known);
}

StabilizerChain setwise_stabilizer(const StabilizerChain &g, const std::vector<point> &set,
                                   const SearchOptions &opt) {
  SearchProblem P;
  P.color_from.assign(g.degree(), 0);
  for (point x : set) {
    if (x >= g.degree())
      throw std::out_of_range("setwise_stabilizer: point out of range");
    P.color_from[x] = 1;
  }
  P.color_to = P.color_from;
  std::vector<point> s(set.begin(), set.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() > 64)
    s.resize(64);
  P.base_hint = s;
  Backtrack bt(g, std::move(P), opt.max_nodes);
  return bt.find_subgroup(opt.known);
}

StabilizerChain intersection(const StabilizerChain &g, const StabilizerChain &h, const SearchOptions &opt) {
  if (h.degree() != g.degree())
    throw degree_error("intersection: degree mismatch");
  const StabilizerChain &small = g.order() <= h.order() ? g : h;
  const StabilizerChain &other = g.order() <= h.order() ? h : g;
  SearchProblem P;
  P.filters.push_back(&other);
  Backtrack bt(small, std::move(P), opt.max_nodes);
  std::vector<Perm> known;
  for (const Perm &x : opt.known)
    if (small.contains(x) && other.contains(x))
      known.push_back(x);
  return bt.find_subgroup(known);
}

std::optional<Perm> subgroup_conjugacy_witness(const StabilizerChain &g, const StabilizerChain &h,
                                               const StabilizerChain &k, const SearchOptions &opt) {
  std::size_t n = g.degree();
  if (h.degree() != n || k.degree() != n)
    throw degree_error("subgroup conjugacy: degree mismatch");
  if (h.order() != k.order())
    return std::nullopt;
  if (orbits(h.generators(), n).sorted_lengths() != orbits(k.generators(), n).sorted_lengths())
    return std::nullopt;
  if (h.is_trivial())
    return Perm(n);
  auto check = [&](const Perm &w) {
    for (const Perm &x : h.generators())
      if (!k.contains(conjugate(x, w)))
        return false;
    return true;
  };
  if (k.order() > kSmallSubgroup) {
    SearchProblem P;
    P.color_from = orbit_length_colors(h.generators(), n);
    P.color_to = orbit_length_colors(k.generators(), n);
    P.base_hint = orbit_base_hint(h.generators(), n);
    P.leaf = check;
    Backtrack bt(g, std::move(P), opt.max_nodes);
    return bt.find_element();
  }
  std::vector<Perm> hg = small_generating_set(h, opt.seed);
  std::vector<Perm> elts = enumerate_elements(k);
  std::vector<std::vector<const Perm *>> cand(hg.size());
  for (std::size_t i = 0; i < hg.size(); ++i) {
    auto ct = cycle_type(hg[i]);
    for (const Perm &e : elts)
      if (cycle_type(e) == ct)
        cand[i].push_back(&e);
  }
  std::vector<std::vector<std::vector<std::size_t>>> prod_type(hg.size(),
                                                               std::vector<std::vector<std::size_t>>(hg.size()));
  for (std::size_t i = 0; i < hg.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      prod_type[i][j] = cycle_type(hg[j] * hg[i]);
  std::vector<Perm> t(hg.size(), Perm(n));
  std::optional<Perm> result;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == hg.size()) {
      auto w = multi_conjugacy_witness(g, hg, t, opt);
      if (w && check(*w)) {
        result = w;
        return true;
      }
      return false;
    }
    for (const Perm *e : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = cycle_type(t[j] * *e) == prod_type[i][j];
      if (!ok)
        continue;
      t[i] = *e;
      if (rec(i + 1))
        return true;
    }
    return false;
  };
  rec(0);
  return result;
}

}  // namespace spor
