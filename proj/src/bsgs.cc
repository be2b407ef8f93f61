#include "sporadic/bsgs.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace spor {

std::vector<point> StabilizerChain::base() const {
  std::vector<point> b;
  for (const auto &l : levels_)
    b.push_back(l.base);
  return b;
}

std::vector<Perm> StabilizerChain::level_generators(std::size_t i) const {
  std::vector<Perm> r;
  if (i < levels_.size())
    for (int s : levels_[i].gens)
      r.push_back(strong_[s]);
  return r;
}

BigInt StabilizerChain::order() const {
  BigInt r = 1;
  for (const auto &l : levels_)
    r *= l.orbit.size();
  return r;
}

void StabilizerChain::push_level(point b) {
  ChainLevel l;
  l.base = b;
  l.edge.assign(n_, -1);
  l.edge[b] = -2;
  l.orbit.push_back(b);
  levels_.push_back(std::move(l));
}

void StabilizerChain::rebuild_orbit(std::size_t lvl) {
  ChainLevel &l = levels_[lvl];
  std::fill(l.edge.begin(), l.edge.end(), -1);
  l.orbit.assign(1, l.base);
  l.edge[l.base] = -2;
  for (std::size_t k = 0; k < l.orbit.size(); ++k) {
    point x = l.orbit[k];
    for (int s : l.gens) {
      point y = strong_[s][x];
      if (l.edge[y] == -1) {
        l.edge[y] = s;
        l.orbit.push_back(y);
      }
    }
  }
}

void StabilizerChain::add_strong(const Perm &h, std::size_t lo, std::size_t hi) {
  int idx = static_cast<int>(strong_.size());
  strong_.push_back(h);
  strong_inv_.push_back(inverse(h));
  hi = std::min(hi, levels_.size() - 1);
  for (std::size_t i = lo; i <= hi; ++i) {
    levels_[i].gens.push_back(idx);
    // extend the orbit instead of recomputing when possible
    ChainLevel &l = levels_[i];
    std::size_t before = l.orbit.size();
    for (std::size_t k = 0; k < before; ++k) {
      point y = h[l.orbit[k]];
      if (l.edge[y] == -1) {
        l.edge[y] = idx;
        l.orbit.push_back(y);
      }
    }
    for (std::size_t k = before; k < l.orbit.size(); ++k) {
      point x = l.orbit[k];
      for (int s : l.gens) {
        point y = strong_[s][x];
        if (l.edge[y] == -1) {
          l.edge[y] = s;
          l.orbit.push_back(y);
        }
      }
    }
  }
}

void StabilizerChain::drop_trivial_levels() {
  // only trailing levels whose group is trivial can go
  while (!levels_.empty() && levels_.back().gens.empty())
    levels_.pop_back();
}

std::pair<Perm, std::size_t> StabilizerChain::sift(Perm g, std::size_t from) const {
  Perm tmp(n_);
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const ChainLevel &l = levels_[i];
    point c = g[l.base];
    if (l.edge[c] == -1)
      return {std::move(g), i};
    while (c != l.base) {
      int s = l.edge[c];
      compose_into(g, strong_inv_[s], tmp);
      std::swap(g, tmp);
      c = strong_inv_[s][c];
    }
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Perm &p) const {
  if (p.degree() != n_)
    throw degree_error("membership test: degree mismatch");
  auto [h, lvl] = sift(p);
  return lvl == levels_.size() && h.is_identity();
}

Perm StabilizerChain::coset_rep(std::size_t lvl, point c) const {
  const ChainLevel &l = levels_[lvl];
  std::vector<int> word;
  while (c != l.base) {
    int s = l.edge[c];
    word.push_back(s);
    c = strong_inv_[s][c];
  }
  Perm u(n_), tmp(n_);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    compose_into(u, strong_[*it], tmp);
    std::swap(u, tmp);
  }
  return u;
}

Perm StabilizerChain::coset_rep_inverse(std::size_t lvl, point c) const {
  const ChainLevel &l = levels_[lvl];
  Perm u(n_), tmp(n_);
  while (c != l.base) {
    int s = l.edge[c];
    compose_into(u, strong_inv_[s], tmp);
    std::swap(u, tmp);
    c = strong_inv_[s][c];
  }
  return u;
}

point StabilizerChain::apply_rep_inverse(std::size_t lvl, point c, point y) const {
  const ChainLevel &l = levels_[lvl];
  while (c != l.base) {
    const Perm &si = strong_inv_[l.edge[c]];
    y = si[y];
    c = si[c];
  }
  return y;
}

Perm StabilizerChain::random_element(Rng &rng) const {
  Perm r(n_), tmp(n_);
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const ChainLevel &l = levels_[i];
    Perm u = coset_rep(i, l.orbit[rng.below(l.orbit.size())]);
    compose_into(r, u, tmp);
    std::swap(r, tmp);
  }
  return r;
}

std::vector<Perm> StabilizerChain::random_elements(Rng &rng, std::size_t k) const {
  std::vector<Perm> r;
  for (std::size_t i = 0; i < k; ++i)
    r.push_back(random_element(rng));
  return r;
}

std::vector<int> StabilizerChain::orbit_labels(std::size_t i) const {
  std::vector<int> lab(n_, -1);
  std::vector<int> gens;
  if (i < levels_.size())
    gens = levels_[i].gens;
  int next = 0;
  std::vector<point> queue;
  for (point x = 0; x < n_; ++x) {
    if (lab[x] != -1)
      continue;
    lab[x] = next;
    queue.assign(1, x);
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (int s : gens) {
        point y = strong_[s][queue[k]];
        if (lab[y] == -1) {
          lab[y] = next;
          queue.push_back(y);
        }
      }
    ++next;
  }
  return lab;
}

StabilizerChain StabilizerChain::from_strong_generators(
    std::size_t degree, const std::vector<Perm> &gens, const std::vector<point> &base,
    const std::vector<std::vector<Perm>> &level_gens, bool certified) {
  StabilizerChain ch(degree);
  ch.gens_ = GeneratorSet(degree, gens).reduced().gens;
  std::unordered_map<Perm, int, PermHash> index;
  for (std::size_t i = 0; i < base.size(); ++i) {
    ch.push_level(base[i]);
    for (const Perm &p : level_gens[i]) {
      if (p.is_identity())
        continue;
      auto it = index.find(p);
      int idx;
      if (it == index.end()) {
        idx = static_cast<int>(ch.strong_.size());
        ch.strong_.push_back(p);
        ch.strong_inv_.push_back(inverse(p));
        index.emplace(p, idx);
      } else {
        idx = it->second;
      }
      ch.levels_[i].gens.push_back(idx);
    }
    ch.rebuild_orbit(i);
  }
  ch.drop_trivial_levels();
  ch.certified_ = certified;
  return ch;
}

namespace {

// point moved by h in its longest cycle, smallest such point
point choose_new_base_point(const Perm &h) {
  std::vector<char> done(h.degree(), 0);
  std::size_t best_len = 0;
  point best = 0;
  for (point x = 0; x < h.degree(); ++x) {
    if (done[x] || h[x] == x)
      continue;
    std::size_t len = 0;
    for (point y = x; !done[y]; y = h[y]) {
      done[y] = 1;
      ++len;
    }
    if (len > best_len) {
      best_len = len;
      best = x;
    }
  }
  return best;
}

point choose_first_base_point(const std::vector<Perm> &gens, std::size_t n) {
  std::vector<int> lab(n, -1);
  std::size_t best_size = 0;
  point best = 0;
  std::vector<point> queue;
  for (point x = 0; x < n; ++x) {
    if (lab[x] != -1)
      continue;
    lab[x] = 1;
    queue.assign(1, x);
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (const Perm &g : gens) {
        point y = g[queue[k]];
        if (lab[y] == -1) {
          lab[y] = 1;
          queue.push_back(y);
        }
      }
    if (queue.size() > best_size) {
      best_size = queue.size();
      best = x;
    }
  }
  return best;
}

void add_residue(StabilizerChain &ch, const Perm &h, std::size_t lo, std::size_t j) {
  if (j == ch.length())
    ch.push_level(choose_new_base_point(h));
  ch.add_strong(h, lo, j);
}

void verify_schreier(StabilizerChain &ch) {
  long i = static_cast<long>(ch.length()) - 1;
  while (i >= 0) {
    bool restart = false;
    const std::vector<point> orbit = ch.level(i).orbit;
    const std::vector<int> gens = ch.level(i).gens;
    for (point c : orbit) {
      Perm uc = ch.coset_rep(i, c);
      for (int s : gens) {
        point d = ch.strong(s)[c];
        if (ch.level(i).edge[d] == s)
          continue;  // tree edge, Schreier generator is trivial
        Perm sg = uc * ch.strong(s) * ch.coset_rep_inverse(i, d);
        auto [h, j] = ch.sift(std::move(sg), i + 1);
        if (!h.is_identity()) {
          add_residue(ch, h, i + 1, j);
          i = static_cast<long>(j);
          restart = true;
          break;
        }
      }
      if (restart)
        break;
    }
    if (!restart)
      --i;
  }
}

StabilizerChain build(const std::vector<Perm> &gens_in, std::size_t n, const ChainOptions &opt,
                      const std::function<Perm()> *rand_src) {
  StabilizerChain ch(n);
  GeneratorSet gs = GeneratorSet(n, gens_in).reduced();
  ch.set_generators(gs.gens);
  std::vector<char> used(n, 0);
  for (point b : opt.base_prefix) {
    if (b >= n)
      throw chain_error("base point out of range");
    if (!used[b]) {
      used[b] = 1;
      ch.push_level(b);
    }
  }
  if (gs.gens.empty()) {
    ch.set_certified(true);
    if (opt.known_order && *opt.known_order != 1)
      throw chain_error("order mismatch: trivial group, expected " + to_string(*opt.known_order));
    return ch;
  }
  if (ch.length() == 0)
    ch.push_level(choose_first_base_point(gs.gens, n));
  for (const Perm &g : gs.gens)
    ch.add_strong(g, 0, 0);

  Rng rng(opt.seed);
  std::optional<ProductReplacement> pr;
  std::function<Perm()> next;
  if (rand_src) {
    next = *rand_src;
  } else {
    pr.emplace(gs.gens, n, rng);
    next = [&] { return pr->next(); };
  }

  bool certified = false;
  int successes = 0;
  for (std::size_t it = 0; it < opt.max_random; ++it) {
    if (opt.known_order) {
      BigInt o = ch.order();
      if (o == *opt.known_order) {
        certified = true;
        break;
      }
      if (o > *opt.known_order)
        throw chain_error("order mismatch: group has order at least " + to_string(o) +
                          ", expected " + to_string(*opt.known_order));
    }
    auto [h, j] = ch.sift(next());
    if (h.is_identity()) {
      if (!opt.known_order && ++successes >= opt.confidence)
        break;
      continue;
    }
    successes = 0;
    add_residue(ch, h, 1, j);
  }
  if (certified) {
    // a wrong expected order below the true one could stop the random phase
    // early; a few more sifts catch that with high probability
    for (int k = 0; k < 12; ++k) {
      auto [h, j] = ch.sift(next());
      if (!h.is_identity())
        throw chain_error("order mismatch: group is larger than expected order " +
                          to_string(*opt.known_order));
    }
  } else if (!opt.random_only || opt.known_order) {
    verify_schreier(ch);
    certified = true;
    if (opt.known_order && ch.order() != *opt.known_order)
      throw chain_error("order mismatch: computed " + to_string(ch.order()) + ", expected " +
                        to_string(*opt.known_order));
  }
  ch.set_certified(certified);
  return ch;
}

}  // namespace

StabilizerChain schreier_sims(const std::vector<Perm> &gens, std::size_t degree,
                              const ChainOptions &opt) {
  return build(gens, degree, opt, nullptr);
}

StabilizerChain schreier_sims(const GeneratorSet &gens, const ChainOptions &opt) {
  return build(gens.gens, gens.degree, opt, nullptr);
}

StabilizerChain schreier_sims_with_source(const std::vector<Perm> &gens, std::size_t degree,
                                          const ChainOptions &opt, const std::function<Perm()> &source) {
  return build(gens, degree, opt, &source);
}

StabilizerChain change_base(const StabilizerChain &g, const std::vector<point> &prefix,
                            std::uint64_t seed) {
  std::vector<point> old = g.base();
  if (old.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), old.begin()))
    return g;
  Rng rng(seed);
  std::function<Perm()> src = [&] { return g.random_element(rng); };
  ChainOptions opt;
  opt.base_prefix = prefix;
  opt.known_order = g.order();
  opt.seed = seed;
  std::vector<Perm> gens = g.generators();
  if (g.certified())
    return build(gens, g.degree(), opt, &src);
  opt.known_order.reset();
  opt.random_only = true;
  return build(gens, g.degree(), opt, &src);
}

static StabilizerChain subchain(const StabilizerChain &g, std::size_t from) {
  std::vector<point> base;
  std::vector<std::vector<Perm>> lg;
  for (std::size_t i = from; i < g.length(); ++i) {
    base.push_back(g.level(i).base);
    lg.push_back(g.level_generators(i));
  }
  std::vector<Perm> gens = from < g.length() ? g.level_generators(from) : std::vector<Perm>{};
  return StabilizerChain::from_strong_generators(g.degree(), gens, base, lg, g.certified());
}

StabilizerChain point_stabilizer_chain(const StabilizerChain &g, point x) {
  return pointwise_stabilizer_chain(g, {x});
}

StabilizerChain pointwise_stabilizer_chain(const StabilizerChain &g, const std::vector<point> &pts) {
  for (point x : pts)
    if (x >= g.degree())
      throw std::out_of_range("point out of range");
  std::vector<point> uniq;
  for (point x : pts)
    if (std::find(uniq.begin(), uniq.end(), x) == uniq.end())
      uniq.push_back(x);
  StabilizerChain h = change_base(g, uniq);
  // the prefix occupies the first levels, but a group that is already
  // trivial may have fewer levels
  return subchain(h, std::min(uniq.size(), h.length()));
}

GeneratorSet point_stabilizer(const StabilizerChain &g, point x) {
  StabilizerChain s = point_stabilizer_chain(g, x);
  return GeneratorSet(g.degree(), s.generators());
}

std::vector<Perm> enumerate_elements(const StabilizerChain &g, std::size_t limit) {
  if (g.order() > limit)
    throw std::length_error("group too large to enumerate");
  std::size_t L = g.length();
  std::vector<std::vector<Perm>> reps(L);
  for (std::size_t i = 0; i < L; ++i)
    for (point c : g.level(i).orbit)
      reps[i].push_back(g.coset_rep(i, c));
  std::vector<Perm> out;
  std::vector<Perm> partial(L + 1, Perm(g.degree()));
  std::function<void(std::size_t)> rec = [&](std::size_t lvl) {
    // builds u_{L-1} ... u_0 from the deepest level up
    if (lvl == 0) {
      out.push_back(partial[0]);
      return;
    }
    for (const Perm &u : reps[lvl - 1]) {
      partial[lvl - 1] = partial[lvl] * u;
      rec(lvl - 1);
    }
  };
  partial[L] = Perm(g.degree());
  rec(L);
  return out;
}

std::uint64_t element_rank(const StabilizerChain &g, const Perm &p) {
  Perm h = p, tmp(g.degree());
  std::uint64_t r = 0, radix = 1;
  for (std::size_t i = 0; i < g.length(); ++i) {
    const ChainLevel &l = g.level(i);
    point c = h[l.base];
    if (l.edge[c] == -1)
      throw std::invalid_argument("element_rank: not a member");
    auto pos = std::find(l.orbit.begin(), l.orbit.end(), c) - l.orbit.begin();
    r += static_cast<std::uint64_t>(pos) * radix;
    radix *= l.orbit.size();
    while (c != l.base) {
      int s = l.edge[c];
      compose_into(h, g.strong_inverse(s), tmp);
      std::swap(h, tmp);
      c = g.strong_inverse(s)[c];
    }
  }
  return r;
}

Perm element_unrank(const StabilizerChain &g, std::uint64_t r) {
  std::vector<point> pick(g.length());
  for (std::size_t i = 0; i < g.length(); ++i) {
    std::size_t k = g.level(i).orbit.size();
    pick[i] = g.level(i).orbit[r % k];
    r /= k;
  }
  Perm x(g.degree());
  for (std::size_t i = g.length(); i-- > 0;)
    x = x * g.coset_rep(i, pick[i]);
  return x;
}

StabilizerChain make_chain(const std::vector<Perm> &gens, std::size_t degree,
                           std::optional<BigInt> known_order, std::uint64_t seed) {
  ChainOptions opt;
  opt.known_order = std::move(known_order);
  opt.seed = seed;
  return schreier_sims(gens, degree, opt);
}

std::optional<Perm> lift_prefix(const StabilizerChain &g, const Perm &y, std::size_t levels) {
  Perm h = y, tmp(g.degree());
  std::vector<Perm> reps;
  levels = std::min(levels, g.length());
  for (std::size_t i = 0; i < levels; ++i) {
    const ChainLevel &l = g.level(i);
    point c = h[l.base];
    if (l.edge[c] == -1)
      return std::nullopt;
    reps.push_back(g.coset_rep(i, c));
    while (c != l.base) {
      int s = l.edge[c];
      compose_into(h, g.strong_inverse(s), tmp);
      std::swap(h, tmp);
      c = g.strong_inverse(s)[c];
    }
  }
  Perm d(g.degree());
  for (std::size_t i = reps.size(); i-- > 0;)
    d = d * reps[i];
  return d;
}

}  // namespace spor
