#include "sporadic/random.h"

namespace spor {

ProductReplacement::ProductReplacement(const std::vector<Perm> &gens, std::size_t degree,
                                       Rng &rng, std::size_t slots, std::size_t warmup)
    : rng_(rng), acc_(degree), tmp_(degree) {
  std::vector<Perm> g;
  for (const Perm &p : gens)
    if (!p.is_identity())
      g.push_back(p);
  if (g.empty()) {
    state_.assign(2, Perm(degree));
    return;
  }
  slots = std::max(slots, g.size() + 2);
  for (std::size_t i = 0; i < slots; ++i)
    state_.push_back(g[i % g.size()]);
  for (std::size_t i = 0; i < warmup; ++i)
    next();
}

Perm ProductReplacement::next() {
  std::size_t k = state_.size();
  std::size_t s = rng_.below(k), t = rng_.below(k - 1);
  if (t >= s)
    ++t;
  if (rng_.next() & 1) {
    compose_into(state_[s], state_[t], tmp_);
  } else {
    compose_into(state_[t], state_[s], tmp_);
  }
  std::swap(state_[s], tmp_);
  compose_into(acc_, state_[s], tmp_);
  std::swap(acc_, tmp_);
  return acc_;
}

Perm random_word(const std::vector<Perm> &gens, std::size_t degree, Rng &rng, std::size_t len) {
  Perm r(degree);
  if (gens.empty())
    return r;
  for (std::size_t i = 0; i < len; ++i)
    r = r * gens[rng.below(gens.size())];
  return r;
}

}  // namespace spor
