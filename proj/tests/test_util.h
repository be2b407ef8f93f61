#pragma once

#include <unordered_set>
#include <vector>

#include "sporadic/atlas.h"

// One atlas per test process so chains are computed once.
inline spor::Atlas &test_atlas() {
  static spor::Atlas atlas(spor::default_data_dir());
  return atlas;
}

// size of the orbit of an ordered tuple of points (at most 5), by breadth-first search
inline std::size_t tuple_orbit_size(const std::vector<spor::Perm> &gens, const std::vector<spor::point> &t) {
  const std::uint64_t B = 4099;
  std::size_t len = t.size();
  auto key = [&](const std::vector<spor::point> &v) {
    std::uint64_t k = 0;
    for (auto x : v)
      k = k * B + x;
    return k;
  };
  std::unordered_set<std::uint64_t> seen{key(t)};
  std::vector<std::uint64_t> queue{key(t)};
  std::vector<spor::point> u(len);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto &g : gens) {
      std::uint64_t k = queue[i];
      for (std::size_t j = len; j-- > 0;) {
        u[j] = g[static_cast<spor::point>(k % B)];
        k /= B;
      }
      std::uint64_t nk = key(u);
      if (seen.insert(nk).second)
        queue.push_back(nk);
    }
  return queue.size();
}

inline std::size_t orbit_size_bfs(const std::vector<spor::Perm> &gens, spor::point x) {
  return tuple_orbit_size(gens, {x});
}
