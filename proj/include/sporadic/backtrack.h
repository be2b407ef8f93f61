#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sporadic/bsgs.h"

namespace spor {

// Raised when a search exhausts its node budget. The question is then open,
// never answered by default.
class search_undecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  std::uint64_t max_nodes = 100000000;
  std::vector<Perm> known;  // elements already known to lie in the answer
  std::uint64_t seed = 11;
};

struct SearchProblem {
  std::vector<std::pair<Perm, Perm>> pairs;  // x^g == y for each pair
  // color_from[a] == color_to[a^g] for every a; empty means no constraint
  std::vector<int> color_from, color_to;
  std::vector<const StabilizerChain *> filters;  // g must lie in each
  std::function<bool(const Perm &)> leaf;         // final test
  std::vector<point> base_hint;                   // preferred first base points
};

// Depth-first search over base images of a stabilizer chain. Pair
// constraints force further images, and every forced image is checked
// against the orbits of the current stabilizer (and of each filter group),
// which cuts subtrees that contain no element of G.
class Backtrack {
 public:
  Backtrack(const StabilizerChain &g, SearchProblem prob, std::uint64_t max_nodes = 100000000);
  ~Backtrack();
  Backtrack(const Backtrack &) = delete;
  Backtrack &operator=(const Backtrack &) = delete;

  std::optional<Perm> find_element();
  // All solutions, which must form a subgroup. `known` seeds the answer.
  StabilizerChain find_subgroup(const std::vector<Perm> &known = {});
  std::uint64_t nodes() const;

 private:
  struct Impl;
  Impl *impl_;
};

// Base prefix that puts points of long orbits of <xs> first.
std::vector<point> orbit_base_hint(const std::vector<Perm> &xs, std::size_t n, std::size_t limit = 64);

StabilizerChain centralizer(const StabilizerChain &g, const std::vector<Perm> &xs, const SearchOptions &opt = {});
StabilizerChain centralizer(const StabilizerChain &g, const Perm &x, const SearchOptions &opt = {});
StabilizerChain normalizer(const StabilizerChain &g, const StabilizerChain &h, const SearchOptions &opt = {});
StabilizerChain setwise_stabilizer(const StabilizerChain &g, const std::vector<point> &set,
                                   const SearchOptions &opt = {});
StabilizerChain intersection(const StabilizerChain &g, const StabilizerChain &h, const SearchOptions &opt = {});
// w in G with x^w == y, or nullopt when none exists.
std::optional<Perm> conjugacy_witness(const StabilizerChain &g, const Perm &x, const Perm &y,
                                      const SearchOptions &opt = {});
// w in G with x_i^w == y_i for all i.
std::optional<Perm> multi_conjugacy_witness(const StabilizerChain &g, const std::vector<Perm> &xs,
                                            const std::vector<Perm> &ys, const SearchOptions &opt = {});
// w in G with H^w == K.
std::optional<Perm> subgroup_conjugacy_witness(const StabilizerChain &g, const StabilizerChain &h,
                                               const StabilizerChain &k, const SearchOptions &opt = {});

bool normalizes(const Perm &g, const StabilizerChain &h);
// A generating set of h with few elements, found by random search.
std::vector<Perm> small_generating_set(const StabilizerChain &h, std::uint64_t seed = 5);

}  // namespace spor
