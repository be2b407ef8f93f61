#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sporadic/bigint.h"
#include "sporadic/perm.h"
#include "sporadic/random.h"

namespace spor {

struct ChainLevel {
  point base = 0;
  std::vector<int> gens;      // indices into the strong generator list
  std::vector<point> orbit;   // BFS order, orbit[0] == base
  // per point: -1 if outside the orbit, -2 for the base, otherwise the strong
  // generator s with parent^s == point
  std::vector<int> edge;
};

struct ChainOptions {
  std::vector<point> base_prefix;
  // When set, the random phase stops as soon as the orbit product reaches this
  // value, which proves completeness.
  std::optional<BigInt> known_order;
  std::uint64_t seed = 1;
  // Consecutive successful random sifts before the deterministic check.
  int confidence = 24;
  // Skip the Schreier generator verification. The chain is then only
  // probably complete and certified() reports false.
  bool random_only = false;
  std::size_t max_random = 200000;
};

class chain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StabilizerChain {
 public:
  StabilizerChain() = default;
  explicit StabilizerChain(std::size_t degree) : n_(degree) {}

  std::size_t degree() const { return n_; }
  std::size_t length() const { return levels_.size(); }
  const ChainLevel &level(std::size_t i) const { return levels_[i]; }
  std::vector<point> base() const;
  const std::vector<Perm> &generators() const { return gens_; }
  const std::vector<Perm> &strong() const { return strong_; }
  const Perm &strong(int i) const { return strong_[i]; }
  const Perm &strong_inverse(int i) const { return strong_inv_[i]; }
  // generators of the stabilizer of base[0..i-1]
  std::vector<Perm> level_generators(std::size_t i) const;
  GeneratorSet generator_set() const { return GeneratorSet(n_, gens_); }

  BigInt order() const;
  bool certified() const { return certified_; }
  bool is_trivial() const { return levels_.empty(); }

  bool contains(const Perm &p) const;
  // Residue after sifting from level `from`, and the level where it stopped
  // (length() when every level was passed).
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from = 0) const;

  bool in_orbit(std::size_t lvl, point c) const { return levels_[lvl].edge[c] != -1; }
  std::size_t orbit_size(std::size_t lvl) const { return levels_[lvl].orbit.size(); }
  // u with base^u == c
  Perm coset_rep(std::size_t lvl, point c) const;
  Perm coset_rep_inverse(std::size_t lvl, point c) const;
  // y^(u_c^-1) without building u_c
  point apply_rep_inverse(std::size_t lvl, point c, point y) const;

  Perm random_element(Rng &rng) const;
  std::vector<Perm> random_elements(Rng &rng, std::size_t k) const;

  // Orbit labels of the stabilizer of base[0..i-1] on the whole domain.
  std::vector<int> orbit_labels(std::size_t i) const;

  // Chain from an already complete strong generating set: gens_per_level[i]
  // must generate the stabilizer of base[0..i-1]. Used by searches that prove
  // completeness themselves.
  static StabilizerChain from_strong_generators(std::size_t degree, const std::vector<Perm> &gens,
                                                const std::vector<point> &base,
                                                const std::vector<std::vector<Perm>> &level_gens,
                                                bool certified);

  // builder internals, used by schreier_sims
  void add_strong(const Perm &h, std::size_t lo, std::size_t hi);
  void push_level(point b);
  void rebuild_orbit(std::size_t lvl);
  void set_generators(std::vector<Perm> g) { gens_ = std::move(g); }
  void set_certified(bool c) { certified_ = c; }
  void drop_trivial_levels();

 private:
  std::size_t n_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> strong_, strong_inv_;
  std::vector<ChainLevel> levels_;
  bool certified_ = false;
};

StabilizerChain schreier_sims(const GeneratorSet &gens, const ChainOptions &opt = {});
StabilizerChain schreier_sims(const std::vector<Perm> &gens, std::size_t degree,
                              const ChainOptions &opt = {});

// Random phase fed by `source`, which must return elements of <gens>; with
// a known order and uniform elements this is how images and diagonal copies
// of a group with a chain are built cheaply.
StabilizerChain schreier_sims_with_source(const std::vector<Perm> &gens, std::size_t degree,
                                          const ChainOptions &opt, const std::function<Perm()> &source);

// Same group, new base beginning with prefix. Uses the known order, so the
// result is certified whenever the input is.
StabilizerChain change_base(const StabilizerChain &g, const std::vector<point> &prefix,
                            std::uint64_t seed = 7);

// Generators of the full stabilizer of a point.
GeneratorSet point_stabilizer(const StabilizerChain &g, point x);
StabilizerChain point_stabilizer_chain(const StabilizerChain &g, point x);
// Pointwise stabilizer of a sequence of points.
StabilizerChain pointwise_stabilizer_chain(const StabilizerChain &g, const std::vector<point> &pts);

// Every element, in the order given by the chain. Only for small groups.
std::vector<Perm> enumerate_elements(const StabilizerChain &g, std::size_t limit = 2000000);

// Mixed-radix rank of an element using base images; rank < order.
std::uint64_t element_rank(const StabilizerChain &g, const Perm &p);
Perm element_unrank(const StabilizerChain &g, std::uint64_t r);

// Build the chain of <gens> where gens lie in a group of known order bound,
// choosing random or deterministic completion by size.
StabilizerChain make_chain(const std::vector<Perm> &gens, std::size_t degree,
                           std::optional<BigInt> known_order = std::nullopt,
                           std::uint64_t seed = 1);

// Element d of the group with base[i]^d == base[i]^y for the first `levels`
// levels; nullopt when y's pattern is not reachable.
std::optional<Perm> lift_prefix(const StabilizerChain &g, const Perm &y, std::size_t levels);

}  // namespace spor
