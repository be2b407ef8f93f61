#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sporadic/bsgs.h"

namespace spor {

struct OrbitPartition {
  std::vector<int> label;                  // orbit index per point, -1 outside the domain
  std::vector<std::vector<point>> orbits;  // each sorted, listed by least point
  point representative(point x) const { return orbits[label[x]].front(); }
  std::vector<std::size_t> sorted_lengths() const;
};

// Orbits on the whole domain, or on the closure of `domain` when given.
OrbitPartition orbits(const std::vector<Perm> &gens, std::size_t n,
                      const std::vector<point> *domain = nullptr);
std::vector<point> orbit_of(const std::vector<Perm> &gens, point x);
bool is_transitive(const std::vector<Perm> &gens, std::size_t n);

struct BlockSystem {
  std::size_t block_size = 0;
  std::vector<int> block_of;  // block index per point
  std::size_t num_blocks() const;
  std::vector<std::vector<point>> blocks() const;
};

class intransitive_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Smallest block containing a and b (union-find closure).
BlockSystem minimal_block(const std::vector<Perm> &gens, std::size_t n, point a, point b);
bool is_block_system(const std::vector<Perm> &gens, const BlockSystem &b);

struct PrimitivityResult {
  bool primitive = true;
  std::optional<BlockSystem> witness;
};
PrimitivityResult is_primitive(const std::vector<Perm> &gens, std::size_t n);

// Orbit lengths of the point stabilizer, ascending.
std::vector<std::size_t> subdegrees(const StabilizerChain &g, point x = 0);
// Orbits of the point stabilizer (first entry is {x}), ascending by length.
std::vector<std::vector<point>> suborbits(const StabilizerChain &g, point x = 0);

struct CosetAction {
  GeneratorSet image;  // action of G's generators on right cosets Hg
  std::size_t index = 0;
  std::vector<Perm> representatives;
  bool faithful = false;
  BigInt image_order;
};

class index_bound_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Right cosets are identified by sifting g1 g2^-1 through H's chain, with a
// bucket key from the images of short H-orbits to keep the tests few.
CosetAction coset_action(const StabilizerChain &g, const StabilizerChain &h, std::size_t bound = 100000);
CosetAction coset_action(const StabilizerChain &g, const GeneratorSet &h, std::size_t bound = 100000);

// Action on the cells of an invariant partition (block system or orbits of a
// central subgroup). Returns generators on cells in the same order as gens.
std::vector<Perm> action_on_blocks(const std::vector<Perm> &gens, const std::vector<int> &block_of,
                                   std::size_t num_blocks);
// Restriction of gens to an invariant set, points renumbered by position in `set`.
std::vector<Perm> restrict_to(const std::vector<Perm> &gens, const std::vector<point> &set);

enum class Verdict { holds, fails, unevaluated };
const char *verdict_name(Verdict v);

struct SuborbitReport {
  std::vector<point> orbit;
  bool faithful = false;
  bool primitive = false;
  bool unique_length = false;
  std::optional<BlockSystem> witness;  // when not primitive
};

struct Lemma3Options {
  point alpha = 0;
  // length of the chosen orbit Psi; by default the first suborbit meeting (b) and (c)
  std::optional<std::size_t> psi_length;
  std::size_t aut_bound = 10000;
};

// Hypotheses of the centralizer criterion for a transitive group and a point
// stabilizer: (a) G faithful and primitive, (b) G_alpha faithful and primitive
// on an orbit Psi, (c) Psi the only orbit of its length, (d1) (b) and (c) on
// every nontrivial suborbit, (d2) C_Aut(G_alpha)(G_alpha,beta) = 1, (e) G_alpha
// not cyclic. For (d2) one beta of Psi suffices, since G_alpha is transitive
// on Psi and conjugation by G_alpha carries the condition along.
struct Lemma3Result {
  Verdict a = Verdict::unevaluated, b = Verdict::unevaluated, c = Verdict::unevaluated,
          d1 = Verdict::unevaluated, d2 = Verdict::unevaluated, e = Verdict::unevaluated;
  std::optional<BlockSystem> a_witness;
  std::vector<SuborbitReport> suborbits;  // nontrivial suborbits, ascending length
  std::size_t psi_length = 0;
  std::string d2_note;
  bool hypotheses_hold() const;
};

Lemma3Result lemma3_check(const StabilizerChain &g, const Lemma3Options &opt = {});

}  // namespace spor
