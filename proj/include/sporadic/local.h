#pragma once

#include <optional>
#include <vector>

#include "sporadic/backtrack.h"

namespace spor {

// Sylow p-subgroup. The result is certified: a chain of exact order
// |G|_p whose generators lie in G and which is built as a p-group.
StabilizerChain sylow(const StabilizerChain &g, unsigned p, const SearchOptions &opt = {});

StabilizerChain center(const StabilizerChain &h, const SearchOptions &opt = {});
bool is_normal(const StabilizerChain &g, const StabilizerChain &h);
bool is_subgroup(const StabilizerChain &h, const StabilizerChain &g);
bool is_p_group(const StabilizerChain &h, unsigned p);
// Largest normal p-subgroup, as an intersection of Sylow conjugates.
StabilizerChain p_core(const StabilizerChain &g, unsigned p, const SearchOptions &opt = {});
// Normal closure of <s> under conjugation by g's generators. With an
// expected order the chain is certified by reaching it, which proves the
// closure has at least that order; otherwise Schreier generators are sifted.
StabilizerChain normal_closure(const StabilizerChain &g, const std::vector<Perm> &s,
                               const std::optional<BigInt> &expected = std::nullopt);
StabilizerChain derived_subgroup(const StabilizerChain &h, const std::optional<BigInt> &expected = std::nullopt);

struct ClassInfo {
  Perm representative;
  std::uint64_t element_order = 1;
  BigInt class_size;
  BigInt centralizer_order;
};

struct ClassTable {
  std::vector<ClassInfo> classes;
  bool complete = false;         // class equation sums to |G|
  bool involutions_only = false;
};

enum class ClassMode { all, involutions };

// Complete tables for |G| up to 10^9 (exhaustive below 2*10^5 elements,
// random sampling with powers above); involution mode sorts the involutions
// of one Sylow 2-subgroup into G-classes.
ClassTable conjugacy_classes(const StabilizerChain &g, ClassMode mode = ClassMode::all,
                             const SearchOptions &opt = {}, std::size_t sample_budget = 200000);

// G-classes of elementary abelian subgroups of order p^2 whose nonidentity
// elements are all G-conjugate.
std::size_t fused_E_p2_class_count(const StabilizerChain &g, unsigned p, const SearchOptions &opt = {});

// C_X(O_2(X)) <= O_2(X)
bool is_2_constrained(const StabilizerChain &x, const SearchOptions &opt = {});

struct SmallGroupAut {
  std::uint64_t automorphisms = 0;
  std::uint64_t inner = 0;  // |X/Z(X)|
  bool complete = false;
};

class bound_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SmallGroupAut automorphism_group_small(const StabilizerChain &x, std::size_t bound = 10000);
// Automorphisms of x that restrict to the identity on the subgroup y.
std::uint64_t centralizing_automorphisms_small(const StabilizerChain &x, const StabilizerChain &y,
                                              std::size_t bound = 10000);
// An isomorphism x -> y given as images of small_generating_set(x), or nullopt.
std::optional<std::pair<std::vector<Perm>, std::vector<Perm>>> isomorphism_small(const StabilizerChain &x,
                                                                                 const StabilizerChain &y,
                                                                                 std::size_t bound = 10000);

// Four-groups normal in the 2-group t (enumerates t, so |t| <= 2^16).
std::vector<StabilizerChain> normal_four_subgroups(const StabilizerChain &t);

// Elementary abelian subgroups of order p^rank normal in the p-group t
// (enumerates t, so |t| <= 2^16).
std::vector<StabilizerChain> normal_elementary_abelian_subgroups(const StabilizerChain &t, unsigned p,
                                                                  std::size_t rank);

// |C_T(x)| equals the p-part of |C_G(x)|.
bool is_extremal(const StabilizerChain &g, const StabilizerChain &t, const Perm &x, unsigned p,
                 const SearchOptions &opt = {});

// Groups built from explicit generators for isomorphism targets.
StabilizerChain alternating_group(std::size_t n);
StabilizerChain symmetric_group(std::size_t n);

}  // namespace spor
