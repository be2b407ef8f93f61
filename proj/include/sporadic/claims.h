#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sporadic/atlas.h"
#include "sporadic/backtrack.h"

namespace spor {

enum class ClaimVerdict { verified, refuted, undecided };
const char *claim_verdict_name(ClaimVerdict v);

struct Citation {
  std::string section;
  std::string quote;
};

struct Claim {
  std::string id;
  std::string kind;
  std::vector<std::string> groups;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json expected;
  std::string provenance;  // PAPER, TRIVIAL or DERIVED
  Citation citation;
  std::string tier = "default";
  bool negative_control = false;
  std::string note;
};

class manifest_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> &claim_kinds();

// Validates everything that can be checked without computing: kinds,
// parameters, provenance, citations and that every group of an active claim
// resolves in the atlas.
std::vector<Claim> parse_manifest(const nlohmann::json &j, Atlas &atlas, const std::string &tier = "default");
std::vector<Claim> load_manifest(const std::filesystem::path &path, Atlas &atlas,
                                 const std::string &tier = "default");

struct RunOptions {
  std::uint64_t seed = 1;
  std::uint64_t max_nodes = SearchOptions{}.max_nodes;
  std::size_t class_budget = 1000000;
  std::string tier = "default";
  unsigned threads = 1;
};

struct ClaimResult {
  std::string id, kind;
  std::vector<std::string> groups;
  ClaimVerdict verdict = ClaimVerdict::undecided;
  std::string reason;
  nlohmann::json expected, computed, witness;
  std::string provenance;
  bool negative_control = false;
  double seconds = 0;
};

struct ClaimReport {
  std::uint64_t seed = 1;
  std::string tier = "default";
  std::vector<ClaimResult> results;
  std::vector<std::string> skipped;  // claims of another tier
  double seconds = 0;
  std::size_t peak_rss_kb = 0;

  int exit_code() const;  // 0 all verified, 1 any refuted, 2 otherwise undecided
  // Timings and memory are left out unless asked for, so that a fixed seed
  // gives byte-identical JSON.
  nlohmann::json to_json(bool with_timings = false) const;
  static ClaimReport from_json(const nlohmann::json &j);
  std::string to_text() const;
};

ClaimResult evaluate_claim(const Claim &c, Atlas &atlas, const RunOptions &opt);
ClaimReport run_claims(const std::vector<Claim> &claims, Atlas &atlas, const RunOptions &opt);
ClaimReport run_manifest(const std::filesystem::path &path, Atlas &atlas, const RunOptions &opt);

// C_A(T) against Z(T) for T a Sylow 2-subgroup of G, with G = A' taken from
// the atlas link (or G = A). Variant "T_M" uses a Sylow 2-subgroup of the
// point stabilizer M of G instead, and asks only that C_A(T_M) <= G.
struct OliverResult {
  ClaimVerdict verdict = ClaimVerdict::undecided;
  std::string variant = "T";
  BigInt sylow_order, center_order, centralizer_order;
  bool centralizer_equals_center = false;
  bool tilde_trivial = false;  // C_A(T) <= G
  std::optional<Perm> witness;  // element of C_A(T) outside Z(T) or outside G
  std::string reason;
};
OliverResult verify_oliver(Atlas &atlas, const std::string &g, const std::string &a,
                           const std::string &variant = "T", const SearchOptions &opt = {});

// (a) Z(T) = <z> of order 2, (b) C_G(Z) is 2-constrained, (c) some normal
// four-subgroup U of T has U# in z^G.
struct Lemma2Result {
  ClaimVerdict a = ClaimVerdict::undecided, b = ClaimVerdict::undecided, c = ClaimVerdict::undecided;
  BigInt center_order, centralizer_order, o2_order;
  std::size_t four_groups = 0, fused_four_groups = 0;
  std::vector<Perm> witnesses;  // conjugating elements for the fused four-group
  std::string reason;
};
Lemma2Result verify_lemma2_hypotheses(Atlas &atlas, const std::string &g, const SearchOptions &opt = {});

// Normal E_{p^rank} subgroups of a Sylow p-subgroup up to G-conjugacy, with
// N_G(Q)/Q identified among internally built groups.
struct Parabolic {
  StabilizerChain q;
  BigInt normalizer_order;
  BigInt quotient_order;
  std::string type;  // "" when no candidate matched
  bool q_is_core = false;  // Q = O_p(N_G(Q))
};
struct ParabolicBundle {
  std::vector<Parabolic> classes;  // descending quotient order
  std::size_t normal_in_sylow = 0;
  bool pairwise_non_conjugate = false;
  std::optional<bool> non_conjugate_in_ambient;  // when an overgroup was given
};
ParabolicBundle normal_elementary_parabolics(Atlas &atlas, const std::string &g, unsigned p, std::size_t rank,
                                             const std::optional<std::string> &ambient = {},
                                             const SearchOptions &opt = {});

struct M22Parabolics {
  ClaimVerdict verdict = ClaimVerdict::undecided;
  ParabolicBundle bundle;
  std::string reason;
};
M22Parabolics verify_m22_parabolics(Atlas &atlas, const SearchOptions &opt = {});

// Groups the engine builds from explicit generators: "A<n>", "S<n>" and
// "SL2(3)*Z4" (inside GL2(5), acting on nonzero vectors).
StabilizerChain named_group(const std::string &name);
// Name of an internally built group isomorphic to x among the given
// candidates, or "" when none is.
std::string identify_group(const StabilizerChain &x, const std::vector<std::string> &candidates);

}  // namespace spor
