#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sporadic/bsgs.h"

namespace spor {

struct GroupDescriptor {
  std::string name;
  std::size_t degree = 0;
  int base_index = 1;
  std::vector<std::string> generators;
  std::optional<BigInt> expected_order;
  std::map<std::string, std::string> links;
  std::string source;
  std::filesystem::path path;
};

class atlas_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GroupDescriptor read_descriptor(const std::filesystem::path &path);
GeneratorSet descriptor_generators(const GroupDescriptor &d);

// Binary chain cache. Files are named by a content hash of the generators
// and written through a temporary file and a rename.
namespace chain_cache {

inline constexpr std::uint32_t kVersion = 1;

std::uint64_t content_key(const GeneratorSet &gens);
std::string serialize(const StabilizerChain &ch);
// throws chain_error on version mismatch or checksum failure
StabilizerChain deserialize(const std::string &bytes);

void save(const std::filesystem::path &dir, const GeneratorSet &gens, const StabilizerChain &ch);
std::optional<StabilizerChain> load(const std::filesystem::path &dir, const GeneratorSet &gens);

}  // namespace chain_cache

struct LoadedGroup {
  GroupDescriptor desc;
  GeneratorSet gens;
  std::shared_ptr<const StabilizerChain> chain;
  bool from_cache = false;
};

// Certificate for "derived_subgroup_is": A' = G, with G's chain expressed in
// A's domain. When G's generators lie in A the link is proved by normality,
// index 2 and perfectness of G; otherwise A' is computed and its order
// matched against G.
struct DerivedLink {
  std::string derived_name;
  std::shared_ptr<const StabilizerChain> derived;
  bool literal = false;
  BigInt index;
};

class Atlas {
 public:
  explicit Atlas(std::filesystem::path data_dir, std::optional<std::filesystem::path> cache_dir = {},
                 std::uint64_t seed = 1);

  // By bundled name ("M22.2") or by path to a descriptor file.
  std::shared_ptr<const LoadedGroup> load(const std::string &name_or_path);
  // Ingestion certification of the relationship links of a loaded group;
  // nullptr when it has none. Throws atlas_error when a link fails.
  std::shared_ptr<const DerivedLink> derived_link(const std::string &name_or_path);
  std::vector<std::string> names() const;
  std::filesystem::path module_path(const std::string &name) const;
  const std::filesystem::path &data_dir() const { return data_dir_; }

  // Recomputes one cached chain from scratch and compares order and base.
  // Returns false on drift; true when they agree or nothing was cached.
  bool spot_check_cache(Rng &rng);

 private:
  std::filesystem::path resolve(const std::string &name_or_path) const;

  std::filesystem::path data_dir_;
  std::optional<std::filesystem::path> cache_dir_;
  std::uint64_t seed_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const LoadedGroup>> loaded_;
  std::map<std::string, std::shared_ptr<const DerivedLink>> links_;
};

std::filesystem::path default_data_dir();

}  // namespace spor
