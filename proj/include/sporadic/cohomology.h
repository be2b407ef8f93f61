#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sporadic/bsgs.h"

namespace spor {

// Dense matrix over F_p, row-major; vectors are rows and act on the right.
struct FpMatrix {
  std::size_t n = 0;
  std::vector<std::uint32_t> a;

  FpMatrix() = default;
  explicit FpMatrix(std::size_t dim) : n(dim), a(dim * dim, 0) {}
  static FpMatrix identity(std::size_t dim);
  std::uint32_t &at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  friend bool operator==(const FpMatrix &x, const FpMatrix &y) { return x.n == y.n && x.a == y.a; }
};

FpMatrix mat_mul(const FpMatrix &x, const FpMatrix &y, unsigned p);
std::size_t mat_rank(std::vector<std::vector<std::uint32_t>> rows, unsigned p);
bool is_invertible(const FpMatrix &m, unsigned p);

class module_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// F_p G-module given by one matrix per generator of G.
struct ModuleRep {
  std::string name;
  unsigned p = 2;
  std::size_t dim = 0;
  GeneratorSet gens;
  std::vector<FpMatrix> mats;
  std::optional<BigInt> group_order;
};

ModuleRep load_module(const std::filesystem::path &path);
ModuleRep trivial_module(const GeneratorSet &gens, unsigned p);
// Same module with extra generators x = word in the old ones (indices into gens).
ModuleRep with_words(const ModuleRep &v, const std::vector<std::vector<std::size_t>> &words);

// Common fixed space of the given matrices.
std::size_t fixed_space(const ModuleRep &v, const std::vector<FpMatrix> &elements);

// Matrices of arbitrary group elements, read off a diagonal copy of G acting
// on the domain and on the vectors together.
class ModuleAction {
 public:
  ModuleAction(const ModuleRep &v, const StabilizerChain &g);
  FpMatrix matrix_of(const Perm &x) const;
  const ModuleRep &module() const { return v_; }

 private:
  ModuleRep v_;
  StabilizerChain diag_;
  std::size_t prefix_ = 0;
};

struct CocycleSpace {
  std::size_t dim_z1 = 0, dim_b1 = 0, dim_h1 = 0;
  std::vector<std::vector<std::uint32_t>> z1_basis;  // values on the generators, concatenated
  std::uint64_t elements = 0;                          // vertices of the Cayley graph
  std::uint64_t constraints = 0;                       // non-tree edges
};

// Exact dimensions by propagating cocycle values over the Cayley graph.
// Every closed walk is checked to map to the identity matrix, so an
// inconsistent module raises module_error. g is a chain for <v.gens>.
CocycleSpace h1(const ModuleRep &v, const StabilizerChain &g, std::size_t memory_budget = std::size_t(3) << 30);

enum class Lemma4Verdict { vanishes, inconclusive };

struct Lemma4Result {
  Lemma4Verdict verdict = Lemma4Verdict::inconclusive;
  std::size_t class_size = 0;
  std::size_t component_size = 0;
  // which sufficient condition held, or why none was reached
  std::string reason;
  bool normal_pprime = false, normalizes_component = false, centralizers_generate = false;
};

// The vanishing criterion on the graph of x^G where <x>,<y> are joined when
// they normalize each other. x must be a p'-element without fixed vectors.
Lemma4Result lemma4_criterion(const StabilizerChain &g, const ModuleAction &v, const Perm &x,
                              std::size_t class_budget = 1000000);

}  // namespace spor
