#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sporadic/perm.h"

namespace spor {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // uniform in [0, n)
  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
  }
  // independent stream derived from this one and a salt
  Rng split(std::uint64_t salt) {
    std::uint64_t s = next() ^ (salt * 0x9e3779b97f4a7c15ULL);
    return Rng(s);
  }

  std::mt19937_64 &engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Product replacement random element generator.
class ProductReplacement {
 public:
  ProductReplacement(const std::vector<Perm> &gens, std::size_t degree, Rng &rng,
                     std::size_t slots = 10, std::size_t warmup = 60);
  Perm next();

 private:
  Rng &rng_;
  std::vector<Perm> state_;
  Perm acc_;
  Perm tmp_;
};

Perm random_word(const std::vector<Perm> &gens, std::size_t degree, Rng &rng, std::size_t len);

}  // namespace spor
