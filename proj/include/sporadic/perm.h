#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sporadic/bigint.h"

namespace spor {

using point = std::uint32_t;

class degree_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A permutation of {0..n-1}. Points act on the right: x^(pq) = (x^p)^q.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t n);
  explicit Perm(std::vector<point> images);

  static Perm from_images_unchecked(std::vector<point> images) {
    Perm p;
    p.img_ = std::move(images);
    return p;
  }

  std::size_t degree() const { return img_.size(); }
  point operator[](point x) const { return img_[x]; }
  const point *data() const { return img_.data(); }
  const std::vector<point> &images() const { return img_; }

  bool is_identity() const;
  bool fixes(point x) const { return img_[x] == x; }
  std::uint64_t hash() const;

  friend bool operator==(const Perm &a, const Perm &b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm &a, const Perm &b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm &a, const Perm &b) { return a.img_ < b.img_; }

 private:
  std::vector<point> img_;
};

struct PermHash {
  std::size_t operator()(const Perm &p) const { return p.hash(); }
};

Perm compose(const Perm &p, const Perm &q);
inline Perm operator*(const Perm &p, const Perm &q) { return compose(p, q); }
Perm inverse(const Perm &p);
Perm power(const Perm &p, long long k);
// g^-1 x g
Perm conjugate(const Perm &x, const Perm &g);
// x^-1 y^-1 x y
Perm commutator(const Perm &x, const Perm &y);

// In-place r = p * q without allocation; r must already have the right degree.
void compose_into(const Perm &p, const Perm &q, Perm &r);

bool commute(const Perm &a, const Perm &b);

// Disjoint cycle notation. base_index is 0 or 1.
Perm parse_cycles(std::string_view text, std::size_t degree, int base_index = 1);
std::string print_cycles(const Perm &p, int base_index = 1);

BigInt order_of(const Perm &p);
// Order as a machine integer; throws std::overflow_error if it does not fit.
std::uint64_t order_u64(const Perm &p);
std::vector<std::size_t> cycle_type(const Perm &p);
std::vector<point> moved_points(const Perm &p);
std::vector<point> fixed_points(const Perm &p);
bool is_even(const Perm &p);

// Generators of one group, all of the same degree.
struct GeneratorSet {
  std::size_t degree = 0;
  std::vector<Perm> gens;

  GeneratorSet() = default;
  GeneratorSet(std::size_t n, std::vector<Perm> g);
  // drops identities and duplicates, keeping order
  GeneratorSet reduced() const;
};

}  // namespace spor
