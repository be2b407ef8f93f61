#include "sporadic/perm.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace spor {

Perm::Perm(std::size_t n) : img_(n) {
  std::iota(img_.begin(), img_.end(), point{0});
}

Perm::Perm(std::vector<point> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (point x : img_) {
    if (x >= img_.size() || seen[x])
      throw std::invalid_argument("image list is not a bijection");
    seen[x] = 1;
  }
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i)
      return false;
  return true;
}

std::uint64_t Perm::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ img_.size();
  for (point x : img_) {
    h ^= x;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

static void check_degree(const Perm &p, const Perm &q) {
  if (p.degree() != q.degree())
    throw degree_error("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                       std::to_string(q.degree()));
}

Perm compose(const Perm &p, const Perm &q) {
  check_degree(p, q);
  std::vector<point> r(p.degree());
  const point *a = p.data(), *b = q.data();
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = b[a[i]];
  return Perm::from_images_unchecked(std::move(r));
}

void compose_into(const Perm &p, const Perm &q, Perm &r) {
  const point *a = p.data(), *b = q.data();
  point *c = const_cast<point *>(r.data());
  for (std::size_t i = 0, n = p.degree(); i < n; ++i)
    c[i] = b[a[i]];
}

Perm inverse(const Perm &p) {
  std::vector<point> r(p.degree());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[p[i]] = static_cast<point>(i);
  return Perm::from_images_unchecked(std::move(r));
}

Perm power(const Perm &p, long long k) {
  Perm base = k < 0 ? inverse(p) : p;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : k;
  // walk each cycle once instead of repeated squaring
  std::size_t n = p.degree();
  std::vector<point> r(n);
  std::vector<char> done(n, 0);
  std::vector<point> cyc;
  for (point x = 0; x < n; ++x) {
    if (done[x])
      continue;
    cyc.clear();
    for (point y = x; !done[y]; y = base[y]) {
      done[y] = 1;
      cyc.push_back(y);
    }
    std::size_t len = cyc.size(), s = e % len;
    for (std::size_t i = 0; i < len; ++i)
      r[cyc[i]] = cyc[(i + s) % len];
  }
  return Perm::from_images_unchecked(std::move(r));
}

Perm conjugate(const Perm &x, const Perm &g) {
  check_degree(x, g);
  // x^g maps a^g to (a^x)^g
  std::vector<point> r(x.degree());
  for (std::size_t a = 0; a < r.size(); ++a)
    r[g[a]] = g[x[a]];
  return Perm::from_images_unchecked(std::move(r));
}

Perm commutator(const Perm &x, const Perm &y) {
  return inverse(x) * inverse(y) * x * y;
}

bool commute(const Perm &a, const Perm &b) {
  check_degree(a, b);
  for (std::size_t i = 0; i < a.degree(); ++i)
    if (b[a[i]] != a[b[i]])
      return false;
  return true;
}

Perm parse_cycles(std::string_view text, std::size_t degree, int base_index) {
  if (base_index != 0 && base_index != 1)
    throw parse_error("base index must be 0 or 1");
  std::vector<point> img(degree);
  std::iota(img.begin(), img.end(), point{0});
  std::vector<char> used(degree, 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw parse_error("expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<point> cyc;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw parse_error("malformed cycle near offset " + std::to_string(i));
      unsigned long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > (1ULL << 32))
          throw parse_error("point too large");
        ++i;
      }
      if (v < static_cast<unsigned long long>(base_index) || v - base_index >= degree)
        throw parse_error("point " + std::to_string(v) + " out of range");
      point x = static_cast<point>(v - base_index);
      if (used[x])
        throw parse_error("repeated point " + std::to_string(v));
      used[x] = 1;
      cyc.push_back(x);
      skip_ws();
      if (i < text.size() && text[i] == ',')
        ++i;
      else if (i < text.size() && text[i] != ')')
        throw parse_error("expected ',' or ')' at offset " + std::to_string(i));
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  return Perm::from_images_unchecked(std::move(img));
}

std::string print_cycles(const Perm &p, int base_index) {
  std::string s;
  std::vector<char> done(p.degree(), 0);
  for (point x = 0; x < p.degree(); ++x) {
    if (done[x] || p[x] == x)
      continue;
    s += '(';
    for (point y = x; !done[y]; y = p[y]) {
      done[y] = 1;
      if (y != x)
        s += ',';
      s += std::to_string(y + base_index);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

std::vector<std::size_t> cycle_type(const Perm &p) {
  std::vector<std::size_t> t;
  std::vector<char> done(p.degree(), 0);
  for (point x = 0; x < p.degree(); ++x) {
    if (done[x])
      continue;
    std::size_t len = 0;
    for (point y = x; !done[y]; y = p[y]) {
      done[y] = 1;
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.begin(), t.end());
  return t;
}

BigInt order_of(const Perm &p) {
  BigInt r = 1;
  auto t = cycle_type(p);
  t.erase(std::unique(t.begin(), t.end()), t.end());
  for (std::size_t len : t) {
    BigInt g = boost::multiprecision::gcd(r, BigInt(len));
    r = r / g * len;
  }
  return r;
}

std::uint64_t order_u64(const Perm &p) {
  BigInt r = order_of(p);
  if (r > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("element order exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

std::vector<point> moved_points(const Perm &p) {
  std::vector<point> r;
  for (point x = 0; x < p.degree(); ++x)
    if (p[x] != x)
      r.push_back(x);
  return r;
}

std::vector<point> fixed_points(const Perm &p) {
  std::vector<point> r;
  for (point x = 0; x < p.degree(); ++x)
    if (p[x] == x)
      r.push_back(x);
  return r;
}

bool is_even(const Perm &p) {
  std::size_t parity = 0;
  for (std::size_t len : cycle_type(p))
    parity += len - 1;
  return parity % 2 == 0;
}

GeneratorSet::GeneratorSet(std::size_t n, std::vector<Perm> g) : degree(n), gens(std::move(g)) {
  for (const Perm &p : gens)
    if (p.degree() != n)
      throw degree_error("generator degree " + std::to_string(p.degree()) +
                         " does not match " + std::to_string(n));
}

GeneratorSet GeneratorSet::reduced() const {
  GeneratorSet r;
  r.degree = degree;
  std::unordered_set<Perm, PermHash> seen;
  for (const Perm &p : gens)
    if (!p.is_identity() && seen.insert(p).second)
      r.gens.push_back(p);
  return r;
}

}  // namespace spor
