#pragma once
// Fifty small permutation groups (order at most 5040) built from explicit
// combinatorial constructions, with their orders known from the construction.

#include <functional>
#include <string>
#include <vector>

#include "sporadic/perm.h"

namespace corpus {

using spor::Perm;
using spor::point;

struct Entry {
  std::string name;
  std::size_t degree;
  std::vector<Perm> gens;
  std::size_t order;
};

inline Perm from_map(std::size_t n, const std::function<point(point)> &f) {
  std::vector<point> v(n);
  for (point i = 0; i < n; ++i)
    v[i] = f(i);
  return Perm(v);
}

inline Perm cycle(std::size_t n, std::vector<point> c) {
  std::vector<point> v(n);
  for (point i = 0; i < n; ++i)
    v[i] = i;
  for (std::size_t k = 0; k < c.size(); ++k)
    v[c[k]] = c[(k + 1) % c.size()];
  return Perm(v);
}

inline std::vector<Perm> cyclic(std::size_t n) {
  return {from_map(n, [n](point x) { return static_cast<point>((x + 1) % n); })};
}

inline std::vector<Perm> dihedral(std::size_t n) {
  return {from_map(n, [n](point x) { return static_cast<point>((x + 1) % n); }),
          from_map(n, [n](point x) { return static_cast<point>((n - x) % n); })};
}

inline std::vector<Perm> symmetric(std::size_t n) {
  std::vector<point> all(n);
  for (point i = 0; i < n; ++i)
    all[i] = i;
  return {cycle(n, {0, 1}), cycle(n, all)};
}

inline std::vector<Perm> alternating(std::size_t n) {
  std::vector<point> c;
  for (point i = (n % 2 ? 0 : 1); i < n; ++i)
    c.push_back(i);
  return {cycle(n, {0, 1, 2}), cycle(n, c)};
}

inline std::vector<Perm> affine_line(unsigned p, unsigned prim) {
  return {from_map(p, [p](point x) { return static_cast<point>((x + 1) % p); }),
          from_map(p, [p, prim](point x) { return static_cast<point>((x * prim) % p); })};
}

// projective line over F_p, point p is infinity
inline unsigned inv_mod(unsigned a, unsigned p) {
  for (unsigned b = 1; b < p; ++b)
    if (a * b % p == 1)
      return b;
  return 0;
}

inline std::vector<Perm> psl2(unsigned p, bool pgl) {
  std::size_t n = p + 1;
  std::vector<Perm> g;
  g.push_back(from_map(n, [p](point x) { return x == p ? p : static_cast<point>((x + 1) % p); }));
  g.push_back(from_map(n, [p](point x) -> point {
    if (x == p)
      return 0;
    if (x == 0)
      return p;
    return static_cast<point>((p - inv_mod(x, p)) % p);
  }));
  if (pgl) {
    unsigned ns = 0;  // a non-square
    for (unsigned a = 2; a < p && !ns; ++a) {
      bool sq = false;
      for (unsigned b = 1; b < p; ++b)
        if (b * b % p == a)
          sq = true;
      if (!sq)
        ns = a;
    }
    g.push_back(from_map(n, [p, ns](point x) { return x == p ? p : static_cast<point>(x * ns % p); }));
  }
  return g;
}

// matrices over F_q (q prime) acting on row vectors, encoded base q
inline point apply_mat(const std::vector<std::vector<unsigned>> &m, point v, unsigned q, unsigned d) {
  std::vector<unsigned> x(d), y(d, 0);
  for (unsigned i = 0; i < d; ++i) {
    x[i] = v % q;
    v /= q;
  }
  for (unsigned j = 0; j < d; ++j)
    for (unsigned i = 0; i < d; ++i)
      y[j] = (y[j] + x[i] * m[i][j]) % q;
  point r = 0;
  for (unsigned i = d; i-- > 0;)
    r = r * q + y[i];
  return r;
}

inline unsigned ipow(unsigned q, unsigned d) {
  unsigned r = 1;
  while (d--)
    r *= q;
  return r;
}

// linear group on nonzero vectors (points 0..q^d-2 encode vectors 1..q^d-1)
inline std::vector<Perm> linear_on_nonzero(const std::vector<std::vector<std::vector<unsigned>>> &mats,
                                           unsigned q, unsigned d) {
  std::size_t n = ipow(q, d) - 1;
  std::vector<Perm> g;
  for (auto &m : mats)
    g.push_back(from_map(n, [&](point x) { return apply_mat(m, x + 1, q, d) - 1; }));
  return g;
}

inline std::vector<Perm> affine(const std::vector<std::vector<std::vector<unsigned>>> &mats, unsigned q,
                                unsigned d) {
  std::size_t n = ipow(q, d);
  std::vector<Perm> g;
  for (auto &m : mats)
    g.push_back(from_map(n, [&](point x) { return apply_mat(m, x, q, d); }));
  // translation by e_0
  g.push_back(from_map(n, [q](point x) { return static_cast<point>(x - x % q + (x % q + 1) % q); }));
  return g;
}

// G acting on m points, wreathed with C_k on k*m points
inline std::vector<Perm> wreath(const std::vector<Perm> &g, std::size_t m, std::size_t k) {
  std::size_t n = m * k;
  std::vector<Perm> r;
  for (const Perm &p : g)
    r.push_back(from_map(n, [&](point x) { return x < m ? p[x] : x; }));
  r.push_back(from_map(n, [m, n](point x) { return static_cast<point>((x + m) % n); }));
  return r;
}

inline std::vector<Perm> direct(const std::vector<Perm> &a, std::size_t m, const std::vector<Perm> &b,
                                std::size_t k) {
  std::size_t n = m + k;
  std::vector<Perm> r;
  for (const Perm &p : a)
    r.push_back(from_map(n, [&](point x) { return x < m ? p[x] : x; }));
  for (const Perm &p : b)
    r.push_back(from_map(n, [&](point x) { return x < m ? x : static_cast<point>(m + p[x - m]); }));
  return r;
}

inline std::vector<Entry> all() {
  std::vector<Entry> c;
  auto add = [&](std::string name, std::size_t n, std::vector<Perm> g, std::size_t order) {
    c.push_back({std::move(name), n, std::move(g), order});
  };
  add("trivial", 3, {Perm(3)}, 1);
  add("C2", 2, cyclic(2), 2);
  add("C5", 5, cyclic(5), 5);
  add("C12", 12, cyclic(12), 12);
  add("C4xC4", 8, {cycle(8, {0, 1, 2, 3}), cycle(8, {4, 5, 6, 7})}, 16);
  add("E8", 8,
      {from_map(8, [](point x) { return x ^ 1u; }), from_map(8, [](point x) { return x ^ 2u; }),
       from_map(8, [](point x) { return x ^ 4u; })},
      8);
  add("E9", 9, {from_map(9, [](point x) { return static_cast<point>(x / 3 * 3 + (x + 1) % 3); }),
                from_map(9, [](point x) { return static_cast<point>((x + 3) % 9); })},
      9);
  add("C6", 5, {Perm(std::vector<point>{1, 0, 3, 4, 2})}, 6);
  add("D8", 4, dihedral(4), 8);
  add("D10", 5, dihedral(5), 10);
  add("D12", 6, dihedral(6), 12);
  add("D16", 8, dihedral(8), 16);
  add("D20", 10, dihedral(10), 20);
  add("D24", 12, dihedral(12), 24);
  {
    // quaternion group, regular action; elements +-1,+-i,+-j,+-k as 0..7
    // encoded as (sign, unit) with unit 0=1,1=i,2=j,3=k
    auto qmul = [](point a, point b) -> point {
      static const int tab[4][4][2] = {{{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                                       {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
                                       {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
                                       {{3, 1}, {2, 1}, {1, -1}, {0, -1}}};
      int sa = a >= 4 ? -1 : 1, sb = b >= 4 ? -1 : 1;
      int u = tab[a % 4][b % 4][0], s = tab[a % 4][b % 4][1] * sa * sb;
      return static_cast<point>(u + (s < 0 ? 4 : 0));
    };
    add("Q8", 8, {from_map(8, [&](point x) { return qmul(x, 1); }),
                  from_map(8, [&](point x) { return qmul(x, 2); })},
        8);
  }
  add("S3", 3, symmetric(3), 6);
  add("S4", 4, symmetric(4), 24);
  add("S5", 5, symmetric(5), 120);
  add("S6", 6, symmetric(6), 720);
  add("A4", 4, alternating(4), 12);
  add("A5", 5, alternating(5), 60);
  add("A6", 6, alternating(6), 360);
  add("A7", 7, alternating(7), 2520);
  add("AGL1_5", 5, affine_line(5, 2), 20);
  add("AGL1_7", 7, affine_line(7, 3), 42);
  add("AGL1_11", 11, affine_line(11, 2), 110);
  add("AGL1_13", 13, affine_line(13, 2), 156);
  add("PSL2_5", 6, psl2(5, false), 60);
  add("PSL2_7", 8, psl2(7, false), 168);
  add("PGL2_7", 8, psl2(7, true), 336);
  add("PSL2_11", 12, psl2(11, false), 660);
  add("PGL2_5", 6, psl2(5, true), 120);
  add("GL3_2", 7, linear_on_nonzero({{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}, 2, 3),
      168);
  add("AGL3_2", 8, affine({{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}, 2, 3),
      1344);
  add("AGL2_3", 9, affine({{{1, 1}, {0, 1}}, {{0, 1}, {2, 0}}, {{2, 0}, {0, 1}}}, 3, 2), 432);
  add("GL2_3", 8, linear_on_nonzero({{{1, 1}, {0, 1}}, {{0, 1}, {2, 0}}, {{2, 0}, {0, 1}}}, 3, 2), 48);
  add("SL2_3", 8, linear_on_nonzero({{{1, 1}, {0, 1}}, {{0, 1}, {2, 0}}}, 3, 2), 24);
  add("C3wrC2", 6, wreath(cyclic(3), 3, 2), 18);
  add("C2wrC3", 6, wreath(cyclic(2), 2, 3), 24);
  add("S3wrC2", 6, wreath(symmetric(3), 3, 2), 72);
  add("S4wrC2", 8, wreath(symmetric(4), 4, 2), 1152);
  add("C4wrC2", 8, wreath(cyclic(4), 4, 2), 32);
  add("S3xS3", 6, direct(symmetric(3), 3, symmetric(3), 3), 36);
  add("A4xC3", 7, direct(alternating(4), 4, cyclic(3), 3), 36);
  add("A5xC2", 7, direct(alternating(5), 5, cyclic(2), 2), 120);
  add("S4xS3", 7, direct(symmetric(4), 4, symmetric(3), 3), 144);
  {
    // S5 on the ten 2-subsets
    std::vector<std::pair<point, point>> pairs;
    for (point a = 0; a < 5; ++a)
      for (point b = a + 1; b < 5; ++b)
        pairs.push_back({a, b});
    auto idx = [&](point a, point b) {
      if (a > b)
        std::swap(a, b);
      for (point i = 0; i < pairs.size(); ++i)
        if (pairs[i] == std::make_pair(a, b))
          return i;
      return point(0);
    };
    std::vector<Perm> g;
    for (const Perm &s : symmetric(5))
      g.push_back(from_map(10, [&](point x) { return idx(s[pairs[x].first], s[pairs[x].second]); }));
    add("S5_pairs", 10, g, 120);
  }
  // Heisenberg group mod 3 acting on F_3^2: (x,y) -> (x+1,y), (x,y) -> (x,y+x)
  add("Heis27", 9,
      {from_map(9, [](point v) { return static_cast<point>((v % 3 + 1) % 3 + v / 3 * 3); }),
       from_map(9, [](point v) { return static_cast<point>(v % 3 + ((v / 3 + v % 3) % 3) * 3); }),
       from_map(9, [](point v) { return static_cast<point>(v % 3 + ((v / 3 + 1) % 3) * 3); })},
      27);
  add("D8xC3", 7, direct(dihedral(4), 4, cyclic(3), 3), 24);
  add("F21", 7, affine_line(7, 2), 21);
  return c;
}

}  // namespace corpus
