#include "sporadic/cohomology.h"

#include <fstream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "sporadic/backtrack.h"
#include "sporadic/local.h"

namespace spor {

using nlohmann::json;

FpMatrix FpMatrix::identity(std::size_t dim) {
  FpMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    m.at(i, i) = 1;
  return m;
}

FpMatrix mat_mul(const FpMatrix &x, const FpMatrix &y, unsigned p) {
  std::size_t n = x.n;
  FpMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t c = x.at(i, k);
      if (!c)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        r.at(i, j) = static_cast<std::uint32_t>((r.at(i, j) + c * y.at(k, j)) % p);
    }
  return r;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, unsigned p) {
  std::uint64_t r = 1, b = a % p;
  for (unsigned e = p - 2; e; e >>= 1, b = b * b % p)
    if (e & 1)
      r = r * b % p;
  return static_cast<std::uint32_t>(r);
}

// Incremental row echelon basis over F_p with leading entries 1.
struct EchelonBasis {
  unsigned p;
  std::size_t width;
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::size_t> pivots;

  EchelonBasis(unsigned prime, std::size_t w) : p(prime), width(w) {}

  bool add(std::vector<std::uint32_t> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint32_t c = v[pivots[r]];
      if (!c)
        continue;
      for (std::size_t j = 0; j < width; ++j)
        v[j] = static_cast<std::uint32_t>((v[j] + (p - c) * static_cast<std::uint64_t>(rows[r][j])) % p);
    }
    std::size_t piv = 0;
    while (piv < width && v[piv] == 0)
      ++piv;
    if (piv == width)
      return false;
    std::uint64_t s = inv_mod(v[piv], p);
    for (auto &x : v)
      x = static_cast<std::uint32_t>(x * s % p);
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }

  // basis of {u : row . u = 0 for every row}
  std::vector<std::vector<std::uint32_t>> nullspace() const {
    auto red = rows;
    for (std::size_t r = 0; r < red.size(); ++r)
      for (std::size_t q = 0; q < red.size(); ++q) {
        if (q == r)
          continue;
        std::uint32_t c = red[q][pivots[r]];
        if (!c)
          continue;
        for (std::size_t j = 0; j < width; ++j)
          red[q][j] = static_cast<std::uint32_t>((red[q][j] + (p - c) * static_cast<std::uint64_t>(red[r][j])) % p);
      }
    std::vector<bool> is_pivot(width, false);
    for (std::size_t c : pivots)
      is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t f = 0; f < width; ++f) {
      if (is_pivot[f])
        continue;
      std::vector<std::uint32_t> u(width, 0);
      u[f] = 1;
      for (std::size_t r = 0; r < red.size(); ++r)
        u[pivots[r]] = (p - red[r][f]) % p;
      out.push_back(std::move(u));
    }
    return out;
  }
};

std::vector<std::uint32_t> parse_row(const json &row, std::size_t dim, unsigned p) {
  std::vector<std::uint32_t> r;
  if (row.is_string()) {
    for (char c : row.get<std::string>()) {
      if (c == ' ' || c == ',')
        continue;
      if (c < '0' || c > '9')
        throw module_error("bad matrix entry '" + std::string(1, c) + "'");
      r.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  } else {
    for (const auto &x : row)
      r.push_back(x.get<std::uint32_t>());
  }
  if (r.size() != dim)
    throw module_error("matrix row has the wrong length");
  for (auto x : r)
    if (x >= p)
      throw module_error("matrix entry out of range");
  return r;
}

bool is_prime_small(unsigned p) {
  if (p < 2)
    return false;
  for (unsigned q = 2; q * q <= p; ++q)
    if (p % q == 0)
      return false;
  return true;
}

std::vector<std::vector<std::uint32_t>> rows_of(const FpMatrix &m) {
  std::vector<std::vector<std::uint32_t>> r(m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    r[i].assign(m.a.begin() + static_cast<long>(i * m.n), m.a.begin() + static_cast<long>((i + 1) * m.n));
  return r;
}

}  // namespace

std::size_t mat_rank(std::vector<std::vector<std::uint32_t>> rows, unsigned p) {
  if (rows.empty())
    return 0;
  EchelonBasis b(p, rows[0].size());
  for (auto &r : rows)
    b.add(std::move(r));
  return b.rows.size();
}

bool is_invertible(const FpMatrix &m, unsigned p) { return mat_rank(rows_of(m), p) == m.n; }

ModuleRep load_module(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw module_error("cannot open module file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw module_error(path.string() + ": " + e.what());
  }
  ModuleRep v;
  try {
    v.name = j.value("name", path.stem().string());
    v.p = j.at("prime").get<unsigned>();
    v.dim = j.at("dim").get<std::size_t>();
    std::size_t degree = j.at("degree").get<std::size_t>();
    int base = j.value("base_index", 1);
    std::vector<Perm> gens;
    for (const auto &s : j.at("generators"))
      gens.push_back(parse_cycles(s.get<std::string>(), degree, base));
    v.gens = GeneratorSet(degree, std::move(gens));
    if (j.contains("expected_order"))
      v.group_order = parse_bigint(j["expected_order"].get<std::string>());
    if (!is_prime_small(v.p) || v.p > 251)
      throw module_error("prime must be a prime below 256");
    for (const auto &m : j.at("matrices")) {
      if (m.size() != v.dim)
        throw module_error("matrix has the wrong number of rows");
      FpMatrix x(v.dim);
      for (std::size_t i = 0; i < v.dim; ++i) {
        auto r = parse_row(m[i], v.dim, v.p);
        std::copy(r.begin(), r.end(), x.a.begin() + static_cast<long>(i * v.dim));
      }
      if (!is_invertible(x, v.p))
        throw module_error("matrix is not invertible");
      v.mats.push_back(std::move(x));
    }
  } catch (const module_error &e) {
    throw module_error(path.string() + ": " + e.what());
  } catch (const std::exception &e) {
    throw module_error(path.string() + ": " + e.what());
  }
  if (v.mats.size() != v.gens.gens.size())
    throw module_error(path.string() + ": generator and matrix counts differ");
  return v;
}

ModuleRep trivial_module(const GeneratorSet &gens, unsigned p) {
  ModuleRep v;
  v.name = "trivial";
  v.p = p;
  v.dim = 1;
  v.gens = gens;
  v.mats.assign(gens.gens.size(), FpMatrix::identity(1));
  return v;
}

ModuleRep with_words(const ModuleRep &v, const std::vector<std::vector<std::size_t>> &words) {
  ModuleRep r = v;
  for (const auto &w : words) {
    Perm x(v.gens.degree);
    FpMatrix m = FpMatrix::identity(v.dim);
    for (std::size_t i : w) {
      x = x * v.gens.gens.at(i);
      m = mat_mul(m, v.mats.at(i), v.p);
    }
    r.gens.gens.push_back(x);
    r.mats.push_back(m);
  }
  return r;
}

std::size_t fixed_space(const ModuleRep &v, const std::vector<FpMatrix> &elements) {
  // v(M - I) = 0 for all M: rank of the block row [M1 - I | M2 - I | ...]
  std::size_t d = v.dim;
  std::vector<std::vector<std::uint32_t>> rows(d);
  for (const FpMatrix &m : elements)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        rows[i].push_back((m.at(i, j) + (i == j ? v.p - 1 : 0)) % v.p);
  if (elements.empty())
    return d;
  return d - mat_rank(std::move(rows), v.p);
}

ModuleAction::ModuleAction(const ModuleRep &v, const StabilizerChain &g) : v_(v) {
  std::size_t n = v.gens.degree, d = v.dim;
  if (g.degree() != n)
    throw degree_error("module action: degree mismatch");
  std::uint64_t nv = 1;
  for (std::size_t i = 0; i < d; ++i) {
    nv *= v.p;
    if (nv > (1u << 20))
      throw module_error("module too large for the diagonal action");
  }
  auto image = [&](std::uint64_t code, const FpMatrix &m) {
    std::vector<std::uint32_t> x(d), y(d, 0);
    for (std::size_t i = 0; i < d; ++i, code /= v.p)
      x[i] = static_cast<std::uint32_t>(code % v.p);
    for (std::size_t i = 0; i < d; ++i)
      if (x[i])
        for (std::size_t j = 0; j < d; ++j)
          y[j] = static_cast<std::uint32_t>((y[j] + x[i] * m.at(i, j)) % v.p);
    std::uint64_t r = 0;
    for (std::size_t i = d; i-- > 0;)
      r = r * v.p + y[i];
    return r;
  };
  std::vector<Perm> dg;
  for (std::size_t s = 0; s < v.gens.gens.size(); ++s) {
    std::vector<point> img(n + nv);
    for (point a = 0; a < n; ++a)
      img[a] = v.gens.gens[s][a];
    for (std::uint64_t c = 0; c < nv; ++c)
      img[n + c] = static_cast<point>(n + image(c, v.mats[s]));
    dg.push_back(Perm(std::move(img)));
  }
  ChainOptions o;
  o.base_prefix = g.base();
  o.known_order = g.order();
  try {
    diag_ = schreier_sims(dg, n + nv, o);
  } catch (const chain_error &e) {
    throw module_error(std::string("matrices do not define a representation of the group: ") + e.what());
  }
  prefix_ = o.base_prefix.size();
  if (diag_.order() != g.order())
    throw module_error("matrices do not define a representation of the group");
}

FpMatrix ModuleAction::matrix_of(const Perm &x) const {
  std::size_t n = v_.gens.degree, d = v_.dim, total = diag_.degree();
  std::vector<point> img(total);
  std::iota(img.begin(), img.end(), point{0});
  for (point a = 0; a < n; ++a)
    img[a] = x[a];
  auto lift = lift_prefix(diag_, Perm(std::move(img)), prefix_);
  if (!lift)
    throw std::invalid_argument("matrix_of: element not in the group");
  for (point a = 0; a < n; ++a)
    if ((*lift)[a] != x[a])
      throw std::invalid_argument("matrix_of: element not in the group");
  FpMatrix m(d);
  std::uint64_t e = 1;
  for (std::size_t i = 0; i < d; ++i, e *= v_.p) {
    std::uint64_t c = (*lift)[static_cast<point>(n + e)] - n;
    for (std::size_t j = 0; j < d; ++j, c /= v_.p)
      m.at(i, j) = static_cast<std::uint32_t>(c % v_.p);
  }
  return m;
}

namespace {

void check_generators(const ModuleRep &v, const StabilizerChain &g) {
  if (v.gens.degree != g.degree())
    throw degree_error("h1: degree mismatch");
  if (v.mats.size() != v.gens.gens.size())
    throw module_error("h1: generator and matrix counts differ");
  for (const auto &m : v.mats)
    if (m.n != v.dim)
      throw module_error("h1: matrix of the wrong size");
}

// F_2 with every coefficient column and matrix row in one machine word
CocycleSpace h1_f2(const ModuleRep &v, const StabilizerChain &g, std::size_t budget) {
  std::size_t d = v.dim, k = v.gens.gens.size(), kd = k * d;
  std::uint64_t N = static_cast<std::uint64_t>(g.order());
  if (N * d * 16 + N > budget)
    throw module_error("h1: memory budget exceeded");
  std::vector<std::uint64_t> coef(N * d, 0), rho(N * d, 0);
  std::vector<std::uint8_t> seen(N, 0);
  std::vector<std::vector<std::uint64_t>> srow(k, std::vector<std::uint64_t>(d, 0)),
      scol(k, std::vector<std::uint64_t>(d, 0));
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (v.mats[s].at(i, j)) {
          srow[s][i] |= 1ULL << j;
          scol[s][j] |= 1ULL << i;
        }
  std::uint64_t basis[64] = {};
  std::size_t rank = 0;
  auto add = [&](std::uint64_t r) {
    for (std::size_t b = kd; b-- > 0 && r;)
      if (r >> b & 1) {
        if (!basis[b]) {
          basis[b] = r;
          ++rank;
          return;
        }
        r ^= basis[b];
      }
  };
  CocycleSpace out;
  std::uint64_t root = element_rank(g, Perm(g.degree()));
  seen[root] = 1;
  for (std::size_t i = 0; i < d; ++i)
    rho[root * d + i] = 1ULL << i;
  std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(root)};
  queue.reserve(N);
  std::vector<std::uint64_t> nc(d), nr(d);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::uint64_t a = queue[q];
    Perm x = element_unrank(g, a);
    for (std::size_t s = 0; s < k; ++s) {
      std::uint64_t b = element_rank(g, x * v.gens.gens[s]);
      // f(xs) = f(x) rho(s) + f(s)
      for (std::size_t j = 0; j < d; ++j) {
        std::uint64_t c = 1ULL << (s * d + j);
        for (std::uint64_t m = scol[s][j]; m; m &= m - 1)
          c ^= coef[a * d + static_cast<std::size_t>(__builtin_ctzll(m))];
        nc[j] = c;
      }
      for (std::size_t i = 0; i < d; ++i) {
        std::uint64_t r = 0;
        for (std::uint64_t m = rho[a * d + i]; m; m &= m - 1)
          r ^= srow[s][static_cast<std::size_t>(__builtin_ctzll(m))];
        nr[i] = r;
      }
      if (!seen[b]) {
        seen[b] = 1;
        std::copy(nc.begin(), nc.end(), coef.begin() + static_cast<long>(b * d));
        std::copy(nr.begin(), nr.end(), rho.begin() + static_cast<long>(b * d));
        queue.push_back(static_cast<std::uint32_t>(b));
      } else {
        ++out.constraints;
        for (std::size_t i = 0; i < d; ++i)
          if (nr[i] != rho[b * d + i])
            throw module_error("h1: a closed walk does not map to the identity; matrices are inconsistent");
        for (std::size_t j = 0; j < d; ++j)
          add(nc[j] ^ coef[b * d + j]);
      }
    }
  }
  out.elements = queue.size();
  if (out.elements != N)
    throw module_error("h1: module generators do not generate the group of the chain");
  EchelonBasis eb(2, kd);
  for (std::size_t b = kd; b-- > 0;)
    if (basis[b]) {
      // bit t of the word is unknown t; EchelonBasis wants leading entries first
      std::vector<std::uint32_t> row(kd);
      for (std::size_t t = 0; t < kd; ++t)
        row[t] = basis[b] >> t & 1;
      eb.add(std::move(row));
    }
  out.z1_basis = eb.nullspace();
  out.dim_z1 = kd - rank;
  return out;
}

CocycleSpace h1_generic(const ModuleRep &v, const StabilizerChain &g, std::size_t budget) {
  std::size_t d = v.dim, k = v.gens.gens.size(), kd = k * d;
  unsigned p = v.p;
  std::uint64_t N = static_cast<std::uint64_t>(g.order());
  if (N * (d * kd + d * d + 1) > budget)
    throw module_error("h1: memory budget exceeded");
  // coefficient column j of element a: coef[(a*d + j)*kd + t]
  std::vector<std::uint8_t> coef(N * d * kd, 0), rho(N * d * d, 0), seen(N, 0);
  EchelonBasis eb(p, kd);
  CocycleSpace out;
  std::uint64_t root = element_rank(g, Perm(g.degree()));
  seen[root] = 1;
  for (std::size_t i = 0; i < d; ++i)
    rho[root * d * d + i * d + i] = 1;
  std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(root)};
  std::vector<std::uint32_t> nc(d * kd), nr(d * d);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::uint64_t a = queue[q];
    Perm x = element_unrank(g, a);
    for (std::size_t s = 0; s < k; ++s) {
      const FpMatrix &m = v.mats[s];
      std::uint64_t b = element_rank(g, x * v.gens.gens[s]);
      std::fill(nc.begin(), nc.end(), 0);
      std::fill(nr.begin(), nr.end(), 0);
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
          std::uint32_t c = m.at(i, j);
          if (!c)
            continue;
          const std::uint8_t *src = &coef[(a * d + i) * kd];
          for (std::size_t t = 0; t < kd; ++t)
            nc[j * kd + t] = (nc[j * kd + t] + c * src[t]) % p;
        }
        nc[j * kd + s * d + j] = (nc[j * kd + s * d + j] + 1) % p;
      }
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t t = 0; t < d; ++t) {
          std::uint32_t c = rho[a * d * d + i * d + t];
          if (!c)
            continue;
          for (std::size_t j = 0; j < d; ++j)
            nr[i * d + j] = (nr[i * d + j] + c * m.at(t, j)) % p;
        }
      if (!seen[b]) {
        seen[b] = 1;
        for (std::size_t t = 0; t < d * kd; ++t)
          coef[b * d * kd + t] = static_cast<std::uint8_t>(nc[t]);
        for (std::size_t t = 0; t < d * d; ++t)
          rho[b * d * d + t] = static_cast<std::uint8_t>(nr[t]);
        queue.push_back(static_cast<std::uint32_t>(b));
      } else {
        ++out.constraints;
        for (std::size_t t = 0; t < d * d; ++t)
          if (nr[t] != rho[b * d * d + t])
            throw module_error("h1: a closed walk does not map to the identity; matrices are inconsistent");
        for (std::size_t j = 0; j < d; ++j) {
          std::vector<std::uint32_t> row(kd);
          for (std::size_t t = 0; t < kd; ++t)
            row[t] = (nc[j * kd + t] + p - coef[(b * d + j) * kd + t]) % p;
          eb.add(std::move(row));
        }
      }
    }
  }
  out.elements = queue.size();
  if (out.elements != N)
    throw module_error("h1: module generators do not generate the group of the chain");
  out.z1_basis = eb.nullspace();
  out.dim_z1 = kd - eb.rows.size();
  return out;
}

}  // namespace

CocycleSpace h1(const ModuleRep &v, const StabilizerChain &g, std::size_t memory_budget) {
  check_generators(v, g);
  if (g.order() > BigInt(std::numeric_limits<std::uint32_t>::max()))
    throw module_error("h1: group too large for the Cayley graph");
  std::size_t kd = v.dim * v.gens.gens.size();
  CocycleSpace r = v.p == 2 && kd <= 64 ? h1_f2(v, g, memory_budget) : h1_generic(v, g, memory_budget);
  r.dim_b1 = v.dim - fixed_space(v, v.mats);
  if (r.dim_z1 < r.dim_b1)
    throw std::logic_error("h1: coboundaries exceed cocycles");
  r.dim_h1 = r.dim_z1 - r.dim_b1;
  return r;
}

Lemma4Result lemma4_criterion(const StabilizerChain &g, const ModuleAction &act, const Perm &x,
                              std::size_t class_budget) {
  const ModuleRep &v = act.module();
  std::uint64_t ox = order_u64(x);
  if (ox % v.p == 0)
    throw std::invalid_argument("lemma4: x is not a p'-element");
  if (fixed_space(v, {act.matrix_of(x)}) != 0)
    throw std::invalid_argument("lemma4: x has nonzero fixed vectors");
  Lemma4Result r;
  const auto &gens = g.generators();

  // the class x^G
  std::unordered_map<Perm, std::size_t, PermHash> index{{x, 0}};
  std::vector<Perm> cls{x};
  for (std::size_t q = 0; q < cls.size(); ++q)
    for (const Perm &s : gens) {
      Perm y = conjugate(cls[q], s);
      if (index.emplace(y, cls.size()).second) {
        cls.push_back(std::move(y));
        if (cls.size() > class_budget) {
          r.class_size = cls.size();
          r.reason = "class budget exceeded";
          return r;
        }
      }
    }
  r.class_size = cls.size();

  std::vector<std::unordered_set<Perm, PermHash>> powers(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) {
    Perm y = cls[i];
    for (std::uint64_t e = 0; e < ox; ++e, y = y * cls[i])
      powers[i].insert(y);
  }
  // <y> and <w> normalize each other
  auto joined = [&](std::size_t i, std::size_t j) {
    return powers[i].count(conjugate(cls[i], cls[j])) && powers[j].count(conjugate(cls[j], cls[i]));
  };
  std::vector<std::uint8_t> in(cls.size(), 0);
  std::vector<std::size_t> comp{0};
  in[0] = 1;
  for (std::size_t q = 0; q < comp.size(); ++q)
    for (std::size_t j = 0; j < cls.size(); ++j)
      if (!in[j] && joined(comp[q], j)) {
        in[j] = 1;
        comp.push_back(j);
      }
  r.component_size = comp.size();

  // x in O_p'(G) exactly when the normal closure of x is a p'-group
  StabilizerChain ncl = normal_closure(g, {x});
  r.normal_pprime = ncl.order() % v.p != 0;
  if (r.normal_pprime) {
    r.verdict = Lemma4Verdict::vanishes;
    r.reason = "x lies in the largest normal p'-subgroup";
    return r;
  }

  bool closed = true;
  for (std::size_t i : comp) {
    for (const Perm &s : gens)
      if (!in[index.at(conjugate(cls[i], s))]) {
        closed = false;
        break;
      }
    if (!closed)
      break;
  }
  r.normalizes_component = closed;
  if (closed) {
    r.verdict = Lemma4Verdict::vanishes;
    r.reason = "G normalizes the component";
    return r;
  }

  std::vector<Perm> acc;
  StabilizerChain cur = schreier_sims(acc, g.degree());
  for (std::size_t i : comp) {
    bool grew = false;
    StabilizerChain c = centralizer(g, cls[i]);
    for (const Perm &y : c.generators())
      if (!cur.contains(y)) {
        acc.push_back(y);
        grew = true;
      }
    if (grew)
      cur = schreier_sims(acc, g.degree());
    if (cur.order() == g.order())
      break;
  }
  BigInt order = cur.order();
  r.centralizers_generate = order == g.order();
  if (r.centralizers_generate) {
    r.verdict = Lemma4Verdict::vanishes;
    r.reason = "centralizers of the component generate G";
    return r;
  }
  r.reason = "no sufficient condition holds";
  return r;
}

}  // namespace spor
