#include "doctest.h"

#include <set>

#include "corpus.h"
#include "oracle.h"
#include "sporadic/backtrack.h"
#include "sporadic/orbits.h"
#include "test_util.h"

using namespace spor;

namespace {

std::set<Perm> as_set(const std::vector<Perm> &v) { return {v.begin(), v.end()}; }

bool conjugate_by_brute(const std::vector<Perm> &elts, const Perm &x, const Perm &y) {
  for (const Perm &g : elts)
    if (oracle::conj(x, g) == y)
      return true;
  return false;
}

}  // namespace

TEST_CASE("centralizers of elements and subgroups match brute force") {
  Rng rng(5);
  for (const auto &e : corpus::all()) {
    CAPTURE(e.name);
    StabilizerChain g = schreier_sims(e.gens, e.degree);
    auto elts = oracle::elements(e.gens, e.degree);
    for (int k = 0; k < 3; ++k) {
      Perm x = elts[rng.below(elts.size())];
      StabilizerChain c = centralizer(g, x);
      auto ref = oracle::centralizer(elts, {x});
      CHECK(c.order() == ref.size());
      CHECK(c.certified());
      for (const Perm &y : c.generators())
        CHECK(commute(x, y));
    }
    // centralizer of a permutation outside the group
    Perm z = oracle::random_perm(e.degree, rng);
    CHECK(centralizer(g, z).order() == oracle::centralizer(elts, {z}).size());
    // of a two-generated subgroup
    Perm a = elts[rng.below(elts.size())], b = elts[rng.below(elts.size())];
    CHECK(centralizer(g, std::vector<Perm>{a, b}).order() == oracle::centralizer(elts, {a, b}).size());
    // the centre
    CHECK(centralizer(g, e.gens).order() == oracle::centralizer(elts, e.gens).size());
  }
}

TEST_CASE("normalizers match brute force") {
  Rng rng(6);
  for (const auto &e : corpus::all()) {
    if (e.order > 1400)
      continue;
    CAPTURE(e.name);
    StabilizerChain g = schreier_sims(e.gens, e.degree);
    auto elts = oracle::elements(e.gens, e.degree);
    for (int k = 0; k < 2; ++k) {
      std::vector<Perm> hg{elts[rng.below(elts.size())]};
      if (k == 1)
        hg.push_back(elts[rng.below(elts.size())]);
      StabilizerChain h = schreier_sims(hg, e.degree);
      StabilizerChain nm = normalizer(g, h);
      auto ref = oracle::normalizer(elts, oracle::elements(hg, e.degree));
      CHECK(nm.order() == ref.size());
      for (const Perm &y : nm.generators())
        CHECK(normalizes(y, h));
    }
  }
}

TEST_CASE("normalizer by the generic search agrees with the tuple method") {
  auto m11 = test_atlas().load("M11");
  // point stabilizer M10 is self-normalizing; a Sylow-2 subgroup order 16
  StabilizerChain st = point_stabilizer_chain(*m11->chain, 0);
  CHECK(normalizer(*m11->chain, st).order() == 720);
  auto s4 = schreier_sims(corpus::symmetric(4), 4);
  auto v4 = schreier_sims({corpus::cycle(4, {0, 1}) * corpus::cycle(4, {2, 3}),
                           corpus::cycle(4, {0, 2}) * corpus::cycle(4, {1, 3})},
                          4);
  CHECK(normalizer(s4, v4).order() == 24);
}

TEST_CASE("intersections match brute force") {
  Rng rng(7);
  for (const auto &e : corpus::all()) {
    if (e.order > 2600)
      continue;
    CAPTURE(e.name);
    StabilizerChain g = schreier_sims(e.gens, e.degree);
    auto elts = oracle::elements(e.gens, e.degree);
    // G meets a random conjugate of itself in S_n
    Perm s = oracle::random_perm(e.degree, rng);
    std::vector<Perm> cg;
    for (const Perm &x : e.gens)
      cg.push_back(conjugate(x, s));
    StabilizerChain h = schreier_sims(cg, e.degree);
    auto ref = oracle::intersect(elts, oracle::elements(cg, e.degree));
    StabilizerChain i = intersection(g, h);
    CHECK(i.order() == ref.size());
    for (const Perm &x : i.generators())
      CHECK((g.contains(x) && h.contains(x)));
    // and a subgroup generated by two random elements
    std::vector<Perm> kg{elts[rng.below(elts.size())], elts[rng.below(elts.size())]};
    StabilizerChain k = schreier_sims(kg, e.degree);
    CHECK(intersection(k, h).order() ==
          oracle::intersect(oracle::elements(kg, e.degree), oracle::elements(cg, e.degree)).size());
  }
}

TEST_CASE("setwise stabilizers match brute force") {
  Rng rng(8);
  for (const auto &e : corpus::all()) {
    if (e.order > 2600 || e.degree < 3)
      continue;
    CAPTURE(e.name);
    StabilizerChain g = schreier_sims(e.gens, e.degree);
    auto elts = oracle::elements(e.gens, e.degree);
    std::vector<point> set;
    for (point x = 0; x < e.degree; ++x)
      if (rng.below(2))
        set.push_back(x);
    std::set<point> ss(set.begin(), set.end());
    std::size_t ref = 0;
    for (const Perm &x : elts) {
      bool ok = true;
      for (point p : set)
        ok = ok && ss.count(x[p]);
      ref += ok;
    }
    CHECK(setwise_stabilizer(g, set).order() == ref);
  }
}

TEST_CASE("conjugacy witnesses exist exactly when brute force finds one") {
  Rng rng(9);
  for (const auto &e : corpus::all()) {
    if (e.order > 1400)
      continue;
    CAPTURE(e.name);
    StabilizerChain g = schreier_sims(e.gens, e.degree);
    auto elts = oracle::elements(e.gens, e.degree);
    for (int k = 0; k < 4; ++k) {
      Perm x = elts[rng.below(elts.size())];
      Perm y = k % 2 ? oracle::conj(x, elts[rng.below(elts.size())]) : elts[rng.below(elts.size())];
      auto w = conjugacy_witness(g, x, y);
      CHECK(w.has_value() == conjugate_by_brute(elts, x, y));
      if (w) {
        CHECK(g.contains(*w));
        CHECK(conjugate(x, *w) == y);
      }
    }
  }
}

TEST_CASE("subgroup conjugacy matches brute force") {
  Rng rng(10);
  for (const auto &e : corpus::all()) {
    if (e.order > 800 || e.order < 2)
      continue;
    CAPTURE(e.name);
    StabilizerChain g = schreier_sims(e.gens, e.degree);
    auto elts = oracle::elements(e.gens, e.degree);
    for (int k = 0; k < 3; ++k) {
      std::vector<Perm> hg{elts[rng.below(elts.size())]};
      std::vector<Perm> kg{k == 0 ? oracle::conj(hg[0], elts[rng.below(elts.size())]) : elts[rng.below(elts.size())]};
      StabilizerChain h = schreier_sims(hg, e.degree), kk = schreier_sims(kg, e.degree);
      auto hs = as_set(oracle::elements(hg, e.degree)), ks = as_set(oracle::elements(kg, e.degree));
      bool ref = false;
      for (const Perm &w : elts) {
        std::set<Perm> img;
        for (const Perm &x : hs)
          img.insert(oracle::conj(x, w));
        if (img == ks) {
          ref = true;
          break;
        }
      }
      auto w = subgroup_conjugacy_witness(g, h, kk);
      CHECK(w.has_value() == ref);
    }
  }
}

TEST_CASE("node budget overflow reports undecided") {
  auto m24 = test_atlas().load("M24");
  Rng rng(1);
  Perm x = m24->chain->random_element(rng);
  SearchOptions o;
  o.max_nodes = 3;
  CHECK_THROWS_AS(centralizer(*m24->chain, x, o), search_undecided);
}

TEST_CASE("centralizers in large groups") {
  auto &A = test_atlas();
  auto m24 = A.load("M24");
  Rng rng(12);
  // an element of order 23 has centralizer of order 23
  for (int k = 0; k < 200; ++k) {
    Perm x = m24->chain->random_element(rng);
    if (order_u64(x) == 23) {
      CHECK(centralizer(*m24->chain, x).order() == 23);
      break;
    }
  }
  auto co3 = A.load("Co3");
  for (int k = 0; k < 400; ++k) {
    Perm x = co3->chain->random_element(rng);
    if (order_u64(x) == 23) {
      CHECK(centralizer(*co3->chain, x).order() == 23);
      break;
    }
  }
}
