#include "doctest.h"

#include <fstream>

#include "sporadic/atlas.h"
#include "sporadic/local.h"
#include "test_util.h"

using namespace spor;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("spor_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int &counter() {
    static int c = 0;
    return c;
  }
};

void write(const fs::path &p, const std::string &text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("every bundled descriptor passes ingestion") {
  auto &A = test_atlas();
  auto names = A.names();
  CHECK(names.size() >= 23);
  for (const auto &n : names) {
    CAPTURE(n);
    auto g = A.load(n);
    REQUIRE(g->desc.expected_order);
    CHECK(g->chain->order() == *g->desc.expected_order);
    CHECK(g->gens.degree == g->desc.degree);
    for (const Perm &x : g->gens.gens)
      CHECK(g->chain->contains(x));
    if (g->desc.links.count("derived_subgroup_is")) {
      auto l = A.derived_link(n);
      REQUIRE(l);
      CHECK(l->index == 2);
      CHECK(l->derived->order() == A.load(l->derived_name)->chain->order());
      CHECK(is_normal(*g->chain, *l->derived));
    } else {
      CHECK(A.derived_link(n) == nullptr);
    }
  }
}

TEST_CASE("links are proved both literally and by computing the derived subgroup") {
  auto &A = test_atlas();
  auto m22 = A.derived_link("M22.2");
  CHECK(m22->literal);
  CHECK(m22->derived->order() == 443520);
  auto m12 = A.derived_link("M12.2");
  CHECK_FALSE(m12->literal);
  CHECK(m12->derived->degree() == 24);
  CHECK(m12->derived->order() == 95040);
  CHECK(is_normal(*A.load("M12.2")->chain, *m12->derived));
}

TEST_CASE("chain cache round trip") {
  TempDir dir;
  auto m24 = test_atlas().load("M24");
  std::string bytes = chain_cache::serialize(*m24->chain);
  StabilizerChain back = chain_cache::deserialize(bytes);
  CHECK(back.order() == 244823040);
  CHECK(back.base() == m24->chain->base());
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    Perm x = m24->chain->random_element(rng);
    CHECK(back.contains(x));
  }
  CHECK_FALSE(back.contains(parse_cycles("(1,2)", 24, 1)));

  // corrupted byte
  std::string bad = bytes;
  bad[bad.size() / 2] ^= 0x5a;
  CHECK_THROWS_AS(chain_cache::deserialize(bad), chain_error);
  // a bumped version field is rejected too
  std::string old = bytes;
  old[4] ^= 0x01;
  CHECK_THROWS_AS(chain_cache::deserialize(old), chain_error);

  // miss, then hit through the atlas
  CHECK_FALSE(chain_cache::load(dir.path, m24->gens));
  Atlas cached(default_data_dir(), dir.path);
  auto first = cached.load("M24");
  CHECK_FALSE(first->from_cache);
  Atlas again(default_data_dir(), dir.path);
  auto second = again.load("M24");
  CHECK(second->from_cache);
  CHECK(second->chain->order() == first->chain->order());
  CHECK(second->chain->base() == first->chain->base());
  CHECK(again.spot_check_cache(rng));

  // a damaged cache file only costs a recomputation
  for (const auto &e : fs::directory_iterator(dir.path)) {
    std::fstream f(e.path(), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    f.put('\x7f');
  }
  Atlas third(default_data_dir(), dir.path);
  auto recomputed = third.load("M24");
  CHECK_FALSE(recomputed->from_cache);
  CHECK(recomputed->chain->order() == 244823040);
}

TEST_CASE("malformed descriptors fail loudly") {
  TempDir dir;
  fs::create_directories(dir.path / "groups");
  Atlas a(dir.path);
  CHECK_THROWS_AS(a.load("Nope"), atlas_error);

  write(dir.path / "groups" / "Bad.json", R"j({"name":"Bad","degree":3,"generators":["(1,2,4)"]})j");
  CHECK_THROWS_AS(a.load("Bad"), atlas_error);

  write(dir.path / "groups" / "Wrong.json",
        R"j({"name":"Wrong","degree":4,"expected_order":"25","generators":["(1,2,3,4)","(1,2)"]})j");
  CHECK_THROWS_AS(a.load("Wrong"), atlas_error);

  write(dir.path / "groups" / "Trunc.json", R"j({"name":"Trunc","degree":4,"generators":[)j");
  CHECK_THROWS_AS(a.load("Trunc"), atlas_error);
}

TEST_CASE("relationship links are certified") {
  TempDir dir;
  fs::create_directories(dir.path / "groups");
  write(dir.path / "groups" / "A4.json",
        R"j({"name":"A4","degree":4,"expected_order":"12","links":{},"generators":["(1,2,3)","(2,3,4)"]})j");
  write(dir.path / "groups" / "S4.json",
        R"j({"name":"S4","degree":4,"expected_order":"24","links":{"derived_subgroup_is":"A4"},"generators":["(1,2,3,4)","(1,2)"]})j");
  // A4 is not perfect, so S4' = A4 must fail the literal route
  Atlas a(dir.path);
  CHECK_THROWS_AS(a.load("S4"), atlas_error);

  write(dir.path / "groups" / "A5.json",
        R"j({"name":"A5","degree":5,"expected_order":"60","links":{},"generators":["(1,2,3,4,5)","(1,2,3)"]})j");
  write(dir.path / "groups" / "S5.json",
        R"j({"name":"S5","degree":5,"expected_order":"120","links":{"derived_subgroup_is":"A5"},"generators":["(1,2,3,4,5)","(1,2)"]})j");
  Atlas b(dir.path);
  auto s5 = b.derived_link("S5");
  CHECK(s5->literal);
  CHECK(s5->derived->order() == 60);
  write(dir.path / "groups" / "C6.json",
        R"j({"name":"C6","degree":6,"expected_order":"6","links":{"derived_subgroup_is":"A4"},"generators":["(1,2,3,4,5,6)"]})j");
  CHECK_THROWS_AS(b.load("C6"), atlas_error);
  write(dir.path / "groups" / "S3x2.json",
        R"j({"name":"S3x2","degree":5,"expected_order":"6","links":{"derived_subgroup_is":"C3"},"generators":["(1,2,3)","(1,2)"]})j");
  write(dir.path / "groups" / "C3.json",
        R"j({"name":"C3","degree":3,"expected_order":"3","links":{},"generators":["(1,2,3)"]})j");
  // computed route: S3 on 5 points has derived subgroup of order 3
  auto s3 = b.derived_link("S3x2");
  CHECK_FALSE(s3->literal);
  CHECK(s3->derived->order() == 3);
}
