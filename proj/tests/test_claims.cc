#include "doctest.h"

#include <set>

#include "corpus.h"
#include "sporadic/claims.h"
#include "sporadic/local.h"
#include "test_util.h"

using namespace spor;
using nlohmann::json;

namespace {

json order_claim(const std::string &id, const std::string &group, const json &expected) {
  return {{"id", id},
          {"kind", "OrderEquals"},
          {"groups", {group}},
          {"expected", expected},
          {"provenance", "TRIVIAL"},
          {"citation", {{"section", "x"}, {"quote", "y"}}}};
}

// normal E_{p^2} subgroups of t by pairs of commuting elements of order p
std::size_t brute_normal_rank2(const StabilizerChain &t, unsigned p) {
  auto elts = enumerate_elements(t);
  std::set<std::vector<Perm>> seen;
  for (const Perm &a : elts)
    for (const Perm &b : elts) {
      if (a.is_identity() || b.is_identity() || !commute(a, b) || !power(a, p).is_identity() ||
          !power(b, p).is_identity())
        continue;
      StabilizerChain v = schreier_sims(std::vector<Perm>{a, b}, t.degree());
      if (v.order() != p * p || !is_normal(t, v))
        continue;
      auto e = enumerate_elements(v);
      std::sort(e.begin(), e.end());
      seen.insert(e);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("normal elementary abelian subgroups against brute force") {
  StabilizerChain d8 = schreier_sims(corpus::dihedral(4), 4);
  CHECK(normal_elementary_abelian_subgroups(d8, 2, 2).size() == 2);
  CHECK(normal_elementary_abelian_subgroups(d8, 2, 1).size() == 1);
  StabilizerChain e8 = schreier_sims(
      corpus::direct(corpus::direct(corpus::cyclic(2), 2, corpus::cyclic(2), 2), 4, corpus::cyclic(2), 2), 6);
  CHECK(normal_elementary_abelian_subgroups(e8, 2, 2).size() == 7);
  CHECK(normal_elementary_abelian_subgroups(e8, 2, 3).size() == 1);
  StabilizerChain e9 = schreier_sims(corpus::direct(corpus::cyclic(3), 3, corpus::cyclic(3), 3), 6);
  CHECK(normal_elementary_abelian_subgroups(e9, 3, 1).size() == 4);
  CHECK(normal_elementary_abelian_subgroups(e9, 3, 2).size() == 1);

  for (const std::string name : {"M11", "M12", "J2"}) {
    CAPTURE(name);
    StabilizerChain t = sylow(*test_atlas().load(name)->chain, 2);
    auto v = normal_elementary_abelian_subgroups(t, 2, 2);
    CHECK(v.size() == normal_four_subgroups(t).size());
    if (t.order() <= 128)
      CHECK(v.size() == brute_normal_rank2(t, 2));
    for (const auto &x : v) {
      CHECK(x.order() == 4);
      CHECK(is_normal(t, x));
    }
  }
  auto m22 = test_atlas().load("M22");
  auto e16 = normal_elementary_abelian_subgroups(sylow(*m22->chain, 2), 2, 4);
  CHECK(e16.size() == 2);
}

TEST_CASE("named groups and identification") {
  CHECK(named_group("A6").order() == 360);
  CHECK(named_group("S5").order() == 120);
  StabilizerChain s = named_group("SL2(3)*Z4");
  CHECK(s.order() == 48);
  CHECK(s.degree() == 24);
  CHECK_THROWS(named_group("Q7"));
  CHECK(identify_group(symmetric_group(5), {"A6", "S5"}) == "S5");
  CHECK(identify_group(alternating_group(5), {"A6", "S5"}).empty());
  // PGL2(5) on six points is S5
  auto pgl = schreier_sims(std::vector<Perm>{parse_cycles("(2,3,4,5,6)", 6), parse_cycles("(3,4,6,5)", 6),
                                                      parse_cycles("(1,2)(3,6)", 6)}, 6);
  REQUIRE(pgl.order() == 120);
  CHECK(identify_group(pgl, {"A6", "S5"}) == "S5");
  // GL2(3) has order 48 as well but is not SL2(3)*Z4: its center has order 2
  CHECK(identify_group(symmetric_group(4), {"SL2(3)*Z4"}).empty());
}

TEST_CASE("manifest validation fails fast") {
  Atlas &a = test_atlas();
  CHECK(parse_manifest(json::array({order_claim("ok", "M11", "7920")}), a).size() == 1);

  json unknown_kind = order_claim("k", "M11", "7920");
  unknown_kind["kind"] = "OrderIs";
  CHECK_THROWS_AS(parse_manifest(json::array({unknown_kind}), a), manifest_error);

  json unknown_param = order_claim("p", "M11", "7920");
  unknown_param["params"] = {{"prime", 2}};
  CHECK_THROWS_AS(parse_manifest(json::array({unknown_param}), a), manifest_error);

  json bad_tag = order_claim("t", "M11", "7920");
  bad_tag["provenance"] = "GUESS";
  CHECK_THROWS_AS(parse_manifest(json::array({bad_tag}), a), manifest_error);

  json no_quote = order_claim("q", "M11", "7920");
  no_quote.erase("citation");
  CHECK_THROWS_AS(parse_manifest(json::array({no_quote}), a), manifest_error);

  CHECK_THROWS_AS(parse_manifest(json::array({order_claim("g", "M13", "1")}), a), manifest_error);
  CHECK_THROWS_AS(parse_manifest(json::array({order_claim("d", "M11", "1"), order_claim("d", "M12", "1")}), a),
                  manifest_error);
  CHECK_THROWS_AS(parse_manifest(json{{"claims", 3}}, a), manifest_error);

  // groups of claims in another tier are not resolved, and the claims are skipped
  json stretch = order_claim("s", "J3", "50232960");
  stretch["tier"] = "stretch";
  auto parsed = parse_manifest(json::array({stretch}), a);
  REQUIRE(parsed.size() == 1);
  ClaimReport r = run_claims(parsed, a, RunOptions{});
  CHECK(r.results.empty());
  CHECK(r.skipped == std::vector<std::string>{"s"});
  CHECK(r.exit_code() == 0);
  CHECK_THROWS_AS(parse_manifest(json::array({stretch}), a, "stretch"), manifest_error);
}

TEST_CASE("verdicts, witnesses and exit codes") {
  Atlas &a = test_atlas();
  auto claims = parse_manifest(json::array({order_claim("good", "M12", "95040"), order_claim("bad", "M12", 95041)}), a);
  ClaimReport r = run_claims(claims, a, RunOptions{});
  REQUIRE(r.results.size() == 2);
  CHECK(r.results[0].verdict == ClaimVerdict::verified);
  CHECK(r.results[1].verdict == ClaimVerdict::refuted);
  CHECK(r.results[1].witness.contains("mismatch"));
  CHECK(r.exit_code() == 1);

  ClaimReport ok = run_claims({claims[0]}, a, RunOptions{});
  CHECK(ok.exit_code() == 0);

  // a node budget of one cannot finish a centralizer search
  json oliver = {{"id", "o"},
                 {"kind", "OliverCentralizer"},
                 {"groups", {"M12", "M12.2"}},
                 {"expected", true},
                 {"provenance", "PAPER"},
                 {"citation", {{"section", "x"}, {"quote", "y"}}}};
  RunOptions tight;
  tight.max_nodes = 1;
  ClaimReport u = run_claims(parse_manifest(json::array({oliver}), a), a, tight);
  CHECK(u.results[0].verdict == ClaimVerdict::undecided);
  CHECK(u.exit_code() == 2);
}

TEST_CASE("reports round trip and are deterministic") {
  Atlas &a = test_atlas();
  auto path = std::filesystem::path(SPORADIC_DATA_DIR).parent_path() / "manifests" / "negative_controls.json";
  RunOptions opt;
  opt.seed = 7;
  ClaimReport r1 = run_manifest(path, a, opt);
  opt.threads = 3;
  ClaimReport r2 = run_manifest(path, a, opt);
  CHECK(r1.to_json().dump() == r2.to_json().dump());
  CHECK(r1.exit_code() == 1);
  for (const auto &x : r1.results) {
    CHECK(x.negative_control);
    CHECK(x.verdict == ClaimVerdict::refuted);
  }
  ClaimReport back = ClaimReport::from_json(r1.to_json(true));
  CHECK(back.to_json().dump() == r1.to_json().dump());
  CHECK(back.exit_code() == r1.exit_code());
  CHECK(r1.to_text().find("refuted") != std::string::npos);
}
