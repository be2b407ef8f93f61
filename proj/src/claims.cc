#include "sporadic/claims.h"

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <sys/resource.h>

#include "sporadic/cohomology.h"
#include "sporadic/local.h"
#include "sporadic/orbits.h"

namespace spor {

using nlohmann::json;

const char *claim_verdict_name(ClaimVerdict v) {
  switch (v) {
    case ClaimVerdict::verified:
      return "verified";
    case ClaimVerdict::refuted:
      return "refuted";
    default:
      return "undecided";
  }
}

namespace {

ClaimVerdict verdict_from_name(const std::string &s) {
  if (s == "verified")
    return ClaimVerdict::verified;
  if (s == "refuted")
    return ClaimVerdict::refuted;
  if (s == "undecided")
    return ClaimVerdict::undecided;
  throw manifest_error("unknown verdict '" + s + "'");
}

// raised by evaluators when a question stays open
class undecided_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json big(const BigInt &v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::int64_t>::max()))
    return static_cast<std::int64_t>(v);
  return to_string(v);
}

std::string cycles(const Perm &p) { return print_cycles(p, 1); }

std::uint64_t mix(std::uint64_t seed, const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : s)
    h = (h ^ c) * 1099511628211ULL;
  return h;
}

// Integers may be written as JSON numbers or decimal strings.
std::optional<std::string> as_integer_text(const json &v) {
  if (v.is_number_integer())
    return v.is_number_unsigned() ? std::to_string(v.get<std::uint64_t>()) : std::to_string(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string &s = v.get_ref<const std::string &>();
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos)
      return s;
  }
  return std::nullopt;
}

bool same_value(const json &e, const json &c) {
  auto a = as_integer_text(e), b = as_integer_text(c);
  if (a && b)
    return *a == *b;
  if (e.is_array() && c.is_array()) {
    if (e.size() != c.size())
      return false;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!same_value(e[i], c[i]))
        return false;
    return true;
  }
  return e == c;
}

// Differences between the expected value and what was computed. A scalar or
// list expectation refers to the principal "value" field.
json mismatches(const json &expected, const json &computed) {
  json out = json::object();
  if (expected.is_object()) {
    for (const auto &[k, v] : expected.items()) {
      if (!computed.contains(k))
        out[k] = {{"expected", v}, {"computed", nullptr}};
      else if (!same_value(v, computed[k]))
        out[k] = {{"expected", v}, {"computed", computed[k]}};
    }
  } else if (!computed.contains("value") || !same_value(expected, computed["value"])) {
    out["value"] = {{"expected", expected}, {"computed", computed.value("value", json())}};
  }
  return out;
}

struct KindSpec {
  std::size_t groups;
  std::set<std::string> params;
};

const std::map<std::string, KindSpec> &kind_specs() {
  static const std::map<std::string, KindSpec> specs = {
      {"OrderEquals", {1, {}}},
      {"SubdegreesEqual", {1, {"point"}}},
      {"SylowCenterOrder", {1, {"p"}}},
      {"TwoConstrainedCentralizer", {1, {}}},
      {"NormalFourFusedToCenter", {1, {}}},
      {"FusedEp2ClassCount", {1, {"p"}}},
      {"QuotientOrderEquals", {1, {"construction", "p", "rank", "ambient"}}},
      {"SmallGroupComplete", {1, {"subgroup", "p", "bound"}}},
      {"H1Vanishes", {0, {"module"}}},
      {"Lemma4Vanishes", {0, {"module", "element_order", "cross_check"}}},
      {"Lemma3Hypotheses", {1, {"point", "psi_length", "aut_bound"}}},
      {"OliverCentralizer", {2, {"variant"}}},
      {"DerivedIndexTwo", {2, {}}},
      {"InvolutionClassData", {1, {}}},
  };
  return specs;
}

unsigned param_prime(const json &params, const char *key, unsigned dflt) {
  if (!params.contains(key))
    return dflt;
  if (!params[key].is_number_unsigned())
    throw manifest_error(std::string("parameter '") + key + "' must be a prime");
  unsigned p = params[key].get<unsigned>();
  if (!is_prime(p))
    throw manifest_error(std::string("parameter '") + key + "' must be a prime");
  return p;
}

std::size_t param_size(const json &params, const char *key, std::size_t dflt) {
  if (!params.contains(key))
    return dflt;
  if (!params[key].is_number_unsigned())
    throw manifest_error(std::string("parameter '") + key + "' must be a nonnegative integer");
  return params[key].get<std::size_t>();
}

std::string param_string(const json &params, const char *key, const std::string &dflt,
                         const std::set<std::string> &allowed = {}) {
  if (!params.contains(key))
    return dflt;
  if (!params[key].is_string())
    throw manifest_error(std::string("parameter '") + key + "' must be a string");
  std::string s = params[key].get<std::string>();
  if (!allowed.empty() && !allowed.count(s))
    throw manifest_error(std::string("parameter '") + key + "' has unsupported value '" + s + "'");
  return s;
}

// Kind-specific parameter checks; the evaluators read the same fields.
void validate_params(const Claim &c) {
  const json &p = c.params;
  for (const auto &[k, v] : p.items())
    if (!kind_specs().at(c.kind).params.count(k))
      throw manifest_error("unknown parameter '" + k + "' for kind " + c.kind);
  param_prime(p, "p", 2);
  param_size(p, "point", 1);
  param_size(p, "rank", 4);
  param_size(p, "psi_length", 0);
  param_size(p, "aut_bound", 10000);
  param_size(p, "bound", 10000);
  param_size(p, "element_order", 1);
  param_string(p, "variant", "T", {"T", "T_M"});
  param_string(p, "subgroup", "sylow_normalizer", {"sylow_normalizer", "whole"});
  param_string(p, "ambient", "");
  if (p.contains("cross_check") && !p["cross_check"].is_boolean())
    throw manifest_error("parameter 'cross_check' must be a boolean");
  if (c.kind == "QuotientOrderEquals")
    if (param_string(p, "construction", "", {"normal_elementary_parabolics", "sylow_automizer"}).empty())
      throw manifest_error("QuotientOrderEquals needs a construction");
  if ((c.kind == "H1Vanishes" || c.kind == "Lemma4Vanishes") && param_string(p, "module", "").empty())
    throw manifest_error(c.kind + " needs a module");
  if (c.kind == "Lemma4Vanishes" && param_size(p, "element_order", 0) < 2)
    throw manifest_error("Lemma4Vanishes needs element_order >= 2");
  if (c.kind == "FusedEp2ClassCount" && !p.contains("p"))
    throw manifest_error("FusedEp2ClassCount needs p");
  if (p.contains("point") && param_size(p, "point", 1) < 1)
    throw manifest_error("parameter 'point' is 1-based");
}

SearchOptions search_opts(const RunOptions &opt, const std::string &salt) {
  SearchOptions s;
  s.max_nodes = opt.max_nodes;
  s.seed = mix(opt.seed, salt);
  return s;
}

std::shared_ptr<const StabilizerChain> chain_of_group(Atlas &atlas, const std::string &name) {
  return atlas.load(name)->chain;
}

// G as a subgroup of A's domain: A itself, or A' through the atlas link.
std::shared_ptr<const StabilizerChain> derived_in(Atlas &atlas, const std::string &g, const std::string &a) {
  if (g == a)
    return chain_of_group(atlas, a);
  auto link = atlas.derived_link(a);
  if (!link)
    throw atlas_error(a + " has no derived_subgroup_is link");
  if (link->derived_name != atlas.load(g)->desc.name)
    throw atlas_error(a + " links to " + link->derived_name + ", not " + g);
  return link->derived;
}

struct Evaluation {
  json computed = json::object();
  json witness = json::object();
};

std::vector<std::string> default_candidates() {
  std::vector<std::string> c;
  for (int n = 2; n <= 9; ++n) {
    c.push_back("A" + std::to_string(n));
    c.push_back("S" + std::to_string(n));
  }
  c.push_back("SL2(3)*Z4");
  return c;
}

}  // namespace

const std::vector<std::string> &claim_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> k;
    for (const auto &[name, spec] : kind_specs())
      k.push_back(name);
    return k;
  }();
  return kinds;
}

// --- named groups ------------------------------------------------------

StabilizerChain named_group(const std::string &name) {
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'S') &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    std::size_t n = std::stoul(name.substr(1));
    if (n < 1 || n > 12)
      throw std::invalid_argument("named_group: degree out of range in " + name);
    return name[0] == 'A' ? alternating_group(n) : symmetric_group(n);
  }
  if (name == "SL2(3)*Z4") {
    // GL2(5) on the 24 nonzero row vectors, index x + 5y
    const unsigned q = 5;
    auto mat = [&](unsigned a, unsigned b, unsigned c, unsigned d) {
      std::vector<point> img(24);
      for (unsigned v = 1; v < 25; ++v) {
        unsigned x = v % q, y = v / q;
        unsigned nx = (x * a + y * c) % q, ny = (x * b + y * d) % q;
        img[v - 1] = nx + q * ny - 1;
      }
      return Perm(img);
    };
    StabilizerChain sl25 = schreier_sims({mat(1, 1, 0, 1), mat(1, 0, 1, 1)}, 24);
    if (sl25.order() != 120)
      throw std::logic_error("named_group: SL2(5) has the wrong order");
    StabilizerChain q8 = schreier_sims({mat(0, 4, 1, 0), mat(2, 0, 0, 3)}, 24);
    if (q8.order() != 8)
      throw std::logic_error("named_group: Q8 has the wrong order");
    // SL2(3) = N_{SL2(5)}(Q8), then the scalars of order 4
    StabilizerChain sl23 = normalizer(sl25, q8);
    if (sl23.order() != 24)
      throw std::logic_error("named_group: SL2(3) has the wrong order");
    std::vector<Perm> gens = sl23.generators();
    gens.push_back(mat(2, 0, 0, 2));
    StabilizerChain r = schreier_sims(gens, 24);
    if (r.order() != 48)
      throw std::logic_error("named_group: SL2(3)*Z4 has the wrong order");
    return r;
  }
  throw std::invalid_argument("named_group: unknown group " + name);
}

std::string identify_group(const StabilizerChain &x, const std::vector<std::string> &candidates) {
  for (const auto &name : candidates) {
    StabilizerChain y = named_group(name);
    if (y.order() != x.order())
      continue;
    std::size_t bound = std::max<std::size_t>(10000, static_cast<std::size_t>(x.order()));
    if (isomorphism_small(x, y, bound))
      return name;
  }
  return "";
}

// --- direct verifications ----------------------------------------------

OliverResult verify_oliver(Atlas &atlas, const std::string &g, const std::string &a, const std::string &variant,
                           const SearchOptions &opt) {
  OliverResult r;
  r.variant = variant;
  auto ac = chain_of_group(atlas, a);
  auto gc = derived_in(atlas, g, a);
  StabilizerChain t;
  if (variant == "T") {
    t = sylow(*gc, 2, opt);
  } else if (variant == "T_M") {
    t = sylow(point_stabilizer_chain(*gc, 0), 2, opt);
  } else {
    throw std::invalid_argument("verify_oliver: unknown variant " + variant);
  }
  StabilizerChain z = center(t, opt);
  SearchOptions co = opt;
  co.known = z.generators();
  StabilizerChain c;
  try {
    c = centralizer(*ac, t.generators(), co);
  } catch (const search_undecided &e) {
    r.reason = std::string("centralizer search: ") + e.what();
    return r;
  }
  r.sylow_order = t.order();
  r.center_order = z.order();
  r.centralizer_order = c.order();
  // Z(T) <= C_A(T) holds elementwise; equal orders then give equality
  for (const Perm &x : z.generators())
    if (!ac->contains(x) || !c.contains(x))
      throw std::logic_error("verify_oliver: Z(T) is not inside C_A(T)");
  r.centralizer_equals_center = c.order() == z.order();
  r.tilde_trivial = true;
  for (const Perm &x : c.generators()) {
    if (!gc->contains(x)) {
      r.tilde_trivial = false;
      r.witness = x;
    }
  }
  if (!r.centralizer_equals_center && !r.witness)
    for (const Perm &x : c.generators())
      if (!z.contains(x)) {
        r.witness = x;
        break;
      }
  bool ok = variant == "T" ? r.centralizer_equals_center && r.tilde_trivial : r.tilde_trivial;
  r.verdict = ok ? ClaimVerdict::verified : ClaimVerdict::refuted;
  std::ostringstream why;
  why << "|T| = " << r.sylow_order << ", |Z(T)| = " << r.center_order << ", |C_A(T)| = " << r.centralizer_order
      << (r.tilde_trivial ? ", C_A(T) <= G" : ", C_A(T) not inside G");
  r.reason = why.str();
  return r;
}

Lemma2Result verify_lemma2_hypotheses(Atlas &atlas, const std::string &g, const SearchOptions &opt) {
  Lemma2Result r;
  auto gc = chain_of_group(atlas, g);
  StabilizerChain t = sylow(*gc, 2, opt);
  StabilizerChain z = center(t, opt);
  r.center_order = z.order();
  r.a = z.order() == 2 ? ClaimVerdict::verified : ClaimVerdict::refuted;
  try {
    StabilizerChain x = centralizer(*gc, z.generators(), opt);
    r.centralizer_order = x.order();
    r.o2_order = p_core(x, 2, opt).order();
    r.b = is_2_constrained(x, opt) ? ClaimVerdict::verified : ClaimVerdict::refuted;
  } catch (const search_undecided &e) {
    r.reason += std::string("(b): ") + e.what() + "; ";
  }
  if (r.a != ClaimVerdict::verified) {
    r.reason += "(c): Z(T) is not of order 2; ";
    return r;
  }
  Perm zz;
  for (const Perm &x : z.generators())
    if (!x.is_identity())
      zz = x;
  try {
    auto fours = normal_four_subgroups(t);
    r.four_groups = fours.size();
    for (const auto &u : fours) {
      std::vector<Perm> ws;
      bool all = true;
      for (const Perm &v : enumerate_elements(u)) {
        if (v.is_identity() || v == zz)
          continue;
        auto w = conjugacy_witness(*gc, v, zz, opt);
        if (!w) {
          all = false;
          break;
        }
        ws.push_back(*w);
      }
      if (all) {
        ++r.fused_four_groups;
        if (r.witnesses.empty())
          r.witnesses = ws;
      }
    }
    r.c = r.fused_four_groups > 0 ? ClaimVerdict::verified : ClaimVerdict::refuted;
  } catch (const search_undecided &e) {
    r.reason += std::string("(c): ") + e.what() + "; ";
  }
  return r;
}

ParabolicBundle normal_elementary_parabolics(Atlas &atlas, const std::string &g, unsigned p, std::size_t rank,
                                             const std::optional<std::string> &ambient, const SearchOptions &opt) {
  ParabolicBundle b;
  auto gc = chain_of_group(atlas, g);
  StabilizerChain t = sylow(*gc, p, opt);
  auto qs = normal_elementary_abelian_subgroups(t, p, rank);
  b.normal_in_sylow = qs.size();
  std::vector<StabilizerChain> reps;
  for (auto &q : qs) {
    bool seen = false;
    for (const auto &r : reps)
      if (subgroup_conjugacy_witness(*gc, r, q, opt)) {
        seen = true;
        break;
      }
    if (!seen)
      reps.push_back(q);
  }
  b.pairwise_non_conjugate = reps.size() == qs.size();
  for (auto &q : reps) {
    Parabolic par;
    StabilizerChain n = normalizer(*gc, q, opt);
    par.normalizer_order = n.order();
    par.quotient_order = n.order() / q.order();
    // Q is normal in N, so N acts on the cosets of Q with kernel Q
    CosetAction act = coset_action(n, q, 100000);
    StabilizerChain img = make_chain(act.image.gens, act.image.degree, par.quotient_order, opt.seed);
    std::vector<std::string> cands;
    for (const auto &name : default_candidates())
      cands.push_back(name);
    par.type = identify_group(img, cands);
    par.q_is_core = p_core(n, p, opt).order() == q.order();
    par.q = std::move(q);
    b.classes.push_back(std::move(par));
  }
  std::sort(b.classes.begin(), b.classes.end(),
            [](const Parabolic &x, const Parabolic &y) { return x.quotient_order > y.quotient_order; });
  if (ambient) {
    auto link = atlas.derived_link(*ambient);
    if (link && link->literal && link->derived_name == atlas.load(g)->desc.name) {
      auto ac = chain_of_group(atlas, *ambient);
      bool apart = true;
      for (std::size_t i = 0; i < b.classes.size() && apart; ++i)
        for (std::size_t j = 0; j < i && apart; ++j)
          if (subgroup_conjugacy_witness(*ac, b.classes[i].q, b.classes[j].q, opt))
            apart = false;
      b.non_conjugate_in_ambient = apart;
    }
  }
  return b;
}

M22Parabolics verify_m22_parabolics(Atlas &atlas, const SearchOptions &opt) {
  M22Parabolics r;
  try {
    r.bundle = normal_elementary_parabolics(atlas, "M22", 2, 4, std::string("M22.2"), opt);
  } catch (const search_undecided &e) {
    r.reason = e.what();
    return r;
  }
  const auto &c = r.bundle.classes;
  std::vector<std::string> problems;
  if (c.size() != 2)
    problems.push_back(std::to_string(c.size()) + " classes of normal E16");
  if (c.size() == 2) {
    if (c[0].quotient_order != 360 || c[1].quotient_order != 120)
      problems.push_back("quotient orders " + to_string(c[0].quotient_order) + ", " + to_string(c[1].quotient_order));
    if (c[0].type != "A6" || c[1].type != "S5")
      problems.push_back("types '" + c[0].type + "', '" + c[1].type + "'");
    if (!c[0].q_is_core || !c[1].q_is_core)
      problems.push_back("Q is not O_2(N(Q))");
  }
  if (!r.bundle.pairwise_non_conjugate)
    problems.push_back("Q0 and Q1 are conjugate in G");
  if (r.bundle.non_conjugate_in_ambient == false)
    problems.push_back("Q0 and Q1 are conjugate in M22.2");
  r.verdict = problems.empty() ? ClaimVerdict::verified : ClaimVerdict::refuted;
  for (const auto &s : problems)
    r.reason += (r.reason.empty() ? "" : "; ") + s;
  if (problems.empty())
    r.reason = "N(Q0)/Q0 = A6 (360), N(Q1)/Q1 = S5 (120), Q0 and Q1 not conjugate";
  return r;
}

// --- evaluators --------------------------------------------------------

namespace {

using Evaluator = Evaluation (*)(const Claim &, Atlas &, const RunOptions &);

const StabilizerChain &group0(const Claim &c, Atlas &atlas) { return *atlas.load(c.groups.at(0))->chain; }

Evaluation eval_order(const Claim &c, Atlas &atlas, const RunOptions &) {
  Evaluation e;
  e.computed["value"] = to_string(group0(c, atlas).order());
  return e;
}

Evaluation eval_subdegrees(const Claim &c, Atlas &atlas, const RunOptions &) {
  Evaluation e;
  point x = static_cast<point>(param_size(c.params, "point", 1) - 1);
  const auto &g = group0(c, atlas);
  if (x >= g.degree())
    throw std::invalid_argument("point out of range");
  e.computed["value"] = subdegrees(g, x);
  return e;
}

Evaluation eval_sylow_center(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  auto so = search_opts(opt, c.id);
  StabilizerChain t = sylow(group0(c, atlas), param_prime(c.params, "p", 2), so);
  StabilizerChain z = center(t, so);
  e.computed["value"] = big(z.order());
  e.computed["sylow_order"] = big(t.order());
  return e;
}

Evaluation eval_lemma2(const Claim &c, Atlas &atlas, const RunOptions &opt, bool part_b) {
  Evaluation e;
  Lemma2Result r = verify_lemma2_hypotheses(atlas, c.groups.at(0), search_opts(opt, c.id));
  ClaimVerdict v = part_b ? r.b : r.c;
  if (v == ClaimVerdict::undecided)
    throw undecided_error(r.reason);
  e.computed["value"] = v == ClaimVerdict::verified;
  e.computed["center_order"] = big(r.center_order);
  if (part_b) {
    e.computed["centralizer_order"] = big(r.centralizer_order);
    e.computed["o2_order"] = big(r.o2_order);
  } else {
    e.computed["normal_four_subgroups"] = r.four_groups;
    e.computed["fused_to_center"] = r.fused_four_groups;
    json w = json::array();
    for (const Perm &x : r.witnesses)
      w.push_back(cycles(x));
    e.witness["conjugating_elements"] = w;
  }
  return e;
}

Evaluation eval_two_constrained(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  return eval_lemma2(c, atlas, opt, true);
}

Evaluation eval_normal_four(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  return eval_lemma2(c, atlas, opt, false);
}

Evaluation eval_fused(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  e.computed["value"] =
      fused_E_p2_class_count(group0(c, atlas), param_prime(c.params, "p", 2), search_opts(opt, c.id));
  return e;
}

Evaluation eval_quotient(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  auto so = search_opts(opt, c.id);
  unsigned p = param_prime(c.params, "p", 2);
  std::string construction = param_string(c.params, "construction", "");
  if (construction == "normal_elementary_parabolics") {
    std::string amb = param_string(c.params, "ambient", "");
    auto b = normal_elementary_parabolics(atlas, c.groups.at(0), p, param_size(c.params, "rank", 4),
                                          amb.empty() ? std::nullopt : std::optional<std::string>(amb), so);
    json orders = json::array(), types = json::array(), norms = json::array(), cores = json::array(),
         gens = json::array();
    for (const auto &q : b.classes) {
      orders.push_back(big(q.quotient_order));
      types.push_back(q.type);
      norms.push_back(big(q.normalizer_order));
      cores.push_back(q.q_is_core);
      json gq = json::array();
      for (const Perm &x : q.q.generators())
        gq.push_back(cycles(x));
      gens.push_back(gq);
    }
    e.computed["value"] = orders;
    e.computed["types"] = types;
    e.computed["normalizer_orders"] = norms;
    e.computed["q_is_core"] = cores;
    e.computed["normal_in_sylow"] = b.normal_in_sylow;
    e.computed["non_conjugate"] = b.pairwise_non_conjugate;
    if (b.non_conjugate_in_ambient)
      e.computed["non_conjugate_in_ambient"] = *b.non_conjugate_in_ambient;
    e.witness["subgroups"] = gens;
    return e;
  }
  // Aut_G(P) = N_G(P)/C_G(P) for a Sylow p-subgroup P, acting on P#
  const auto &g = group0(c, atlas);
  StabilizerChain pp = sylow(g, p, so);
  std::vector<Perm> elts = enumerate_elements(pp, 100000);
  bool elem_ab = true;
  for (const Perm &x : elts) {
    if (!power(x, p).is_identity())
      elem_ab = false;
    for (const Perm &y : pp.generators())
      if (!commute(x, y))
        elem_ab = false;
  }
  StabilizerChain n = normalizer(g, pp, so);
  StabilizerChain ce = centralizer(g, pp.generators(), so);
  std::vector<Perm> nontriv;
  for (const Perm &x : elts)
    if (!x.is_identity())
      nontriv.push_back(x);
  std::sort(nontriv.begin(), nontriv.end());
  std::vector<Perm> act;
  for (const Perm &a : n.generators()) {
    std::vector<point> img(nontriv.size());
    for (std::size_t i = 0; i < nontriv.size(); ++i) {
      Perm y = conjugate(nontriv[i], a);
      img[i] = static_cast<point>(std::lower_bound(nontriv.begin(), nontriv.end(), y) - nontriv.begin());
    }
    act.push_back(Perm(img));
  }
  StabilizerChain aut = schreier_sims(act, nontriv.size());
  if (aut.order() * ce.order() != n.order())
    throw std::logic_error("automizer order does not match |N|/|C|");
  e.computed["value"] = big(aut.order());
  e.computed["sylow_order"] = big(pp.order());
  e.computed["elementary_abelian"] = elem_ab;
  e.computed["normalizer_order"] = big(n.order());
  e.computed["centralizer_order"] = big(ce.order());
  e.computed["isomorphic_to"] = identify_group(aut, default_candidates());
  return e;
}

Evaluation eval_complete(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  auto so = search_opts(opt, c.id);
  const auto &g = group0(c, atlas);
  StabilizerChain x = g;
  if (param_string(c.params, "subgroup", "sylow_normalizer") == "sylow_normalizer")
    x = normalizer(g, sylow(g, param_prime(c.params, "p", 2), so), so);
  SmallGroupAut a;
  try {
    a = automorphism_group_small(x, param_size(c.params, "bound", 10000));
  } catch (const bound_error &err) {
    throw undecided_error(err.what());
  }
  e.computed["value"] = a.complete;
  e.computed["order"] = big(x.order());
  e.computed["automorphisms"] = a.automorphisms;
  e.computed["inner"] = a.inner;
  return e;
}

struct ModuleSetup {
  ModuleRep v;
  StabilizerChain g;
};

ModuleSetup module_setup(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  ModuleSetup s;
  s.v = load_module(atlas.module_path(param_string(c.params, "module", "")));
  s.g = make_chain(s.v.gens.gens, s.v.gens.degree, s.v.group_order, mix(opt.seed, c.id));
  return s;
}

Evaluation eval_h1(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  ModuleSetup s = module_setup(c, atlas, opt);
  CocycleSpace cs = h1(s.v, s.g);
  e.computed["value"] = cs.dim_h1;
  e.computed["dim_z1"] = cs.dim_z1;
  e.computed["dim_b1"] = cs.dim_b1;
  e.computed["group_order"] = big(s.g.order());
  e.computed["module_dim"] = s.v.dim;
  return e;
}

Evaluation eval_lemma4(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  ModuleSetup s = module_setup(c, atlas, opt);
  ModuleAction act(s.v, s.g);
  std::uint64_t want = param_size(c.params, "element_order", 0);
  Rng rng(mix(opt.seed, c.id + "/element"));
  std::optional<Perm> x;
  for (int t = 0; t < 20000 && !x; ++t) {
    Perm y = s.g.random_element(rng);
    if (order_u64(y) == want && fixed_space(s.v, {act.matrix_of(y)}) == 0)
      x = y;
  }
  if (!x)
    throw undecided_error("no element of order " + std::to_string(want) + " without fixed vectors was found");
  Lemma4Result r = lemma4_criterion(s.g, act, *x, opt.class_budget);
  bool vanishes = r.verdict == Lemma4Verdict::vanishes;
  e.computed["value"] = vanishes ? "vanishes" : "inconclusive";
  e.computed["class_size"] = r.class_size;
  e.computed["component_size"] = r.component_size;
  e.computed["reason"] = r.reason;
  if (c.params.value("cross_check", true)) {
    std::size_t d = h1(s.v, s.g).dim_h1;
    e.computed["h1"] = d;
    e.computed["agrees_with_h1"] = !vanishes || d == 0;
  }
  e.witness["element"] = cycles(*x);
  return e;
}

Evaluation eval_lemma3(const Claim &c, Atlas &atlas, const RunOptions &) {
  Evaluation e;
  Lemma3Options o;
  o.alpha = static_cast<point>(param_size(c.params, "point", 1) - 1);
  if (c.params.contains("psi_length"))
    o.psi_length = param_size(c.params, "psi_length", 0);
  o.aut_bound = param_size(c.params, "aut_bound", 10000);
  Lemma3Result r = lemma3_check(group0(c, atlas), o);
  e.computed["value"] = r.hypotheses_hold();
  e.computed["a"] = verdict_name(r.a);
  e.computed["b"] = verdict_name(r.b);
  e.computed["c"] = verdict_name(r.c);
  e.computed["d1"] = verdict_name(r.d1);
  e.computed["d2"] = verdict_name(r.d2);
  e.computed["e"] = verdict_name(r.e);
  e.computed["psi_length"] = r.psi_length;
  if (!r.d2_note.empty())
    e.computed["d2_note"] = r.d2_note;
  json lens = json::array();
  for (const auto &s : r.suborbits)
    lens.push_back(s.orbit.size());
  e.computed["suborbit_lengths"] = lens;
  if (r.a_witness)
    e.witness["block_size"] = r.a_witness->block_size;
  return e;
}

Evaluation eval_oliver(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  OliverResult r = verify_oliver(atlas, c.groups.at(0), c.groups.at(1), param_string(c.params, "variant", "T"),
                                 search_opts(opt, c.id));
  if (r.verdict == ClaimVerdict::undecided)
    throw undecided_error(r.reason);
  e.computed["value"] = r.variant == "T" ? r.centralizer_equals_center && r.tilde_trivial : r.tilde_trivial;
  e.computed["variant"] = r.variant;
  e.computed["sylow_order"] = big(r.sylow_order);
  e.computed["center_order"] = big(r.center_order);
  e.computed["centralizer_order"] = big(r.centralizer_order);
  e.computed["centralizer_equals_center"] = r.centralizer_equals_center;
  e.computed["tilde_trivial"] = r.tilde_trivial;
  if (r.witness)
    e.witness["element"] = cycles(*r.witness);
  return e;
}

Evaluation eval_derived(const Claim &c, Atlas &atlas, const RunOptions &) {
  Evaluation e;
  auto g = atlas.load(c.groups.at(0));
  auto a = atlas.load(c.groups.at(1));
  auto link = atlas.derived_link(c.groups.at(1));
  BigInt d;
  std::string route;
  if (link && link->derived_name == g->desc.name) {
    d = link->derived->order();
    route = link->literal ? "contains" : "computed";
  } else {
    d = derived_subgroup(*a->chain).order();
    route = "computed";
  }
  BigInt index = a->chain->order() / d;
  e.computed["value"] = d == g->chain->order() && index == 2 && a->chain->order() % d == 0;
  e.computed["index"] = big(index);
  e.computed["derived_order"] = big(d);
  e.computed["route"] = route;
  return e;
}

Evaluation eval_involutions(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  Evaluation e;
  ClassTable t = conjugacy_classes(group0(c, atlas), ClassMode::involutions, search_opts(opt, c.id),
                                   std::max<std::size_t>(opt.class_budget, 1000));
  if (!t.complete)
    throw undecided_error("involution classes not covered within the sampling budget");
  std::vector<BigInt> cents;
  json reps = json::array();
  for (const auto &k : t.classes) {
    cents.push_back(k.centralizer_order);
    reps.push_back(cycles(k.representative));
  }
  std::sort(cents.rbegin(), cents.rend());
  json co = json::array();
  for (const auto &x : cents)
    co.push_back(big(x));
  e.computed["value"] = t.classes.size();
  e.computed["centralizer_orders"] = co;
  e.witness["representatives"] = reps;
  return e;
}

const std::map<std::string, Evaluator> &evaluators() {
  static const std::map<std::string, Evaluator> m = {
      {"OrderEquals", eval_order},
      {"SubdegreesEqual", eval_subdegrees},
      {"SylowCenterOrder", eval_sylow_center},
      {"TwoConstrainedCentralizer", eval_two_constrained},
      {"NormalFourFusedToCenter", eval_normal_four},
      {"FusedEp2ClassCount", eval_fused},
      {"QuotientOrderEquals", eval_quotient},
      {"SmallGroupComplete", eval_complete},
      {"H1Vanishes", eval_h1},
      {"Lemma4Vanishes", eval_lemma4},
      {"Lemma3Hypotheses", eval_lemma3},
      {"OliverCentralizer", eval_oliver},
      {"DerivedIndexTwo", eval_derived},
      {"InvolutionClassData", eval_involutions},
  };
  return m;
}

}  // namespace

// --- manifests ---------------------------------------------------------

std::vector<Claim> parse_manifest(const json &j, Atlas &atlas, const std::string &tier) {
  const json *list = &j;
  if (j.is_object()) {
    if (!j.contains("claims"))
      throw manifest_error("manifest object has no 'claims' list");
    list = &j["claims"];
  }
  if (!list->is_array())
    throw manifest_error("manifest must be a list of claims");
  std::vector<Claim> out;
  std::set<std::string> ids;
  for (const auto &r : *list) {
    Claim c;
    try {
      c.id = r.at("id").get<std::string>();
      c.kind = r.at("kind").get<std::string>();
      c.groups = r.value("groups", std::vector<std::string>{});
      c.params = r.value("params", json::object());
      c.expected = r.at("expected");
      c.provenance = r.at("provenance").get<std::string>();
      c.citation.section = r.at("citation").at("section").get<std::string>();
      c.citation.quote = r.at("citation").at("quote").get<std::string>();
      c.tier = r.value("tier", "default");
      c.negative_control = r.value("negative_control", false);
      c.note = r.value("note", "");
    } catch (const json::exception &e) {
      throw manifest_error("claim " + (c.id.empty() ? std::string("?") : c.id) + ": " + e.what());
    }
    auto fail = [&](const std::string &why) { return manifest_error("claim " + c.id + ": " + why); };
    if (!ids.insert(c.id).second)
      throw fail("duplicate id");
    auto spec = kind_specs().find(c.kind);
    if (spec == kind_specs().end())
      throw fail("unknown kind '" + c.kind + "'");
    if (c.provenance != "PAPER" && c.provenance != "TRIVIAL" && c.provenance != "DERIVED")
      throw fail("provenance must be PAPER, TRIVIAL or DERIVED");
    if (c.citation.section.empty() || c.citation.quote.empty())
      throw fail("citation needs a section and a quote");
    if (c.tier != "default" && c.tier != "stretch")
      throw fail("tier must be default or stretch");
    if (c.groups.size() != spec->second.groups)
      throw fail(c.kind + " takes " + std::to_string(spec->second.groups) + " group name(s)");
    if (!c.params.is_object())
      throw fail("params must be an object");
    try {
      validate_params(c);
    } catch (const manifest_error &e) {
      throw fail(e.what());
    }
    bool active = c.tier == "default" || tier == "stretch";
    if (active) {
      try {
        for (const auto &gname : c.groups)
          atlas.load(gname);
        if (c.params.contains("module"))
          atlas.module_path(c.params["module"].get<std::string>());
        if (c.params.contains("ambient"))
          atlas.load(c.params["ambient"].get<std::string>());
      } catch (const atlas_error &e) {
        throw fail(e.what());
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Claim> load_manifest(const std::filesystem::path &path, Atlas &atlas, const std::string &tier) {
  std::ifstream in(path);
  if (!in)
    throw manifest_error("cannot open manifest " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw manifest_error("manifest " + path.string() + ": " + e.what());
  }
  return parse_manifest(j, atlas, tier);
}

ClaimResult evaluate_claim(const Claim &c, Atlas &atlas, const RunOptions &opt) {
  ClaimResult r;
  r.id = c.id;
  r.kind = c.kind;
  r.groups = c.groups;
  r.expected = c.expected;
  r.provenance = c.provenance;
  r.negative_control = c.negative_control;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Evaluation e = evaluators().at(c.kind)(c, atlas, opt);
    r.computed = std::move(e.computed);
    r.witness = std::move(e.witness);
    json diff = mismatches(c.expected, r.computed);
    if (diff.empty()) {
      r.verdict = ClaimVerdict::verified;
    } else {
      r.verdict = ClaimVerdict::refuted;
      r.witness["mismatch"] = diff;
      r.reason = "computed value differs from the expected one";
    }
  } catch (const undecided_error &e) {
    r.reason = e.what();
  } catch (const search_undecided &e) {
    r.reason = std::string("search budget exhausted: ") + e.what();
  } catch (const bound_error &e) {
    r.reason = e.what();
  } catch (const index_bound_error &e) {
    r.reason = e.what();
  } catch (const std::exception &e) {
    r.reason = std::string("error: ") + e.what();
  }
  if (!c.note.empty())
    r.reason += (r.reason.empty() ? "" : "; ") + c.note;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ClaimReport run_claims(const std::vector<Claim> &claims, Atlas &atlas, const RunOptions &opt) {
  ClaimReport rep;
  rep.seed = opt.seed;
  rep.tier = opt.tier;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<const Claim *> active;
  for (const auto &c : claims) {
    if (c.tier == "default" || opt.tier == "stretch")
      active.push_back(&c);
    else
      rep.skipped.push_back(c.id);
  }
  rep.results.resize(active.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < active.size();)
      rep.results[i] = evaluate_claim(*active[i], atlas, opt);
  };
  unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(active.size())));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i)
      pool.emplace_back(work);
    for (auto &t : pool)
      t.join();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  struct rusage ru;
  if (getrusage(RUSAGE_SELF, &ru) == 0)
    rep.peak_rss_kb = static_cast<std::size_t>(ru.ru_maxrss);
  return rep;
}

ClaimReport run_manifest(const std::filesystem::path &path, Atlas &atlas, const RunOptions &opt) {
  return run_claims(load_manifest(path, atlas, opt.tier), atlas, opt);
}

// --- reports -----------------------------------------------------------

int ClaimReport::exit_code() const {
  bool undecided = false;
  for (const auto &r : results) {
    if (r.verdict == ClaimVerdict::refuted)
      return 1;
    if (r.verdict == ClaimVerdict::undecided)
      undecided = true;
  }
  return undecided ? 2 : 0;
}

json ClaimReport::to_json(bool with_timings) const {
  json j;
  j["seed"] = seed;
  j["tier"] = tier;
  std::size_t n[3] = {0, 0, 0};
  json rs = json::array();
  for (const auto &r : results) {
    ++n[static_cast<int>(r.verdict)];
    json x;
    x["id"] = r.id;
    x["kind"] = r.kind;
    x["groups"] = r.groups;
    x["verdict"] = claim_verdict_name(r.verdict);
    x["reason"] = r.reason;
    x["expected"] = r.expected;
    x["computed"] = r.computed;
    x["witness"] = r.witness;
    x["provenance"] = r.provenance;
    x["negative_control"] = r.negative_control;
    if (with_timings)
      x["seconds"] = r.seconds;
    rs.push_back(std::move(x));
  }
  j["summary"] = {{"verified", n[0]}, {"refuted", n[1]}, {"undecided", n[2]}};
  j["exit_code"] = exit_code();
  j["results"] = std::move(rs);
  j["skipped"] = skipped;
  if (with_timings) {
    j["seconds"] = seconds;
    j["peak_rss_kb"] = peak_rss_kb;
  }
  return j;
}

ClaimReport ClaimReport::from_json(const json &j) {
  ClaimReport rep;
  try {
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.tier = j.at("tier").get<std::string>();
    rep.skipped = j.value("skipped", std::vector<std::string>{});
    rep.seconds = j.value("seconds", 0.0);
    rep.peak_rss_kb = j.value("peak_rss_kb", std::size_t(0));
    for (const auto &x : j.at("results")) {
      ClaimResult r;
      r.id = x.at("id").get<std::string>();
      r.kind = x.at("kind").get<std::string>();
      r.groups = x.at("groups").get<std::vector<std::string>>();
      r.verdict = verdict_from_name(x.at("verdict").get<std::string>());
      r.reason = x.at("reason").get<std::string>();
      r.expected = x.at("expected");
      r.computed = x.at("computed");
      r.witness = x.at("witness");
      r.provenance = x.at("provenance").get<std::string>();
      r.negative_control = x.at("negative_control").get<bool>();
      r.seconds = x.value("seconds", 0.0);
      rep.results.push_back(std::move(r));
    }
  } catch (const json::exception &e) {
    throw manifest_error(std::string("report: ") + e.what());
  }
  return rep;
}

std::string ClaimReport::to_text() const {
  std::ostringstream out;
  out << "seed " << seed << ", tier " << tier << "\n";
  std::size_t n[3] = {0, 0, 0};
  for (const auto &r : results) {
    ++n[static_cast<int>(r.verdict)];
    std::string groups;
    for (const auto &g : r.groups)
      groups += (groups.empty() ? "" : ",") + g;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f s", r.seconds);
    out << claim_verdict_name(r.verdict) << "  " << r.id << "  " << r.kind;
    if (!groups.empty())
      out << " [" << groups << "]";
    out << "  (" << secs << ")\n";
    out << "    expected " << r.expected.dump() << "\n";
    out << "    computed " << r.computed.dump() << "\n";
    if (r.verdict != ClaimVerdict::verified || r.negative_control)
      if (!r.witness.empty())
        out << "    witness " << r.witness.dump() << "\n";
    if (!r.reason.empty())
      out << "    note " << r.reason << "\n";
  }
  for (const auto &s : skipped)
    out << "skipped  " << s << " (stretch tier)\n";
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1f s", seconds);
  out << n[0] << " verified, " << n[1] << " refuted, " << n[2] << " undecided in " << secs << ", peak memory "
      << peak_rss_kb / 1024 << " MB\n";
  return out.str();
}

}  // namespace spor
