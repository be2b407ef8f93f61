#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sporadic/atlas.h"
#include "sporadic/claims.h"
#include "sporadic/cohomology.h"
#include "sporadic/local.h"
#include "sporadic/orbits.h"

using namespace spor;
using nlohmann::json;

namespace {

struct Flags {
  std::uint64_t seed = 1;
  std::uint64_t budget_nodes = SearchOptions{}.max_nodes;
  std::size_t budget_class = 1000000;
  std::string cache_dir;
  std::string data_dir;
  std::string tier = "default";
  unsigned threads = 1;
  bool json = false;
  bool timings = false;
};

SearchOptions search(const Flags &f) {
  SearchOptions s;
  s.max_nodes = f.budget_nodes;
  s.seed = f.seed;
  return s;
}

void emit(const Flags &f, const json &j, const std::string &text) {
  if (f.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

std::string join(const std::vector<std::size_t> &v) {
  std::string s;
  for (auto x : v)
    s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Permutation group engine and claims checker"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--budget-nodes", f.budget_nodes, "node budget per backtrack search");
  app.add_option("--budget-class", f.budget_class, "class size budget");
  app.add_option("--cache-dir", f.cache_dir, "directory for cached stabilizer chains");
  app.add_option("--data-dir", f.data_dir, "directory with groups/ and modules/");
  app.add_option("--tier", f.tier, "claim tier")->check(CLI::IsMember({"default", "stretch"}));
  app.add_option("--threads", f.threads, "worker threads for claims")->check(CLI::Range(1u, 256u));
  app.add_flag("--json", f.json, "JSON output");
  app.add_flag("--timings", f.timings, "include wall-clock and memory in JSON reports");

  std::string group, module_file, manifest;
  unsigned p = 2, pt = 1;

  auto *order = app.add_subcommand("order", "order of a group");
  order->add_option("group", group, "bundled name or descriptor path")->required();
  auto *subdeg = app.add_subcommand("subdegrees", "orbit lengths of a point stabilizer");
  subdeg->add_option("group", group)->required();
  subdeg->add_option("--point", pt, "1-based point")->check(CLI::PositiveNumber);
  auto *syl = app.add_subcommand("sylow", "Sylow p-subgroup");
  syl->add_option("group", group)->required();
  syl->add_option("p", p, "prime")->required();
  auto *csyl = app.add_subcommand("center-sylow", "center of a Sylow p-subgroup");
  csyl->add_option("group", group)->required();
  csyl->add_option("p", p, "prime (default 2)");
  auto *h1c = app.add_subcommand("h1", "dimension of H^1 of a module");
  h1c->add_option("group", group, "bundled group the module is for, or - for the module's own generators")
      ->required();
  h1c->add_option("module", module_file, "module name or file")->required();
  auto *ver = app.add_subcommand("verify", "evaluate a claims manifest");
  ver->add_option("manifest", manifest)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    Atlas atlas(f.data_dir.empty() ? default_data_dir() : std::filesystem::path(f.data_dir),
                f.cache_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(f.cache_dir), f.seed);
    if (*order) {
      auto g = atlas.load(group);
      std::string o = to_string(g->chain->order());
      emit(f, {{"group", g->desc.name}, {"degree", g->desc.degree}, {"order", o}}, o);
    } else if (*subdeg) {
      auto g = atlas.load(group);
      if (pt > g->desc.degree)
        throw std::invalid_argument("point out of range");
      auto s = subdegrees(*g->chain, static_cast<point>(pt - 1));
      emit(f, {{"group", g->desc.name}, {"point", pt}, {"subdegrees", s}}, join(s));
    } else if (*syl || *csyl) {
      if (!is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not a prime");
      auto g = atlas.load(group);
      StabilizerChain t = sylow(*g->chain, p, search(f));
      json gens = json::array();
      for (const Perm &x : t.generators())
        gens.push_back(print_cycles(x));
      if (*syl) {
        std::string text = "order " + to_string(t.order());
        for (const auto &s : gens)
          text += "\n" + s.get<std::string>();
        emit(f, {{"group", g->desc.name}, {"p", p}, {"order", to_string(t.order())}, {"generators", gens}}, text);
      } else {
        StabilizerChain z = center(t, search(f));
        json zg = json::array();
        for (const Perm &x : z.generators())
          zg.push_back(print_cycles(x));
        std::string text = "order " + to_string(z.order()) + " (Sylow order " + to_string(t.order()) + ")";
        for (const auto &s : zg)
          text += "\n" + s.get<std::string>();
        emit(f,
             {{"group", g->desc.name},
              {"p", p},
              {"sylow_order", to_string(t.order())},
              {"center_order", to_string(z.order())},
              {"generators", zg}},
             text);
      }
    } else if (*h1c) {
      ModuleRep v = load_module(atlas.module_path(module_file));
      StabilizerChain g = make_chain(v.gens.gens, v.gens.degree, v.group_order, f.seed);
      if (group != "-") {
        auto a = atlas.load(group);
        if (a->desc.degree != v.gens.degree || a->chain->order() != g.order())
          throw std::invalid_argument("module generators do not generate " + a->desc.name);
        for (const Perm &x : v.gens.gens)
          if (!a->chain->contains(x))
            throw std::invalid_argument("module generators do not lie in " + a->desc.name);
      }
      CocycleSpace c = h1(v, g);
      emit(f,
           {{"module", v.name},
            {"p", v.p},
            {"dim", v.dim},
            {"group_order", to_string(g.order())},
            {"dim_z1", c.dim_z1},
            {"dim_b1", c.dim_b1},
            {"dim_h1", c.dim_h1}},
           "dim H1 = " + std::to_string(c.dim_h1) + " (Z1 " + std::to_string(c.dim_z1) + ", B1 " +
               std::to_string(c.dim_b1) + ")");
    } else if (*ver) {
      RunOptions o;
      o.seed = f.seed;
      o.max_nodes = f.budget_nodes;
      o.class_budget = f.budget_class;
      o.tier = f.tier;
      o.threads = f.threads;
      ClaimReport r = run_manifest(manifest, atlas, o);
      if (f.json)
        std::cout << r.to_json(f.timings).dump(2) << "\n";
      else
        std::cout << r.to_text();
      return r.exit_code();
    }
  } catch (const manifest_error &e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 3;
  } catch (const atlas_error &e) {
    std::cerr << "atlas error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
