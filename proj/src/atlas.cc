#include "sporadic/atlas.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "sporadic/local.h"

namespace spor {

namespace fs = std::filesystem;
using nlohmann::json;

GroupDescriptor read_descriptor(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw atlas_error("cannot open descriptor " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw atlas_error("descriptor " + path.string() + ": " + e.what());
  }
  GroupDescriptor d;
  d.path = path;
  try {
    d.name = j.at("name").get<std::string>();
    d.degree = j.at("degree").get<std::size_t>();
    d.base_index = j.value("base_index", 1);
    d.generators = j.at("generators").get<std::vector<std::string>>();
    if (j.contains("expected_order"))
      d.expected_order = parse_bigint(j["expected_order"].get<std::string>());
    if (j.contains("links"))
      d.links = j["links"].get<std::map<std::string, std::string>>();
    d.source = j.value("source", "");
  } catch (const std::exception &e) {
    throw atlas_error("descriptor " + path.string() + ": " + e.what());
  }
  if (d.degree == 0)
    throw atlas_error("descriptor " + path.string() + ": degree must be positive");
  if (d.generators.empty())
    throw atlas_error("descriptor " + path.string() + ": no generators");
  return d;
}

GeneratorSet descriptor_generators(const GroupDescriptor &d) {
  std::vector<Perm> g;
  for (const auto &s : d.generators) {
    try {
      g.push_back(parse_cycles(s, d.degree, d.base_index));
    } catch (const parse_error &e) {
      throw atlas_error(d.name + ": " + e.what());
    }
  }
  return GeneratorSet(d.degree, std::move(g));
}

namespace chain_cache {

namespace {

constexpr char kMagic[4] = {'S', 'P', 'C', 'H'};

std::uint64_t fnv(const char *p, std::size_t n) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(p[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Writer {
  std::string buf;
  void u32(std::uint32_t v) { buf.append(reinterpret_cast<const char *>(&v), 4); }
  void u64(std::uint64_t v) { buf.append(reinterpret_cast<const char *>(&v), 8); }
  void perm(const Perm &p) {
    for (point x : p.images())
      u32(x);
  }
};

struct Reader {
  const std::string &buf;
  std::size_t pos = 0;
  std::uint32_t u32() {
    if (pos + 4 > buf.size())
      throw chain_error("chain cache: truncated");
    std::uint32_t v;
    std::memcpy(&v, buf.data() + pos, 4);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    if (pos + 8 > buf.size())
      throw chain_error("chain cache: truncated");
    std::uint64_t v;
    std::memcpy(&v, buf.data() + pos, 8);
    pos += 8;
    return v;
  }
  Perm perm(std::size_t n) {
    std::vector<point> img(n);
    for (auto &x : img)
      x = u32();
    try {
      return Perm(std::move(img));
    } catch (const std::exception &) {
      throw chain_error("chain cache: invalid permutation");
    }
  }
};

}  // namespace

std::uint64_t content_key(const GeneratorSet &gens) {
  std::vector<Perm> g = gens.gens;
  std::sort(g.begin(), g.end());
  Writer w;
  w.u64(gens.degree);
  for (const Perm &p : g)
    w.perm(p);
  return fnv(w.buf.data(), w.buf.size());
}

std::string serialize(const StabilizerChain &ch) {
  Writer w;
  w.buf.append(kMagic, 4);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(ch.degree()));
  w.u32(ch.certified() ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(ch.generators().size()));
  for (const Perm &p : ch.generators())
    w.perm(p);
  w.u32(static_cast<std::uint32_t>(ch.length()));
  for (std::size_t i = 0; i < ch.length(); ++i) {
    const ChainLevel &l = ch.level(i);
    w.u32(l.base);
    w.u32(static_cast<std::uint32_t>(l.gens.size()));
    for (const Perm &p : ch.level_generators(i))
      w.perm(p);
    // Schreier vector as (point, edge) pairs in BFS order
    w.u32(static_cast<std::uint32_t>(l.orbit.size()));
    for (point x : l.orbit) {
      w.u32(x);
      w.u32(static_cast<std::uint32_t>(l.edge[x]));
    }
  }
  w.u64(fnv(w.buf.data(), w.buf.size()));
  return w.buf;
}

StabilizerChain deserialize(const std::string &bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw chain_error("chain cache: bad magic");
  std::uint64_t stored;
  std::memcpy(&stored, bytes.data() + bytes.size() - 8, 8);
  if (fnv(bytes.data(), bytes.size() - 8) != stored)
    throw chain_error("chain cache: checksum failure");
  Reader r{bytes, 4};
  if (r.u32() != kVersion)
    throw chain_error("chain cache: version mismatch");
  std::size_t n = r.u32();
  bool certified = r.u32() != 0;
  std::vector<Perm> gens(r.u32());
  for (auto &g : gens)
    g = r.perm(n);
  std::size_t L = r.u32();
  std::vector<point> base(L);
  std::vector<std::vector<Perm>> lg(L);
  std::vector<std::vector<std::pair<point, std::uint32_t>>> sv(L);
  for (std::size_t i = 0; i < L; ++i) {
    base[i] = r.u32();
    if (base[i] >= n)
      throw chain_error("chain cache: base point out of range");
    lg[i].resize(r.u32());
    for (auto &p : lg[i])
      p = r.perm(n);
    sv[i].resize(r.u32());
    for (auto &e : sv[i]) {
      e.first = r.u32();
      e.second = r.u32();
    }
  }
  StabilizerChain ch = StabilizerChain::from_strong_generators(n, gens, base, lg, certified);
  // the rebuilt Schreier vectors must agree with the stored ones in size
  for (std::size_t i = 0; i < ch.length(); ++i)
    if (ch.orbit_size(i) != sv[i].size())
      throw chain_error("chain cache: Schreier vector mismatch");
  return ch;
}

static fs::path cache_file(const fs::path &dir, const GeneratorSet &gens) {
  std::ostringstream name;
  name << std::hex << content_key(gens) << ".chain";
  return dir / name.str();
}

void save(const fs::path &dir, const GeneratorSet &gens, const StabilizerChain &ch) {
  fs::create_directories(dir);
  fs::path final_path = cache_file(dir, gens);
  fs::path tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    std::string bytes = serialize(ch);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
      throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

std::optional<StabilizerChain> load(const fs::path &dir, const GeneratorSet &gens) {
  fs::path p = cache_file(dir, gens);
  std::ifstream in(p, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  StabilizerChain ch = deserialize(bytes);
  GeneratorSet a = gens.reduced();
  if (ch.degree() != gens.degree || ch.generators() != a.gens)
    return std::nullopt;  // hash collision or stale file
  return ch;
}

}  // namespace chain_cache

static std::uint64_t name_seed(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

fs::path default_data_dir() {
  if (const char *env = std::getenv("SPORADIC_DATA_DIR"))
    return env;
#ifdef SPORADIC_DATA_DIR
  return SPORADIC_DATA_DIR;
#else
  return "data";
#endif
}

Atlas::Atlas(fs::path data_dir, std::optional<fs::path> cache_dir, std::uint64_t seed)
    : data_dir_(std::move(data_dir)), cache_dir_(std::move(cache_dir)), seed_(seed) {}

fs::path Atlas::resolve(const std::string &name_or_path) const {
  fs::path p(name_or_path);
  if (p.has_extension() && p.extension() == ".json" && fs::exists(p))
    return p;
  fs::path q = data_dir_ / "groups" / (name_or_path + ".json");
  if (fs::exists(q))
    return q;
  std::string known;
  for (const auto &n : names())
    known += " " + n;
  throw atlas_error("unknown group '" + name_or_path + "'; bundled groups:" + known);
}

std::vector<std::string> Atlas::names() const {
  std::vector<std::string> r;
  fs::path dir = data_dir_ / "groups";
  if (fs::exists(dir))
    for (const auto &e : fs::directory_iterator(dir))
      if (e.path().extension() == ".json")
        r.push_back(e.path().stem().string());
  std::sort(r.begin(), r.end());
  return r;
}

fs::path Atlas::module_path(const std::string &name) const {
  fs::path p(name);
  if (p.extension() == ".json" && fs::exists(p))
    return p;
  fs::path q = data_dir_ / "modules" / (name + ".json");
  if (!fs::exists(q))
    throw atlas_error("unknown module '" + name + "'");
  return q;
}

std::shared_ptr<const LoadedGroup> Atlas::load(const std::string &name_or_path) {
  fs::path path = resolve(name_or_path);
  std::string key = fs::weakly_canonical(path).string();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = loaded_.find(key);
    if (it != loaded_.end())
      return it->second;
  }
  auto g = std::make_shared<LoadedGroup>();
  g->desc = read_descriptor(path);
  g->gens = descriptor_generators(g->desc);
  std::optional<StabilizerChain> ch;
  if (cache_dir_) {
    try {
      ch = chain_cache::load(*cache_dir_, g->gens);
    } catch (const chain_error &) {
      ch.reset();  // a damaged cache entry only costs a recomputation
    }
    if (ch && g->desc.expected_order && ch->order() != *g->desc.expected_order)
      ch.reset();
    g->from_cache = ch.has_value();
  }
  if (!ch) {
    ChainOptions opt;
    opt.known_order = g->desc.expected_order;
    opt.seed = seed_ ^ name_seed(g->desc.name);
    try {
      ch = schreier_sims(g->gens, opt);
    } catch (const chain_error &e) {
      throw atlas_error(g->desc.name + ": " + e.what());
    }
    if (cache_dir_)
      chain_cache::save(*cache_dir_, g->gens, *ch);
  }
  g->chain = std::make_shared<const StabilizerChain>(std::move(*ch));
  std::shared_ptr<const LoadedGroup> result;
  {
    std::lock_guard<std::mutex> lock(mu_);
    result = loaded_.emplace(key, g).first->second;
  }
  if (!result->desc.links.empty()) {
    try {
      derived_link(key);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      loaded_.erase(key);
      throw;
    }
  }
  return result;
}

std::shared_ptr<const DerivedLink> Atlas::derived_link(const std::string &name_or_path) {
  auto a = load(name_or_path);
  auto it0 = a->desc.links.find("derived_subgroup_is");
  if (it0 == a->desc.links.end())
    return nullptr;
  for (const auto &[k, v] : a->desc.links)
    if (k != "derived_subgroup_is")
      throw atlas_error(a->desc.name + ": unknown link '" + k + "'");
  std::string key = fs::weakly_canonical(a->desc.path).string();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = links_.find(key);
    if (it != links_.end())
      return it->second;
  }
  auto g = load(it0->second);
  const StabilizerChain &ac = *a->chain;
  const StabilizerChain &gc = *g->chain;
  auto fail = [&](const std::string &why) {
    return atlas_error(a->desc.name + ": link derived_subgroup_is " + g->desc.name + " fails: " + why);
  };
  auto link = std::make_shared<DerivedLink>();
  link->derived_name = g->desc.name;
  if (ac.order() % gc.order() != 0)
    throw fail("order does not divide");
  link->index = ac.order() / gc.order();
  if (link->index != 2)
    throw fail("index " + to_string(link->index) + ", expected 2");
  bool literal = gc.degree() == ac.degree();
  for (std::size_t i = 0; literal && i < gc.generators().size(); ++i)
    literal = ac.contains(gc.generators()[i]);
  try {
    if (literal) {
      // index 2 and normal means A' <= G; G perfect gives G = G' <= A'
      if (!is_normal(ac, gc))
        throw fail("not normal");
      StabilizerChain d = derived_subgroup(gc, gc.order());
      if (d.order() != gc.order())
        throw fail("not perfect");
      link->derived = g->chain;
      link->literal = true;
    } else {
      // deterministic closure: a normal subgroup of index 2 generated by
      // commutators is exactly A'
      StabilizerChain d = derived_subgroup(ac);
      if (d.order() != gc.order())
        throw fail("derived subgroup has order " + to_string(d.order()));
      link->derived = std::make_shared<const StabilizerChain>(std::move(d));
    }
  } catch (const chain_error &e) {
    throw fail(e.what());
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = links_.emplace(key, link);
  return it->second;
}

bool Atlas::spot_check_cache(Rng &rng) {
  std::vector<std::shared_ptr<const LoadedGroup>> cached;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto &[k, g] : loaded_)
      if (g->from_cache)
        cached.push_back(g);
  }
  if (cached.empty())
    return true;
  const auto &g = cached[rng.below(cached.size())];
  ChainOptions opt;
  opt.known_order = g->desc.expected_order;
  opt.seed = seed_ ^ name_seed(g->desc.name);
  StabilizerChain fresh = schreier_sims(g->gens, opt);
  return fresh.order() == g->chain->order() && fresh.base() == g->chain->base();
}

}  // namespace spor
