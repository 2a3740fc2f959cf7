#include "foliage/generator.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

namespace foliage {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return next() % n; }

bool SplitMix64::chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

void parse_weak_bias(std::string_view text, GeneratorConfig& cfg) {
  auto number = [&](std::string_view part) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || end != part.data() + part.size() || part.empty()) {
      throw Error("weak bias must look like p/q, got '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  std::uint64_t num = number(text.substr(0, slash));
  std::uint64_t den = slash == std::string_view::npos ? 1 : number(text.substr(slash + 1));
  if (den == 0 || num > den) throw Error("weak bias must lie in [0,1]");
  auto g = std::gcd(num, den);
  cfg.bias_num = num / g;
  cfg.bias_den = den / g;
}

std::string weak_bias_text(const GeneratorConfig& cfg) {
  return std::to_string(cfg.bias_num) + "/" + std::to_string(cfg.bias_den);
}

namespace {

template <class T>
void insert_at(std::vector<T>& v, std::size_t pos, T value) {
  v.insert(v.begin() + static_cast<long>(pos), std::move(value));
}

Scenario draw(SplitMix64& rng, const GeneratorConfig& cfg) {
  const auto cap = static_cast<std::size_t>(cfg.max_boundary);
  Scenario s;
  const int n_dom = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_domains)));
  int leaves = 0;
  auto fresh = [&] { return "l" + std::to_string(leaves++); };
  int last_parent = -1;
  for (int i = 0; i < n_dom; ++i) {
    s.domains.push_back({"D" + std::to_string(i), {}, {}});
    if (i == 0 || rng.chance(1, 8)) continue;
    auto& child = s.domains.back();
    // reusing the previous parent grows hubs with several edges per side
    if (last_parent < 0 || !rng.chance(1, 2)) {
      last_parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    }
    auto& parent = s.domains[last_parent];
    bool forward = rng.chance(1, 2);  // parent -> child
    auto fits = [&](bool fwd) {
      return fwd ? parent.left.size() < cap && child.right.size() < cap
                 : child.left.size() < cap && parent.right.size() < cap;
    };
    if (!fits(forward)) forward = !forward;
    if (!fits(forward)) continue;
    auto leaf = fresh();
    auto& from = forward ? parent.left : child.left;
    auto& to = forward ? child.right : parent.right;
    insert_at(from, rng.below(from.size() + 1), leaf);
    insert_at(to, rng.below(to.size() + 1), leaf);
  }
  for (auto& d : s.domains) {
    for (auto* side : {&d.left, &d.right}) {
      if (side->size() < cap && rng.chance(1, 4)) insert_at(*side, rng.below(side->size() + 1), fresh());
    }
  }

  // leaf -> domain whose right list holds it, and the reverse direction
  std::map<LeafId, int> target, source;
  for (int i = 0; i < n_dom; ++i) {
    for (const auto& l : s.domains[i].right) target[l] = i;
  }
  for (int i = 0; i < n_dom; ++i) {
    for (const auto& l : s.domains[i].left) {
      if (target.count(l)) source[l] = i;
    }
  }
  auto index_of = [&](const std::string& id) {
    for (int i = 0; i < n_dom; ++i) {
      if (s.domains[i].id == id) return i;
    }
    return -1;
  };

  const int n_orb = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.max_orbits)));
  for (int k = 0; k < n_orb; ++k) {
    int d;
    // a biased orbit follows an earlier one and prefers other leaves
    const std::vector<std::string>* ref = nullptr;
    LeafId forced;
    if (k > 0 && rng.chance(cfg.bias_num, cfg.bias_den)) {
      ref = &s.orbits[rng.below(static_cast<std::uint64_t>(k))].path;
      const std::size_t at = 2 * rng.below((ref->size() + 1) / 2);
      d = index_of((*ref)[at]);
      std::vector<LeafId> entries;
      for (const auto& l : s.domains[d].right) {
        if (source.count(l) && (at == 0 || (*ref)[at - 1] != l)) entries.push_back(l);
      }
      if (!entries.empty() && rng.chance(1, 2)) {
        forced = entries[rng.below(entries.size())];
        d = source.at(forced);
      }
    } else {
      d = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_dom)));
    }
    Orbit o;
    o.id = "O" + std::to_string(k + 1);
    o.path.push_back(s.domains[d].id);
    const int alpha = d;
    while (true) {
      LeafId leaf = forced;
      forced.clear();
      if (leaf.empty()) {
        std::vector<LeafId> exits, fresh_exits;
        for (const auto& l : s.domains[d].left) {
          if (!target.count(l)) continue;
          exits.push_back(l);
          if (!ref || std::find(ref->begin(), ref->end(), l) == ref->end()) fresh_exits.push_back(l);
        }
        if (exits.empty() || rng.chance(1, 4)) break;
        const auto& pool = !fresh_exits.empty() && rng.chance(cfg.bias_num, cfg.bias_den) ? fresh_exits : exits;
        leaf = pool[rng.below(pool.size())];
      }
      d = target.at(leaf);
      o.path.push_back(leaf);
      o.path.push_back(s.domains[d].id);
    }
    auto cut = [&](std::size_t n) {
      if (rng.chance(cfg.bias_num, cfg.bias_den)) return rng.chance(1, 2) ? 0 : static_cast<int>(n);
      return static_cast<int>(rng.below(n + 1));
    };
    o.entry_cut = cut(s.domains[alpha].right.size());
    o.exit_cut = cut(s.domains[d].left.size());
    s.orbits.push_back(std::move(o));
  }
  std::vector<int> ranks(static_cast<std::size_t>(n_orb));
  std::iota(ranks.begin(), ranks.end(), 0);
  for (std::size_t i = ranks.size(); i > 1; --i) std::swap(ranks[i - 1], ranks[rng.below(i)]);
  for (int k = 0; k < n_orb; ++k) s.orbits[k].tie_rank = ranks[k];
  return s;
}

}  // namespace

Scenario generate_scenario(const GeneratorConfig& cfg) {
  if (cfg.max_domains < 1 || cfg.max_orbits < 1 || cfg.max_boundary < 0) {
    throw Error("generator bounds must be positive (boundary may be 0)");
  }
  if (cfg.bias_den == 0 || cfg.bias_num > cfg.bias_den) throw Error("weak bias must lie in [0,1]");
  SplitMix64 rng(cfg.seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Scenario s = draw(rng, cfg);
    if (validate(s).ok()) return s;
  }
  throw Error("generator gave up after 1000 invalid draws for seed " + std::to_string(cfg.seed));
}

}  // namespace foliage
