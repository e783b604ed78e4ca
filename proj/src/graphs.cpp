#include "braidwalk/graphs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "braidwalk/errors.hpp"
#include "braidwalk/free_product.hpp"

namespace braidwalk::graphs {

namespace {

// Generic rooted-ball builder over a keyed state space with four labelled
// generator moves.
template <typename State, typename Key, typename KeyFn, typename StepFn>
LabeledGraph build_ball(State root, const char* labels, int radius,
                        size_t max_nodes, KeyFn key_of, StepFn step) {
  LabeledGraph g;
  std::unordered_map<Key, int> id;
  std::vector<State> states;
  id.emplace(key_of(root), 0);
  states.push_back(std::move(root));
  g.distance.push_back(0);
  std::vector<std::array<int, 4>> out;
  for (size_t head = 0; head < states.size(); ++head) {
    out.push_back({-1, -1, -1, -1});
    if (g.distance[head] == radius) continue;
    for (int gen = 0; gen < 4; ++gen) {
      State next = step(states[head], gen);
      auto [it, fresh] = id.emplace(key_of(next), static_cast<int>(states.size()));
      if (fresh) {
        if (states.size() >= max_nodes)
          throw BallTooLarge("graph ball exceeds the node budget");
        states.push_back(std::move(next));
        g.distance.push_back(g.distance[head] + 1);
      }
      out.back()[gen] = it->second;
    }
  }
  g.nodes = static_cast<int>(states.size());
  for (int v = 0; v < g.nodes; ++v)
    for (int gen = 0; gen < 4; ++gen)
      if (out[v][gen] >= 0) g.edges.push_back({v, out[v][gen], labels[gen]});
  return g;
}

constexpr Gen kGens[4] = {Gen::A, Gen::AInv, Gen::B, Gen::BInv};

}  // namespace

LabeledGraph cayley_ball(const GroupContext& ctx, int radius,
                         size_t max_nodes) {
  return build_ball<GarsideNormalForm, std::string>(
      GarsideNormalForm(ctx), "aAbB", radius, max_nodes,
      [](const GarsideNormalForm& x) { return x.key(); },
      [](const GarsideNormalForm& x, int gen) {
        auto y = x;
        y.append_generator(kGens[gen]);
        return y;
      });
}

LabeledGraph fp_cayley_ball(int k, int radius, size_t max_nodes) {
  auto key_of = [](const fp::FPWord& w) {
    std::string s;
    for (auto [side, e] : w.syllables) {
      s.push_back(static_cast<char>('c' + side));
      s.push_back(static_cast<char>('0' + e));
    }
    return s;
  };
  return build_ball<fp::FPWord, std::string>(
      fp::FPWord{k, {}}, "cCdD", radius, max_nodes, key_of,
      [](const fp::FPWord& w, int gen) {
        auto y = w;
        y.step(gen);
        return y;
      });
}

LabeledGraph schreier_ball(int k, int radius, size_t max_nodes) {
  const auto ctx = GroupContext::ak_mod_z(k);
  // Class representative of {g, g Delta}: the lexicographically smaller key
  // decides (for even k the class is a single element).
  auto class_key = [&](const GarsideNormalForm& x) {
    auto xd = x;
    xd.append_delta(1);
    return std::min(x.key(), xd.key());
  };
  return build_ball<GarsideNormalForm, std::string>(
      GarsideNormalForm(ctx), "aAbB", radius, max_nodes, class_key,
      [](const GarsideNormalForm& x, int gen) {
        auto y = x;
        y.append_generator(kGens[gen]);
        return y;
      });
}

std::string edge_list(const LabeledGraph& g) {
  std::string out;
  for (const auto& e : g.edges) {
    out += std::to_string(e.source);
    out.push_back(' ');
    out += std::to_string(e.target);
    out.push_back(' ');
    out.push_back(e.label);
    out.push_back('\n');
  }
  return out;
}

namespace {

uint64_t mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<std::vector<int>> undirected_adjacency(const LabeledGraph& g) {
  std::vector<std::set<int>> nbr(g.nodes);
  for (const auto& e : g.edges)
    if (e.source != e.target) {
      nbr[e.source].insert(e.target);
      nbr[e.target].insert(e.source);
    }
  std::vector<std::vector<int>> adj(g.nodes);
  for (int v = 0; v < g.nodes; ++v) adj[v].assign(nbr[v].begin(), nbr[v].end());
  return adj;
}

}  // namespace

std::vector<int> degree_sequence(const LabeledGraph& g) {
  auto adj = undirected_adjacency(g);
  std::vector<int> deg;
  for (const auto& n : adj) deg.push_back(static_cast<int>(n.size()));
  std::sort(deg.begin(), deg.end());
  return deg;
}

uint64_t wl_hash(const LabeledGraph& g) {
  auto adj = undirected_adjacency(g);
  std::vector<uint64_t> color(g.nodes);
  for (int v = 0; v < g.nodes; ++v) color[v] = mix(adj[v].size());
  size_t classes = 0;
  for (int round = 0; round < g.nodes; ++round) {
    std::vector<uint64_t> next(g.nodes);
    for (int v = 0; v < g.nodes; ++v) {
      std::vector<uint64_t> around;
      for (int w : adj[v]) around.push_back(color[w]);
      std::sort(around.begin(), around.end());
      uint64_t h = mix(color[v] ^ 0x9e3779b97f4a7c15ull);
      for (uint64_t c : around) h = mix(h ^ c);
      next[v] = h;
    }
    color = std::move(next);
    std::set<uint64_t> distinct(color.begin(), color.end());
    if (distinct.size() == classes) break;  // partition stabilized
    classes = distinct.size();
  }
  std::sort(color.begin(), color.end());
  uint64_t h = mix(static_cast<uint64_t>(g.nodes));
  for (uint64_t c : color) h = mix(h ^ c);
  return h;
}

}  // namespace braidwalk::graphs
