#include "braidwalk/bfs.hpp"

#include <deque>

namespace braidwalk {

std::unordered_map<std::string, int> bfs_distances(const GroupContext& ctx,
                                                   int radius,
                                                   size_t max_nodes) {
  std::unordered_map<std::string, int> dist;
  std::deque<GarsideNormalForm> frontier;
  GarsideNormalForm id(ctx);
  dist.emplace(id.key(), 0);
  frontier.push_back(id);
  for (int d = 0; d < radius && !frontier.empty(); ++d) {
    std::deque<GarsideNormalForm> next;
    for (const auto& x : frontier) {
      for (Gen g : {Gen::A, Gen::AInv, Gen::B, Gen::BInv}) {
        GarsideNormalForm y = x;
        y.append_generator(g);
        auto [it, inserted] = dist.emplace(y.key(), d + 1);
        if (inserted) {
          if (dist.size() > max_nodes)
            throw BallTooLarge("bfs_distances: ball exceeds node budget");
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace braidwalk
