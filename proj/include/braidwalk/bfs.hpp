#pragma once

#include <cstdint>
#include <unordered_map>

#include "braidwalk/group.hpp"

namespace braidwalk {

// Breadth-first distances from the identity in the Cayley graph over
// {a, a^-1, b, b^-1}, keyed by canonical normal-form key.  Throws
// BallTooLarge past max_nodes.
std::unordered_map<std::string, int> bfs_distances(const GroupContext& ctx,
                                                   int radius,
                                                   size_t max_nodes = 50'000'000);

}  // namespace braidwalk
