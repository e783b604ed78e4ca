#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "braidwalk/group.hpp"

namespace braidwalk::graphs {

// One labelled directed edge of a ball; labels are generator letters
// ('a'/'A'/'b'/'B' for the Artin groups, 'c'/'C'/'d'/'D' for the free
// product of cyclic groups).
struct Edge {
  int source = 0;
  int target = 0;
  char label = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A radius-R ball around the identity.  Node 0 is the identity; ids are
// assigned in breadth-first order with a fixed generator order, so equal
// rooted labelled graphs get byte-identical edge lists.
struct LabeledGraph {
  int nodes = 0;
  std::vector<Edge> edges;
  std::vector<int> distance;  // from node 0
};

// Ball of the Cayley graph of ctx over S = {a, a^-1, b, b^-1}.
LabeledGraph cayley_ball(const GroupContext& ctx, int radius,
                         size_t max_nodes = 5'000'000);

// Ball of the Cayley graph of Z/k * Z/k over {c, c^-1, d, d^-1}.
LabeledGraph fp_cayley_ball(int k, int radius, size_t max_nodes = 5'000'000);

// Ball of the Schreier graph S(C_k, S): the action of S on the classes
// {g, g Delta} of A_k/Z.  For even k Delta is already trivial there and
// this is the plain Cayley ball.
LabeledGraph schreier_ball(int k, int radius, size_t max_nodes = 5'000'000);

// "source target label" lines, one edge per line, in emission order.
std::string edge_list(const LabeledGraph& g);

// Color-refinement hash of the underlying unlabelled undirected graph,
// refined to stability.  Platform-independent mixing; equal hashes are the
// acceptance notion of "isomorphic as unlabelled graphs" for these balls.
uint64_t wl_hash(const LabeledGraph& g);

// Sorted degree sequence of the undirected simple graph.
std::vector<int> degree_sequence(const LabeledGraph& g);

}  // namespace braidwalk::graphs
