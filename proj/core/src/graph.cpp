#include "lemmaforge/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

namespace lemmaforge {

std::vector<int> strongly_connected_components(size_t n,
                                               const std::vector<std::pair<int, int>>& edges) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(n);
  for (auto [u, v] : edges) boost::add_edge(u, v, g);
  std::vector<int> comp(n, 0);
  if (n > 0) boost::strong_components(g, comp.data());
  return comp;
}

}  // namespace lemmaforge
