#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace iepg {

/// Vertices are labelled 1..n.
using Vertex = int;

/// Sorted, duplicate-free list of vertex labels.
using VertexSet = std::vector<Vertex>;

/// Sorts and deduplicates.
VertexSet make_vertex_set(std::vector<Vertex> members);

struct Edge {
  Vertex u = 0;
  Vertex v = 0;  // u < v

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on vertices 1..n.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::span<const std::pair<int, int>> edges);
  Graph(int n, std::initializer_list<std::pair<int, int>> edges);

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }

  /// Throws InputError on loops, out-of-range labels. Duplicates are ignored.
  void add_edge(Vertex i, Vertex j);
  bool has_edge(Vertex i, Vertex j) const;

  const std::set<Edge>& edges() const noexcept { return edges_; }
  /// Ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const;
  int degree(Vertex v) const;

  bool is_connected() const;
  bool is_tree() const;
  /// g is a spanning subgraph of *this: same order and E(g) ⊆ E(*this).
  bool contains_spanning(const Graph& g) const;

  /// Subgraph induced on `keep`; vertex keep[i] becomes i+1.
  Graph induced(const VertexSet& keep) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::set<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

// ---------------------------------------------------------------------------
// Standard families

enum class Family {
  path,
  cycle,
  complete,
  complete_bipartite,
  star,
  generalized_star,
  wheel,
  empty,  // nK1, the edgeless graph ("union" of isolated vertices)
};

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// path [n]; cycle [n>=3]; complete [n]; complete_bipartite [m,n] = mK1 ∨ nK1;
/// star [k] = K_{1,k} with hub 1; generalized_star [l1,...,lk]: hub 1 and
/// arms of the given lengths laid out consecutively outward from the hub;
/// wheel [n] = C_n plus hub n+1; empty [n] = nK1.
Graph make_family(Family kind, std::span<const int> params);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph empty_graph(int n);

/// Second operand relabelled by +|g|.
Graph disjoint_union(const Graph& g, const Graph& h);

/// A connected component with the map back to the ambient labels:
/// component vertex i corresponds to `vertices[i-1]`.
struct Component {
  Graph graph;
  VertexSet vertices;
};

/// Ordered by smallest ambient label.
std::vector<Component> components(const Graph& g);

Graph join(const Graph& g, const Graph& h);

struct PartialJoin {
  Graph graph;
  int h_offset = 0;           // h vertex i became h_offset + i
  bool cross_empty = false;   // a or b empty: no cross edges were added
};

/// Disjoint union plus all edges a × (b + |g|).
PartialJoin partial_join(const Graph& g, const VertexSet& a, const Graph& h,
                         const VertexSet& b);

/// Vertices outside w adjacent to some member of w.
VertexSet vertex_boundary(const Graph& g, const VertexSet& w);

/// Breadth-first spanning tree from vertex 1, neighbours visited in
/// ascending order.
Graph spanning_tree(const Graph& g);

/// Vertex sequence of the unique path from i to j in a tree.
std::vector<Vertex> tree_path(const Graph& tree, Vertex i, Vertex j);
int tree_distance(const Graph& tree, Vertex i, Vertex j);
/// Largest pairwise distance in a tree.
int diameter(const Graph& tree);

bool is_path_graph(const Graph& g);
bool is_cycle_graph(const Graph& g);
bool is_complete_graph(const Graph& g);

}  // namespace iepg
