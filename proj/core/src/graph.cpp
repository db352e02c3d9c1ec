#include "iepg/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "iepg/errors.hpp"

namespace iepg {

VertexSet make_vertex_set(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw InputError("graph order must be non-negative");
}

Graph::Graph(int n, std::span<const std::pair<int, int>> edges) : Graph(n) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

Graph::Graph(int n, std::initializer_list<std::pair<int, int>> edges)
    : Graph(n) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

void Graph::check_vertex(Vertex v) const {
  if (v < 1 || v > n_) {
    throw InputError("vertex " + std::to_string(v) + " outside 1.." +
                     std::to_string(n_));
  }
}

void Graph::add_edge(Vertex i, Vertex j) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw InputError("self-loop at vertex " + std::to_string(i));
  Edge e{std::min(i, j), std::max(i, j)};
  if (!edges_.insert(e).second) return;
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adj_[i - 1], j);
  insert_sorted(adj_[j - 1], i);
}

bool Graph::has_edge(Vertex i, Vertex j) const {
  if (i == j || i < 1 || j < 1 || i > n_ || j > n_) return false;
  return edges_.count(Edge{std::min(i, j), std::max(i, j)}) > 0;
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adj_[v - 1];
}

int Graph::degree(Vertex v) const {
  return static_cast<int>(neighbors(v).size());
}

bool Graph::is_connected() const {
  if (n_ == 0) return false;
  std::vector<bool> seen(n_ + 1, false);
  std::vector<Vertex> stack{1};
  seen[1] = true;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[v - 1]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n_;
}

bool Graph::is_tree() const {
  return is_connected() && static_cast<int>(edges_.size()) == n_ - 1;
}

bool Graph::contains_spanning(const Graph& g) const {
  if (g.order() != n_) return false;
  return std::includes(edges_.begin(), edges_.end(), g.edges().begin(),
                       g.edges().end());
}

Graph Graph::induced(const VertexSet& keep) const {
  std::map<Vertex, int> index;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    check_vertex(keep[i]);
    index[keep[i]] = static_cast<int>(i) + 1;
  }
  Graph out(static_cast<int>(keep.size()));
  for (const Edge& e : edges_) {
    auto iu = index.find(e.u);
    auto iv = index.find(e.v);
    if (iu != index.end() && iv != index.end()) {
      out.add_edge(iu->second, iv->second);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Family parse_family(const std::string& name) {
  static const std::map<std::string, Family> names{
      {"path", Family::path},
      {"cycle", Family::cycle},
      {"complete", Family::complete},
      {"complete_bipartite", Family::complete_bipartite},
      {"star", Family::star},
      {"generalized_star", Family::generalized_star},
      {"wheel", Family::wheel},
      {"empty", Family::empty},
      {"union", Family::empty},
  };
  auto it = names.find(name);
  if (it == names.end()) throw InputError("unknown graph family '" + name + "'");
  return it->second;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::complete_bipartite: return "complete_bipartite";
    case Family::star: return "star";
    case Family::generalized_star: return "generalized_star";
    case Family::wheel: return "wheel";
    case Family::empty: return "empty";
  }
  return "unknown";
}

Graph path_graph(int n) {
  if (n < 1) throw InputError("path needs n >= 1");
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle needs n >= 3");
  Graph g = path_graph(n);
  g.add_edge(n, 1);
  return g;
}

Graph complete_graph(int n) {
  if (n < 1) throw InputError("complete graph needs n >= 1");
  Graph g(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
  return g;
}

Graph empty_graph(int n) {
  if (n < 1) throw InputError("edgeless graph needs n >= 1");
  return Graph(n);
}

namespace {

void expect_params(Family kind, std::span<const int> params, std::size_t count) {
  if (params.size() != count) {
    throw InputError(family_name(kind) + " expects " + std::to_string(count) +
                     " parameter(s), got " + std::to_string(params.size()));
  }
}

}  // namespace

Graph make_family(Family kind, std::span<const int> params) {
  switch (kind) {
    case Family::path:
      expect_params(kind, params, 1);
      return path_graph(params[0]);
    case Family::cycle:
      expect_params(kind, params, 1);
      return cycle_graph(params[0]);
    case Family::complete:
      expect_params(kind, params, 1);
      return complete_graph(params[0]);
    case Family::empty:
      expect_params(kind, params, 1);
      return empty_graph(params[0]);
    case Family::complete_bipartite:
      expect_params(kind, params, 2);
      return join(empty_graph(params[0]), empty_graph(params[1]));
    case Family::star: {
      expect_params(kind, params, 1);
      if (params[0] < 1) throw InputError("star needs k >= 1");
      Graph g(params[0] + 1);
      for (int leaf = 2; leaf <= params[0] + 1; ++leaf) g.add_edge(1, leaf);
      return g;
    }
    case Family::generalized_star: {
      if (params.empty()) throw InputError("generalized_star needs arm lengths");
      int n = 1;
      for (int len : params) {
        if (len < 1) throw InputError("generalized_star arm lengths must be >= 1");
        n += len;
      }
      Graph g(n);
      int next = 2;
      for (int len : params) {
        Vertex prev = 1;
        for (int step = 0; step < len; ++step) {
          g.add_edge(prev, next);
          prev = next++;
        }
      }
      return g;
    }
    case Family::wheel: {
      expect_params(kind, params, 1);
      const int n = params[0];
      Graph g(n + 1);
      const Graph rim = cycle_graph(n);
      for (const Edge& e : rim.edges()) g.add_edge(e.u, e.v);
      for (int i = 1; i <= n; ++i) g.add_edge(i, n + 1);
      return g;
    }
  }
  throw InputError("unknown family");
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  Graph out(g.order() + h.order());
  for (const Edge& e : g.edges()) out.add_edge(e.u, e.v);
  for (const Edge& e : h.edges()) out.add_edge(e.u + g.order(), e.v + g.order());
  return out;
}

std::vector<Component> components(const Graph& g) {
  std::vector<int> label(g.order() + 1, 0);
  std::vector<Component> out;
  for (Vertex start = 1; start <= g.order(); ++start) {
    if (label[start] != 0) continue;
    VertexSet members;
    std::vector<Vertex> stack{start};
    label[start] = static_cast<int>(out.size()) + 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (label[w] == 0) {
          label[w] = label[start];
          stack.push_back(w);
        }
      }
    }
    members = make_vertex_set(std::move(members));
    out.push_back(Component{g.induced(members), members});
  }
  return out;
}

PartialJoin partial_join(const Graph& g, const VertexSet& a, const Graph& h,
                         const VertexSet& b) {
  PartialJoin out{disjoint_union(g, h), g.order(), a.empty() || b.empty()};
  for (Vertex x : a) {
    if (x < 1 || x > g.order()) throw InputError("partial join: a not in V(g)");
    for (Vertex y : b) {
      if (y < 1 || y > h.order()) throw InputError("partial join: b not in V(h)");
      out.graph.add_edge(x, y + g.order());
    }
  }
  return out;
}

Graph join(const Graph& g, const Graph& h) {
  VertexSet all_g(g.order()), all_h(h.order());
  for (int i = 0; i < g.order(); ++i) all_g[i] = i + 1;
  for (int i = 0; i < h.order(); ++i) all_h[i] = i + 1;
  return partial_join(g, all_g, h, all_h).graph;
}

VertexSet vertex_boundary(const Graph& g, const VertexSet& w) {
  std::vector<bool> in_w(g.order() + 1, false);
  for (Vertex v : w) {
    if (v < 1 || v > g.order()) throw InputError("vertex_boundary: w not in V(g)");
    in_w[v] = true;
  }
  VertexSet out;
  for (Vertex v = 1; v <= g.order(); ++v) {
    if (in_w[v]) continue;
    for (Vertex x : g.neighbors(v)) {
      if (in_w[x]) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

Graph spanning_tree(const Graph& g) {
  if (!g.is_connected()) throw InputError("spanning_tree: graph is disconnected");
  Graph tree(g.order());
  std::vector<bool> seen(g.order() + 1, false);
  std::queue<Vertex> queue;
  queue.push(1);
  seen[1] = true;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        tree.add_edge(v, w);
        queue.push(w);
      }
    }
  }
  return tree;
}

std::vector<Vertex> tree_path(const Graph& tree, Vertex i, Vertex j) {
  if (!tree.is_tree()) throw InputError("tree_path: input is not a tree");
  std::vector<Vertex> parent(tree.order() + 1, 0);
  std::vector<Vertex> stack{j};
  parent[j] = j;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : tree.neighbors(v)) {
      if (parent[w] == 0) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  if (parent[i] == 0) throw InputError("tree_path: vertex out of range");
  std::vector<Vertex> out{i};
  while (out.back() != j) out.push_back(parent[out.back()]);
  return out;
}

int tree_distance(const Graph& tree, Vertex i, Vertex j) {
  return static_cast<int>(tree_path(tree, i, j).size()) - 1;
}

int diameter(const Graph& tree) {
  if (!tree.is_tree()) throw InputError("diameter: input is not a tree");
  auto farthest = [&](Vertex from) {
    std::vector<int> dist(tree.order() + 1, -1);
    std::queue<Vertex> queue;
    queue.push(from);
    dist[from] = 0;
    Vertex last = from;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop();
      last = dist[v] > dist[last] ? v : last;
      for (Vertex w : tree.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push(w);
        }
      }
    }
    return std::pair{last, dist[last]};
  };
  return farthest(farthest(1).first).second;
}

bool is_path_graph(const Graph& g) {
  if (!g.is_tree()) return false;
  for (Vertex v = 1; v <= g.order(); ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

bool is_cycle_graph(const Graph& g) {
  if (g.order() < 3 || !g.is_connected()) return false;
  for (Vertex v = 1; v <= g.order(); ++v)
    if (g.degree(v) != 2) return false;
  return true;
}

bool is_complete_graph(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  return n >= 1 && g.size() == n * (n - 1) / 2;
}

}  // namespace iepg
