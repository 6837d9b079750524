#include "fialg/preorder.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace fialg {

namespace {

std::string pair_text(int x, int y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

}  // namespace

int Preorder::check_vertex(int x) const {
  if (x < 0 || x >= n_)
    throw ValidationError("vertex " + std::to_string(x) +
                          " out of range [0, " + std::to_string(n_) + ")");
  return x;
}

Preorder::Preorder(int n, std::vector<char> leq)
    : n_(n), leq_(std::move(leq)) {
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (x != y && leq_[x * n_ + y]) strict_edges_.push_back({x, y});

  component_of_.assign(n_, -1);
  for (int start = 0; start < n_; ++start) {
    if (component_of_[start] >= 0) continue;
    int label = int(component_vertices_.size());
    component_vertices_.push_back({});
    std::vector<int> frontier{start};
    component_of_[start] = label;
    while (!frontier.empty()) {
      int x = frontier.back();
      frontier.pop_back();
      component_vertices_[label].push_back(x);
      for (int y = 0; y < n_; ++y) {
        if (component_of_[y] < 0 && comparable(x, y)) {
          component_of_[y] = label;
          frontier.push_back(y);
        }
      }
    }
    std::sort(component_vertices_[label].begin(),
              component_vertices_[label].end());
  }
}

std::shared_ptr<const Preorder> Preorder::from_generators(
    int n, std::span<const std::pair<int, int>> pairs) {
  if (n < 0) throw ValidationError("carrier size must be nonnegative");
  std::vector<char> leq(std::size_t(n) * n, 0);
  for (int x = 0; x < n; ++x) leq[std::size_t(x) * n + x] = 1;
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw ValidationError("generator pair " + pair_text(x, y) +
                            " out of range for " + std::to_string(n) +
                            " vertices");
    leq[std::size_t(x) * n + y] = 1;
  }
  // Warshall closure.
  for (int z = 0; z < n; ++z)
    for (int x = 0; x < n; ++x)
      if (leq[std::size_t(x) * n + z])
        for (int y = 0; y < n; ++y)
          if (leq[std::size_t(z) * n + y]) leq[std::size_t(x) * n + y] = 1;
  return std::shared_ptr<const Preorder>(new Preorder(n, std::move(leq)));
}

std::shared_ptr<const Preorder> Preorder::from_relation(
    int n, std::span<const std::pair<int, int>> pairs) {
  if (n < 0) throw ValidationError("carrier size must be nonnegative");
  std::vector<char> leq(std::size_t(n) * n, 0);
  for (int x = 0; x < n; ++x) leq[std::size_t(x) * n + x] = 1;
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw ValidationError("relation pair " + pair_text(x, y) +
                            " out of range for " + std::to_string(n) +
                            " vertices");
    leq[std::size_t(x) * n + y] = 1;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (leq[std::size_t(x) * n + y])
        for (int z = 0; z < n; ++z)
          if (leq[std::size_t(y) * n + z] && !leq[std::size_t(x) * n + z])
            throw ValidationError("relation is not transitive: " +
                                  pair_text(x, y) + " and " + pair_text(y, z) +
                                  " hold but " + pair_text(x, z) +
                                  " is missing");
  return std::shared_ptr<const Preorder>(new Preorder(n, std::move(leq)));
}

const std::vector<int>& Preorder::component_vertices(int c) const {
  if (c < 0 || c >= component_count())
    throw ValidationError("component " + std::to_string(c) +
                          " out of range");
  return component_vertices_[c];
}

bool Preorder::is_full_component(int c) const {
  const auto& verts = component_vertices(c);
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (!equivalent(verts[i], verts[j])) return false;
  return true;
}

namespace {

// Biconnected blocks of an undirected multigraph, Tarjan style.  Each
// edge lands in exactly one block; parallel copies of one pair always
// share a block (they close a two-edge cycle).
struct BlockFinder {
  int n;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (other, edge id)
  std::vector<int> disc, low;
  std::vector<int> edge_block;
  std::vector<int> edge_stack;
  int timer = 0;
  int blocks = 0;

  explicit BlockFinder(int n_, int edge_count)
      : n(n_), adj(n_), disc(n_, -1), low(n_, 0), edge_block(edge_count, -1) {}

  void add_edge(int id, int x, int y) {
    adj[x].push_back({y, id});
    adj[y].push_back({x, id});
  }

  void pop_block(int until_edge) {
    int block = blocks++;
    while (true) {
      int e = edge_stack.back();
      edge_stack.pop_back();
      edge_block[e] = block;
      if (e == until_edge) break;
    }
  }

  void dfs(int x, int parent_edge) {
    disc[x] = low[x] = timer++;
    for (auto [y, e] : adj[x]) {
      if (e == parent_edge) continue;
      if (disc[y] < 0) {
        edge_stack.push_back(e);
        dfs(y, e);
        low[x] = std::min(low[x], low[y]);
        if (low[y] >= disc[x]) pop_block(e);
      } else if (disc[y] < disc[x]) {
        edge_stack.push_back(e);
        low[x] = std::min(low[x], disc[y]);
      }
    }
  }

  void run() {
    for (int x = 0; x < n; ++x)
      if (disc[x] < 0) dfs(x, -1);
  }
};

}  // namespace

EdgeClassification::EdgeClassification(std::shared_ptr<const Preorder> carrier)
    : carrier_(std::move(carrier)) {
  if (!carrier_) throw ValidationError("edge classification needs a carrier");
  const Preorder& p = *carrier_;
  const int n = p.size();

  // Comparability multigraph: one edge per comparable pair, doubled
  // when the pair is mutually comparable.
  std::vector<std::pair<int, int>> graph_edges;
  std::map<std::pair<int, int>, int> pair_first_edge;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (!p.comparable(x, y)) continue;
      pair_first_edge[{x, y}] = int(graph_edges.size());
      graph_edges.push_back({x, y});
      if (p.equivalent(x, y)) graph_edges.push_back({x, y});
    }
  }

  BlockFinder finder(n, int(graph_edges.size()));
  for (int e = 0; e < int(graph_edges.size()); ++e)
    finder.add_edge(e, graph_edges[e].first, graph_edges[e].second);
  finder.run();

  std::vector<int> block_size(finder.blocks, 0);
  for (int b : finder.edge_block) ++block_size[b];

  // Group strict edges: cyclic blocks collect, bridges stay single.
  const auto& strict = p.strict_edges();
  edge_class_.assign(strict.size(), -1);
  std::map<int, std::vector<int>> by_block;  // cyclic block -> strict edge idx
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < int(strict.size()); ++i) {
    auto [x, y] = strict[i];
    std::pair<int, int> key{std::min(x, y), std::max(x, y)};
    int block = finder.edge_block[pair_first_edge.at(key)];
    if (block_size[block] >= 2)
      by_block[block].push_back(i);
    else
      groups.push_back({i});
  }
  for (auto& [block, members] : by_block) groups.push_back(members);

  // Number classes by their least member edge (members are already
  // ascending because strict_edges() is lexicographic).
  std::sort(groups.begin(), groups.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              return strict[a.front()] < strict[b.front()];
            });

  classes_at_.assign(n, {});
  component_classes_.assign(p.component_count(), {});
  for (int cls = 0; cls < int(groups.size()); ++cls) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> vertices;
    for (int i : groups[cls]) {
      edge_class_[i] = cls;
      edges.push_back(strict[i]);
      vertices.push_back(strict[i].first);
      vertices.push_back(strict[i].second);
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()),
                   vertices.end());
    for (int v : vertices) classes_at_[v].push_back(cls);
    class_component_.push_back(p.component_of(vertices.front()));
    component_classes_[class_component_.back()].push_back(cls);
    class_edges_.push_back(std::move(edges));
    class_vertices_.push_back(std::move(vertices));
  }
}

int EdgeClassification::check_class(int cls) const {
  if (cls < 0 || cls >= class_count())
    throw ValidationError("edge class " + std::to_string(cls) +
                          " out of range");
  return cls;
}

int EdgeClassification::class_of(int x, int y) const {
  const Preorder& p = *carrier_;
  if (!p.strict(x, y))
    throw ValidationError("no strict edge " + pair_text(x, y));
  const auto& strict = p.strict_edges();
  auto it = std::lower_bound(strict.begin(), strict.end(),
                             std::pair<int, int>{x, y});
  return edge_class_[it - strict.begin()];
}

const std::vector<std::pair<int, int>>& EdgeClassification::class_edges(
    int cls) const {
  return class_edges_[check_class(cls)];
}

std::pair<int, int> EdgeClassification::representative(int cls) const {
  return class_edges_[check_class(cls)].front();
}

const std::vector<int>& EdgeClassification::class_vertices(int cls) const {
  return class_vertices_[check_class(cls)];
}

int EdgeClassification::class_component(int cls) const {
  return class_component_[check_class(cls)];
}

const std::vector<int>& EdgeClassification::classes_at(int x) const {
  carrier_->component_of(x);  // range check
  return classes_at_[x];
}

const std::vector<int>& EdgeClassification::component_classes(int c) const {
  if (c < 0 || c >= carrier_->component_count())
    throw ValidationError("component " + std::to_string(c) + " out of range");
  return component_classes_[c];
}

std::vector<int> EdgeClassification::vertex_set(int x, int cls) const {
  check_class(cls);
  const Preorder& p = *carrier_;
  const auto& cvs = class_vertices_[cls];
  if (!std::binary_search(cvs.begin(), cvs.end(), x))
    throw ValidationError("vertex " + std::to_string(x) +
                          " is not a vertex of class " + std::to_string(cls));
  std::vector<char> seen(p.size(), 0);
  std::vector<int> frontier;
  for (int v : cvs)
    if (v != x && p.comparable(x, v) && !seen[v]) {
      seen[v] = 1;
      frontier.push_back(v);
    }
  while (!frontier.empty()) {
    int u = frontier.back();
    frontier.pop_back();
    for (int w = 0; w < p.size(); ++w)
      if (w != x && !seen[w] && p.comparable(u, w)) {
        seen[w] = 1;
        frontier.push_back(w);
      }
  }
  std::vector<int> out{x};
  for (int v : cvs)
    if (!seen[v] && v != x) out.push_back(v);
  for (int v = 0; v < p.size(); ++v)
    if (seen[v]) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<int, std::vector<int>>>
EdgeClassification::vertex_partition(int cls) const {
  check_class(cls);
  const Preorder& p = *carrier_;
  const auto& cvs = class_vertices_[cls];
  std::vector<char> in_class(p.size(), 0);
  for (int v : cvs) in_class[v] = 1;

  std::vector<std::pair<int, std::vector<int>>> out;
  for (int x : cvs) {
    std::vector<char> seen(p.size(), 0);
    std::vector<int> frontier{x};
    std::vector<int> owned{x};
    seen[x] = 1;
    while (!frontier.empty()) {
      int u = frontier.back();
      frontier.pop_back();
      for (int w = 0; w < p.size(); ++w) {
        if (seen[w] || in_class[w] || !p.comparable(u, w)) continue;
        seen[w] = 1;
        owned.push_back(w);
        frontier.push_back(w);
      }
    }
    std::sort(owned.begin(), owned.end());
    out.push_back({x, std::move(owned)});
  }
  return out;
}

}  // namespace fialg
