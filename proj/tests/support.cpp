#include "support.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

namespace testsupport {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<std::pair<int, int>>> oracle_edge_classes(
    const Preorder& p) {
  const int n = p.size();
  std::vector<std::pair<int, int>> simple;  // unordered comparable pairs
  std::map<std::pair<int, int>, int> simple_id;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (p.comparable(x, y)) {
        simple_id[{x, y}] = int(simple.size());
        simple.emplace_back(x, y);
      }

  UnionFind uf(int(simple.size()));

  // Depth-first enumeration of vertex-simple cycles, each rooted at its
  // least vertex.  Every consecutive edge of a found cycle merges.
  std::vector<int> path;
  std::vector<char> on_path(std::size_t(n), 0);
  auto edge_of = [&](int a, int b) {
    return simple_id.at({std::min(a, b), std::max(a, b)});
  };
  auto walk = [&](auto&& self, int root, int v) -> void {
    for (int w = 0; w < n; ++w) {
      if (w == v || !p.comparable(v, w)) continue;
      if (w == root && path.size() >= 3) {
        for (std::size_t k = 0; k + 1 < path.size(); ++k)
          uf.merge(edge_of(path[k], path[k + 1]), edge_of(path[0], path[1]));
        uf.merge(edge_of(path.back(), root), edge_of(path[0], path[1]));
        continue;
      }
      if (w <= root || on_path[std::size_t(w)]) continue;
      on_path[std::size_t(w)] = 1;
      path.push_back(w);
      self(self, root, w);
      path.pop_back();
      on_path[std::size_t(w)] = 0;
    }
  };
  for (int root = 0; root < n; ++root) {
    path = {root};
    walk(walk, root, root);
  }

  // Group the strict edges by the merged underlying pair.  A doubled
  // pair needs no merging: its two orientations share the pair already.
  std::map<int, std::vector<std::pair<int, int>>> grouped;
  for (auto [x, y] : p.strict_edges())
    grouped[uf.find(edge_of(x, y))].push_back({x, y});

  std::vector<std::vector<std::pair<int, int>>> classes;
  for (auto& [root, edges] : grouped) classes.push_back(edges);
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

std::vector<int> oracle_vertex_set(const Preorder& p,
                                   const std::vector<int>& class_vertices,
                                   int x) {
  std::set<int> out = {x};
  std::vector<int> frontier;
  for (int v : class_vertices)
    if (v != x && p.comparable(x, v)) frontier.push_back(v);
  while (!frontier.empty()) {
    int v = frontier.back();
    frontier.pop_back();
    if (!out.insert(v).second) continue;
    for (int w = 0; w < p.size(); ++w)
      if (w != x && w != v && p.comparable(v, w) && !out.count(w))
        frontier.push_back(w);
  }
  return {out.begin(), out.end()};
}

std::vector<int> oracle_owner_set(const Preorder& p,
                                  const std::vector<int>& class_vertices,
                                  int x) {
  auto blocked = [&](int v) {
    return std::find(class_vertices.begin(), class_vertices.end(), v) !=
           class_vertices.end();
  };
  std::set<int> out = {x};
  std::vector<int> frontier = {x};
  while (!frontier.empty()) {
    int v = frontier.back();
    frontier.pop_back();
    for (int w = 0; w < p.size(); ++w)
      if (w != v && p.comparable(v, w) && !blocked(w) && out.insert(w).second)
        frontier.push_back(w);
  }
  return {out.begin(), out.end()};
}

std::shared_ptr<const Preorder> random_preorder(std::mt19937_64& rng,
                                                int max_n) {
  int n = 1 + int(rng() % std::uint64_t(max_n));
  std::vector<std::pair<int, int>> gen;
  if (n > 1) {
    int edges = int(rng() % std::uint64_t(2 * n));
    for (int k = 0; k < edges; ++k) {
      int x = int(rng() % std::uint64_t(n));
      int y = int(rng() % std::uint64_t(n));
      if (x == y) continue;
      gen.emplace_back(x, y);
      if (rng() % 5 == 0) gen.emplace_back(y, x);  // equivalence loop
    }
  }
  return Preorder::from_generators(n, gen);
}

StructuredSample random_structured_map(std::mt19937_64& rng,
                                       const AlgebraContext& ctx) {
  const Preorder& p = *ctx.carrier;
  StructuredSample sample(ctx);

  auto small_value = [&]() {
    switch (rng() % 6) {
      case 0:
        return RingValue::from_int(ctx.ring, Int(1));
      case 1:
        return RingValue::from_int(ctx.ring, Int(-1));
      case 2:
        return RingValue::from_int(ctx.ring, Int(2));
      case 3:
        return RingValue::from_int(ctx.ring, Int(3));
      case 4:
        return RingValue::poly({Int(0), Int(1)});  // t
      default:
        return RingValue::poly({Int(1), Int(0), Int(1)});  // 1 + t^2
    }
  };

  FiElement alpha = ctx.zero();
  for (auto [x, y] : p.strict_edges())
    if (rng() % 2 == 0) alpha.set(x, y, small_value());
  sample.alpha_strict = alpha;
  for (int x = 0; x < p.size(); ++x)
    if (rng() % 4 == 0) alpha.set(x, x, small_value());

  // A potential guarantees chain additivity of the edge weighting.
  std::vector<RingValue> sigma;
  for (int x = 0; x < p.size(); ++x) sigma.push_back(small_value());
  std::map<std::pair<int, int>, RingValue> weights;
  for (auto [x, y] : p.strict_edges()) {
    RingValue w = sigma[std::size_t(x)] - sigma[std::size_t(y)];
    if (!w.is_zero()) weights[{x, y}] = w;
  }
  sample.table = TransitiveTable::build(ctx.carrier, ctx.ring, weights);

  for (int cls = 0; cls < ctx.classes->class_count(); ++cls) {
    switch (rng() % 3) {
      case 0:
        sample.by_class[cls] = AdditiveDerivationSpec::zero();
        break;
      case 1:
        sample.by_class[cls] =
            AdditiveDerivationSpec::poly_times_ddt({Int(1)});
        break;
      default:
        sample.by_class[cls] = AdditiveDerivationSpec::poly_times_ddt(
            {Int(rng() % 3), Int(1 + int(rng() % 2))});
        break;
    }
  }

  for (int c = 0; c < p.component_count(); ++c)
    if (rng() % 2 == 0)
      sample.trace[c] = {Int(0), Int(1 + int(rng() % 2)), Int(rng() % 2)};

  sample.spec.add(fialg::InnerTerm{alpha})
      .add(fialg::TransitiveTerm{sample.table})
      .add(fialg::AdditiveInducedTerm{sample.by_class})
      .add(fialg::CentralTraceTerm{sample.trace});
  return sample;
}

CliResult run_cli(const std::string& args) {
  CliResult result;
  std::string command = std::string(FIALG_CLI_PATH) + " " + args;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    result.output.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status)
                                                        : -1;
  return result;
}

}  // namespace testsupport
