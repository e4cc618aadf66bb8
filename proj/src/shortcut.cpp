#include "hyptile/shortcut.hpp"

#include "hyptile/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hyptile {

namespace {

// A subproblem: global ids and parents local to the subproblem (-1 = none).
struct SubForest {
  std::vector<int> ids;
  std::vector<int> parent;
};

using EdgeSet = std::set<std::pair<int, int>>;

// Children lists and a parents-before-children order.
void topology(const SubForest& f, std::vector<std::vector<int>>& kids, std::vector<int>& order) {
  const std::size_t n = f.ids.size();
  kids.assign(n, {});
  std::vector<int> roots;
  for (std::size_t i = 0; i < n; ++i) {
    if (f.parent[i] < 0) roots.push_back(static_cast<int>(i));
    else kids[static_cast<std::size_t>(f.parent[i])].push_back(static_cast<int>(i));
  }
  order.clear();
  order.reserve(n);
  std::vector<int> stack(roots.rbegin(), roots.rend());
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ch = kids[static_cast<std::size_t>(v)];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
}

int height(const SubForest& f, const std::vector<int>& order) {
  std::vector<int> depth(f.ids.size(), 0);
  int h = 0;
  for (int v : order) {
    const int p = f.parent[static_cast<std::size_t>(v)];
    if (p >= 0) depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(p)] + 1;
    h = std::max(h, depth[static_cast<std::size_t>(v)]);
  }
  return h;
}

// Induced subforest on a subset: parent = nearest ancestor inside the subset.
SubForest induced(const SubForest& f, const std::vector<int>& order, const std::vector<char>& keep) {
  const std::size_t n = f.ids.size();
  std::vector<int> local(n, -1);
  std::vector<int> nearest(n, -1);  // nearest kept ancestor-or-self, in f's indexing
  SubForest out;
  for (int v : order) {
    const auto uv = static_cast<std::size_t>(v);
    const int p = f.parent[uv];
    const int up = p >= 0 ? nearest[static_cast<std::size_t>(p)] : -1;
    if (keep[uv]) {
      local[uv] = static_cast<int>(out.ids.size());
      out.ids.push_back(f.ids[uv]);
      out.parent.push_back(up >= 0 ? local[static_cast<std::size_t>(up)] : -1);
      nearest[uv] = v;
    } else {
      nearest[uv] = up;
    }
  }
  return out;
}

void closure(const SubForest& f, const std::vector<int>& order, EdgeSet& edges) {
  for (int v : order) {
    int a = f.parent[static_cast<std::size_t>(v)];
    while (a >= 0) {
      edges.emplace(f.ids[static_cast<std::size_t>(v)], f.ids[static_cast<std::size_t>(a)]);
      a = f.parent[static_cast<std::size_t>(a)];
    }
  }
}

void solve(const SubForest& f, int k, EdgeSet& edges);

// Splits f at `removed` vertices into connected components of the rest.
std::vector<SubForest> components(const SubForest& f, const std::vector<int>& order,
                                  const std::vector<char>& removed) {
  const std::size_t n = f.ids.size();
  std::vector<int> comp(n, -1);
  std::vector<SubForest> out;
  std::vector<int> local(n, -1);
  for (int v : order) {
    const auto uv = static_cast<std::size_t>(v);
    if (removed[uv]) continue;
    const int p = f.parent[uv];
    int c;
    if (p >= 0 && !removed[static_cast<std::size_t>(p)]) {
      c = comp[static_cast<std::size_t>(p)];
      out[static_cast<std::size_t>(c)].parent.push_back(local[static_cast<std::size_t>(p)]);
    } else {
      c = static_cast<int>(out.size());
      out.emplace_back();
      out.back().parent.push_back(-1);
    }
    comp[uv] = c;
    local[uv] = static_cast<int>(out[static_cast<std::size_t>(c)].ids.size());
    out[static_cast<std::size_t>(c)].ids.push_back(f.ids[uv]);
  }
  return out;
}

void solve_two(const SubForest& f, EdgeSet& edges) {
  std::vector<std::vector<int>> kids;
  std::vector<int> order;
  topology(f, kids, order);
  if (height(f, order) <= 2) return;
  const std::size_t n = f.ids.size();
  // Work per tree: the forest's components are independent.
  std::vector<int> size(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int p = f.parent[static_cast<std::size_t>(*it)];
    if (p >= 0) size[static_cast<std::size_t>(p)] += size[static_cast<std::size_t>(*it)];
  }
  std::vector<char> removed(n, 0);
  for (int r : order) {
    if (f.parent[static_cast<std::size_t>(r)] >= 0) continue;
    const int total = size[static_cast<std::size_t>(r)];
    // Centroid: walk toward a heavy child while one exists.
    int c = r;
    while (true) {
      int heavy = -1;
      for (int ch : kids[static_cast<std::size_t>(c)])
        if (2 * size[static_cast<std::size_t>(ch)] > total) heavy = ch;
      if (heavy < 0) break;
      c = heavy;
    }
    removed[static_cast<std::size_t>(c)] = 1;
    const int gc = f.ids[static_cast<std::size_t>(c)];
    for (int a = f.parent[static_cast<std::size_t>(c)]; a >= 0; a = f.parent[static_cast<std::size_t>(a)])
      edges.emplace(gc, f.ids[static_cast<std::size_t>(a)]);
    std::vector<int> stack(kids[static_cast<std::size_t>(c)]);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      edges.emplace(f.ids[static_cast<std::size_t>(v)], gc);
      for (int ch : kids[static_cast<std::size_t>(v)]) stack.push_back(ch);
    }
  }
  for (const auto& comp : components(f, order, removed)) solve_two(comp, edges);
}

void solve(const SubForest& f, int k, EdgeSet& edges) {
  if (f.ids.empty()) return;
  if (k == 2) {
    solve_two(f, edges);
    return;
  }
  std::vector<std::vector<int>> kids;
  std::vector<int> order;
  topology(f, kids, order);
  if (height(f, order) <= k) return;
  if (k == 1) {
    closure(f, order, edges);
    return;
  }
  const std::size_t n = f.ids.size();
  const double ln = static_cast<double>(n);
  const int s = k == 3 ? static_cast<int>(std::ceil(std::sqrt(ln)))
                       : std::max(2, static_cast<int>(std::ceil(std::log2(ln))));

  // Greedy bottom-up marking: a vertex is marked once s unmarked vertices
  // have accumulated in its subtree.
  std::vector<char> marked(n, 0);
  std::vector<int> count(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    for (int ch : kids[v])
      if (!marked[static_cast<std::size_t>(ch)]) count[v] += count[static_cast<std::size_t>(ch)];
    if (count[v] >= s) marked[v] = 1;
  }
  // LCA closure: a vertex with marked vertices below two different children is marked.
  std::vector<char> below(n, 0);  // subtree holds a marked vertex
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    int branches = 0;
    for (int ch : kids[v])
      if (below[static_cast<std::size_t>(ch)]) ++branches;
    if (branches >= 2) marked[v] = 1;
    below[v] = marked[v] || branches > 0;
  }

  // u -> nearest marked strict ancestor.
  std::vector<int> nearest(n, -1);  // nearest marked strict ancestor
  for (int v : order) {
    const auto uv = static_cast<std::size_t>(v);
    const int p = f.parent[uv];
    if (p < 0) continue;
    const auto up = static_cast<std::size_t>(p);
    nearest[uv] = marked[up] ? p : nearest[up];
    if (nearest[uv] >= 0) edges.emplace(f.ids[uv], f.ids[static_cast<std::size_t>(nearest[uv])]);
  }
  // A marked vertex reaches every unmarked ancestor up to the next marked one.
  for (int v : order) {
    const auto uv = static_cast<std::size_t>(v);
    if (!marked[uv]) continue;
    for (int a = f.parent[uv]; a >= 0 && !marked[static_cast<std::size_t>(a)]; a = f.parent[static_cast<std::size_t>(a)])
      edges.emplace(f.ids[uv], f.ids[static_cast<std::size_t>(a)]);
  }

  solve(induced(f, order, marked), k - 2, edges);
  for (const auto& comp : components(f, order, marked)) solve(comp, k, edges);
}

}  // namespace

ShortcutSet shortcut_forest(const std::vector<int>& forest, int k) {
  if (k < 1) throw InvalidInput("shortcut_forest: k must be >= 1");
  const std::size_t n = forest.size();
  for (std::size_t v = 0; v < n; ++v)
    if (forest[v] < -1 || forest[v] >= static_cast<int>(n) || forest[v] == static_cast<int>(v))
      throw InvalidInput("shortcut_forest: parent id out of range");
  // Cycle check: every upward walk must reach a root within n steps.
  std::vector<char> state(n, 0);  // 0 new, 1 on stack, 2 done
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> path;
    int v = static_cast<int>(s);
    while (v >= 0 && state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      v = forest[static_cast<std::size_t>(v)];
    }
    if (v >= 0 && state[static_cast<std::size_t>(v)] == 1) throw InvalidInput("shortcut_forest: parent map has a cycle");
    for (int u : path) state[static_cast<std::size_t>(u)] = 2;
  }

  SubForest f;
  f.ids.resize(n);
  for (std::size_t v = 0; v < n; ++v) f.ids[v] = static_cast<int>(v);
  f.parent = forest;
  EdgeSet edges;
  solve(f, k, edges);

  ShortcutSet out;
  out.forest = forest;
  out.k = k;
  for (const auto& e : edges)
    if (forest[static_cast<std::size_t>(e.first)] != e.second) out.extra_edges.push_back(e);
  return out;
}

int max_hops(const ShortcutSet& s) {
  const std::size_t n = s.forest.size();
  std::vector<std::vector<int>> up(n);
  for (std::size_t v = 0; v < n; ++v)
    if (s.forest[v] >= 0) up[v].push_back(s.forest[v]);
  for (const auto& e : s.extra_edges) up[static_cast<std::size_t>(e.first)].push_back(e.second);
  int worst = 0;
  std::vector<int> dist(n);
  for (std::size_t src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    std::vector<int> frontier{static_cast<int>(src)};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier)
        for (int w : up[static_cast<std::size_t>(v)])
          if (dist[static_cast<std::size_t>(w)] < 0) {
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
            next.push_back(w);
          }
      frontier = std::move(next);
    }
    for (int a = s.forest[src]; a >= 0; a = s.forest[static_cast<std::size_t>(a)]) {
      const int d = dist[static_cast<std::size_t>(a)];
      worst = std::max(worst, d < 0 ? std::numeric_limits<int>::max() : d);
    }
  }
  return worst;
}

bool edges_point_upward(const ShortcutSet& s) {
  for (const auto& e : s.extra_edges) {
    bool found = false;
    for (int a = s.forest[static_cast<std::size_t>(e.first)]; a >= 0 && !found; a = s.forest[static_cast<std::size_t>(a)])
      found = a == e.second;
    if (!found) return false;
  }
  return true;
}

std::size_t ancestor_pairs(const std::vector<int>& forest) {
  std::size_t total = 0;
  for (std::size_t v = 0; v < forest.size(); ++v)
    for (int a = forest[v]; a >= 0; a = forest[static_cast<std::size_t>(a)]) ++total;
  return total;
}

}  // namespace hyptile
