#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "docadopt/topics/reduce.hpp"

namespace docadopt::topics {

namespace {

constexpr double kMinDistance = 1e-12;

struct MstEdge {
  std::size_t a, b;
  double weight;
};

// Prim's algorithm over the dense mutual-reachability graph.
std::vector<MstEdge> mutual_reachability_mst(const Points& x, std::size_t min_samples) {
  const auto n = x.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = euclidean(x[i], x[j]);
  }
  std::vector<double> core(n);
  std::vector<double> row;
  for (std::size_t i = 0; i < n; ++i) {
    row = dist[i];
    const auto kth = std::min(min_samples, n) - 1;  // self counts as the first sample
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kth), row.end());
    core[i] = row[kth];
  }

  std::vector<MstEdge> out;
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(n, 0);
  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double mr = std::max({core[current], core[j], dist[current][j]});
      if (mr < best[j]) {
        best[j] = mr;
        from[j] = current;
      }
    }
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_tree[j] && (next == n || best[j] < best[next])) next = j;
    }
    out.push_back({from[next], next, best[next]});
    in_tree[next] = true;
    current = next;
  }
  return out;
}

struct LinkageNode {
  std::size_t left, right;
  double distance;
  std::size_t size;
};

// Single-linkage dendrogram; node ids n.. are internal merges.
std::vector<LinkageNode> single_linkage(std::vector<MstEdge> mst, std::size_t n) {
  std::stable_sort(mst.begin(), mst.end(), [](const MstEdge& a, const MstEdge& b) { return a.weight < b.weight; });
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::size_t> size(2 * n - 1, 1);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<LinkageNode> out;
  std::size_t next = n;
  for (const auto& e : mst) {
    const auto ra = find(e.a), rb = find(e.b);
    out.push_back({ra, rb, e.weight, size[ra] + size[rb]});
    parent[ra] = parent[rb] = next;
    size[next] = size[ra] + size[rb];
    ++next;
  }
  return out;
}

struct CondensedEntry {
  std::size_t parent;  // cluster label
  std::size_t child;   // point index (< n) or cluster label (>= n)
  double lambda;
  std::size_t size;
};

std::vector<CondensedEntry> condense(const std::vector<LinkageNode>& tree, std::size_t n, std::size_t min_size) {
  const auto root = 2 * n - 2;
  auto node_size = [&](std::size_t id) { return id < n ? std::size_t{1} : tree[id - n].size; };
  auto collect_points = [&](std::size_t id, std::vector<std::size_t>& out) {
    std::vector<std::size_t> stack{id};
    while (!stack.empty()) {
      const auto cur = stack.back();
      stack.pop_back();
      if (cur < n) {
        out.push_back(cur);
      } else {
        stack.push_back(tree[cur - n].right);
        stack.push_back(tree[cur - n].left);
      }
    }
  };

  std::vector<CondensedEntry> out;
  std::vector<std::size_t> relabel(2 * n - 1, 0);
  std::size_t next_label = n + 1;
  relabel[root] = n;
  std::vector<std::size_t> queue{root};
  std::vector<std::size_t> points;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto node = queue[qi];
    if (node < n) continue;
    const auto& link = tree[node - n];
    const double lambda = 1.0 / std::max(link.distance, kMinDistance);
    const auto left = link.left, right = link.right;
    const bool big_left = node_size(left) >= min_size, big_right = node_size(right) >= min_size;
    const auto label = relabel[node];
    if (big_left && big_right) {
      for (const auto child : {left, right}) {
        relabel[child] = next_label++;
        out.push_back({label, relabel[child], lambda, node_size(child)});
        queue.push_back(child);
      }
    } else {
      for (const auto child : {left, right}) {
        const bool big = child == left ? big_left : big_right;
        if (big) {
          relabel[child] = label;
          queue.push_back(child);
        } else {
          points.clear();
          collect_points(child, points);
          for (const auto p : points) out.push_back({label, p, lambda, 1});
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<int> HdbscanClusterer::cluster(const Points& points, const PipelineConfig& config) {
  const auto n = points.size();
  const auto min_size = static_cast<std::size_t>(config.min_cluster_size);
  if (n < min_size || n < 2) return std::vector<int>(n, -1);
  const auto min_samples = static_cast<std::size_t>(options_.min_samples > 0 ? options_.min_samples
                                                                              : config.min_cluster_size);

  const auto mst = mutual_reachability_mst(points, min_samples);
  double max_edge = 0.0;
  for (const auto& e : mst) max_edge = std::max(max_edge, e.weight);
  if (max_edge == 0.0) return std::vector<int>(n, 0);  // a single point mass is one dense cluster

  const auto tree = single_linkage(mst, n);
  const auto condensed = condense(tree, n, min_size);

  // Cluster labels are n .. max_label; children always have larger labels than parents.
  std::size_t max_label = n;
  for (const auto& e : condensed) max_label = std::max({max_label, e.parent, e.child >= n ? e.child : n});
  const auto n_clusters = max_label - n + 1;
  std::vector<double> birth(n_clusters, 0.0), stability(n_clusters, 0.0);
  std::vector<std::size_t> parent_of(n_clusters, 0);
  std::vector<std::vector<std::size_t>> children(n_clusters);
  for (const auto& e : condensed) {
    if (e.child >= n) {
      birth[e.child - n] = e.lambda;
      parent_of[e.child - n] = e.parent - n;
      children[e.parent - n].push_back(e.child - n);
    }
  }
  for (const auto& e : condensed) stability[e.parent - n] += (e.lambda - birth[e.parent - n]) * e.size;

  std::vector<bool> selected(n_clusters, false);
  std::vector<double> best(stability);
  for (std::size_t c = n_clusters; c-- > 0;) {
    double child_sum = 0.0;
    for (const auto ch : children[c]) child_sum += best[ch];
    const bool root = c == 0;
    if (root && !options_.allow_single_cluster) break;
    if (!children[c].empty() && child_sum > stability[c]) {
      best[c] = child_sum;
    } else {
      selected[c] = true;
      // Deselect descendants.
      std::vector<std::size_t> stack(children[c].begin(), children[c].end());
      while (!stack.empty()) {
        const auto d = stack.back();
        stack.pop_back();
        selected[d] = false;
        stack.insert(stack.end(), children[d].begin(), children[d].end());
      }
    }
  }
  if (!options_.allow_single_cluster) selected[0] = false;

  std::vector<int> labels(n, -1);
  for (const auto& e : condensed) {
    if (e.child >= n) continue;
    auto c = e.parent - n;
    while (true) {
      if (selected[c]) {
        labels[e.child] = static_cast<int>(c);
        break;
      }
      if (c == 0) break;
      c = parent_of[c];
    }
  }
  return canonical_labels(labels);
}

}  // namespace docadopt::topics
