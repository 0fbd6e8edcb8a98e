#include "gcdc/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "gcdc/partition.hpp"

namespace gcdc {
namespace {

using Coloring = std::vector<std::uint32_t>;

class Search {
 public:
  Search(const Graph& g, std::size_t budget) : g_(g), n_(g.node_count()), budget_(budget), adj_(n_) {
    for (NodeId u = 0; u < n_; ++u) {
      adj_[u].reserve(g.degree(u));
      g.neighbors(u).for_each_set([&](std::size_t v) { adj_[u].push_back(static_cast<NodeId>(v)); });
    }
  }

  CanonicalLabeling run() {
    Coloring start(n_, 0);
    explore(std::move(start));
    return {best_rank_, !truncated_};
  }

 private:
  // Refines to the coarsest equitable coloring; returns the number of cells.
  // Cells are renumbered densely in (old color, sorted neighbor colors) order,
  // which is a function of the colored graph only.
  std::size_t refine(Coloring& color) {
    std::vector<std::vector<std::uint32_t>> sig(n_);
    std::vector<NodeId> order(n_);
    std::size_t cells = count_cells(color);
    for (;;) {
      for (NodeId u = 0; u < n_; ++u) {
        auto& s = sig[u];
        s.clear();
        for (NodeId v : adj_[u]) s.push_back(color[v]);
        std::sort(s.begin(), s.end());
      }
      std::iota(order.begin(), order.end(), NodeId{0});
      std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (color[a] != color[b]) return color[a] < color[b];
        return sig[a] < sig[b];
      });
      Coloring next(n_);
      std::uint32_t c = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0) {
          const NodeId a = order[i - 1], b = order[i];
          if (color[a] != color[b] || sig[a] != sig[b]) ++c;
        }
        next[order[i]] = c;
      }
      const std::size_t next_cells = n_ ? c + 1 : 0;
      color = std::move(next);
      if (next_cells == cells) return cells;
      cells = next_cells;
    }
  }

  static std::size_t count_cells(const Coloring& color) {
    if (color.empty()) return 0;
    return *std::max_element(color.begin(), color.end()) + std::size_t{1};
  }

  void explore(Coloring color) {
    if (leaves_ >= budget_) {
      truncated_ = true;
      return;
    }
    const std::size_t cells = refine(color);
    if (cells == n_) {
      ++leaves_;
      consider_leaf(color);
      return;
    }
    std::vector<std::size_t> size(cells, 0);
    for (auto c : color) ++size[c];
    std::uint32_t target = 0;
    while (size[target] < 2) ++target;

    // Twins (equal open or closed neighborhoods) are exchanged by an
    // automorphism fixing everything else, so one representative suffices.
    std::unordered_map<std::size_t, std::vector<NodeId>> seen;
    std::vector<NodeId> reps;
    for (NodeId v = 0; v < n_; ++v) {
      if (color[v] != target) continue;
      DynamicBitset open = g_.neighbors(v);
      DynamicBitset closed = open;
      closed.set(v);
      const std::size_t keys[2] = {hash_bits(open) * 2, hash_bits(closed) * 2 + 1};
      bool twin = false;
      for (std::size_t key : keys) {
        for (NodeId r : seen[key])
          if (are_twins(r, v)) twin = true;
        if (twin) break;
      }
      if (twin) continue;
      for (std::size_t key : keys) seen[key].push_back(v);
      reps.push_back(v);
    }
    const std::size_t depth = path_.size();
    std::vector<NodeId> done;
    for (NodeId v : reps) {
      if (!done.empty() && in_explored_orbit(v, done, depth)) continue;
      Coloring child(n_);
      for (NodeId u = 0; u < n_; ++u) child[u] = 2 * color[u] + ((color[u] == target && u != v) ? 1u : 0u);
      path_.push_back(v);
      explore(std::move(child));
      path_.pop_back();
      done.push_back(v);
      if (truncated_) return;
      if (jump_) {
        if (depth > jump_depth_) return;
        jump_ = false;
      }
    }
  }

  // Orbits of the automorphisms found so far that fix the first `depth`
  // individualized vertices.
  bool in_explored_orbit(NodeId v, const std::vector<NodeId>& done, std::size_t depth) {
    std::vector<NodeId> parent(n_);
    std::iota(parent.begin(), parent.end(), NodeId{0});
    auto find = [&](NodeId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = true;
      for (std::size_t i = 0; i < depth && fixes; ++i) fixes = gamma[path_[i]] == path_[i];
      if (!fixes) continue;
      for (NodeId u = 0; u < n_; ++u) parent[find(u)] = find(gamma[u]);
    }
    const NodeId root = find(v);
    for (NodeId w : done)
      if (find(w) == root) return true;
    return false;
  }

  void record_automorphism(const Coloring& color, const std::vector<NodeId>& target_rank) {
    std::vector<NodeId> at(n_);
    for (NodeId u = 0; u < n_; ++u) at[target_rank[u]] = u;
    std::vector<NodeId> gamma(n_);
    for (NodeId u = 0; u < n_; ++u) gamma[u] = at[color[u]];
    automorphisms_.push_back(std::move(gamma));
  }

  static std::size_t hash_bits(const DynamicBitset& b) {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : b.words()) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

  bool are_twins(NodeId a, NodeId b) const {
    DynamicBitset na = g_.neighbors(a), nb = g_.neighbors(b);
    na.reset(b);
    nb.reset(a);
    return na == nb;
  }

  void consider_leaf(const Coloring& color) {
    // Certificate: adjacency rows in rank order.
    std::vector<NodeId> at(n_);
    for (NodeId u = 0; u < n_; ++u) at[color[u]] = u;
    std::vector<DynamicBitset> cert(n_, DynamicBitset(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (NodeId v : adj_[at[i]]) cert[i].set(color[v]);
    if (first_rank_.empty()) {
      first_cert_ = cert;
      first_rank_.assign(color.begin(), color.end());
      first_path_ = path_;
    } else if (cert == first_cert_) {
      // Equivalent to the first leaf: the rest of this subtree mirrors the
      // first path, so return to where the two paths part.
      record_automorphism(color, first_rank_);
      jump_depth_ = 0;
      while (jump_depth_ < path_.size() && jump_depth_ < first_path_.size() &&
             path_[jump_depth_] == first_path_[jump_depth_])
        ++jump_depth_;
      jump_ = true;
      return;
    }
    if (best_rank_.empty() || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_rank_.assign(color.begin(), color.end());
    } else if (cert == best_cert_) {
      record_automorphism(color, best_rank_);
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t budget_;
  std::vector<std::vector<NodeId>> adj_;
  std::size_t leaves_ = 0;
  bool truncated_ = false;
  std::vector<DynamicBitset> best_cert_;
  std::vector<NodeId> best_rank_;
  std::vector<DynamicBitset> first_cert_;
  std::vector<NodeId> first_rank_;
  std::vector<NodeId> first_path_;
  std::vector<NodeId> path_;
  std::vector<std::vector<NodeId>> automorphisms_;
  bool jump_ = false;
  std::size_t jump_depth_ = 0;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Graph& g, std::size_t leaf_budget) {
  const std::size_t n = g.node_count();
  if (n <= 1) return {std::vector<NodeId>(n, 0), true};
  if (leaf_budget == 0) {
    const std::size_t work = n + 2 * static_cast<std::size_t>(g.edge_count()) + 1;
    leaf_budget = std::clamp<std::size_t>((std::size_t{1} << 22) / work, 16, 16384);
  }
  return Search(g, leaf_budget).run();
}

Graph canonical_relabel(const Graph& g, const CanonicalLabeling& labeling) {
  std::vector<NodeId> order(g.node_count());
  for (NodeId v = 0; v < order.size(); ++v) order[labeling.rank[v]] = v;
  return g.permuted(order);
}

std::vector<NodeId> canonical_order(const Graph& g) {
  const auto labeling = canonical_labeling(g);
  const Graph h = canonical_relabel(g, labeling);
  std::vector<NodeId> at(g.node_count());
  for (NodeId v = 0; v < at.size(); ++v) at[labeling.rank[v]] = v;
  std::vector<NodeId> order = visitation_order(h);
  for (auto& v : order) v = at[v];
  return order;
}

Graph sorted_matrix(const Graph& g) {
  const auto order = canonical_order(g);
  return g.permuted(order);
}

}  // namespace gcdc
