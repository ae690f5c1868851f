#include "lamina/stallings.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace lamina {

namespace {

// Mutable graph during construction: adjacency with union-find merging.
struct Builder {
  int rank;
  std::vector<std::vector<int>> next;  // vertex x code -> vertex or -1
  std::vector<int> parent;

  explicit Builder(int r) : rank(r) {}

  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }

  int new_vertex() {
    next.emplace_back(static_cast<std::size_t>(2 * rank), -1);
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  }

  // Adds edge v --l--> w, folding as needed.
  void add_edge(int v, Letter l, int w) {
    std::queue<std::pair<int, int>> merges;
    v = find(v);
    w = find(w);
    attach(v, l, w, merges);
    while (!merges.empty()) {
      auto [a, b] = merges.front();
      merges.pop();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (b < a) std::swap(a, b);  // keep the smaller id (basepoint stays 0)
      parent[static_cast<std::size_t>(b)] = a;
      for (int code = 0; code < 2 * rank; ++code) {
        int t = next[static_cast<std::size_t>(b)][static_cast<std::size_t>(code)];
        if (t >= 0) attach(a, Letter::from_code(code), find(t), merges);
      }
    }
  }

  void attach(int v, Letter l, int w, std::queue<std::pair<int, int>>& merges) {
    v = find(v);
    w = find(w);
    int& fwd = next[static_cast<std::size_t>(v)][static_cast<std::size_t>(l.code())];
    if (fwd >= 0 && find(fwd) != w) {
      merges.push({find(fwd), w});
      return;
    }
    fwd = w;
    int& bwd = next[static_cast<std::size_t>(w)][static_cast<std::size_t>(l.inverse().code())];
    if (bwd >= 0 && find(bwd) != v) {
      merges.push({find(bwd), v});
      return;
    }
    bwd = v;
  }
};

}  // namespace

SubgroupGraph SubgroupGraph::build(int rank, const std::vector<ReducedWord>& generators) {
  Builder b(rank);
  int base = b.new_vertex();
  for (const ReducedWord& g : generators) {
    if (g.empty()) continue;
    int cur = base;
    for (std::size_t i = 0; i < g.size(); ++i) {
      int dst = (i + 1 == g.size()) ? b.find(base) : b.new_vertex();
      b.add_edge(b.find(cur), g.at(i), dst);
      cur = b.find(dst);
      base = b.find(base);
    }
  }

  // Resolve union-find, re-normalizing the adjacency per representative.
  std::map<int, int> live;
  for (int v = 0; v < static_cast<int>(b.parent.size()); ++v) {
    int r = b.find(v);
    if (!live.count(r)) live[r] = 0;
  }
  std::vector<std::vector<int>> adj(live.size(), std::vector<int>(static_cast<std::size_t>(2 * rank), -1));
  {
    int id = 0;
    for (auto& [rep, slot] : live) slot = id++;
  }
  for (int v = 0; v < static_cast<int>(b.parent.size()); ++v) {
    int rv = live[b.find(v)];
    for (int code = 0; code < 2 * rank; ++code) {
      int t = b.next[static_cast<std::size_t>(v)][static_cast<std::size_t>(code)];
      if (t >= 0) adj[static_cast<std::size_t>(rv)][static_cast<std::size_t>(code)] = live[b.find(t)];
    }
  }
  int base_id = live[b.find(0)];

  // Core trimming: drop non-basepoint vertices of degree <= 1.
  std::vector<char> dead(adj.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (dead[v] || static_cast<int>(v) == base_id) continue;
      int degree = 0;
      for (int code = 0; code < 2 * rank; ++code) {
        int t = adj[v][static_cast<std::size_t>(code)];
        if (t >= 0 && !dead[static_cast<std::size_t>(t)]) ++degree;
      }
      if (degree <= 1) {
        dead[v] = 1;
        changed = true;
      }
    }
  }

  std::vector<int> remap(adj.size(), -1);
  remap[static_cast<std::size_t>(base_id)] = 0;
  int id = 1;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (!dead[v] && static_cast<int>(v) != base_id) remap[v] = id++;

  SubgroupGraph g;
  g.rank_ = rank;
  g.next_.assign(static_cast<std::size_t>(id) * 2 * rank, -1);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (dead[v]) continue;
    for (int code = 0; code < 2 * rank; ++code) {
      int t = adj[v][static_cast<std::size_t>(code)];
      if (t >= 0 && !dead[static_cast<std::size_t>(t)])
        g.next_[static_cast<std::size_t>(remap[v]) * 2 * rank + code] = remap[static_cast<std::size_t>(t)];
    }
  }
  return g;
}

bool SubgroupGraph::accepts(const ReducedWord& w) const {
  int cur = basepoint();
  for (std::size_t i = 0; i < w.size(); ++i) {
    cur = step(cur, w.at(i));
    if (cur < 0) return false;
  }
  return cur == basepoint();
}

SubgroupGraph::IndexKind SubgroupGraph::index_kind() const {
  for (int v = 0; v < vertices(); ++v)
    for (int code = 0; code < 2 * rank_; ++code)
      if (next_[static_cast<std::size_t>(v) * 2 * rank_ + code] < 0) return IndexKind{false, 0};
  return IndexKind{true, vertices()};
}

bool SubgroupGraph::isomorphic(const SubgroupGraph& other) const {
  if (rank_ != other.rank_ || vertices() != other.vertices()) return false;
  // Labelled based graphs: the basepoint correspondence propagates
  // deterministically along labels.
  std::vector<int> map(static_cast<std::size_t>(vertices()), -1);
  map[0] = 0;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int code = 0; code < 2 * rank_; ++code) {
      int a = next_[static_cast<std::size_t>(v) * 2 * rank_ + code];
      int b = other.next_[static_cast<std::size_t>(map[static_cast<std::size_t>(v)]) * 2 * rank_ + code];
      if ((a < 0) != (b < 0)) return false;
      if (a < 0) continue;
      if (map[static_cast<std::size_t>(a)] < 0) {
        map[static_cast<std::size_t>(a)] = b;
        q.push(a);
      } else if (map[static_cast<std::size_t>(a)] != b) {
        return false;
      }
    }
  }
  for (int v = 0; v < vertices(); ++v)
    if (map[static_cast<std::size_t>(v)] < 0) return false;  // disconnected core (unreachable)
  return true;
}

CarryVerdict carries_ray(const SubgroupGraph& h, const Ray& x, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  ReducedWord p;
  try {
    p = x.prefix(depth);
  } catch (const BudgetError& e) {
    return CarryVerdict{CarryKind::undecided, 0, e.what()};
  }
  int deepest = 0;
  for (int v = 0; v < h.vertices(); ++v) {
    int cur = v;
    int i = 0;
    while (i < depth) {
      cur = h.step(cur, p.at(static_cast<std::size_t>(i)));
      if (cur < 0) break;
      ++i;
    }
    if (i == depth) return CarryVerdict{CarryKind::carried, depth, ""};
    deepest = std::max(deepest, i + 1);
  }
  return CarryVerdict{CarryKind::not_carried, deepest, ""};
}

CarryVerdict carries_leaf(const SubgroupGraph& h, const Ray& x, const Ray& y, int depth,
                          int probe_cap) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  WindowResult wr = leaf_window(x, y, 2 * depth, probe_cap);
  if (!wr.decided) return CarryVerdict{CarryKind::undecided, 0, wr.note};
  const ReducedWord& z = wr.window.center;  // 4*depth letters, junction in the middle
  std::size_t lo = static_cast<std::size_t>(depth);
  std::size_t hi = z.size() - static_cast<std::size_t>(depth);
  int deepest = 0;
  for (std::size_t pos = lo; pos <= hi; ++pos) {
    for (int v = 0; v < h.vertices(); ++v) {
      int cur = v;
      int fwd = 0;
      while (fwd < depth) {
        cur = h.step(cur, z.at(pos + static_cast<std::size_t>(fwd)));
        if (cur < 0) break;
        ++fwd;
      }
      cur = v;
      int bwd = 0;
      while (bwd < depth) {
        cur = h.step(cur, z.at(pos - 1 - static_cast<std::size_t>(bwd)).inverse());
        if (cur < 0) break;
        ++bwd;
      }
      if (fwd == depth && bwd == depth) return CarryVerdict{CarryKind::carried, depth, ""};
      deepest = std::max(deepest, std::min(fwd, bwd) + 1);
    }
  }
  return CarryVerdict{CarryKind::not_carried, deepest, ""};
}

}  // namespace lamina
