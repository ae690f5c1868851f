#include "lamina/traintrack.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace lamina {

MarkedGraph::MarkedGraph(int num_vertices, std::vector<int> edge_origin)
    : num_vertices_(num_vertices), origin_(std::move(edge_origin)) {
  if (num_vertices_ < 1) throw std::invalid_argument("graph needs a vertex");
  if (origin_.size() % 2 != 0) throw std::invalid_argument("odd oriented edge count");
  if (origin_.empty()) throw std::invalid_argument("graph needs an edge");
  for (int v : origin_)
    if (v < 0 || v >= num_vertices_) throw std::invalid_argument("edge endpoint out of range");
  // Connectivity.
  std::vector<char> seen(static_cast<std::size_t>(num_vertices_), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int code = 0; code < static_cast<int>(origin_.size()); ++code) {
      if (origin_[static_cast<std::size_t>(code)] != v) continue;
      int w = origin_[static_cast<std::size_t>(code ^ 1)];
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        q.push(w);
      }
    }
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("graph is not connected");
}

MarkedGraph MarkedGraph::rose(int n) {
  if (n < 1) throw std::invalid_argument("rose needs a petal");
  return MarkedGraph(1, std::vector<int>(static_cast<std::size_t>(2 * n), 0));
}

GraphMap::GraphMap(MarkedGraph graph, std::vector<std::vector<int>> edge_images,
                   std::vector<int> vertex_images)
    : graph_(std::move(graph)),
      edge_images_(std::move(edge_images)),
      vertex_images_(std::move(vertex_images)) {
  if (static_cast<int>(edge_images_.size()) != graph_.edges())
    throw std::invalid_argument("graph map needs one image per edge");
  if (static_cast<int>(vertex_images_.size()) != graph_.vertices())
    throw std::invalid_argument("graph map needs one image per vertex");
  for (int v : vertex_images_)
    if (v < 0 || v >= graph_.vertices())
      throw std::invalid_argument("vertex image out of range");
  for (int e = 0; e < graph_.edges(); ++e) {
    const auto& path = edge_images_[static_cast<std::size_t>(e)];
    if (path.empty()) throw std::invalid_argument("edge image paths must be nonempty");
    for (std::size_t i = 0; i < path.size(); ++i) {
      int c = path[i];
      if (c < 0 || c >= 2 * graph_.edges())
        throw std::invalid_argument("edge image uses unknown edge");
      if (i + 1 < path.size()) {
        if (path[i + 1] == (c ^ 1))
          throw std::invalid_argument("edge image path is not tightened");
        if (graph_.terminus(c) != graph_.origin(path[i + 1]))
          throw std::invalid_argument("edge image path is not a path");
      }
    }
    if (graph_.origin(path.front()) != vertex_image(graph_.origin(2 * e)) ||
        graph_.terminus(path.back()) != vertex_image(graph_.terminus(2 * e)))
      throw std::invalid_argument("edge image endpoints disagree with the vertex map");
  }
}

GraphMap GraphMap::from_automorphism(const Automorphism& phi) {
  std::vector<std::vector<int>> images;
  for (int i = 0; i < phi.rank(); ++i) {
    const ReducedWord& im = phi.image(i);
    if (im.empty()) throw std::invalid_argument("rose map needs nonempty images");
    std::vector<int> path;
    path.reserve(im.size());
    for (std::size_t p = 0; p < im.size(); ++p) path.push_back(im.at(p).code());
    images.push_back(std::move(path));
  }
  return GraphMap(MarkedGraph::rose(phi.rank()), std::move(images), {0});
}

std::vector<int> GraphMap::image_of(int code) const {
  const auto& pos = edge_images_[static_cast<std::size_t>(code >> 1)];
  if ((code & 1) == 0) return pos;
  std::vector<int> rev;
  rev.reserve(pos.size());
  for (std::size_t i = pos.size(); i > 0; --i) rev.push_back(pos[i - 1] ^ 1);
  return rev;
}

std::vector<int> GraphMap::image_of_path(const std::vector<int>& path, std::size_t budget) const {
  std::vector<int> out;
  for (int c : path) {
    for (int x : image_of(c)) {
      if (!out.empty() && out.back() == (x ^ 1))
        out.pop_back();
      else
        out.push_back(x);
    }
    if (out.size() > budget) throw BudgetError("graph map image", budget);
  }
  return out;
}

int GraphMap::direction_map(int code) const { return image_of(code).front(); }

TrainTrackVerdict validate_train_track(const GraphMap& f, int max_iter) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const MarkedGraph& g = f.graph();
  int dirs = 2 * g.edges();
  std::vector<int> dmap(static_cast<std::size_t>(dirs));
  for (int d = 0; d < dirs; ++d) dmap[static_cast<std::size_t>(d)] = f.direction_map(d);

  // Taken turns, closed under the direction map on turns.
  std::set<std::pair<int, int>> taken;
  std::queue<std::pair<int, int>> work;
  auto add_turn = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (taken.insert({a, b}).second) work.push({a, b});
  };
  for (int e = 0; e < g.edges(); ++e) {
    std::vector<int> path = f.image_of(2 * e);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) add_turn(path[i] ^ 1, path[i + 1]);
  }
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop();
    int na = dmap[static_cast<std::size_t>(a)];
    int nb = dmap[static_cast<std::size_t>(b)];
    if (na != nb) add_turn(na, nb);
  }

  // A taken turn is illegal when its direction orbit degenerates.
  for (const auto& [a0, b0] : taken) {
    int a = a0;
    int b = b0;
    std::set<std::pair<int, int>> visited;
    for (int it = 1; it <= max_iter; ++it) {
      a = dmap[static_cast<std::size_t>(a)];
      b = dmap[static_cast<std::size_t>(b)];
      if (a == b) return TrainTrackVerdict{false, Turn{a0, b0}, it};
      auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      if (!visited.insert(key).second) break;  // orbit cycled, stays legal
    }
  }
  return TrainTrackVerdict{true, {}, 0};
}

TransitionMatrix transition_matrix(const GraphMap& f) {
  int n = f.graph().edges();
  TransitionMatrix m(n);
  for (int e = 0; e < n; ++e)
    for (int c : f.image_of(2 * e)) m.at(e, c >> 1) += 1;
  return m;
}

TransitionMatrix TransitionMatrix::transpose() const {
  TransitionMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

TransitionMatrix TransitionMatrix::times(const TransitionMatrix& other) const {
  if (n_ != other.n_) throw std::invalid_argument("matrix size mismatch");
  TransitionMatrix p(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < n_; ++j) p.at(i, j) += at(i, k) * other.at(k, j);
  return p;
}

bool TransitionMatrix::irreducible() const {
  auto reaches_all = [&](bool transposed) {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w = 0; w < n_; ++w) {
        long entry = transposed ? at(w, v) : at(v, w);
        if (entry > 0 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++count;
          q.push(w);
        }
      }
    }
    return count == n_;
  };
  return reaches_all(false) && reaches_all(true);
}

namespace {

PerronData power_iterate(const TransitionMatrix& m, double tol, int cap, double shift) {
  int n = m.size();
  std::vector<double> x(static_cast<std::size_t>(n), 1.0 / n);
  double rayleigh = 0.0;
  double prev = -1.0;
  int it = 0;
  for (; it < cap; ++it) {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    double dot_xy = 0.0;
    double dot_xx = 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = shift * x[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j)
        acc += static_cast<double>(m.at(i, j)) * x[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = acc;
      dot_xy += x[static_cast<std::size_t>(i)] * acc;
      dot_xx += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      sum += acc;
    }
    rayleigh = dot_xy / dot_xx;
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] /= sum;
    x = std::move(y);
    if (prev >= 0.0 && std::abs(rayleigh - prev) < tol) break;
    prev = rayleigh;
  }
  return PerronData{rayleigh - shift, std::move(x), it + 1};
}

}  // namespace

PerronData pf_eigenvalue(const TransitionMatrix& m, double tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  bool zero = true;
  for (int i = 0; i < m.size() && zero; ++i)
    for (int j = 0; j < m.size() && zero; ++j)
      if (m.at(i, j) != 0) zero = false;
  if (zero) throw std::invalid_argument("zero matrix has no Perron-Frobenius data");
  if (!m.irreducible()) throw std::invalid_argument("matrix is reducible");
  const int cap = 100000;
  PerronData data = power_iterate(m, tol, cap, 0.0);
  if (data.iterations > cap) {
    // Imprimitive irreducible matrices can cycle; M + I is primitive
    // with the same eigenvector and eigenvalue + 1.
    data = power_iterate(m, tol, cap, 1.0);
  }
  return data;
}

LanguageResult bfh_language(const GraphMap& f, int k, int stall, std::size_t budget) {
  if (k < 1) throw std::invalid_argument("depth must be >= 1");
  if (stall < 1) throw std::invalid_argument("stall must be >= 1");
  if (!f.graph().is_rose())
    throw std::invalid_argument("basis-coordinate languages need a rose graph");
  TrainTrackVerdict tt = validate_train_track(f, 4 * f.graph().edges() * f.graph().edges() + 4);
  if (!tt.pass) throw std::invalid_argument("map failed the train-track check");

  int rank = f.graph().edges();
  std::vector<std::vector<int>> words;
  for (int e = 0; e < rank; ++e) words.push_back({2 * e});

  std::set<ReducedWord> seed;
  int streak = 0;
  bool stabilized = false;
  bool budget_hit = false;
  int n = 0;
  for (;; ++n) {
    std::size_t before = seed.size();
    for (const auto& w : words) {
      for (std::size_t pos = 0; pos < w.size(); ++pos) {
        for (std::size_t len = 1; len <= static_cast<std::size_t>(k) && pos + len <= w.size();
             ++len) {
          std::vector<Letter> sub;
          sub.reserve(len);
          for (std::size_t i = pos; i < pos + len; ++i)
            sub.push_back(Letter::from_code(w[i]));
          ReducedWord rw(rank, std::move(sub));
          seed.insert(rw);
          seed.insert(invert(rw));
        }
      }
    }
    streak = seed.size() == before ? streak + 1 : 0;
    if (streak >= stall) {
      stabilized = true;
      break;
    }
    try {
      for (auto& w : words) w = f.image_of_path(w, budget);
    } catch (const BudgetError&) {
      budget_hit = true;
      break;
    }
    if (n > 100000) break;
  }
  LanguageResult result;
  result.stages = n;
  result.budget_hit = budget_hit;
  result.language = FactorLanguage::build(rank, k, stabilized, Provenance::bfh, seed);
  return result;
}

}  // namespace lamina
