// traintrack.hpp
//
// User-supplied train-track maps on marked graphs: the direction-map
// legality check, transition matrices with Perron-Frobenius data, and
// the edge-iteration factor languages.  Lamination languages in basis
// coordinates are produced for rose graphs only.

#pragma once

#include <vector>

#include "lamina/lamination.hpp"
#include "lamina/word.hpp"

namespace lamina {

// Oriented edges are integer codes; code ^ 1 is the reverse edge, so
// unoriented edge e has orientations 2e and 2e+1.  For a rose the codes
// coincide with Letter codes.
class MarkedGraph {
 public:
  MarkedGraph(int num_vertices, std::vector<int> edge_origin);
  static MarkedGraph rose(int n);

  int vertices() const { return num_vertices_; }
  int edges() const { return static_cast<int>(origin_.size()) / 2; }
  int origin(int code) const { return origin_[static_cast<std::size_t>(code)]; }
  int terminus(int code) const { return origin_[static_cast<std::size_t>(code ^ 1)]; }
  bool is_rose() const { return num_vertices_ == 1; }

 private:
  int num_vertices_;
  std::vector<int> origin_;  // origin vertex per oriented code
};

class GraphMap {
 public:
  // `edge_images[e]` is the image path of the positive orientation of
  // unoriented edge e, as oriented codes.  Images must be nonempty,
  // tightened, and endpoint-consistent with the vertex map.
  GraphMap(MarkedGraph graph, std::vector<std::vector<int>> edge_images,
           std::vector<int> vertex_images);

  // Rose map whose edge images are the basis images of phi.
  static GraphMap from_automorphism(const Automorphism& phi);

  const MarkedGraph& graph() const { return graph_; }
  std::vector<int> image_of(int code) const;
  std::vector<int> image_of_path(const std::vector<int>& path, std::size_t budget) const;
  int vertex_image(int v) const { return vertex_images_[static_cast<std::size_t>(v)]; }
  // First edge of the image of an oriented edge.
  int direction_map(int code) const;

 private:
  MarkedGraph graph_;
  std::vector<std::vector<int>> edge_images_;
  std::vector<int> vertex_images_;
};

struct Turn {
  int d1 = -1;  // oriented codes, d1 < d2
  int d2 = -1;
};

struct TrainTrackVerdict {
  bool pass = false;
  Turn witness;         // illegal taken turn when FAIL
  int degenerate_at = 0;  // direction-map iterate that collapses it
};

// A turn is illegal when some iterate of the direction map identifies
// its two directions.  PASS means no taken turn (closed under the
// direction map on turns) is illegal within max_iter iterates.
TrainTrackVerdict validate_train_track(const GraphMap& f, int max_iter);

class TransitionMatrix {
 public:
  explicit TransitionMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}

  int size() const { return n_; }
  long& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  long at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  TransitionMatrix transpose() const;
  TransitionMatrix times(const TransitionMatrix& other) const;
  bool irreducible() const;

  friend bool operator==(const TransitionMatrix& a, const TransitionMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  int n_;
  std::vector<long> data_;
};

// Entry (e, f) counts occurrences of f^{+-1} in the image of e.
TransitionMatrix transition_matrix(const GraphMap& f);

struct PerronData {
  double value = 0.0;
  std::vector<double> vector;  // entrywise positive, sums to 1
  int iterations = 0;
};

// Power iteration from the uniform vector until successive Rayleigh
// quotients differ by < tol.  Requires an irreducible nonzero matrix.
PerronData pf_eigenvalue(const TransitionMatrix& m, double tol);

// Union over edges e and stages n of the depth-k factors of the word of
// f^n(e), inversion closed.  Rose graphs only; requires the train-track
// check to PASS.
LanguageResult bfh_language(const GraphMap& f, int k, int stall,
                            std::size_t budget = kDefaultBudget);

}  // namespace lamina
