#include "lamina/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace lamina {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Lines {
  std::vector<std::pair<int, std::string>> items;  // (line number, stripped content)
  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      std::string s = strip(raw);
      if (!s.empty()) items.emplace_back(no, s);
    }
  }
};

// Splits "x -> word"; returns false if the arrow is missing.
bool split_arrow(const std::string& s, std::string& lhs, std::string& rhs) {
  auto pos = s.find("->");
  if (pos == std::string::npos) return false;
  lhs = strip(s.substr(0, pos));
  rhs = strip(s.substr(pos + 2));
  return true;
}

}  // namespace

AutomorphismFile parse_automorphism_file(const std::string& text) {
  Lines lines(text);
  if (lines.items.empty()) throw ParseError(1, "empty automorphism file");
  auto [line0, head] = lines.items.front();
  int rank = 0;
  if (std::sscanf(head.c_str(), "rank %d", &rank) != 1)
    throw ParseError(line0, "expected `rank N`");
  if (rank < 2) throw ParseError(line0, "rank must be >= 2 (atoroidal iwips need N >= 3)");
  Basis basis(rank);

  std::vector<ReducedWord> images(static_cast<std::size_t>(rank), ReducedWord());
  std::vector<ReducedWord> inverses(static_cast<std::size_t>(rank), ReducedWord());
  std::vector<char> have(static_cast<std::size_t>(rank), 0);
  std::vector<char> have_inv(static_cast<std::size_t>(rank), 0);
  bool in_inverse = false;
  bool any_inverse = false;

  for (std::size_t i = 1; i < lines.items.size(); ++i) {
    auto [no, s] = lines.items[i];
    if (s == "inverse:") {
      in_inverse = true;
      any_inverse = true;
      continue;
    }
    std::string lhs, rhs;
    if (!split_arrow(s, lhs, rhs)) throw ParseError(no, "expected `x -> word`");
    if (lhs.size() != 1) throw ParseError(no, "left side must be a single generator");
    if (rhs.empty()) throw ParseError(no, "missing image word");
    Letter g;
    ReducedWord w;
    try {
      g = basis.letter_of(lhs[0]);
      w = parse_word(basis, rhs);
    } catch (const std::invalid_argument& e) {
      throw ParseError(no, e.what());
    }
    if (!g.positive()) throw ParseError(no, "left side must be a positive generator");
    auto idx = static_cast<std::size_t>(g.index());
    if (in_inverse) {
      if (have_inv[idx]) throw ParseError(no, "duplicate inverse image");
      inverses[idx] = w;
      have_inv[idx] = 1;
    } else {
      if (have[idx]) throw ParseError(no, "duplicate image");
      images[idx] = w;
      have[idx] = 1;
    }
  }
  for (int i = 0; i < rank; ++i) {
    if (!have[static_cast<std::size_t>(i)])
      throw ParseError(lines.items.back().first,
                       std::string("missing image of generator '") + basis.name(i) + "'");
    if (any_inverse && !have_inv[static_cast<std::size_t>(i)])
      throw ParseError(lines.items.back().first,
                       std::string("missing inverse image of generator '") + basis.name(i) + "'");
  }
  std::optional<std::vector<ReducedWord>> inv;
  if (any_inverse) inv = std::move(inverses);
  try {
    return AutomorphismFile{basis, Automorphism(rank, std::move(images), std::move(inv))};
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines.items.back().first, e.what());
  }
}

TrainTrackFile parse_traintrack_file(const std::string& text) {
  Lines lines(text);
  if (lines.items.empty()) throw ParseError(1, "empty train-track file");

  std::map<std::string, int> vertex_ids;
  std::map<char, int> edge_ids;           // unoriented edge name -> id
  std::vector<int> origin;                // oriented code -> vertex
  bool rose = false;
  int rose_rank = 0;
  std::size_t pos = 0;

  auto [line0, head] = lines.items[0];
  if (std::sscanf(head.c_str(), "graph rose %d", &rose_rank) == 1) {
    if (rose_rank < 1) throw ParseError(line0, "rose needs at least one petal");
    rose = true;
    vertex_ids["v"] = 0;
    for (int i = 0; i < rose_rank; ++i) {
      edge_ids[static_cast<char>('a' + i)] = i;
      origin.push_back(0);
      origin.push_back(0);
    }
    pos = 1;
  } else {
    while (pos < lines.items.size()) {
      auto [no, s] = lines.items[pos];
      std::istringstream ss(s);
      std::string kind;
      ss >> kind;
      if (kind == "vertex") {
        std::string name;
        if (!(ss >> name)) throw ParseError(no, "expected `vertex <name>`");
        if (vertex_ids.count(name)) throw ParseError(no, "duplicate vertex");
        int id = static_cast<int>(vertex_ids.size());
        vertex_ids[name] = id;
      } else if (kind == "edge") {
        std::string e, u, v;
        if (!(ss >> e >> u >> v) || e.size() != 1)
          throw ParseError(no, "expected `edge <e> <u> <v>` with a one-letter edge name");
        if (!vertex_ids.count(u) || !vertex_ids.count(v))
          throw ParseError(no, "edge endpoint not declared");
        char name = e[0];
        if (name < 'a' || name > 'z') throw ParseError(no, "edge names are lower case letters");
        if (edge_ids.count(name)) throw ParseError(no, "duplicate edge");
        int id = static_cast<int>(edge_ids.size());
        if (id != name - 'a')
          throw ParseError(no, "edges must be declared in alphabetical order a, b, c, ...");
        edge_ids[name] = id;
        origin.push_back(vertex_ids[u]);
        origin.push_back(vertex_ids[v]);
      } else {
        break;
      }
      ++pos;
    }
    if (vertex_ids.empty() || edge_ids.empty())
      throw ParseError(lines.items[0].first, "expected `graph rose N` or vertex/edge lines");
  }

  MarkedGraph graph(static_cast<int>(vertex_ids.size()), origin);
  std::vector<std::vector<int>> images(edge_ids.size());
  std::vector<char> have(edge_ids.size(), 0);
  for (; pos < lines.items.size(); ++pos) {
    auto [no, s] = lines.items[pos];
    if (s.rfind("map ", 0) != 0) throw ParseError(no, "expected `map e -> path`");
    std::string lhs, rhs;
    if (!split_arrow(s.substr(4), lhs, rhs)) throw ParseError(no, "expected `map e -> path`");
    if (lhs.size() != 1 || !edge_ids.count(lhs[0]))
      throw ParseError(no, "unknown edge on the left side");
    std::vector<int> path;
    for (char c : rhs) {
      bool positive = (c >= 'a' && c <= 'z');
      char lower = positive ? c : static_cast<char>(c - 'A' + 'a');
      if (!edge_ids.count(lower)) throw ParseError(no, std::string("unknown edge '") + c + "'");
      path.push_back(2 * edge_ids[lower] + (positive ? 0 : 1));
    }
    if (path.empty()) throw ParseError(no, "missing image path");
    auto idx = static_cast<std::size_t>(edge_ids[lhs[0]]);
    if (have[idx]) throw ParseError(no, "duplicate map line");
    images[idx] = std::move(path);
    have[idx] = 1;
  }
  for (std::size_t e = 0; e < edge_ids.size(); ++e)
    if (!have[e])
      throw ParseError(lines.items.back().first, "missing map line for an edge");

  // Vertex images are induced by the first edge image.
  std::vector<int> vertex_images(vertex_ids.size(), -1);
  for (std::size_t e = 0; e < images.size(); ++e) {
    int o = graph.origin(static_cast<int>(2 * e));
    int t = graph.terminus(static_cast<int>(2 * e));
    vertex_images[static_cast<std::size_t>(o)] = graph.origin(images[e].front());
    vertex_images[static_cast<std::size_t>(t)] = graph.terminus(images[e].back());
  }
  for (int& v : vertex_images)
    if (v < 0) v = 0;
  try {
    return TrainTrackFile{GraphMap(graph, std::move(images), std::move(vertex_images)), rose};
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines.items.back().first, e.what());
  }
}

std::vector<ReducedWord> parse_subgroup_file(const Basis& basis, const std::string& text) {
  Lines lines(text);
  std::vector<ReducedWord> out;
  for (auto& [no, s] : lines.items) {
    try {
      out.push_back(parse_word(basis, s));
    } catch (const std::invalid_argument& e) {
      throw ParseError(no, e.what());
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace lamina
