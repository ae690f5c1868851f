#include "lamina/lamination.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace lamina {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::rational: return "rational";
    case Provenance::orbit: return "orbit";
    case Provenance::bfh: return "bfh";
    case Provenance::ray: return "ray";
  }
  return "?";
}

namespace {

void close_set(std::set<ReducedWord>& words) {
  std::set<ReducedWord> out;
  for (const ReducedWord& w : words) {
    ReducedWord wi = invert(w);
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      for (std::size_t len = 1; pos + len <= w.size(); ++len) {
        out.insert(w.subword(pos, len));
        out.insert(wi.subword(pos, len));
      }
    }
  }
  words = std::move(out);
}

}  // namespace

FactorLanguage FactorLanguage::build(int rank, int depth, bool stabilized, Provenance prov,
                                     const std::set<ReducedWord>& seed) {
  FactorLanguage lang;
  lang.rank_ = rank;
  lang.depth_ = depth;
  lang.stabilized_ = stabilized;
  lang.prov_ = prov;
  std::set<ReducedWord> closed = seed;
  close_set(closed);
  lang.words_.assign(closed.begin(), closed.end());
  for (const ReducedWord& w : lang.words_) {
    if (static_cast<int>(w.size()) > depth)
      throw std::invalid_argument("language word longer than depth");
    if (w.empty()) throw std::invalid_argument("language words must be nonempty");
  }
  lang.trie_width_ = 2 * rank;
  lang.trie_.assign(static_cast<std::size_t>(lang.trie_width_), -1);
  for (const ReducedWord& w : lang.words_) {
    int node = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int code = w.at(i).code();
      int& slot = lang.trie_[static_cast<std::size_t>(node * lang.trie_width_ + code)];
      if (slot < 0) {
        slot = static_cast<int>(lang.trie_.size()) / lang.trie_width_;
        lang.trie_.resize(lang.trie_.size() + static_cast<std::size_t>(lang.trie_width_), -1);
      }
      node = slot;
    }
  }
  return lang;
}

bool FactorLanguage::contains(const ReducedWord& w) const {
  if (w.empty()) return true;
  if (static_cast<int>(w.size()) > depth_) return false;
  if (trie_.empty()) return false;
  int node = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    node = trie_[static_cast<std::size_t>(node * trie_width_ + w.at(i).code())];
    if (node < 0) return false;
  }
  return true;
}

bool FactorLanguage::is_closed() const {
  for (const ReducedWord& w : words_) {
    if (!contains(invert(w))) return false;
    if (w.size() >= 2) {
      if (!contains(w.subword(0, w.size() - 1))) return false;
      if (!contains(w.subword(1, w.size() - 1))) return false;
    }
  }
  return true;
}

FactorLanguage FactorLanguage::merged_with(const FactorLanguage& other) const {
  int k = std::min(depth_, other.depth_);
  std::set<ReducedWord> seed;
  for (const ReducedWord& w : words_)
    if (static_cast<int>(w.size()) <= k) seed.insert(w);
  for (const ReducedWord& w : other.words_)
    if (static_cast<int>(w.size()) <= k) seed.insert(w);
  return build(rank_ ? rank_ : other.rank_, k, stabilized_ && other.stabilized_, prov_, seed);
}

FactorLanguage FactorLanguage::with_stabilized(bool flag) const {
  FactorLanguage copy = *this;
  copy.stabilized_ = flag;
  return copy;
}

std::string serialize_language(const Basis& basis, const FactorLanguage& lang) {
  std::ostringstream out;
  out << "lamlang depth=" << lang.depth() << " stabilized=" << (lang.stabilized() ? 1 : 0)
      << " provenance=" << provenance_name(lang.provenance()) << "\n";
  for (const ReducedWord& w : lang.words()) out << format_word(basis, w) << "\n";
  return out.str();
}

FactorLanguage parse_language(const Basis& basis, const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.rfind("lamlang ", 0) != 0)
    throw std::invalid_argument("missing lamlang header");
  int depth = 0;
  int stab = 0;
  char tag[32] = {0};
  if (std::sscanf(header.c_str(), "lamlang depth=%d stabilized=%d provenance=%31s", &depth,
                  &stab, tag) != 3)
    throw std::invalid_argument("malformed lamlang header");
  Provenance prov = Provenance::rational;
  for (Provenance p : {Provenance::rational, Provenance::orbit, Provenance::bfh, Provenance::ray})
    if (std::string(tag) == provenance_name(p)) prov = p;
  std::set<ReducedWord> seed;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    seed.insert(parse_word(basis, line));
  }
  return FactorLanguage::build(basis.rank(), depth, stab != 0, prov, seed);
}

FactorLanguage rational_language(const CyclicWord& w, int k) {
  return FactorLanguage::build(w.rank(), k, /*stabilized=*/true, Provenance::rational,
                               factors(w, k));
}

LanguageResult orbit_language(const Automorphism& phi, const CyclicWord& h, int k, int n_max,
                              int stall, std::size_t budget) {
  std::set<ReducedWord> seed;
  CyclicWord cur = h;
  int streak = 0;
  LanguageResult result;
  bool stabilized = false;
  int n = 0;
  for (;; ++n) {
    std::set<ReducedWord> stage = factors(cur, k);
    std::size_t before = seed.size();
    for (const ReducedWord& w : stage) {
      seed.insert(w);
      seed.insert(invert(w));
    }
    streak = seed.size() == before ? streak + 1 : 0;
    if (streak >= stall) {
      stabilized = true;
      break;
    }
    if (n == n_max) break;
    try {
      cur = phi.apply_class(cur, budget);
    } catch (const BudgetError&) {
      result.budget_hit = true;
      break;
    }
  }
  result.stages = n;
  result.language = FactorLanguage::build(h.rank(), k, stabilized, Provenance::orbit, seed);
  return result;
}

MitraResult mitra_language(const Automorphism& phi, int ball_radius, int k, int n_max,
                           int stall, std::size_t budget, unsigned jobs) {
  if (ball_radius < 1) throw std::invalid_argument("ball radius must be >= 1");
  MitraResult result;
  for (const CyclicWord& c : enumerate_cyclic_words(phi.rank(), ball_radius)) {
    CyclicWord ci = c.inverse();
    if (ci < c) continue;  // one representative per class and inverse class
    result.used.push_back(c);
  }
  std::vector<FactorLanguage> parts(result.used.size());
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      parts[i] = orbit_language(phi, result.used[i], k, n_max, stall, budget).language;
  };
  if (jobs <= 1 || parts.size() <= 1) {
    worker(0, parts.size());
  } else {
    unsigned n_threads = std::min<unsigned>(jobs, static_cast<unsigned>(parts.size()));
    std::vector<std::thread> threads;
    std::size_t chunk = (parts.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      std::size_t lo = t * chunk;
      std::size_t hi = std::min(parts.size(), lo + chunk);
      if (lo < hi) threads.emplace_back(worker, lo, hi);
    }
    for (auto& th : threads) th.join();
  }
  std::set<ReducedWord> seed;
  bool stabilized = true;
  for (const FactorLanguage& part : parts) {
    seed.insert(part.words().begin(), part.words().end());
    stabilized = stabilized && part.stabilized();
  }
  result.language = FactorLanguage::build(phi.rank(), k, stabilized, Provenance::orbit, seed);
  return result;
}

namespace {

std::set<ReducedWord> prefix_factors(const ReducedWord& p, int k) {
  std::set<ReducedWord> out;
  for (std::size_t pos = 0; pos < p.size(); ++pos)
    for (std::size_t len = 1; len <= static_cast<std::size_t>(k) && pos + len <= p.size(); ++len)
      out.insert(p.subword(pos, len));
  return out;
}

}  // namespace

namespace {

std::set<ReducedWord> inversion_closed(const std::set<ReducedWord>& words) {
  std::set<ReducedWord> out = words;
  for (const ReducedWord& w : words) out.insert(invert(w));
  return out;
}

}  // namespace

FactorLanguage ray_language(const Ray& x, int k, int probe) {
  if (probe < k) throw std::invalid_argument("probe must be >= depth");
  std::set<ReducedWord> seed = inversion_closed(prefix_factors(x.prefix(probe), k));
  bool stabilized = false;
  try {
    stabilized = inversion_closed(prefix_factors(x.prefix(2 * probe), k)) == seed;
  } catch (const BudgetError&) {
    stabilized = false;
  }
  return FactorLanguage::build(x.rank(), k, stabilized, Provenance::ray, seed);
}

LeafVerdict leaf_test(const FactorLanguage& lang, const Ray& x, const Ray& y, int k,
                      int slack, int probe_cap) {
  if (k > lang.depth()) throw std::invalid_argument("test depth exceeds language depth");
  LeafVerdict verdict;
  verdict.depth = k;
  verdict.stabilized = lang.stabilized();
  WindowResult wr = leaf_window(x, y, k + slack, probe_cap);
  if (!wr.decided) {
    verdict.kind = LeafVerdict::Kind::undecided;
    verdict.note = wr.note;
    return verdict;
  }
  const ReducedWord& center = wr.window.center;
  for (std::size_t pos = 0; pos + static_cast<std::size_t>(k) <= center.size(); ++pos) {
    ReducedWord sub = center.subword(pos, static_cast<std::size_t>(k));
    if (!lang.contains(sub)) {
      verdict.kind = LeafVerdict::Kind::no;
      verdict.witness = sub;
      return verdict;
    }
  }
  verdict.kind = LeafVerdict::Kind::consistent;
  return verdict;
}

LanguageOrder language_compare(const FactorLanguage& l1, const FactorLanguage& l2) {
  int k = std::min(l1.depth(), l2.depth());
  std::set<ReducedWord> a, b;
  for (const ReducedWord& w : l1.words())
    if (static_cast<int>(w.size()) <= k) a.insert(w);
  for (const ReducedWord& w : l2.words())
    if (static_cast<int>(w.size()) <= k) b.insert(w);
  bool ab = std::includes(b.begin(), b.end(), a.begin(), a.end());
  bool ba = std::includes(a.begin(), a.end(), b.begin(), b.end());
  if (ab && ba) return LanguageOrder::equal;
  if (ab) return LanguageOrder::subset;
  if (ba) return LanguageOrder::superset;
  return LanguageOrder::incomparable;
}

const char* language_order_name(LanguageOrder o) {
  switch (o) {
    case LanguageOrder::equal: return "equal";
    case LanguageOrder::subset: return "subset";
    case LanguageOrder::superset: return "superset";
    case LanguageOrder::incomparable: return "incomparable";
  }
  return "?";
}

DiagComponents diag_components(const std::vector<Ray>& rays, const FactorLanguage& lang,
                               int k, int slack, int probe_cap) {
  std::vector<std::size_t> parent(rays.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  DiagComponents out;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      LeafVerdict v = leaf_test(lang, rays[i], rays[j], k, slack, probe_cap);
      if (v.kind == LeafVerdict::Kind::consistent)
        parent[find(i)] = find(j);
      else if (v.kind == LeafVerdict::Kind::undecided)
        out.undecided.emplace_back(i, j);
    }
  }
  std::vector<std::vector<std::size_t>> blocks(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) blocks[find(i)].push_back(i);
  for (auto& b : blocks)
    if (!b.empty()) out.components.push_back(std::move(b));
  std::sort(out.components.begin(), out.components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace lamina
