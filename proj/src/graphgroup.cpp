#include "enflo/graphgroup.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace enflo {
namespace {

void finalize_edges(Graph& g) {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (std::int64_t u = 0; u < g.vertexCount; ++u) {
    auto& nbrs = g.adj[static_cast<std::size_t>(u)];
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    for (std::int64_t v : nbrs)
      if (u < v) edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  g.edges = std::move(edges);
}

std::string point_label(const Point& pt) {
  std::ostringstream os;
  os << '(';
  for (std::int64_t i = 0; i < pt.dim(); ++i) {
    if (i) os << ',';
    os << pt.at(i);
  }
  os << ')';
  return os.str();
}

}  // namespace

std::int64_t Graph::edge_id(std::int64_t u, std::int64_t v) const {
  if (u > v) std::swap(u, v);
  const auto it = std::lower_bound(edges.begin(), edges.end(),
                                   std::make_pair(u, v));
  if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<std::int64_t>(it - edges.begin());
}

std::vector<Point> neighbors(const SpaceSpec& spec, const Point& x) {
  if (x.dim() != spec.d)
    throw std::invalid_argument("point does not belong to this space");
  std::vector<Point> out;
  std::vector<std::int64_t> offset(static_cast<std::size_t>(spec.d), -1);
  const std::vector<std::int64_t> base = x.to_dense();
  for (;;) {
    bool allZero = true;
    for (std::int64_t o : offset)
      if (o != 0) {
        allZero = false;
        break;
      }
    if (!allZero) {
      std::vector<std::int64_t> coords = base;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        coords[i] = (coords[i] + offset[i]) % spec.q;
        if (coords[i] < 0) coords[i] += spec.q;
      }
      out.push_back(Point::dense(std::move(coords)));
    }
    std::int64_t i = spec.d - 1;
    while (i >= 0) {
      if (++offset[static_cast<std::size_t>(i)] <= 1) break;
      offset[static_cast<std::size_t>(i)] = -1;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

Graph unit_graph(const SpaceSpec& spec, const Budget& budget) {
  const std::int64_t n = point_count_checked(spec, budget);
  Graph g;
  g.vertexCount = n;
  g.adj.resize(static_cast<std::size_t>(n));
  g.labels.resize(static_cast<std::size_t>(n));
  g.basepoint = point_rank(spec, Point::zeros(spec.d));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < n; ++r) {
    const Point pt = point_at(spec, r);
    g.labels[static_cast<std::size_t>(r)] = point_label(pt);
    auto& nbrs = g.adj[static_cast<std::size_t>(r)];
    for (const Point& nb : neighbors(spec, pt))
      nbrs.push_back(point_rank(spec, nb));
    std::sort(nbrs.begin(), nbrs.end());
  }
  finalize_edges(g);
  return g;
}

Graph cycle_graph(std::int64_t q) {
  if (q < 3) throw std::invalid_argument("cycle needs >= 3 vertices");
  Graph g;
  g.vertexCount = q;
  g.adj.resize(static_cast<std::size_t>(q));
  g.labels.resize(static_cast<std::size_t>(q));
  for (std::int64_t v = 0; v < q; ++v) {
    g.adj[static_cast<std::size_t>(v)] = {(v + 1) % q, (v + q - 1) % q};
    g.labels[static_cast<std::size_t>(v)] = std::to_string(v);
  }
  g.basepoint = 0;
  finalize_edges(g);
  return g;
}

WedgeGraph wedge(const std::vector<Graph>& components) {
  if (components.empty())
    throw std::invalid_argument("wedge of zero components");
  WedgeGraph w;
  Graph& g = w.graph;
  g.vertexCount = 1;
  g.adj.emplace_back();
  g.labels.emplace_back("base");
  g.basepoint = 0;
  w.origin.emplace_back(-1, -1);

  for (std::size_t c = 0; c < components.size(); ++c) {
    const Graph& comp = components[c];
    std::vector<std::int64_t> globalId(
        static_cast<std::size_t>(comp.vertexCount), -1);
    for (std::int64_t v = 0; v < comp.vertexCount; ++v) {
      if (v == comp.basepoint) {
        globalId[static_cast<std::size_t>(v)] = 0;
        continue;
      }
      globalId[static_cast<std::size_t>(v)] = g.vertexCount++;
      g.adj.emplace_back();
      g.labels.push_back("c" + std::to_string(c) + ":" +
                         comp.labels[static_cast<std::size_t>(v)]);
      w.origin.emplace_back(static_cast<std::int64_t>(c), v);
    }
    for (std::int64_t v = 0; v < comp.vertexCount; ++v)
      for (std::int64_t u : comp.adj[static_cast<std::size_t>(v)])
        g.adj[static_cast<std::size_t>(globalId[static_cast<std::size_t>(v)])]
            .push_back(globalId[static_cast<std::size_t>(u)]);
  }
  finalize_edges(g);
  return w;
}

std::vector<std::int64_t> bfs_distances_from(const Graph& g,
                                             std::int64_t src) {
  std::vector<std::int64_t> dist(static_cast<std::size_t>(g.vertexCount), -1);
  std::deque<std::int64_t> queue;
  dist[static_cast<std::size_t>(src)] = 0;
  queue.push_back(src);
  while (!queue.empty()) {
    const std::int64_t v = queue.front();
    queue.pop_front();
    for (std::int64_t u : g.adj[static_cast<std::size_t>(v)])
      if (dist[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] =
            dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(u);
      }
  }
  return dist;
}

std::int64_t bfs_distance(const Graph& g, std::int64_t a, std::int64_t b) {
  if (a < 0 || a >= g.vertexCount || b < 0 || b >= g.vertexCount)
    throw std::invalid_argument("vertex out of range");
  if (a == b) return 0;
  std::vector<std::int64_t> dist(static_cast<std::size_t>(g.vertexCount), -1);
  std::deque<std::int64_t> queue;
  dist[static_cast<std::size_t>(a)] = 0;
  queue.push_back(a);
  while (!queue.empty()) {
    const std::int64_t v = queue.front();
    queue.pop_front();
    for (std::int64_t u : g.adj[static_cast<std::size_t>(v)]) {
      if (dist[static_cast<std::size_t>(u)] >= 0) continue;
      dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
      if (u == b) return dist[static_cast<std::size_t>(u)];
      queue.push_back(u);
    }
  }
  throw std::invalid_argument("vertices are not connected");
}

std::vector<std::vector<std::int64_t>> all_graph_distances(const Graph& g) {
  std::vector<std::vector<std::int64_t>> out(
      static_cast<std::size_t>(g.vertexCount));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t v = 0; v < g.vertexCount; ++v)
    out[static_cast<std::size_t>(v)] = bfs_distances_from(g, v);
  return out;
}

// ---------------------------------------------------------------------------
// Spanning tree and words

SpanningTree spanning_tree(const Graph& g) {
  std::vector<std::int64_t> parent(static_cast<std::size_t>(g.vertexCount),
                                   -1);
  std::vector<bool> seen(static_cast<std::size_t>(g.vertexCount), false);
  std::deque<std::int64_t> queue;
  seen[static_cast<std::size_t>(g.basepoint)] = true;
  queue.push_back(g.basepoint);
  while (!queue.empty()) {
    const std::int64_t v = queue.front();
    queue.pop_front();
    for (std::int64_t u : g.adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        parent[static_cast<std::size_t>(u)] = v;
        queue.push_back(u);
      }
  }
  for (std::int64_t v = 0; v < g.vertexCount; ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("graph is not connected");
  return spanning_tree_from_parents(g, std::move(parent));
}

SpanningTree spanning_tree_from_parents(const Graph& g,
                                        std::vector<std::int64_t> parent) {
  if (static_cast<std::int64_t>(parent.size()) != g.vertexCount)
    throw std::invalid_argument("parent map size mismatch");
  SpanningTree tree;
  tree.root = g.basepoint;
  if (parent[static_cast<std::size_t>(tree.root)] != -1)
    throw std::invalid_argument("root must have no parent");
  tree.parent = std::move(parent);
  tree.parentEdge.assign(static_cast<std::size_t>(g.vertexCount), -1);
  tree.letterOfEdge.assign(g.edges.size(), -1);

  std::int64_t treeEdges = 0;
  for (std::int64_t v = 0; v < g.vertexCount; ++v) {
    if (v == tree.root) continue;
    const std::int64_t pv = tree.parent[static_cast<std::size_t>(v)];
    if (pv < 0) throw std::invalid_argument("non-root vertex without parent");
    const std::int64_t eid = g.edge_id(pv, v);
    if (eid < 0)
      throw std::invalid_argument("parent map uses a non-existent edge");
    tree.parentEdge[static_cast<std::size_t>(v)] = eid;
    ++treeEdges;
  }
  if (treeEdges != g.vertexCount - 1)
    throw std::invalid_argument("parent map does not span");
  // Acyclicity: walking up from any vertex must reach the root.
  for (std::int64_t v = 0; v < g.vertexCount; ++v) {
    std::int64_t cur = v, steps = 0;
    while (cur != tree.root) {
      cur = tree.parent[static_cast<std::size_t>(cur)];
      if (++steps > g.vertexCount)
        throw std::invalid_argument("parent map contains a cycle");
    }
  }

  // Letters in sorted edge order; orientation low -> high.
  for (std::size_t eid = 0; eid < g.edges.size(); ++eid) {
    bool isTree = false;
    const auto [u, v] = g.edges[eid];
    if (tree.parent[static_cast<std::size_t>(v)] == u &&
        tree.parentEdge[static_cast<std::size_t>(v)] ==
            static_cast<std::int64_t>(eid))
      isTree = true;
    if (tree.parent[static_cast<std::size_t>(u)] == v &&
        tree.parentEdge[static_cast<std::size_t>(u)] ==
            static_cast<std::int64_t>(eid))
      isTree = true;
    if (isTree) {
      tree.letterOfEdge[eid] =
          static_cast<std::int64_t>(tree.letterEdges.size());
      tree.letterEdges.push_back(g.edges[eid]);
    }
  }
  return tree;
}

Word free_reduce(Word w) {
  std::vector<std::int32_t> out;
  out.reserve(w.letters.size());
  for (std::int32_t l : w.letters) {
    if (l == 0) throw std::invalid_argument("zero letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word{std::move(out)};
}

Word word_mul(const Word& a, const Word& b) {
  std::size_t i = 0;
  std::size_t cut = a.letters.size();
  while (cut > 0 && i < b.letters.size() &&
         a.letters[cut - 1] == -b.letters[i]) {
    --cut;
    ++i;
  }
  Word out;
  out.letters.reserve(cut + b.letters.size() - i);
  out.letters.assign(a.letters.begin(), a.letters.begin() + cut);
  out.letters.insert(out.letters.end(), b.letters.begin() + i,
                     b.letters.end());
  return out;
}

Word word_inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(-*it);
  return out;
}

GeneratorImages generator_images(const Graph& g, SpanningTree tree) {
  GeneratorImages gi;
  gi.graph = &g;
  gi.tree = std::move(tree);
  gi.vertexWord.resize(static_cast<std::size_t>(g.vertexCount));

  // Root-path words, children after parents.
  std::vector<std::int64_t> order;
  order.reserve(static_cast<std::size_t>(g.vertexCount));
  std::vector<std::vector<std::int64_t>> children(
      static_cast<std::size_t>(g.vertexCount));
  for (std::int64_t v = 0; v < g.vertexCount; ++v)
    if (v != gi.tree.root)
      children[static_cast<std::size_t>(
                   gi.tree.parent[static_cast<std::size_t>(v)])]
          .push_back(v);
  order.push_back(gi.tree.root);
  for (std::size_t qi = 0; qi < order.size(); ++qi)
    for (std::int64_t c : children[static_cast<std::size_t>(order[qi])])
      order.push_back(c);
  for (std::size_t qi = 1; qi < order.size(); ++qi) {
    const std::int64_t v = order[qi];
    const std::int64_t pv = gi.tree.parent[static_cast<std::size_t>(v)];
    const std::int64_t eid = gi.tree.parentEdge[static_cast<std::size_t>(v)];
    const std::int64_t letter = gi.tree.letterOfEdge[static_cast<std::size_t>(eid)];
    const auto [lo, hi] = gi.tree.letterEdges[static_cast<std::size_t>(letter)];
    // Oriented lo -> hi: letter is positive when the walk enters at hi.
    const std::int32_t signedLetter =
        (pv == lo && v == hi) ? static_cast<std::int32_t>(letter + 1)
                              : static_cast<std::int32_t>(-(letter + 1));
    gi.vertexWord[static_cast<std::size_t>(v)] =
        word_mul(gi.vertexWord[static_cast<std::size_t>(pv)],
                 Word{{signedLetter}});
  }

  gi.edgeWordForward.resize(g.edges.size());
  for (std::size_t eid = 0; eid < g.edges.size(); ++eid) {
    const auto [u, v] = g.edges[eid];
    gi.edgeWordForward[eid] =
        word_mul(word_inverse(gi.vertexWord[static_cast<std::size_t>(u)]),
                 gi.vertexWord[static_cast<std::size_t>(v)]);
  }
  return gi;
}

GeneratorImages generator_images(const Graph& g) {
  return generator_images(g, spanning_tree(g));
}

Word vertex_image(const GeneratorImages& gi, std::int64_t v) {
  return gi.vertexWord.at(static_cast<std::size_t>(v));
}

Word edge_image(const GeneratorImages& gi, std::int64_t from, std::int64_t to) {
  const std::int64_t eid = gi.graph->edge_id(from, to);
  if (eid < 0) throw std::invalid_argument("no such edge");
  const Word& fwd = gi.edgeWordForward[static_cast<std::size_t>(eid)];
  return from < to ? fwd : word_inverse(fwd);
}

LoopCheckReport loop_identity_check(const GeneratorImages& gi) {
  LoopCheckReport report;
  const Graph& g = *gi.graph;
  for (std::size_t eid = 0; eid < g.edges.size(); ++eid) {
    const auto [u, v] = g.edges[eid];
    const Word loop =
        word_mul(word_mul(gi.vertexWord[static_cast<std::size_t>(u)],
                          gi.edgeWordForward[eid]),
                 word_inverse(gi.vertexWord[static_cast<std::size_t>(v)]));
    ++report.cyclesChecked;
    if (gi.tree.letterOfEdge[eid] < 0) ++report.nonTreeCycles;
    if (!loop.empty() && report.allIdentity) {
      report.allIdentity = false;
      report.firstViolation = "loop through edge (" + std::to_string(u) +
                              "," + std::to_string(v) +
                              ") does not reduce to the identity";
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Word length

WordLengthSearch::WordLengthSearch(const GeneratorImages& gi,
                                   std::int64_t stateBudget)
    : stateBudget_(stateBudget) {
  std::unordered_set<Word, WordHash> seen;
  for (const Word& w : gi.edgeWordForward) {
    if (w.empty())
      throw std::invalid_argument("identity generator image");
    if (seen.insert(w).second) gens_.push_back(w);
    const Word inv = word_inverse(w);
    if (seen.insert(inv).second) gens_.push_back(inv);
    maxGenLen_ = std::max(maxGenLen_, w.length());
  }
  levels_.push_back({Word{}});
  dist_[Word{}] = 0;
}

void WordLengthSearch::grow_to(std::int64_t radius) {
  while (static_cast<std::int64_t>(levels_.size()) - 1 < radius) {
    const auto& frontier = levels_.back();
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const Word& gen : gens_) {
        Word prod = word_mul(w, gen);
        if (dist_.find(prod) != dist_.end()) continue;
        dist_.emplace(prod, static_cast<std::int32_t>(levels_.size()));
        next.push_back(std::move(prod));
        if (static_cast<std::int64_t>(dist_.size()) > stateBudget_)
          throw budget_error("word-length search state budget exceeded");
      }
    }
    levels_.push_back(std::move(next));
  }
}

std::optional<std::int64_t> WordLengthSearch::length(const Word& g,
                                                     std::int64_t budget) {
  const Word target = free_reduce(g);
  if (target.empty()) return 0;
  for (std::int64_t k = 1; k <= budget; ++k) {
    const std::int64_t a = k / 2;
    const std::int64_t b = k - a;
    grow_to(std::max(a, b));
    // dist(target) == k iff some geodesic midpoint h at distance exactly a
    // satisfies dist(h^-1 * target) <= b; earlier iterations ruled out < k.
    const auto& mid = levels_[static_cast<std::size_t>(a)];
    std::atomic<bool> found{false};
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(mid.size()); ++i) {
      if (found.load(std::memory_order_relaxed)) continue;
      const Word& h = mid[static_cast<std::size_t>(i)];
      const Word rest = word_mul(word_inverse(h), target);
      if (rest.length() > b * maxGenLen_) continue;  // unreachable in b steps
      const auto it = dist_.find(rest);
      if (it != dist_.end() && it->second <= b)
        found.store(true, std::memory_order_relaxed);
    }
    if (found.load()) return k;
  }
  return std::nullopt;
}

EmbeddingCheckReport isometric_embedding_check(
    const Graph& g, const GeneratorImages& gi, std::int64_t budget,
    std::optional<std::pair<std::int64_t, std::uint64_t>> sample) {
  EmbeddingCheckReport report;
  WordLengthSearch search(gi);

  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  if (sample) {
    RngStream rng = derive_stream(sample->second, 0x504152);
    for (std::int64_t i = 0; i < sample->first; ++i) {
      const std::int64_t u = rng.uniform_int(0, g.vertexCount - 1);
      const std::int64_t v = rng.uniform_int(0, g.vertexCount - 1);
      pairs.emplace_back(u, v);
    }
  } else {
    for (std::int64_t u = 0; u < g.vertexCount; ++u)
      for (std::int64_t v = u; v < g.vertexCount; ++v) pairs.emplace_back(u, v);
  }

  for (const auto& [u, v] : pairs) {
    ++report.pairsChecked;
    const std::int64_t expected = bfs_distance(g, u, v);
    const Word target =
        word_mul(word_inverse(gi.vertexWord[static_cast<std::size_t>(u)]),
                 gi.vertexWord[static_cast<std::size_t>(v)]);
    std::optional<std::int64_t> got;
    bool budgetHit = false;
    try {
      got = search.length(target, budget);
    } catch (const budget_error&) {
      budgetHit = true;
    }
    if (budgetHit || !got) {
      ++report.inconclusive;
      if (report.details.size() < 8)
        report.details.push_back("pair (" + std::to_string(u) + "," +
                                 std::to_string(v) +
                                 "): inconclusive within budget");
    } else if (*got != expected) {
      ++report.failures;
      if (report.details.size() < 8)
        report.details.push_back(
            "pair (" + std::to_string(u) + "," + std::to_string(v) +
            "): word length " + std::to_string(*got) + " != graph distance " +
            std::to_string(expected));
    }
  }
  report.pass = report.failures == 0 && report.inconclusive == 0;
  return report;
}

WordLengthTable cayley_ball(const std::vector<Word>& gens, std::int64_t radius,
                            std::int64_t stateBudget) {
  std::vector<Word> dirs;
  std::unordered_set<Word, WordHash> seenGens;
  for (const Word& w0 : gens) {
    const Word w = free_reduce(w0);
    if (w.empty()) continue;
    if (seenGens.insert(w).second) dirs.push_back(w);
    const Word inv = word_inverse(w);
    if (seenGens.insert(inv).second) dirs.push_back(inv);
  }
  WordLengthTable table;
  table.radius = radius;
  table.len[Word{}] = 0;
  std::vector<Word> frontier{Word{}};
  for (std::int64_t r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (const Word& gen : dirs) {
        Word prod = word_mul(w, gen);
        if (table.len.find(prod) != table.len.end()) continue;
        table.len.emplace(prod, r);
        next.push_back(std::move(prod));
        if (static_cast<std::int64_t>(table.len.size()) > stateBudget)
          throw budget_error("cayley ball state budget exceeded");
      }
    frontier = std::move(next);
  }
  return table;
}

std::vector<std::int64_t> subgroup_distortion(const WordLengthTable& ballS,
                                              const WordLengthTable& ballT,
                                              std::int64_t tMax) {
  if (ballT.len.empty() || ballS.len.empty())
    throw std::invalid_argument("empty ball");
  if (tMax < 1) throw std::invalid_argument("tMax must be >= 1");
  if (tMax > ballS.radius)
    throw std::invalid_argument(
        "insufficient ball radius: tMax exceeds the S-ball radius");

  // qual(w): the largest t for which w certifies, i.e. its S-length, or
  // radius+1 when w lies outside the S-ball (its S-length exceeds radius).
  std::vector<std::int64_t> maxQual(
      static_cast<std::size_t>(ballT.radius) + 1, -1);
  for (const auto& [w, lenT] : ballT.len) {
    const auto it = ballS.len.find(w);
    const std::int64_t qual =
        it == ballS.len.end() ? ballS.radius + 1 : it->second;
    auto& slot = maxQual[static_cast<std::size_t>(lenT)];
    slot = std::max(slot, qual);
  }

  std::vector<std::int64_t> rho(static_cast<std::size_t>(tMax), -1);
  for (std::int64_t t = 1; t <= tMax; ++t) {
    std::int64_t best = -1;
    for (std::int64_t l = 0; l <= ballT.radius; ++l)
      if (maxQual[static_cast<std::size_t>(l)] >= t) {
        best = l;
        break;
      }
    if (best < 0)
      throw std::invalid_argument(
          "insufficient ball radius: no element of the T-ball has S-length "
          ">= " +
          std::to_string(t));
    rho[static_cast<std::size_t>(t - 1)] = best;
  }
  return rho;
}

}  // namespace enflo
