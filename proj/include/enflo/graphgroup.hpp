#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "enflo/budget.hpp"
#include "enflo/rng.hpp"
#include "enflo/space.hpp"

namespace enflo {

// Finite graph with a basepoint. Vertices are 0..V-1; adjacency lists and
// the edge list (pairs u < v) are sorted, so everything downstream is
// deterministic.
struct Graph {
  std::int64_t vertexCount = 0;
  std::vector<std::vector<std::int64_t>> adj;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // u < v, sorted
  std::int64_t basepoint = 0;
  std::vector<std::string> labels;

  std::int64_t edge_id(std::int64_t u, std::int64_t v) const;  // -1 if absent
};

// Points at max-metric distance exactly 1: every coordinate moves by -1, 0
// or +1 cyclically, not all staying. 3^d - 1 neighbors for q >= 4.
std::vector<Point> neighbors(const SpaceSpec& spec, const Point& x);

// Unit-distance graph on the whole space (budget-guarded), basepoint at the
// all-zeros point.
Graph unit_graph(const SpaceSpec& spec, const Budget& budget = {});

Graph cycle_graph(std::int64_t q);

// Pointed sum: all basepoints identified into a single vertex 0.
struct WedgeGraph {
  Graph graph;
  // global vertex -> (component index, vertex in that component); the merged
  // basepoint maps to component -1.
  std::vector<std::pair<std::int64_t, std::int64_t>> origin;
};
WedgeGraph wedge(const std::vector<Graph>& components);

std::int64_t bfs_distance(const Graph& g, std::int64_t a, std::int64_t b);
std::vector<std::int64_t> bfs_distances_from(const Graph& g, std::int64_t src);
// Parallel over sources.
std::vector<std::vector<std::int64_t>> all_graph_distances(const Graph& g);

// BFS tree from the basepoint with sorted-adjacency tie-breaking. Tree edges
// are oriented low-vertex -> high-vertex and indexed ("letters") in sorted
// edge order.
struct SpanningTree {
  std::int64_t root = 0;
  std::vector<std::int64_t> parent;      // -1 at the root
  std::vector<std::int64_t> parentEdge;  // graph edge id, -1 at the root
  std::vector<std::int64_t> letterOfEdge;  // per graph edge id; -1 = non-tree
  std::vector<std::pair<std::int64_t, std::int64_t>> letterEdges;  // oriented
};
SpanningTree spanning_tree(const Graph& g);
SpanningTree spanning_tree_from_parents(const Graph& g,
                                        std::vector<std::int64_t> parent);

// Freely reduced word over tree letters; positive entry k+1 is letter k,
// negative is its inverse. The empty word is the identity.
struct Word {
  std::vector<std::int32_t> letters;
  bool operator==(const Word&) const = default;
  bool empty() const { return letters.empty(); }
  std::int64_t length() const {
    return static_cast<std::int64_t>(letters.size());
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int32_t l : w.letters) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
      h *= 1099511628211ull;
    }
    return h;
  }
};

Word free_reduce(Word w);
Word word_mul(const Word& a, const Word& b);  // reduced product
Word word_inverse(const Word& w);

// Images of the group generators: every vertex carries its root-path word,
// every directed edge (u, v) the word of the tree path u -> v. A tree edge's
// image is its own letter; a non-tree edge's image is the path that its
// fundamental loop forces it to equal.
struct GeneratorImages {
  const Graph* graph = nullptr;
  SpanningTree tree;
  std::vector<Word> vertexWord;
  std::vector<Word> edgeWordForward;  // per edge id, direction lo -> hi
};
GeneratorImages generator_images(const Graph& g, SpanningTree tree);
GeneratorImages generator_images(const Graph& g);

Word vertex_image(const GeneratorImages& gi, std::int64_t v);
Word edge_image(const GeneratorImages& gi, std::int64_t from, std::int64_t to);

// Checks that every edge loop (root -> u -> v -> root) reduces to the
// identity; on non-tree edges this is the fundamental-cycle relation.
struct LoopCheckReport {
  std::int64_t cyclesChecked = 0;
  std::int64_t nonTreeCycles = 0;
  bool allIdentity = true;
  std::string firstViolation;
};
LoopCheckReport loop_identity_check(const GeneratorImages& gi);

// Shortest factorization length of a group element over the edge-image
// generating set (every edge counts as one letter). Bidirectional
// meet-in-the-middle BFS; the free-group length over the maximum generator
// length prunes candidates. nullopt when the budget is exhausted.
class WordLengthSearch {
 public:
  explicit WordLengthSearch(const GeneratorImages& gi,
                            std::int64_t stateBudget = 4000000);
  std::optional<std::int64_t> length(const Word& g, std::int64_t budget);

 private:
  void grow_to(std::int64_t radius);

  std::vector<Word> gens_;  // both directions, deduplicated
  std::int64_t maxGenLen_ = 1;
  std::int64_t stateBudget_ = 0;
  std::vector<std::vector<Word>> levels_;
  std::unordered_map<Word, std::int32_t, WordHash> dist_;
};

struct EmbeddingCheckReport {
  std::int64_t pairsChecked = 0;
  std::int64_t failures = 0;
  std::int64_t inconclusive = 0;
  bool pass = false;
  std::vector<std::string> details;  // first few failures/inconclusives
};

// Verifies word_length(vertex_image(u)^-1 * vertex_image(v)) equals the
// graph distance, over all unordered pairs or a seeded sample.
EmbeddingCheckReport isometric_embedding_check(
    const Graph& g, const GeneratorImages& gi, std::int64_t budget,
    std::optional<std::pair<std::int64_t, std::uint64_t>> sample =
        std::nullopt);

// Word-length table of a Cayley ball: element -> distance from the identity
// with respect to `gens`, out to the given radius.
struct WordLengthTable {
  std::unordered_map<Word, std::int64_t, WordHash> len;
  std::int64_t radius = 0;
};
WordLengthTable cayley_ball(const std::vector<Word>& gens, std::int64_t radius,
                            std::int64_t stateBudget = 4000000);

// rho1(t) = min { |w|_T : |w|_S >= t } for t = 1..tMax, computed over the
// finite balls; elements outside ballS qualify for every t <= ballS.radius
// since their S-length exceeds the radius. Throws when the balls cannot
// decide a scale.
std::vector<std::int64_t> subgroup_distortion(const WordLengthTable& ballS,
                                              const WordLengthTable& ballT,
                                              std::int64_t tMax);

}  // namespace enflo
