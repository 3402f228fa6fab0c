#pragma once

#include <cstdint>
#include <vector>

#include "enflo/budget.hpp"
#include "enflo/embedding.hpp"
#include "enflo/space.hpp"

namespace enflo::oracle {

// Serial, deliberately naive reference implementations. Nothing here shares
// logic with the production kernels: segments come from filtering all point
// pairs against the definition, distances from Floyd-Warshall, group
// elements from explicit value tables. Tests (and the benchmark) compare
// the two sides; production code never calls into this namespace.

using OracleBudget = Budget;

// All ordered point-pair ranks (a, b) forming an m-segment, by definition.
std::vector<std::pair<std::int64_t, std::int64_t>> oracle_segments(
    const SpaceSpec& spec, std::int64_t m, const OracleBudget& budget = {});

// Mean of squared image distances over oracle_segments, summed one pair at
// a time with the map's full vectors.
Rat oracle_mean(const SpaceSpec& spec, const EmbeddingMap& map, std::int64_t m,
                const OracleBudget& budget = {});

// Every candidate (permutation, eps, t) tuple realized as a value table on
// point ranks: table[rank(x)] = rank(h(x)). Each table is verified to
// preserve the metric on all point pairs, and the list is deduplicated.
std::vector<std::vector<std::int64_t>> oracle_group(
    const SpaceSpec& spec, const OracleBudget& budget = {});

// All-pairs shortest paths by Floyd-Warshall over the unit-distance
// adjacency. dist[a][b] in graph-metric steps; -1 when unreachable.
std::vector<std::vector<std::int64_t>> oracle_all_pairs_bfs(
    const SpaceSpec& spec, const OracleBudget& budget = {});

}  // namespace enflo::oracle
