#include "enflo/oracle.hpp"

#include <algorithm>
#include <set>

namespace enflo::oracle {
namespace {

// Everything below re-derives its answers from first principles on dense
// coordinate vectors; no production classification, ranking or isometry
// code is reused.

std::vector<std::vector<std::int64_t>> all_points(const SpaceSpec& spec,
                                                  const OracleBudget& budget) {
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < spec.d; ++i) {
    if (count > budget.maxPoints / spec.q + 1)
      throw budget_error("oracle: too many points");
    count *= spec.q;
  }
  if (count > budget.maxPoints) throw budget_error("oracle: too many points");

  std::vector<std::vector<std::int64_t>> pts;
  pts.reserve(static_cast<std::size_t>(count));
  std::vector<std::int64_t> cur(static_cast<std::size_t>(spec.d), 0);
  for (;;) {
    pts.push_back(cur);
    std::int64_t i = spec.d - 1;
    while (i >= 0) {
      if (++cur[static_cast<std::size_t>(i)] < spec.q) break;
      cur[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return pts;
}

std::int64_t cyc(std::int64_t q, std::int64_t a, std::int64_t b) {
  std::int64_t r = a - b;
  while (r < 0) r += q;
  while (r >= q) r -= q;
  return std::min(r, q - r);
}

bool is_m_segment(const SpaceSpec& spec, const std::vector<std::int64_t>& a,
                  const std::vector<std::int64_t>& b, std::int64_t m) {
  std::int64_t want = spec.d;
  for (std::int64_t i = 0; i < m; ++i) want /= spec.p;
  const std::int64_t st = std::int64_t{1} << m;
  std::int64_t differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (cyc(spec.q, a[i], b[i]) != st) return false;
    ++differing;
  }
  return differing == want;
}

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> oracle_segments(
    const SpaceSpec& spec, std::int64_t m, const OracleBudget& budget) {
  if (m < 0 || m > spec.L) return {};
  const auto pts = all_points(spec, budget);
  const std::int64_t n = static_cast<std::int64_t>(pts.size());
  if (n * n > budget.maxPairs)
    throw budget_error("oracle: too many point pairs");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      if (i != j && is_m_segment(spec, pts[static_cast<std::size_t>(i)],
                                 pts[static_cast<std::size_t>(j)], m))
        out.emplace_back(i, j);
  return out;
}

Rat oracle_mean(const SpaceSpec& spec, const EmbeddingMap& map, std::int64_t m,
                const OracleBudget& budget) {
  const auto segs = oracle_segments(spec, m, budget);
  if (segs.empty()) throw std::invalid_argument("oracle: empty segment class");
  const auto pts = all_points(spec, budget);
  Rat sum = 0;
  for (const auto& [i, j] : segs) {
    const auto va = map.eval_rational(
        Point::dense(pts[static_cast<std::size_t>(i)]));
    const auto vb = map.eval_rational(
        Point::dense(pts[static_cast<std::size_t>(j)]));
    Rat sq = 0;
    for (std::size_t k = 0; k < va.size(); ++k) {
      const Rat delta = va[k] - vb[k];
      sq += delta * delta;
    }
    sum += sq;
  }
  return sum / static_cast<std::int64_t>(segs.size());
}

std::vector<std::vector<std::int64_t>> oracle_group(
    const SpaceSpec& spec, const OracleBudget& budget) {
  const auto pts = all_points(spec, budget);
  const std::int64_t n = static_cast<std::int64_t>(pts.size());

  // Precompute all pairwise distances for the preservation check.
  if (n * n > budget.maxPairs)
    throw budget_error("oracle: too many point pairs");
  std::vector<std::vector<std::int64_t>> dist(
      static_cast<std::size_t>(n),
      std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      std::int64_t best = 0;
      for (std::int64_t k = 0; k < spec.d; ++k)
        best = std::max(best, cyc(spec.q,
                                  pts[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(k)],
                                  pts[static_cast<std::size_t>(j)]
                                     [static_cast<std::size_t>(k)]));
      dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = best;
    }

  // Rank lookup by mixed-radix value.
  auto rank_of = [&](const std::vector<std::int64_t>& v) {
    std::int64_t r = 0;
    for (std::int64_t c : v) r = r * spec.q + c;
    return r;
  };

  std::vector<std::int64_t> perm(static_cast<std::size_t>(spec.d));
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = static_cast<std::int64_t>(i);

  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> tables;
  do {
    std::vector<std::int64_t> eps(static_cast<std::size_t>(spec.d), 1);
    std::vector<std::int64_t> shift(static_cast<std::size_t>(spec.d), 0);
    for (;;) {
      if (static_cast<std::int64_t>(tables.size()) > budget.maxGroup)
        throw budget_error("oracle: group budget exceeded");
      std::vector<std::int64_t> table(static_cast<std::size_t>(n));
      for (std::int64_t r = 0; r < n; ++r) {
        std::vector<std::int64_t> img(static_cast<std::size_t>(spec.d));
        for (std::int64_t i = 0; i < spec.d; ++i) {
          std::int64_t v =
              eps[static_cast<std::size_t>(i)] *
                  pts[static_cast<std::size_t>(r)][static_cast<std::size_t>(
                      perm[static_cast<std::size_t>(i)])] +
              shift[static_cast<std::size_t>(i)];
          v %= spec.q;
          if (v < 0) v += spec.q;
          img[static_cast<std::size_t>(i)] = v;
        }
        table[static_cast<std::size_t>(r)] = rank_of(img);
      }
      // The candidate qualifies only if it preserves every pair distance.
      bool isometric = true;
      for (std::int64_t i = 0; i < n && isometric; ++i)
        for (std::int64_t j = 0; j < n; ++j)
          if (dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
              dist[static_cast<std::size_t>(
                  table[static_cast<std::size_t>(i)])][static_cast<std::size_t>(
                  table[static_cast<std::size_t>(j)])]) {
            isometric = false;
            break;
          }
      if (isometric && seen.insert(table).second) tables.push_back(table);

      std::int64_t i = spec.d - 1;
      for (; i >= 0; --i) {
        auto& t = shift[static_cast<std::size_t>(i)];
        if (t + 1 < spec.q) {
          ++t;
          break;
        }
        t = 0;
        auto& e = eps[static_cast<std::size_t>(i)];
        if (e == 1) {
          e = -1;
          break;
        }
        e = 1;
      }
      if (i < 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return tables;
}

std::vector<std::vector<std::int64_t>> oracle_all_pairs_bfs(
    const SpaceSpec& spec, const OracleBudget& budget) {
  const auto pts = all_points(spec, budget);
  const std::int64_t n = static_cast<std::int64_t>(pts.size());
  if (n * n > budget.maxPairs || n > 2048)
    throw budget_error("oracle: space too large for Floyd-Warshall");

  const std::int64_t INF = INT64_MAX / 4;
  std::vector<std::vector<std::int64_t>> dist(
      static_cast<std::size_t>(n),
      std::vector<std::int64_t>(static_cast<std::size_t>(n), INF));
  for (std::int64_t i = 0; i < n; ++i) {
    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::int64_t best = 0;
      for (std::int64_t k = 0; k < spec.d; ++k)
        best = std::max(best, cyc(spec.q,
                                  pts[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(k)],
                                  pts[static_cast<std::size_t>(j)]
                                     [static_cast<std::size_t>(k)]));
      if (best == 1)
        dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    }
  }
  for (std::int64_t k = 0; k < n; ++k)
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t via =
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
            dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        auto& cur =
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (via < cur) cur = via;
      }
  for (auto& row : dist)
    for (auto& v : row)
      if (v >= INF) v = -1;
  return dist;
}

}  // namespace enflo::oracle
