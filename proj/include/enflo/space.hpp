#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "enflo/budget.hpp"
#include "enflo/rational.hpp"
#include "enflo/rng.hpp"

namespace enflo {

// Parameters of a generalized modified Enflo space: the product of d copies
// of a q-cycle under the max metric.  Levels m = 0..L carry segment classes:
// an m-segment is an ordered point pair differing in exactly support(m)
// coordinates, each by cyclic distance step(m) = 2^m.
//
// The classical family is q = 2^(n+1), d = 2*n^n, p = n, L = n-1; q, d, p, L
// are decoupled so that tiny spaces stay exactly enumerable.
struct SpaceSpec {
  std::int64_t q = 0;  // cycle length, even, >= 4
  std::int64_t d = 0;  // number of coordinates
  std::int64_t p = 0;  // branching: support shrinks by a factor p per level
  std::int64_t L = 0;  // levels above 0

  std::int64_t support(std::int64_t m) const;  // d / p^m
  std::int64_t step(std::int64_t m) const;     // 2^m
  // step(L) == q/2: the two offsets +-step(L) coincide mod q.  Valid, but
  // the top-level offset factor in counting collapses from 2 to 1.
  bool degenerate_top() const { return 2 * step(L) == q; }

  bool operator==(const SpaceSpec&) const = default;
};

SpaceSpec make_space_spec(std::int64_t n);
SpaceSpec make_custom_spec(std::int64_t q, std::int64_t d, std::int64_t p,
                           std::int64_t L);

// A point of the product space. Storage is either dense (all d residues) or
// sparse (sorted nonzero positions); equality is by value, so a dense and a
// sparse point with the same coordinates compare equal.
class Point {
 public:
  using SparseEntry = std::pair<std::int64_t, std::int64_t>;  // (index, value)

  Point() = default;
  static Point dense(std::vector<std::int64_t> coords);
  static Point sparse(std::int64_t dim, std::vector<SparseEntry> entries);
  static Point zeros(std::int64_t dim);

  std::int64_t dim() const { return dim_; }
  bool is_sparse() const { return std::holds_alternative<Sparse>(rep_); }
  std::int64_t at(std::int64_t i) const;
  std::int64_t nonzero_count() const;
  std::vector<std::int64_t> to_dense() const;

  const std::vector<std::int64_t>& dense_coords() const;  // dense rep only
  const std::vector<SparseEntry>& sparse_entries() const;  // sparse rep only

  bool operator==(const Point& other) const;
  bool operator!=(const Point& other) const { return !(*this == other); }

 private:
  struct Sparse {
    std::vector<SparseEntry> entries;  // sorted by index, values nonzero
  };
  std::int64_t dim_ = 0;
  std::variant<std::vector<std::int64_t>, Sparse> rep_;
};

// Visits every coordinate where a and b differ (in either representation).
void for_each_diff(
    const Point& a, const Point& b,
    const std::function<void(std::int64_t i, std::int64_t ai, std::int64_t bi)>&
        fn);

struct Segment {
  Point a;
  Point b;
  std::optional<std::int64_t> level;  // nullopt = unclassified
};

// min(r, q-r) for r = (x-y) mod q.
std::int64_t cyclic_diff(std::int64_t q, std::int64_t x, std::int64_t y);

std::int64_t distance(const SpaceSpec& spec, const Point& a, const Point& b);

// The level m whose (support, step) profile matches, if any. Supports are
// strictly decreasing in m, so at most one level can match.
std::optional<std::int64_t> segment_level(const SpaceSpec& spec,
                                          const Point& a, const Point& b);

Segment canonical_segment(const SpaceSpec& spec, std::int64_t m);
Segment random_segment(const SpaceSpec& spec, std::int64_t m, RngStream& rng);
Segment random_segment(const SpaceSpec& spec, std::int64_t m,
                       std::uint64_t seed);

// Number of distinct per-coordinate offsets for a level: 2 (+-step) in
// general, 1 when step == q/2 and the two coincide.
std::int64_t offset_count(const SpaceSpec& spec, std::int64_t m);

// Ordered m-segment count: q^d * C(d, support(m)) * offset_count^support(m).
BigInt count_segments_formula(const SpaceSpec& spec, std::int64_t m);

BigInt point_count(const SpaceSpec& spec);

// Checked variants used by enumeration kernels; throw budget_error when the
// space exceeds the budget.
std::int64_t point_count_checked(const SpaceSpec& spec, const Budget& budget);
std::int64_t segment_count_checked(const SpaceSpec& spec, std::int64_t m,
                                   const Budget& budget);

// Rank <-> value maps underpinning parallel enumeration. Point rank is the
// big-endian mixed-radix encoding of the coordinates in base q; segment rank
// is (pointRank, supportRank, offsetRank) in that significance order with
// supports enumerated in lexicographic combination order.
Point point_at(const SpaceSpec& spec, std::int64_t rank);
std::int64_t point_rank(const SpaceSpec& spec, const Point& pt);
Segment segment_at(const SpaceSpec& spec, std::int64_t m, std::int64_t rank);

std::vector<Point> enumerate_points(const SpaceSpec& spec,
                                    const Budget& budget = {});
std::vector<Segment> enumerate_segments(const SpaceSpec& spec, std::int64_t m,
                                        const Budget& budget = {});

}  // namespace enflo
