#include "enflo/space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace enflo {
namespace {

// d / p^m, throwing if p^m does not divide d.
std::int64_t checked_support(std::int64_t d, std::int64_t p, std::int64_t m) {
  std::int64_t s = d;
  for (std::int64_t i = 0; i < m; ++i) {
    if (s % p != 0) throw std::invalid_argument("support not integral");
    s /= p;
  }
  return s;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > INT64_MAX || r < INT64_MIN)
    throw std::invalid_argument(std::string(what) + ": value overflows");
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::int64_t SpaceSpec::support(std::int64_t m) const {
  if (m < 0 || m > L) throw std::invalid_argument("level out of range [0, L]");
  std::int64_t s = d;
  for (std::int64_t i = 0; i < m; ++i) s /= p;
  return s;
}

std::int64_t SpaceSpec::step(std::int64_t m) const {
  if (m < 0 || m > L) throw std::invalid_argument("level out of range [0, L]");
  return std::int64_t{1} << m;
}

SpaceSpec make_space_spec(std::int64_t n) {
  if (n < 2)
    throw std::invalid_argument(
        "n must be >= 2 (n = 1 would leave no levels above 0)");
  if (n > 15)
    throw std::invalid_argument(
        "n > 15: d = 2*n^n is not representable; use the formula-level "
        "helpers for asymptotic checks");
  std::int64_t d = 2;
  for (std::int64_t i = 0; i < n; ++i) d = checked_mul(d, n, "d = 2*n^n");
  SpaceSpec spec{std::int64_t{1} << (n + 1), d, n, n - 1};
  return spec;
}

SpaceSpec make_custom_spec(std::int64_t q, std::int64_t d, std::int64_t p,
                           std::int64_t L) {
  if (q < 4 || q % 2 != 0)
    throw std::invalid_argument("q must be an even integer >= 4");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (p < 2) throw std::invalid_argument("p must be >= 2");
  if (L < 1) throw std::invalid_argument("L must be >= 1");
  if (L > 61) throw std::invalid_argument("L too large: step(L) overflows");

  std::int64_t sup;
  try {
    sup = checked_support(d, p, L);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("d is not divisible by p^L");
  }
  (void)sup;

  // Levels 1..L need a double-simplex construction: the block layout exists
  // when support(m) is even, and p = 2 admits a wrap-around pair otherwise.
  if (p != 2) {
    std::int64_t s = d;
    for (std::int64_t m = 1; m <= L; ++m) {
      s /= p;
      if (s % 2 != 0)
        throw std::invalid_argument(
            "support parity failure: support(" + std::to_string(m) +
            ") is odd and p != 2 leaves no double-simplex construction");
    }
  }

  const std::int64_t stepL = std::int64_t{1} << L;
  if (stepL > q / 2)
    throw std::invalid_argument("step(L) exceeds q/2: levels collide");

  return SpaceSpec{q, d, p, L};
}

// ---------------------------------------------------------------------------
// Point

Point Point::dense(std::vector<std::int64_t> coords) {
  Point pt;
  pt.dim_ = static_cast<std::int64_t>(coords.size());
  pt.rep_ = std::move(coords);
  return pt;
}

Point Point::sparse(std::int64_t dim, std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first < 0 || entries[i].first >= dim)
      throw std::invalid_argument("sparse index out of range");
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("duplicate sparse index");
    if (entries[i].second == 0)
      throw std::invalid_argument("sparse entries must be nonzero");
  }
  Point pt;
  pt.dim_ = dim;
  pt.rep_ = Sparse{std::move(entries)};
  return pt;
}

Point Point::zeros(std::int64_t dim) { return sparse(dim, {}); }

std::int64_t Point::at(std::int64_t i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("coordinate index");
  if (const auto* dense = std::get_if<std::vector<std::int64_t>>(&rep_))
    return (*dense)[static_cast<std::size_t>(i)];
  const auto& entries = std::get<Sparse>(rep_).entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), i,
                             [](const SparseEntry& e, std::int64_t idx) {
                               return e.first < idx;
                             });
  return (it != entries.end() && it->first == i) ? it->second : 0;
}

std::int64_t Point::nonzero_count() const {
  if (const auto* dense = std::get_if<std::vector<std::int64_t>>(&rep_))
    return static_cast<std::int64_t>(
        std::count_if(dense->begin(), dense->end(),
                      [](std::int64_t v) { return v != 0; }));
  return static_cast<std::int64_t>(std::get<Sparse>(rep_).entries.size());
}

std::vector<std::int64_t> Point::to_dense() const {
  if (const auto* dense = std::get_if<std::vector<std::int64_t>>(&rep_))
    return *dense;
  std::vector<std::int64_t> out(static_cast<std::size_t>(dim_), 0);
  for (const auto& [i, v] : std::get<Sparse>(rep_).entries)
    out[static_cast<std::size_t>(i)] = v;
  return out;
}

const std::vector<std::int64_t>& Point::dense_coords() const {
  return std::get<std::vector<std::int64_t>>(rep_);
}

const std::vector<Point::SparseEntry>& Point::sparse_entries() const {
  return std::get<Sparse>(rep_).entries;
}

bool Point::operator==(const Point& other) const {
  if (dim_ != other.dim_) return false;
  bool equal = true;
  for_each_diff(*this, other,
                [&](std::int64_t, std::int64_t, std::int64_t) { equal = false; });
  return equal;
}

void for_each_diff(
    const Point& a, const Point& b,
    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("dimension mismatch between points");
  const bool sa = a.is_sparse();
  const bool sb = b.is_sparse();
  if (sa && sb) {
    const auto& ea = a.sparse_entries();
    const auto& eb = b.sparse_entries();
    std::size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
      if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
        fn(ea[i].first, ea[i].second, 0);
        ++i;
      } else if (i == ea.size() || eb[j].first < ea[i].first) {
        fn(eb[j].first, 0, eb[j].second);
        ++j;
      } else {
        if (ea[i].second != eb[j].second)
          fn(ea[i].first, ea[i].second, eb[j].second);
        ++i;
        ++j;
      }
    }
    return;
  }
  if (!sa && !sb) {
    const auto& ca = a.dense_coords();
    const auto& cb = b.dense_coords();
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (ca[i] != cb[i]) fn(static_cast<std::int64_t>(i), ca[i], cb[i]);
    return;
  }
  // Mixed: walk the dense side, tracking a cursor into the sparse side.
  const Point& dense = sa ? b : a;
  const Point& sparse = sa ? a : b;
  const auto& cd = dense.dense_coords();
  const auto& es = sparse.sparse_entries();
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < cd.size(); ++i) {
    std::int64_t sv = 0;
    if (cursor < es.size() &&
        es[cursor].first == static_cast<std::int64_t>(i)) {
      sv = es[cursor].second;
      ++cursor;
    }
    if (cd[i] != sv) {
      if (sa)
        fn(static_cast<std::int64_t>(i), sv, cd[i]);
      else
        fn(static_cast<std::int64_t>(i), cd[i], sv);
    }
  }
}

// ---------------------------------------------------------------------------
// Metric and segment classes

std::int64_t cyclic_diff(std::int64_t q, std::int64_t x, std::int64_t y) {
  std::int64_t r = (x - y) % q;
  if (r < 0) r += q;
  return std::min(r, q - r);
}

std::int64_t distance(const SpaceSpec& spec, const Point& a, const Point& b) {
  if (a.dim() != spec.d || b.dim() != spec.d)
    throw std::invalid_argument("point does not belong to this space");
  std::int64_t best = 0;
  for_each_diff(a, b, [&](std::int64_t, std::int64_t ai, std::int64_t bi) {
    best = std::max(best, cyclic_diff(spec.q, ai, bi));
  });
  return best;
}

std::optional<std::int64_t> segment_level(const SpaceSpec& spec,
                                          const Point& a, const Point& b) {
  if (a.dim() != spec.d || b.dim() != spec.d)
    throw std::invalid_argument("point does not belong to this space");
  std::int64_t count = 0;
  std::int64_t diff = -1;
  bool uniform = true;
  for_each_diff(a, b, [&](std::int64_t, std::int64_t ai, std::int64_t bi) {
    ++count;
    const std::int64_t c = cyclic_diff(spec.q, ai, bi);
    if (diff == -1)
      diff = c;
    else if (diff != c)
      uniform = false;
  });
  if (!uniform || count == 0) return std::nullopt;
  for (std::int64_t m = 0; m <= spec.L; ++m)
    if (count == spec.support(m) && diff == spec.step(m)) return m;
  return std::nullopt;
}

Segment canonical_segment(const SpaceSpec& spec, std::int64_t m) {
  const std::int64_t sup = spec.support(m);  // validates m
  const std::int64_t st = spec.step(m);
  std::vector<Point::SparseEntry> entries;
  entries.reserve(static_cast<std::size_t>(sup));
  for (std::int64_t i = 0; i < sup; ++i) entries.emplace_back(i, st);
  return Segment{Point::zeros(spec.d), Point::sparse(spec.d, std::move(entries)),
                 m};
}

std::int64_t offset_count(const SpaceSpec& spec, std::int64_t m) {
  return 2 * spec.step(m) == spec.q ? 1 : 2;
}

Segment random_segment(const SpaceSpec& spec, std::int64_t m, RngStream& rng) {
  const std::int64_t sup = spec.support(m);
  const std::int64_t st = spec.step(m);
  const bool twoOffsets = offset_count(spec, m) == 2;

  std::vector<std::int64_t> base(static_cast<std::size_t>(spec.d));
  for (auto& c : base) c = rng.uniform_int(0, spec.q - 1);

  // Uniform support: prefix of a partial Fisher-Yates shuffle.
  std::vector<std::int64_t> idx(static_cast<std::size_t>(spec.d));
  for (std::size_t i = 0; i < idx.size(); ++i)
    idx[i] = static_cast<std::int64_t>(i);
  for (std::int64_t i = 0; i < sup; ++i) {
    const std::int64_t j = rng.uniform_int(i, spec.d - 1);
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(j)]);
  }

  std::vector<std::int64_t> other = base;
  for (std::int64_t k = 0; k < sup; ++k) {
    const std::int64_t i = idx[static_cast<std::size_t>(k)];
    const std::int64_t sign = twoOffsets ? (rng.coin() ? 1 : -1) : 1;
    std::int64_t v = (other[static_cast<std::size_t>(i)] + sign * st) % spec.q;
    if (v < 0) v += spec.q;
    other[static_cast<std::size_t>(i)] = v;
  }
  return Segment{Point::dense(std::move(base)), Point::dense(std::move(other)),
                 m};
}

Segment random_segment(const SpaceSpec& spec, std::int64_t m,
                       std::uint64_t seed) {
  RngStream rng(seed);
  return random_segment(spec, m, rng);
}

BigInt count_segments_formula(const SpaceSpec& spec, std::int64_t m) {
  const std::int64_t sup = spec.support(m);
  return bigint_pow(spec.q, static_cast<unsigned long>(spec.d)) *
         binomial(spec.d, sup) *
         bigint_pow(offset_count(spec, m), static_cast<unsigned long>(sup));
}

BigInt point_count(const SpaceSpec& spec) {
  return bigint_pow(spec.q, static_cast<unsigned long>(spec.d));
}

std::int64_t point_count_checked(const SpaceSpec& spec, const Budget& budget) {
  const BigInt n = point_count(spec);
  if (n > budget.maxPoints)
    throw budget_error("point enumeration budget exceeded: q^d = " + n.str() +
                       " > " + std::to_string(budget.maxPoints));
  return n.template convert_to<std::int64_t>();
}

std::int64_t segment_count_checked(const SpaceSpec& spec, std::int64_t m,
                                   const Budget& budget) {
  point_count_checked(spec, budget);
  const BigInt n = count_segments_formula(spec, m);
  if (n > budget.maxPairs)
    throw budget_error("segment enumeration budget exceeded: " + n.str() +
                       " > " + std::to_string(budget.maxPairs));
  return n.template convert_to<std::int64_t>();
}

Point point_at(const SpaceSpec& spec, std::int64_t rank) {
  std::vector<std::int64_t> coords(static_cast<std::size_t>(spec.d));
  for (std::int64_t i = spec.d - 1; i >= 0; --i) {
    coords[static_cast<std::size_t>(i)] = rank % spec.q;
    rank /= spec.q;
  }
  if (rank != 0) throw std::invalid_argument("point rank out of range");
  return Point::dense(std::move(coords));
}

std::int64_t point_rank(const SpaceSpec& spec, const Point& pt) {
  if (pt.dim() != spec.d)
    throw std::invalid_argument("point does not belong to this space");
  std::int64_t rank = 0;
  for (std::int64_t i = 0; i < spec.d; ++i) {
    const std::int64_t c = pt.at(i);
    if (c < 0 || c >= spec.q)
      throw std::invalid_argument("coordinate out of [0, q)");
    rank = rank * spec.q + c;
  }
  return rank;
}

namespace {

// Lexicographic unranking of a size-k combination of {0..d-1}.
std::vector<std::int64_t> combination_at(std::int64_t d, std::int64_t k,
                                         std::int64_t rank) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(k));
  std::int64_t next = 0;
  for (std::int64_t slot = k; slot >= 1; --slot) {
    for (;; ++next) {
      const BigInt c = binomial(d - next - 1, slot - 1);
      if (c > rank) break;
      rank -= c.template convert_to<std::int64_t>();
    }
    out.push_back(next);
    ++next;
  }
  return out;
}

}  // namespace

Segment segment_at(const SpaceSpec& spec, std::int64_t m, std::int64_t rank) {
  const std::int64_t sup = spec.support(m);
  const std::int64_t st = spec.step(m);
  const std::int64_t offsets = offset_count(spec, m);

  std::int64_t signCount = 1;
  for (std::int64_t i = 0; i < sup; ++i) signCount *= offsets;
  const BigInt comboCountBig = binomial(spec.d, sup);
  const std::int64_t comboCount =
      comboCountBig.template convert_to<std::int64_t>();

  const std::int64_t signRank = rank % signCount;
  rank /= signCount;
  const std::int64_t comboRank = rank % comboCount;
  const std::int64_t pointRank = rank / comboCount;

  Point a = point_at(spec, pointRank);  // also range-checks the rank
  std::vector<std::int64_t> coords = a.to_dense();
  const auto supportIdx = combination_at(spec.d, sup, comboRank);
  std::int64_t bits = signRank;
  for (std::int64_t k = 0; k < sup; ++k) {
    std::int64_t sign = 1;
    if (offsets == 2) {
      sign = (bits & 1) != 0 ? -1 : 1;
      bits >>= 1;
    }
    auto& c = coords[static_cast<std::size_t>(supportIdx[static_cast<std::size_t>(k)])];
    c = (c + sign * st) % spec.q;
    if (c < 0) c += spec.q;
  }
  return Segment{std::move(a), Point::dense(std::move(coords)), m};
}

std::vector<Point> enumerate_points(const SpaceSpec& spec,
                                    const Budget& budget) {
  const std::int64_t n = point_count_checked(spec, budget);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) out.push_back(point_at(spec, r));
  return out;
}

std::vector<Segment> enumerate_segments(const SpaceSpec& spec, std::int64_t m,
                                        const Budget& budget) {
  const std::int64_t n = segment_count_checked(spec, m, budget);
  std::vector<Segment> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r) out.push_back(segment_at(spec, m, r));
  return out;
}

}  // namespace enflo
