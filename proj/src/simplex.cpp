#include "enflo/simplex.hpp"

#include <stdexcept>

namespace enflo {
namespace {

struct Range {
  std::int64_t lo, hi, val;
};

Point range_point(std::int64_t d, std::initializer_list<Range> ranges) {
  // Ranges are disjoint and ascending; zero-valued ranges are dropped.
  std::vector<Point::SparseEntry> entries;
  for (const auto& r : ranges) {
    if (r.val == 0) continue;
    for (std::int64_t i = r.lo; i < r.hi; ++i) entries.emplace_back(i, r.val);
  }
  return Point::sparse(d, std::move(entries));
}

}  // namespace

DoubleSimplex double_simplex(const SpaceSpec& spec, std::int64_t m) {
  if (m < 1 || m > spec.L)
    throw std::invalid_argument("double simplex level must lie in [1, L]");
  const std::int64_t sup = spec.support(m);
  const std::int64_t st = spec.step(m);
  const std::int64_t stPrev = spec.step(m - 1);

  DoubleSimplex ds;
  ds.level = m;

  if (sup % 2 == 0) {
    // Block layout. I = [0, iSize) splits into p blocks of blockSize; the
    // filler value step(m-1) occupies the shifted copy I + iSize.
    const std::int64_t blockSize = sup / 2;
    const std::int64_t iSize = spec.p * blockSize;
    ds.layout = DoubleSimplex::Layout::Blocks;
    ds.indexSetSize = iSize;
    ds.blockSize = blockSize;
    for (std::int64_t k = 0; k < spec.p; ++k) {
      const std::int64_t lo = k * blockSize;
      const std::int64_t hi = lo + blockSize;
      ds.u.push_back(
          range_point(spec.d, {{lo, hi, st}, {iSize, 2 * iSize, stPrev}}));
      ds.v.push_back(range_point(spec.d, {{0, iSize, stPrev},
                                          {iSize + lo, iSize + hi, st}}));
    }
    return ds;
  }

  if (spec.p == 2) {
    // Wrap-around pair: u's differ on A, v's differ on B via the +-step(m-1)
    // values, whose cyclic distance is step(m).
    const std::int64_t c = sup;
    ds.layout = DoubleSimplex::Layout::WrapPair;
    ds.indexSetSize = 2 * c;
    ds.blockSize = c;
    ds.u.push_back(Point::zeros(spec.d));
    ds.u.push_back(range_point(spec.d, {{0, c, st}}));
    ds.v.push_back(range_point(spec.d, {{0, 2 * c, stPrev}}));
    ds.v.push_back(
        range_point(spec.d, {{0, c, stPrev}, {c, 2 * c, spec.q - stPrev}}));
    return ds;
  }

  throw std::invalid_argument(
      "support(" + std::to_string(m) +
      ") is odd and p != 2: no double-simplex construction at this level");
}

SimplexCheck verify_double_simplex(const SpaceSpec& spec,
                                   const DoubleSimplex& ds) {
  SimplexCheck check;
  const std::int64_t p = static_cast<std::int64_t>(ds.u.size());
  auto fail = [&](const std::string& what) {
    if (check.ok) {
      check.ok = false;
      check.violation = what;
    }
  };
  if (ds.v.size() != ds.u.size() || p < 2) {
    fail("malformed simplex: need equally many u and v points, p >= 2");
    return check;
  }
  auto level_of = [&](const Point& a, const Point& b) {
    return segment_level(spec, a, b);
  };
  auto name = [](char side, std::int64_t k) {
    return std::string(1, side) + std::to_string(k);
  };
  for (std::int64_t k = 0; k < p; ++k) {
    for (std::int64_t l = k + 1; l < p; ++l) {
      ++check.edgesChecked;
      auto lv = level_of(ds.u[static_cast<std::size_t>(k)],
                         ds.u[static_cast<std::size_t>(l)]);
      if (!lv || *lv != ds.level)
        fail("edge (" + name('u', k) + "," + name('u', l) +
             ") does not classify at level " + std::to_string(ds.level));
      ++check.edgesChecked;
      lv = level_of(ds.v[static_cast<std::size_t>(k)],
                    ds.v[static_cast<std::size_t>(l)]);
      if (!lv || *lv != ds.level)
        fail("edge (" + name('v', k) + "," + name('v', l) +
             ") does not classify at level " + std::to_string(ds.level));
    }
  }
  for (std::int64_t k = 0; k < p; ++k) {
    for (std::int64_t l = 0; l < p; ++l) {
      ++check.linesChecked;
      const auto lv = level_of(ds.u[static_cast<std::size_t>(k)],
                               ds.v[static_cast<std::size_t>(l)]);
      if (!lv || *lv != ds.level - 1)
        fail("connecting line (" + name('u', k) + "," + name('v', l) +
             ") does not classify at level " + std::to_string(ds.level - 1));
    }
  }
  return check;
}

}  // namespace enflo
