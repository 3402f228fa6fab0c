#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enflo/space.hpp"

namespace enflo {

// 2p points u_0..u_{p-1}, v_0..v_{p-1}. Same-letter pairs ("edges") are
// m-segments, mixed pairs ("connecting lines") are (m-1)-segments.
struct DoubleSimplex {
  enum class Layout {
    Blocks,    // block layout: step(m) on one of p blocks, step(m-1) filler
    WrapPair,  // p = 2 fallback for odd support: +-step(m-1) around zero
  };
  std::vector<Point> u;
  std::vector<Point> v;
  std::int64_t level = 0;
  Layout layout = Layout::Blocks;
  std::int64_t indexSetSize = 0;  // p * support(m) / 2 (block layout)
  std::int64_t blockSize = 0;     // support(m) / 2 (block layout)
};

// Constructs the level-m double simplex. The block layout requires
// support(m) even; for odd support(m) and p == 2 a wrap-around pair is used
// instead. Throws for m outside [1, L] or when neither construction applies.
DoubleSimplex double_simplex(const SpaceSpec& spec, std::int64_t m);

struct SimplexCheck {
  bool ok = true;
  std::string violation;  // first failing pair, empty when ok
  std::int64_t edgesChecked = 0;
  std::int64_t linesChecked = 0;
};

// Re-classifies every edge and connecting line; verdict-style, never throws
// on bad content.
SimplexCheck verify_double_simplex(const SpaceSpec& spec,
                                   const DoubleSimplex& ds);

}  // namespace enflo
