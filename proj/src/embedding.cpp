#include "enflo/embedding.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "enflo/parallel.hpp"

namespace enflo {
namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::int64_t rep(std::int64_t v, std::int64_t q) {
  v %= q;
  return v < 0 ? v + q : v;
}

}  // namespace

EmbeddingMap EmbeddingMap::circle_lift(std::int64_t q, std::int64_t d,
                                       double scale) {
  EmbeddingMap m;
  m.kind_ = Kind::CircleLift;
  m.q_ = q;
  m.d_ = d;
  m.targetDim_ = 2 * d;
  m.scale_ = scale;
  return m;
}

EmbeddingMap EmbeddingMap::coordinate_lift(std::int64_t q, std::int64_t d) {
  EmbeddingMap m;
  m.kind_ = Kind::CoordinateLift;
  m.q_ = q;
  m.d_ = d;
  m.targetDim_ = d;
  return m;
}

EmbeddingMap EmbeddingMap::random_linear(std::int64_t q, std::int64_t d,
                                         std::int64_t targetDim,
                                         std::uint64_t seed) {
  if (targetDim < 1) throw std::invalid_argument("targetDim must be >= 1");
  EmbeddingMap m;
  m.kind_ = Kind::RandomLinear;
  m.q_ = q;
  m.d_ = d;
  m.targetDim_ = targetDim;
  m.matrix_.resize(static_cast<std::size_t>(targetDim));
  RngStream rng = derive_stream(seed, 0x11);
  for (auto& row : m.matrix_) {
    row.resize(static_cast<std::size_t>(d));
    for (auto& e : row) e = rng.uniform_int(-3, 3);
  }
  return m;
}

EmbeddingMap EmbeddingMap::tabulated(
    std::int64_t q, std::int64_t d,
    std::unordered_map<std::int64_t, std::vector<Rat>> table) {
  EmbeddingMap m;
  m.kind_ = Kind::Tabulated;
  m.q_ = q;
  m.d_ = d;
  m.targetDim_ =
      table.empty() ? 0
                    : static_cast<std::int64_t>(table.begin()->second.size());
  for (const auto& [rank, vec] : table)
    if (static_cast<std::int64_t>(vec.size()) != m.targetDim_)
      throw std::invalid_argument("tabulated rows have mixed image dimension");
  m.table_ = std::move(table);
  return m;
}

EmbeddingMap EmbeddingMap::tabulated_from_csv(std::int64_t q, std::int64_t d,
                                              std::istream& in) {
  SpaceSpec rankSpec{q, d, 2, 1};  // only q and d matter for ranking
  std::unordered_map<std::int64_t, std::vector<Rat>> table;
  std::string line;
  std::int64_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (static_cast<std::int64_t>(cells.size()) <= d)
      throw std::invalid_argument("csv line " + std::to_string(lineNo) +
                                  ": need " + std::to_string(d) +
                                  " source coordinates plus an image");
    std::vector<std::int64_t> coords;
    for (std::int64_t i = 0; i < d; ++i) {
      const Rat c = parse_rational(cells[static_cast<std::size_t>(i)]);
      if (denominator(c) != 1)
        throw std::invalid_argument("csv line " + std::to_string(lineNo) +
                                    ": source coordinates must be integers");
      coords.push_back(numerator(c).template convert_to<std::int64_t>());
    }
    std::vector<Rat> image;
    for (std::size_t i = static_cast<std::size_t>(d); i < cells.size(); ++i)
      image.push_back(parse_rational(cells[i]));
    table[point_rank(rankSpec, Point::dense(std::move(coords)))] =
        std::move(image);
  }
  return tabulated(q, d, std::move(table));
}

const std::vector<Rat>& EmbeddingMap::table_row(const Point& x) const {
  SpaceSpec rankSpec{q_, d_, 2, 1};
  const auto it = table_.find(point_rank(rankSpec, x));
  if (it == table_.end())
    throw std::invalid_argument("tabulated map: missing table entry");
  return it->second;
}

std::vector<double> EmbeddingMap::eval(const Point& x) const {
  if (x.dim() != d_) throw std::invalid_argument("point/map space mismatch");
  switch (kind_) {
    case Kind::CircleLift: {
      std::vector<double> out(static_cast<std::size_t>(2 * d_));
      for (std::int64_t i = 0; i < d_; ++i) {
        const double angle = kTau * static_cast<double>(x.at(i)) /
                             static_cast<double>(q_);
        out[static_cast<std::size_t>(2 * i)] = scale_ * std::cos(angle);
        out[static_cast<std::size_t>(2 * i + 1)] = scale_ * std::sin(angle);
      }
      return out;
    }
    case Kind::CoordinateLift: {
      std::vector<double> out(static_cast<std::size_t>(d_));
      for (std::int64_t i = 0; i < d_; ++i)
        out[static_cast<std::size_t>(i)] =
            static_cast<double>(rep(x.at(i), q_));
      return out;
    }
    case Kind::RandomLinear: {
      std::vector<double> out(static_cast<std::size_t>(targetDim_), 0.0);
      for (std::int64_t r = 0; r < targetDim_; ++r) {
        const auto& row = matrix_[static_cast<std::size_t>(r)];
        double s = 0;
        for (std::int64_t i = 0; i < d_; ++i)
          s += static_cast<double>(row[static_cast<std::size_t>(i)]) *
               static_cast<double>(rep(x.at(i), q_));
        out[static_cast<std::size_t>(r)] = s;
      }
      return out;
    }
    case Kind::Tabulated: {
      const auto& row = table_row(x);
      std::vector<double> out(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) out[i] = to_double(row[i]);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Rat> EmbeddingMap::eval_rational(const Point& x) const {
  if (x.dim() != d_) throw std::invalid_argument("point/map space mismatch");
  switch (kind_) {
    case Kind::CircleLift:
      throw std::invalid_argument(
          "circle lift is not rational-valued; exact mode rejects it");
    case Kind::CoordinateLift: {
      std::vector<Rat> out(static_cast<std::size_t>(d_));
      for (std::int64_t i = 0; i < d_; ++i)
        out[static_cast<std::size_t>(i)] = rep(x.at(i), q_);
      return out;
    }
    case Kind::RandomLinear: {
      std::vector<Rat> out(static_cast<std::size_t>(targetDim_), Rat(0));
      for (std::int64_t r = 0; r < targetDim_; ++r) {
        const auto& row = matrix_[static_cast<std::size_t>(r)];
        std::int64_t s = 0;
        for (std::int64_t i = 0; i < d_; ++i)
          s += row[static_cast<std::size_t>(i)] * rep(x.at(i), q_);
        out[static_cast<std::size_t>(r)] = s;
      }
      return out;
    }
    case Kind::Tabulated:
      return table_row(x);
  }
  throw std::logic_error("unreachable");
}

double EmbeddingMap::image_sqdist(const Point& a, const Point& b) const {
  if (a.dim() != d_ || b.dim() != d_)
    throw std::invalid_argument("point/map space mismatch");
  switch (kind_) {
    case Kind::CircleLift: {
      // Chord length depends only on the cyclic difference per coordinate.
      double s = 0;
      for_each_diff(a, b, [&](std::int64_t, std::int64_t ai, std::int64_t bi) {
        const double chord =
            2.0 * scale_ *
            std::sin(std::numbers::pi *
                     static_cast<double>(cyclic_diff(q_, ai, bi)) /
                     static_cast<double>(q_));
        s += chord * chord;
      });
      return s;
    }
    case Kind::CoordinateLift: {
      double s = 0;
      for_each_diff(a, b, [&](std::int64_t, std::int64_t ai, std::int64_t bi) {
        const double delta =
            static_cast<double>(rep(ai, q_) - rep(bi, q_));
        s += delta * delta;
      });
      return s;
    }
    case Kind::RandomLinear: {
      std::vector<std::pair<std::int64_t, std::int64_t>> diff;
      for_each_diff(a, b, [&](std::int64_t i, std::int64_t ai, std::int64_t bi) {
        diff.emplace_back(i, rep(ai, q_) - rep(bi, q_));
      });
      double s = 0;
      for (const auto& row : matrix_) {
        double acc = 0;
        for (const auto& [i, delta] : diff)
          acc += static_cast<double>(row[static_cast<std::size_t>(i)]) *
                 static_cast<double>(delta);
        s += acc * acc;
      }
      return s;
    }
    case Kind::Tabulated: {
      const auto& ra = table_row(a);
      const auto& rb = table_row(b);
      double s = 0;
      for (std::size_t i = 0; i < ra.size(); ++i) {
        const double delta = to_double(ra[i]) - to_double(rb[i]);
        s += delta * delta;
      }
      return s;
    }
  }
  throw std::logic_error("unreachable");
}

Rat EmbeddingMap::image_sqdist_rational(const Point& a, const Point& b) const {
  if (a.dim() != d_ || b.dim() != d_)
    throw std::invalid_argument("point/map space mismatch");
  switch (kind_) {
    case Kind::CircleLift:
      throw std::invalid_argument(
          "circle lift is not rational-valued; exact mode rejects it");
    case Kind::CoordinateLift: {
      BigInt s = 0;
      for_each_diff(a, b, [&](std::int64_t, std::int64_t ai, std::int64_t bi) {
        const std::int64_t delta = rep(ai, q_) - rep(bi, q_);
        s += BigInt(delta) * delta;
      });
      return Rat(s);
    }
    case Kind::RandomLinear: {
      std::vector<std::pair<std::int64_t, std::int64_t>> diff;
      for_each_diff(a, b, [&](std::int64_t i, std::int64_t ai, std::int64_t bi) {
        diff.emplace_back(i, rep(ai, q_) - rep(bi, q_));
      });
      BigInt s = 0;
      for (const auto& row : matrix_) {
        std::int64_t acc = 0;
        for (const auto& [i, delta] : diff)
          acc += row[static_cast<std::size_t>(i)] * delta;
        s += BigInt(acc) * acc;
      }
      return Rat(s);
    }
    case Kind::Tabulated: {
      const auto& ra = table_row(a);
      const auto& rb = table_row(b);
      Rat s = 0;
      for (std::size_t i = 0; i < ra.size(); ++i) {
        const Rat delta = ra[i] - rb[i];
        s += delta * delta;
      }
      return s;
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Moduli

namespace {

void aggregate_moduli(ModuliReport& report) {
  // rho2: prefix max over scales with samples; rho1: suffix min.
  double runningMax = 0;
  bool anyBelow = false;
  for (auto& s : report.scales) {
    if (s.pairs > 0) {
      runningMax = anyBelow ? std::max(runningMax, s.maxImage) : s.maxImage;
      anyBelow = true;
    }
    if (anyBelow) s.rho2 = runningMax;
  }
  double runningMin = 0;
  bool anyAbove = false;
  for (auto it = report.scales.rbegin(); it != report.scales.rend(); ++it) {
    if (it->pairs > 0) {
      runningMin = anyAbove ? std::min(runningMin, it->minImage) : it->minImage;
      anyAbove = true;
    }
    if (anyAbove) it->rho1 = runningMin;
  }
}

}  // namespace

ModuliReport empirical_moduli(const SpaceSpec& spec, const EmbeddingMap& map,
                              std::int64_t pairsPerScale, std::uint64_t seed,
                              std::int64_t maxScale) {
  if (map.q() != spec.q || map.d() != spec.d)
    throw std::invalid_argument("map was built for a different space");
  if (pairsPerScale < 1)
    throw std::invalid_argument("need at least one pair per scale");
  if (maxScale <= 0) maxScale = spec.q / 2;

  ModuliReport report;
  report.scales.resize(static_cast<std::size_t>(maxScale));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 1; t <= maxScale; ++t) {
    ModuliScale& scale = report.scales[static_cast<std::size_t>(t - 1)];
    scale.t = t;
    if (t > spec.q / 2) continue;  // unreachable in the cyclic metric
    RngStream rng = derive_stream(seed, 0x8000 + static_cast<std::uint64_t>(t));
    for (std::int64_t n = 0; n < pairsPerScale; ++n) {
      std::vector<std::int64_t> base(static_cast<std::size_t>(spec.d));
      for (auto& c : base) c = rng.uniform_int(0, spec.q - 1);
      std::vector<std::int64_t> other = base;
      for (std::int64_t i = 0; i < spec.d; ++i) {
        // Offsets bounded by t; +t and -t coincide when t == q/2.
        const std::int64_t lo = (2 * t == spec.q) ? -t + 1 : -t;
        const std::int64_t delta = rng.uniform_int(lo, t);
        other[static_cast<std::size_t>(i)] =
            rep(other[static_cast<std::size_t>(i)] + delta, spec.q);
      }
      const std::int64_t forced = rng.uniform_int(0, spec.d - 1);
      const std::int64_t sign = (2 * t == spec.q || rng.coin()) ? 1 : -1;
      other[static_cast<std::size_t>(forced)] =
          rep(base[static_cast<std::size_t>(forced)] + sign * t, spec.q);

      const Point a = Point::dense(base);
      const Point b = Point::dense(other);
      const double img = std::sqrt(map.image_sqdist(a, b));
      if (scale.pairs == 0) {
        scale.minImage = scale.maxImage = img;
      } else {
        scale.minImage = std::min(scale.minImage, img);
        scale.maxImage = std::max(scale.maxImage, img);
      }
      ++scale.pairs;
    }
  }
  aggregate_moduli(report);
  return report;
}

ModuliReport exhaustive_moduli(const SpaceSpec& spec, const EmbeddingMap& map,
                               const Budget& budget) {
  if (map.q() != spec.q || map.d() != spec.d)
    throw std::invalid_argument("map was built for a different space");
  const std::int64_t n = point_count_checked(spec, budget);
  if (n * n > budget.maxPairs)
    throw budget_error("pair budget exceeded in exhaustive moduli");

  ModuliReport report;
  report.exhaustive = true;
  report.scales.resize(static_cast<std::size_t>(spec.q / 2));
  for (std::int64_t t = 1; t <= spec.q / 2; ++t)
    report.scales[static_cast<std::size_t>(t - 1)].t = t;

  for (std::int64_t ra = 0; ra < n; ++ra) {
    const Point a = point_at(spec, ra);
    for (std::int64_t rb = 0; rb < n; ++rb) {
      if (ra == rb) continue;
      const Point b = point_at(spec, rb);
      const std::int64_t t = distance(spec, a, b);
      ModuliScale& scale = report.scales[static_cast<std::size_t>(t - 1)];
      const double img = std::sqrt(map.image_sqdist(a, b));
      if (scale.pairs == 0) {
        scale.minImage = scale.maxImage = img;
      } else {
        scale.minImage = std::min(scale.minImage, img);
        scale.maxImage = std::max(scale.maxImage, img);
      }
      ++scale.pairs;
    }
  }
  aggregate_moduli(report);
  return report;
}

}  // namespace enflo
