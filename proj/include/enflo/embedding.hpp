#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "enflo/budget.hpp"
#include "enflo/rational.hpp"
#include "enflo/rng.hpp"
#include "enflo/space.hpp"

namespace enflo {

// A map from points of a (q, d) product space into a fixed-dimension vector
// space, evaluated lazily point by point. Maps whose values are rational
// support the exact (enumeration) pipelines; the circle lift is
// float-valued only.
class EmbeddingMap {
 public:
  enum class Kind { CircleLift, CoordinateLift, RandomLinear, Tabulated };

  // x -> scale * (cos 2*pi*x/q, sin 2*pi*x/q) per coordinate, concatenated.
  static EmbeddingMap circle_lift(std::int64_t q, std::int64_t d,
                                  double scale = 1.0);
  // Canonical representative in [0, q) per coordinate; deliberately ignores
  // the wrap-around, which makes its expansion modulus blow up.
  static EmbeddingMap coordinate_lift(std::int64_t q, std::int64_t d);
  // Fixed seed-derived integer matrix (entries uniform on [-3, 3]) applied
  // to the coordinate lift.
  static EmbeddingMap random_linear(std::int64_t q, std::int64_t d,
                                    std::int64_t targetDim,
                                    std::uint64_t seed);
  // Explicit value per point rank. Missing entries raise on evaluation.
  static EmbeddingMap tabulated(
      std::int64_t q, std::int64_t d,
      std::unordered_map<std::int64_t, std::vector<Rat>> table);
  // CSV rows: d source coordinates followed by the image coordinates.
  static EmbeddingMap tabulated_from_csv(std::int64_t q, std::int64_t d,
                                         std::istream& in);

  Kind kind() const { return kind_; }
  std::int64_t q() const { return q_; }
  std::int64_t d() const { return d_; }
  std::int64_t target_dim() const { return targetDim_; }
  // True when eval_rational / image_sqdist_rational are available.
  bool rational() const { return kind_ != Kind::CircleLift; }

  std::vector<double> eval(const Point& x) const;
  std::vector<Rat> eval_rational(const Point& x) const;

  // Squared distance between the images of a and b. Walks only differing
  // coordinates, so sparse points at large d stay cheap.
  double image_sqdist(const Point& a, const Point& b) const;
  Rat image_sqdist_rational(const Point& a, const Point& b) const;

 private:
  Kind kind_ = Kind::CoordinateLift;
  std::int64_t q_ = 0;
  std::int64_t d_ = 0;
  std::int64_t targetDim_ = 0;
  double scale_ = 1.0;
  std::vector<std::vector<std::int64_t>> matrix_;  // RandomLinear rows
  std::unordered_map<std::int64_t, std::vector<Rat>> table_;

  const std::vector<Rat>& table_row(const Point& x) const;
};

// Empirical compression/expansion moduli. For each integer scale t the
// sampler draws pairs at max-metric distance exactly t; the report then
// aggregates
//   rho1Hat(t) = min image distance over sampled pairs at distance >= t
//   rho2Hat(t) = max image distance over sampled pairs at distance <= t
// so both are nondecreasing in t by construction.
struct ModuliScale {
  std::int64_t t = 0;
  std::int64_t pairs = 0;     // samples drawn at exactly this distance
  double minImage = 0;        // over pairs at exactly t (valid iff pairs > 0)
  double maxImage = 0;
  std::optional<double> rho1;  // aggregated; absent when no pair informs it
  std::optional<double> rho2;
};

struct ModuliReport {
  std::vector<ModuliScale> scales;  // t = 1 .. maxScale
  bool exhaustive = false;
};

// Sampled moduli; scales beyond q/2 are unreachable in the cyclic metric and
// are reported with zero pairs rather than fabricated. Pair construction:
// uniform base point, uniform offsets bounded by t, one uniformly chosen
// coordinate forced to +-t (approximate uniformity, exact support).
ModuliReport empirical_moduli(const SpaceSpec& spec, const EmbeddingMap& map,
                              std::int64_t pairsPerScale, std::uint64_t seed,
                              std::int64_t maxScale = 0);

// Exact moduli over every ordered point pair (tiny spaces only).
ModuliReport exhaustive_moduli(const SpaceSpec& spec, const EmbeddingMap& map,
                               const Budget& budget = {});

}  // namespace enflo
