#pragma once

#include <cstdint>
#include <vector>

#include "enflo/budget.hpp"
#include "enflo/rational.hpp"
#include "enflo/rng.hpp"
#include "enflo/space.hpp"

namespace enflo {

// Self-map of a product space built from a coordinate permutation followed by
// one cycle isometry per coordinate:
//
//     h(x)_i = eps_i * x_perm[i] + t_i   (mod q)
//
// Every such map preserves the max metric and each per-coordinate cyclic
// difference, so it maps every segment class onto itself.
class Isometry {
 public:
  struct CoordMap {
    std::int8_t eps = 1;  // +1 or -1
    std::int64_t t = 0;   // translation in [0, q)
    bool operator==(const CoordMap&) const = default;
  };

  Isometry() = default;
  Isometry(std::int64_t q, std::vector<std::int64_t> perm,
           std::vector<CoordMap> maps);
  static Isometry identity(const SpaceSpec& spec);

  std::int64_t q() const { return q_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(perm_.size()); }
  const std::vector<std::int64_t>& perm() const { return perm_; }
  const std::vector<CoordMap>& coord_maps() const { return maps_; }

  Point apply(const Point& x) const;
  Segment apply(const Segment& s) const;
  // (a.compose(b)).apply(x) == a.apply(b.apply(x))
  Isometry compose(const Isometry& inner) const;
  Isometry inverse() const;

  bool operator==(const Isometry&) const = default;

 private:
  std::int64_t q_ = 0;
  std::vector<std::int64_t> perm_;
  std::vector<CoordMap> maps_;
};

// Witness for segment transitivity: maps s1 onto s2 endpoint by endpoint.
// Both segments must classify at the same level. When several permutations
// work, the ties are broken by sorted index matching, so the result is
// deterministic.
Isometry transitive_isometry(const SpaceSpec& spec, const Segment& s1,
                             const Segment& s2);

// Uniform over the permutation-times-cycle group: uniform permutation,
// independent uniform eps and t per coordinate.
Isometry random_isometry(const SpaceSpec& spec, RngStream& rng);
Isometry random_isometry(const SpaceSpec& spec, std::uint64_t seed);

// d! * (2q)^d
BigInt isometry_group_size(const SpaceSpec& spec);

// Materializes the whole group; throws budget_error above budget.maxGroup.
std::vector<Isometry> full_isometry_group(const SpaceSpec& spec,
                                          const Budget& budget = {});

}  // namespace enflo
