#include "enflo/isometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace enflo {
namespace {

std::int64_t mod_q(std::int64_t v, std::int64_t q) {
  v %= q;
  return v < 0 ? v + q : v;
}

}  // namespace

Isometry::Isometry(std::int64_t q, std::vector<std::int64_t> perm,
                   std::vector<CoordMap> maps)
    : q_(q), perm_(std::move(perm)), maps_(std::move(maps)) {
  if (perm_.size() != maps_.size())
    throw std::invalid_argument("perm/coordMaps size mismatch");
  std::vector<bool> seen(perm_.size(), false);
  for (std::int64_t s : perm_) {
    if (s < 0 || s >= static_cast<std::int64_t>(perm_.size()) ||
        seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument("perm is not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }
  for (auto& m : maps_) {
    if (m.eps != 1 && m.eps != -1)
      throw std::invalid_argument("eps must be +-1");
    m.t = mod_q(m.t, q_);
  }
}

Isometry Isometry::identity(const SpaceSpec& spec) {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(spec.d));
  std::iota(perm.begin(), perm.end(), 0);
  return Isometry(spec.q, std::move(perm),
                  std::vector<CoordMap>(static_cast<std::size_t>(spec.d)));
}

Point Isometry::apply(const Point& x) const {
  if (x.dim() != dim())
    throw std::invalid_argument("isometry/point dimension mismatch");
  std::vector<std::int64_t> out(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    const std::int64_t src = x.at(perm_[i]);
    out[i] = mod_q(maps_[i].eps * src + maps_[i].t, q_);
  }
  return Point::dense(std::move(out));
}

Segment Isometry::apply(const Segment& s) const {
  return Segment{apply(s.a), apply(s.b), s.level};
}

Isometry Isometry::compose(const Isometry& inner) const {
  if (q_ != inner.q_ || dim() != inner.dim())
    throw std::invalid_argument("isometry space mismatch");
  // (this o inner)(x)_i = eps_i * inner(x)_perm[i] + t_i
  //                      = eps_i*inner.eps_[perm[i]] * x_{inner.perm[perm[i]]}
  //                        + eps_i*inner.t_[perm[i]] + t_i
  std::vector<std::int64_t> perm(perm_.size());
  std::vector<CoordMap> maps(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    const auto j = static_cast<std::size_t>(perm_[i]);
    perm[i] = inner.perm_[j];
    maps[i].eps = static_cast<std::int8_t>(maps_[i].eps * inner.maps_[j].eps);
    maps[i].t = mod_q(maps_[i].eps * inner.maps_[j].t + maps_[i].t, q_);
  }
  return Isometry(q_, std::move(perm), std::move(maps));
}

Isometry Isometry::inverse() const {
  std::vector<std::int64_t> perm(perm_.size());
  std::vector<CoordMap> maps(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i)
    perm[static_cast<std::size_t>(perm_[i])] = static_cast<std::int64_t>(i);
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    const auto j = static_cast<std::size_t>(perm[i]);  // perm^-1(i)
    maps[i].eps = maps_[j].eps;
    maps[i].t = mod_q(-static_cast<std::int64_t>(maps_[j].eps) * maps_[j].t, q_);
  }
  return Isometry(q_, std::move(perm), std::move(maps));
}

Isometry transitive_isometry(const SpaceSpec& spec, const Segment& s1,
                             const Segment& s2) {
  const auto m1 = segment_level(spec, s1.a, s1.b);
  const auto m2 = segment_level(spec, s2.a, s2.b);
  if (!m1 || !m2)
    throw std::invalid_argument("transitive_isometry: unclassified input");
  if (*m1 != *m2)
    throw std::invalid_argument("transitive_isometry: levels differ");

  auto diff_set = [&](const Segment& s) {
    std::vector<std::int64_t> idx;
    for_each_diff(s.a, s.b, [&](std::int64_t i, std::int64_t, std::int64_t) {
      idx.push_back(i);
    });
    return idx;  // for_each_diff visits in increasing index order
  };
  const auto d1 = diff_set(s1);
  const auto d2 = diff_set(s2);

  // Source slot for every target coordinate: differing slots onto differing
  // slots, remaining slots in sorted order.
  std::vector<std::int64_t> perm(static_cast<std::size_t>(spec.d), -1);
  std::vector<bool> used1(static_cast<std::size_t>(spec.d), false);
  std::vector<bool> used2(static_cast<std::size_t>(spec.d), false);
  for (std::size_t k = 0; k < d2.size(); ++k) {
    perm[static_cast<std::size_t>(d2[k])] = d1[k];
    used1[static_cast<std::size_t>(d1[k])] = true;
    used2[static_cast<std::size_t>(d2[k])] = true;
  }
  std::int64_t src = 0;
  for (std::int64_t i = 0; i < spec.d; ++i) {
    if (used2[static_cast<std::size_t>(i)]) continue;
    while (used1[static_cast<std::size_t>(src)]) ++src;
    perm[static_cast<std::size_t>(i)] = src++;
  }

  std::vector<Isometry::CoordMap> maps(static_cast<std::size_t>(spec.d));
  for (std::int64_t i = 0; i < spec.d; ++i) {
    const std::int64_t j = perm[static_cast<std::size_t>(i)];
    const std::int64_t a1 = s1.a.at(j), b1 = s1.b.at(j);
    const std::int64_t a2 = s2.a.at(i), b2 = s2.b.at(i);
    // Need eps*a1 + t = a2 and eps*b1 + t = b2: eps solves
    // (b1 - a1)*eps = b2 - a2 (mod q); equal cyclic differences make one of
    // +-1 work.
    std::int64_t eps;
    if (mod_q(b1 - a1, spec.q) == mod_q(b2 - a2, spec.q))
      eps = 1;
    else if (mod_q(a1 - b1, spec.q) == mod_q(b2 - a2, spec.q))
      eps = -1;
    else
      throw std::logic_error("coordinate differences do not match");
    maps[static_cast<std::size_t>(i)] = {
        static_cast<std::int8_t>(eps), mod_q(a2 - eps * a1, spec.q)};
  }
  return Isometry(spec.q, std::move(perm), std::move(maps));
}

Isometry random_isometry(const SpaceSpec& spec, RngStream& rng) {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(spec.d));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::int64_t i = spec.d - 1; i > 0; --i) {
    const std::int64_t j = rng.uniform_int(0, i);
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(j)]);
  }
  std::vector<Isometry::CoordMap> maps(static_cast<std::size_t>(spec.d));
  for (auto& m : maps) {
    m.eps = rng.coin() ? 1 : -1;
    m.t = rng.uniform_int(0, spec.q - 1);
  }
  return Isometry(spec.q, std::move(perm), std::move(maps));
}

Isometry random_isometry(const SpaceSpec& spec, std::uint64_t seed) {
  RngStream rng(seed);
  return random_isometry(spec, rng);
}

BigInt isometry_group_size(const SpaceSpec& spec) {
  return factorial(spec.d) *
         bigint_pow(2 * spec.q, static_cast<unsigned long>(spec.d));
}

std::vector<Isometry> full_isometry_group(const SpaceSpec& spec,
                                          const Budget& budget) {
  const BigInt size = isometry_group_size(spec);
  if (size > budget.maxGroup)
    throw budget_error("isometry group budget exceeded: " + size.str() +
                       " elements > " + std::to_string(budget.maxGroup));
  std::vector<Isometry> out;
  out.reserve(size.template convert_to<std::size_t>());

  std::vector<std::int64_t> perm(static_cast<std::size_t>(spec.d));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // Odometer over the (eps, t) tuple, least significant coordinate last.
    std::vector<Isometry::CoordMap> maps(static_cast<std::size_t>(spec.d));
    for (;;) {
      out.emplace_back(spec.q, perm, maps);
      std::int64_t i = spec.d - 1;
      for (; i >= 0; --i) {
        auto& m = maps[static_cast<std::size_t>(i)];
        if (m.t + 1 < spec.q) {
          ++m.t;
          break;
        }
        m.t = 0;
        if (m.eps == 1) {
          m.eps = -1;
          break;
        }
        m.eps = 1;
      }
      if (i < 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace enflo
