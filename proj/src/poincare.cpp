#include "enflo/poincare.hpp"

#include <cmath>
#include <stdexcept>

#include "enflo/isometry.hpp"
#include "enflo/parallel.hpp"

namespace enflo {
namespace {

constexpr double kRelTol = 1e-9;  // identity tolerance in float mode
constexpr std::uint64_t kStreamMeanBase = 0x4d45414e00000000ull;
constexpr std::uint64_t kStreamOrbitBase = 0x4f52424900000000ull;
constexpr std::uint64_t kStreamCertBase = 0x4345525400000000ull;

template <class T>
GapResultT<T> gap_impl(const EuclideanConfigT<T>& cfg) {
  const std::size_t p = cfg.u.size();
  if (cfg.v.size() != p || p < 2)
    throw std::invalid_argument("need equally many u and v vectors, p >= 2");
  const std::size_t dim = cfg.u.front().size();
  for (const auto& vec : cfg.u)
    if (vec.size() != dim)
      throw std::invalid_argument("vector dimension mismatch");
  for (const auto& vec : cfg.v)
    if (vec.size() != dim)
      throw std::invalid_argument("vector dimension mismatch");

  auto sqdist = [&](const std::vector<T>& a, const std::vector<T>& b) {
    T s{};
    for (std::size_t i = 0; i < dim; ++i) {
      const T delta = a[i] - b[i];
      s += delta * delta;
    }
    return s;
  };

  GapResultT<T> out;
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < p; ++l) out.sumC += sqdist(cfg.u[k], cfg.v[l]);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = k + 1; l < p; ++l) {
      out.sumS += sqdist(cfg.u[k], cfg.u[l]);
      out.sumS += sqdist(cfg.v[k], cfg.v[l]);
    }
  out.gap = out.sumC - out.sumS;

  T witness{};
  for (std::size_t i = 0; i < dim; ++i) {
    T coord{};
    for (std::size_t k = 0; k < p; ++k) coord += cfg.u[k][i] - cfg.v[k][i];
    witness += coord * coord;
  }
  out.witness = witness;
  return out;
}

// Deterministic chunked (sum, sum of squares) over sampled values; chunk c
// draws from stream (seed, tag + c), independent of the thread count.
template <class Draw>
std::pair<double, double> sample_moments(std::int64_t n, std::uint64_t seed,
                                         std::uint64_t tag, Draw&& draw) {
  const std::int64_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<double> sums(static_cast<std::size_t>(chunks), 0.0);
  std::vector<double> sqs(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    RngStream rng = derive_stream(seed, tag + static_cast<std::uint64_t>(c));
    double s = 0, s2 = 0;
    const std::int64_t lo = c * kReduceChunk;
    const std::int64_t hi = std::min(n, lo + kReduceChunk);
    for (std::int64_t i = lo; i < hi; ++i) {
      const double x = draw(rng);
      s += x;
      s2 += x * x;
    }
    sums[static_cast<std::size_t>(c)] = s;
    sqs[static_cast<std::size_t>(c)] = s2;
  }
  double sum = 0, sumsq = 0;
  for (std::int64_t c = 0; c < chunks; ++c) {
    sum += sums[static_cast<std::size_t>(c)];
    sumsq += sqs[static_cast<std::size_t>(c)];
  }
  const double mean = sum / static_cast<double>(n);
  double var = 0;
  if (n > 1) {
    var = (sumsq - static_cast<double>(n) * mean * mean) /
          static_cast<double>(n - 1);
    var = std::max(var, 0.0);
  }
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

GapResultT<Rat> double_simplex_gap(const EuclideanConfig& cfg) {
  return gap_impl(cfg);
}
GapResultT<double> double_simplex_gap(const EuclideanConfigF& cfg) {
  return gap_impl(cfg);
}

Rat exact_mean_g(const SpaceSpec& spec, const EmbeddingMap& map,
                 std::int64_t m, const Budget& budget) {
  if (!map.rational())
    throw std::invalid_argument(
        "exact mean requires a rational-valued map (got a float-valued one)");
  const std::int64_t count = segment_count_checked(spec, m, budget);
  const Rat total = chunked_sum(count, Rat(0), [&](std::int64_t r) {
    const Segment seg = segment_at(spec, m, r);
    return map.image_sqdist_rational(seg.a, seg.b);
  });
  return total / count;
}

double enum_mean_g(const SpaceSpec& spec, const EmbeddingMap& map,
                   std::int64_t m, const Budget& budget) {
  const std::int64_t count = segment_count_checked(spec, m, budget);
  const double total = chunked_sum(count, 0.0, [&](std::int64_t r) {
    const Segment seg = segment_at(spec, m, r);
    return map.image_sqdist(seg.a, seg.b);
  });
  return total / static_cast<double>(count);
}

std::pair<double, double> sampled_mean_g(const SpaceSpec& spec,
                                         const EmbeddingMap& map,
                                         std::int64_t m, std::int64_t samples,
                                         std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  spec.support(m);  // validates m
  return sample_moments(
      samples, seed,
      kStreamMeanBase + (static_cast<std::uint64_t>(m) << 32),
      [&](RngStream& rng) {
        const Segment seg = random_segment(spec, m, rng);
        return map.image_sqdist(seg.a, seg.b);
      });
}

MeanTable compute_mean_table(const SpaceSpec& spec, const EmbeddingMap& map,
                             MeanMode mode, const Budget& budget,
                             std::int64_t samples, std::uint64_t seed) {
  MeanTable table;
  table.mode = mode;
  for (std::int64_t m = 0; m <= spec.L; ++m) {
    LevelMean lm;
    lm.m = m;
    switch (mode) {
      case MeanMode::ExactRational: {
        lm.exact = exact_mean_g(spec, map, m, budget);
        lm.value = to_double(lm.exact);
        lm.samples = segment_count_checked(spec, m, budget);
        break;
      }
      case MeanMode::ExactFloat: {
        lm.value = enum_mean_g(spec, map, m, budget);
        lm.samples = segment_count_checked(spec, m, budget);
        break;
      }
      case MeanMode::Sampled: {
        const auto [est, se] = sampled_mean_g(spec, map, m, samples, seed);
        lm.value = est;
        lm.stderrVal = se;
        lm.samples = samples;
        break;
      }
    }
    table.levels.push_back(std::move(lm));
  }
  return table;
}

double chain_factor(std::int64_t p) {
  return static_cast<double>(p) / static_cast<double>(p - 1);
}

Rat chain_factor_rat(std::int64_t p) { return Rat(p, p - 1); }

ChainReport chain_check(const SpaceSpec& spec, const EmbeddingMap& map,
                        MeanMode mode, const Budget& budget,
                        std::int64_t samples, std::uint64_t seed) {
  if (mode == MeanMode::ExactRational && !map.rational())
    mode = MeanMode::ExactFloat;

  ChainReport report;
  report.mode = mode;
  report.means = compute_mean_table(spec, map, mode, budget, samples, seed);
  report.factor = chain_factor(spec.p);
  report.iteratedFactor =
      std::pow(report.factor, static_cast<double>(spec.L));

  const Rat factorRat = chain_factor_rat(spec.p);
  for (std::int64_t m = 1; m <= spec.L; ++m) {
    const LevelMean& prev = report.means.levels[static_cast<std::size_t>(m - 1)];
    const LevelMean& cur = report.means.levels[static_cast<std::size_t>(m)];
    ChainLevel level;
    level.m = m;
    level.gPrev = prev.value;
    level.gCur = cur.value;
    level.slack = report.factor * prev.value - cur.value;
    switch (mode) {
      case MeanMode::ExactRational: {
        const Rat slack = factorRat * prev.exact - cur.exact;
        level.slackExact = rat_string(slack);
        level.ok = slack >= 0;
        break;
      }
      case MeanMode::ExactFloat: {
        const double scale =
            std::max({1.0, std::abs(level.gPrev), std::abs(level.gCur)});
        level.ok = level.slack >= -kRelTol * scale;
        break;
      }
      case MeanMode::Sampled: {
        const double sigma =
            std::sqrt(report.factor * report.factor * prev.stderrVal *
                          prev.stderrVal +
                      cur.stderrVal * cur.stderrVal);
        level.slackSigma = sigma > 0 ? level.slack / sigma : 0;
        level.ok = level.slack >= -4 * sigma -
                                      kRelTol * std::max(1.0, level.gCur);
        break;
      }
    }
    report.pass = report.pass && level.ok;
    report.levels.push_back(std::move(level));
  }

  // L-fold iterate and, at the classical parameter tie L == p-1, the e-bound.
  const LevelMean& g0 = report.means.levels.front();
  const LevelMean& gL = report.means.levels.back();
  switch (mode) {
    case MeanMode::ExactRational:
      report.iteratedOk =
          rat_pow(factorRat, static_cast<unsigned long>(spec.L)) * g0.exact >=
          gL.exact;
      break;
    case MeanMode::ExactFloat: {
      const double lhs = report.iteratedFactor * g0.value;
      report.iteratedOk =
          lhs - gL.value >= -kRelTol * std::max({1.0, lhs, gL.value});
      break;
    }
    case MeanMode::Sampled: {
      const double sigma =
          std::sqrt(report.iteratedFactor * report.iteratedFactor *
                        g0.stderrVal * g0.stderrVal +
                    gL.stderrVal * gL.stderrVal);
      report.iteratedOk =
          report.iteratedFactor * g0.value - gL.value >= -4 * sigma;
      break;
    }
  }
  report.pass = report.pass && report.iteratedOk;

  report.eBoundApplies = spec.L == spec.p - 1;
  if (report.eBoundApplies) {
    report.eBoundOk = report.iteratedFactor <= std::exp(1.0) + 1e-12;
    report.pass = report.pass && report.eBoundOk;
  }
  return report;
}

OrbitReport orbit_average_check(const SpaceSpec& spec, std::int64_t m,
                                const EmbeddingMap& map, MeanMode mode,
                                const Budget& budget, std::int64_t samples,
                                std::uint64_t seed) {
  if (m < 1 || m > spec.L)
    throw std::invalid_argument("orbit check level must lie in [1, L]");
  const DoubleSimplex ds = double_simplex(spec, m);
  const std::int64_t p = spec.p;

  OrbitReport report;
  report.m = m;
  report.ratioBound = chain_factor(p);

  if (mode != MeanMode::Sampled) {
    if (!map.rational())
      throw std::invalid_argument(
          "exact orbit check requires a rational-valued map");
    report.mode = MeanMode::ExactRational;
    const auto group = full_isometry_group(spec, budget);
    report.count = static_cast<std::int64_t>(group.size());

    const std::int64_t n = report.count;
    const Rat lineAgg = chunked_sum(n, Rat(0), [&](std::int64_t gi) {
      const Isometry& g = group[static_cast<std::size_t>(gi)];
      std::vector<Point> iu, iv;
      for (const Point& pt : ds.u) iu.push_back(g.apply(pt));
      for (const Point& pt : ds.v) iv.push_back(g.apply(pt));
      Rat s = 0;
      for (std::int64_t k = 0; k < p; ++k)
        for (std::int64_t l = 0; l < p; ++l)
          s += map.image_sqdist_rational(iu[static_cast<std::size_t>(k)],
                                         iv[static_cast<std::size_t>(l)]);
      return s;
    });
    const Rat edgeAgg = chunked_sum(n, Rat(0), [&](std::int64_t gi) {
      const Isometry& g = group[static_cast<std::size_t>(gi)];
      std::vector<Point> iu, iv;
      for (const Point& pt : ds.u) iu.push_back(g.apply(pt));
      for (const Point& pt : ds.v) iv.push_back(g.apply(pt));
      Rat s = 0;
      for (std::int64_t k = 0; k < p; ++k)
        for (std::int64_t l = k + 1; l < p; ++l) {
          s += map.image_sqdist_rational(iu[static_cast<std::size_t>(k)],
                                         iu[static_cast<std::size_t>(l)]);
          s += map.image_sqdist_rational(iv[static_cast<std::size_t>(k)],
                                         iv[static_cast<std::size_t>(l)]);
        }
      return s;
    });

    const Rat gPrev = exact_mean_g(spec, map, m - 1, budget);
    const Rat gCur = exact_mean_g(spec, map, m, budget);
    const Rat lineExpected = Rat(n) * p * p * gPrev;
    const Rat edgeExpected = Rat(n) * p * (p - 1) * gCur;

    report.lineAggregate = rat_string(lineAgg);
    report.lineExpected = rat_string(lineExpected);
    report.edgeAggregate = rat_string(edgeAgg);
    report.edgeExpected = rat_string(edgeExpected);
    report.identityOk = lineAgg == lineExpected && edgeAgg == edgeExpected;
    report.aggregateInequalityOk = lineAgg >= edgeAgg;
    report.lineMean = to_double(gPrev);
    report.edgeMean = to_double(gCur);
    report.ratio =
        report.lineMean > 0 ? report.edgeMean / report.lineMean : 0;
    report.consistent = report.identityOk && report.aggregateInequalityOk;
    return report;
  }

  report.mode = MeanMode::Sampled;
  report.count = samples;
  const auto [lineMean, lineSe] = sample_moments(
      samples, seed, kStreamOrbitBase, [&](RngStream& rng) {
        const Isometry g = random_isometry(spec, rng);
        std::vector<Point> iu, iv;
        for (const Point& pt : ds.u) iu.push_back(g.apply(pt));
        for (const Point& pt : ds.v) iv.push_back(g.apply(pt));
        double s = 0;
        for (std::int64_t k = 0; k < p; ++k)
          for (std::int64_t l = 0; l < p; ++l)
            s += map.image_sqdist(iu[static_cast<std::size_t>(k)],
                                  iv[static_cast<std::size_t>(l)]);
        return s / static_cast<double>(p * p);
      });
  const auto [edgeMean, edgeSe] = sample_moments(
      samples, seed, kStreamOrbitBase + (1ull << 32), [&](RngStream& rng) {
        const Isometry g = random_isometry(spec, rng);
        std::vector<Point> iu, iv;
        for (const Point& pt : ds.u) iu.push_back(g.apply(pt));
        for (const Point& pt : ds.v) iv.push_back(g.apply(pt));
        double s = 0;
        for (std::int64_t k = 0; k < p; ++k)
          for (std::int64_t l = k + 1; l < p; ++l) {
            s += map.image_sqdist(iu[static_cast<std::size_t>(k)],
                                  iu[static_cast<std::size_t>(l)]);
            s += map.image_sqdist(iv[static_cast<std::size_t>(k)],
                                  iv[static_cast<std::size_t>(l)]);
          }
        return s / static_cast<double>(p * (p - 1));
      });
  report.lineMean = lineMean;
  report.lineStderr = lineSe;
  report.edgeMean = edgeMean;
  report.edgeStderr = edgeSe;
  report.ratio = lineMean > 0 ? edgeMean / lineMean : 0;
  const double sigma = std::sqrt(report.ratioBound * report.ratioBound *
                                     lineSe * lineSe +
                                 edgeSe * edgeSe);
  report.consistent =
      report.ratioBound * lineMean - edgeMean >=
      -4 * sigma - kRelTol * std::max(1.0, edgeMean);
  return report;
}

CertificateReport enflo_certificate(const SpaceSpec& spec,
                                    const EmbeddingMap& map, MeanMode mode,
                                    const Budget& budget, std::int64_t samples,
                                    std::uint64_t seed) {
  CertificateReport report;
  report.bound = certificate_bound(spec.p, spec.L);
  report.limitBound = std::sqrt(std::exp(1.0));

  if (mode != MeanMode::Sampled) {
    const std::int64_t topCount = segment_count_checked(spec, spec.L, budget);
    const std::int64_t botCount = segment_count_checked(spec, 0, budget);
    if (map.rational()) {
      report.mode = MeanMode::ExactRational;
      // Chunked min/max; exact arithmetic makes the order irrelevant.
      auto extreme = [&](std::int64_t m, std::int64_t count, bool wantMin) {
        const std::int64_t chunks =
            (count + kReduceChunk - 1) / kReduceChunk;
        std::vector<Rat> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < chunks; ++c) {
          Rat best;
          bool first = true;
          const std::int64_t lo = c * kReduceChunk;
          const std::int64_t hi = std::min(count, lo + kReduceChunk);
          for (std::int64_t r = lo; r < hi; ++r) {
            const Segment seg = segment_at(spec, m, r);
            const Rat v = map.image_sqdist_rational(seg.a, seg.b);
            if (first || (wantMin ? v < best : v > best)) {
              best = v;
              first = false;
            }
          }
          partial[static_cast<std::size_t>(c)] = best;
        }
        Rat best = partial.front();
        for (const Rat& v : partial)
          if (wantMin ? v < best : v > best) best = v;
        return best;
      };
      const Rat infSq = extreme(spec.L, topCount, true);
      const Rat supSq = extreme(0, botCount, false);
      report.infTopSq = rat_string(infSq);
      report.supBottomSq = rat_string(supSq);
      report.infTop = std::sqrt(to_double(infSq));
      report.supBottom = std::sqrt(to_double(supSq));
      if (supSq == 0) {
        report.ratio = 0;
        report.verdict = CertificateVerdict::Degenerate;
        report.withinBound = true;
      } else {
        report.ratio = report.infTop / report.supBottom;
        report.withinBound =
            infSq <= certificate_bound_sq(spec.p, spec.L) * supSq;
        report.verdict = report.withinBound ? CertificateVerdict::Pass
                                            : CertificateVerdict::Fail;
      }
      return report;
    }
    report.mode = MeanMode::ExactFloat;
    auto extreme = [&](std::int64_t m, std::int64_t count, bool wantMin) {
      const std::int64_t chunks = (count + kReduceChunk - 1) / kReduceChunk;
      std::vector<double> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
      for (std::int64_t c = 0; c < chunks; ++c) {
        double best = wantMin ? 1e300 : -1e300;
        const std::int64_t lo = c * kReduceChunk;
        const std::int64_t hi = std::min(count, lo + kReduceChunk);
        for (std::int64_t r = lo; r < hi; ++r) {
          const Segment seg = segment_at(spec, m, r);
          const double v = map.image_sqdist(seg.a, seg.b);
          best = wantMin ? std::min(best, v) : std::max(best, v);
        }
        partial[static_cast<std::size_t>(c)] = best;
      }
      double best = partial.front();
      for (double v : partial) best = wantMin ? std::min(best, v) : std::max(best, v);
      return best;
    };
    const double infSq = extreme(spec.L, topCount, true);
    const double supSq = extreme(0, botCount, false);
    report.infTop = std::sqrt(infSq);
    report.supBottom = std::sqrt(supSq);
    if (supSq <= 0) {
      report.ratio = 0;
      report.verdict = CertificateVerdict::Degenerate;
      report.withinBound = true;
    } else {
      report.ratio = report.infTop / report.supBottom;
      report.withinBound = report.ratio <= report.bound * (1 + kRelTol);
      report.verdict = report.withinBound ? CertificateVerdict::Pass
                                          : CertificateVerdict::Fail;
    }
    return report;
  }

  // Sampled: extremes over random segments; an illustration, not a bound.
  report.mode = MeanMode::Sampled;
  report.samples = samples;
  double infSq = 1e300, supSq = -1e300;
  {
    const std::int64_t chunks = (samples + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> mins(static_cast<std::size_t>(chunks), 1e300);
    std::vector<double> maxs(static_cast<std::size_t>(chunks), -1e300);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
      RngStream rng =
          derive_stream(seed, kStreamCertBase + static_cast<std::uint64_t>(c));
      const std::int64_t lo = c * kReduceChunk;
      const std::int64_t hi = std::min(samples, lo + kReduceChunk);
      double mn = 1e300, mx = -1e300;
      for (std::int64_t i = lo; i < hi; ++i) {
        const Segment top = random_segment(spec, spec.L, rng);
        mn = std::min(mn, map.image_sqdist(top.a, top.b));
        const Segment bot = random_segment(spec, 0, rng);
        mx = std::max(mx, map.image_sqdist(bot.a, bot.b));
      }
      mins[static_cast<std::size_t>(c)] = mn;
      maxs[static_cast<std::size_t>(c)] = mx;
    }
    for (double v : mins) infSq = std::min(infSq, v);
    for (double v : maxs) supSq = std::max(supSq, v);
  }
  report.infTop = std::sqrt(std::max(infSq, 0.0));
  report.supBottom = std::sqrt(std::max(supSq, 0.0));
  report.ratio = report.supBottom > 0 ? report.infTop / report.supBottom : 0;
  report.verdict = CertificateVerdict::Illustration;
  report.withinBound = report.ratio <= report.bound * (1 + kRelTol);
  return report;
}

double certificate_bound(std::int64_t p, std::int64_t L) {
  return std::sqrt(std::pow(chain_factor(p), static_cast<double>(L)));
}

Rat certificate_bound_sq(std::int64_t p, std::int64_t L) {
  return rat_pow(chain_factor_rat(p), static_cast<unsigned long>(L));
}

}  // namespace enflo
