#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "enflo/budget.hpp"
#include "enflo/embedding.hpp"
#include "enflo/rational.hpp"
#include "enflo/simplex.hpp"
#include "enflo/space.hpp"

namespace enflo {

// A double simplex placed in a Euclidean space: p "u" vectors and p "v"
// vectors of a common dimension.
template <class T>
struct EuclideanConfigT {
  std::vector<std::vector<T>> u;
  std::vector<std::vector<T>> v;
};
using EuclideanConfig = EuclideanConfigT<Rat>;
using EuclideanConfigF = EuclideanConfigT<double>;

// The sum-of-squares inequality, with its algebraic witness:
//   sumC  = sum over all (k, l) of |u_k - v_l|^2        (connecting lines)
//   sumS  = sum over k < l of |u_k - u_l|^2 + |v_k - v_l|^2   (edges)
//   gap   = sumC - sumS
//   witness = |sum(u) - sum(v)|^2
// gap == witness identically, hence gap >= 0 for every placement.
template <class T>
struct GapResultT {
  T sumC{};
  T sumS{};
  T gap{};
  T witness{};
};

GapResultT<Rat> double_simplex_gap(const EuclideanConfig& cfg);
GapResultT<double> double_simplex_gap(const EuclideanConfigF& cfg);

enum class MeanMode {
  ExactRational,  // full enumeration, exact arithmetic (rational maps)
  ExactFloat,     // full enumeration, double arithmetic (any map)
  Sampled,        // Monte Carlo with standard errors
};

struct LevelMean {
  std::int64_t m = 0;
  Rat exact;               // ExactRational only
  double value = 0;        // double view in every mode
  double stderrVal = 0;    // Sampled only
  std::int64_t samples = 0;  // class size (exact) or draw count (sampled)
};

struct MeanTable {
  MeanMode mode = MeanMode::ExactRational;
  std::vector<LevelMean> levels;  // m = 0 .. L
};

// Mean of squared image distances over all ordered m-segments, exact.
// Requires a rational-valued map and an enumerable space.
Rat exact_mean_g(const SpaceSpec& spec, const EmbeddingMap& map,
                 std::int64_t m, const Budget& budget = {});

// Same enumeration in double arithmetic (for float-valued maps).
double enum_mean_g(const SpaceSpec& spec, const EmbeddingMap& map,
                   std::int64_t m, const Budget& budget = {});

// Unbiased Monte Carlo estimate (mean, standard error).
std::pair<double, double> sampled_mean_g(const SpaceSpec& spec,
                                         const EmbeddingMap& map,
                                         std::int64_t m, std::int64_t samples,
                                         std::uint64_t seed);

MeanTable compute_mean_table(const SpaceSpec& spec, const EmbeddingMap& map,
                             MeanMode mode, const Budget& budget = {},
                             std::int64_t samples = 10000,
                             std::uint64_t seed = 0);

// p/(p-1) = 1 + 1/(p-1), the per-level loss factor.
double chain_factor(std::int64_t p);
Rat chain_factor_rat(std::int64_t p);

struct ChainLevel {
  std::int64_t m = 0;       // compares level m against m-1
  double gPrev = 0;
  double gCur = 0;
  double slack = 0;         // factor*gPrev - gCur
  std::string slackExact;   // rational string in exact mode
  double slackSigma = -1;   // slack / stderr(slack); sampled mode only
  bool ok = true;
};

struct ChainReport {
  MeanMode mode = MeanMode::ExactRational;
  MeanTable means;
  std::vector<ChainLevel> levels;  // m = 1 .. L
  bool pass = true;
  double factor = 0;          // p/(p-1)
  double iteratedFactor = 0;  // (p/(p-1))^L
  bool iteratedOk = true;     // iteratedFactor * g0 >= gL
  bool eBoundApplies = false;  // L == p-1 (classical parameters)
  bool eBoundOk = true;        // iteratedFactor <= e (to 1e-12)
};

// Verifies factor * g_{m-1} >= g_m at every level, the L-fold iterate, and
// (when L == p-1) the bound of the iterated factor by e.
ChainReport chain_check(const SpaceSpec& spec, const EmbeddingMap& map,
                        MeanMode mode, const Budget& budget = {},
                        std::int64_t samples = 10000, std::uint64_t seed = 0);

struct OrbitReport {
  std::int64_t m = 0;
  MeanMode mode = MeanMode::ExactRational;
  std::int64_t count = 0;  // group size (exact) or isometry draws (sampled)
  // Exact mode: aggregates over the full group orbit and the class-mean
  // multiples they must equal.
  std::string lineAggregate, lineExpected;
  std::string edgeAggregate, edgeExpected;
  bool identityOk = true;
  bool aggregateInequalityOk = true;  // lineAggregate >= edgeAggregate
  // Sampled mode: transported-simplex estimates.
  double lineMean = 0, lineStderr = 0;  // estimates g_{m-1}
  double edgeMean = 0, edgeStderr = 0;  // estimates g_m
  double ratio = 0;                     // edgeMean / lineMean
  double ratioBound = 0;                // p/(p-1)
  bool consistent = true;               // edgeMean <= factor*lineMean + 4 sigma
};

// Exact mode sums the per-element inequality over the full isometry group
// acting on double_simplex(spec, m) and checks the aggregates equal
// |G| * p^2 * g_{m-1} and |G| * p*(p-1) * g_m. Sampled mode transports the
// simplex by random isometries and reports the edge/line mean ratio.
OrbitReport orbit_average_check(const SpaceSpec& spec, std::int64_t m,
                                const EmbeddingMap& map, MeanMode mode,
                                const Budget& budget = {},
                                std::int64_t samples = 10000,
                                std::uint64_t seed = 0);

enum class CertificateVerdict { Pass, Degenerate, Fail, Illustration };

struct CertificateReport {
  MeanMode mode = MeanMode::ExactRational;
  double infTop = 0;     // min image distance over top-level segments
  double supBottom = 0;  // max image distance over 0-segments
  std::string infTopSq, supBottomSq;  // exact squares when rational
  double ratio = 0;      // infTop / supBottom (0 when degenerate)
  double bound = 0;      // sqrt((p/(p-1))^L)
  double limitBound = 0; // sqrt(e), the classical-parameter limit
  CertificateVerdict verdict = CertificateVerdict::Pass;
  bool withinBound = true;
  std::int64_t samples = 0;
};

// In exact mode the ratio inf/sup over the extreme segment classes is
// certified against sqrt((p/(p-1))^L) (exact comparison on squares for
// rational maps). Sampled mode reports sample extrema as an illustration
// only: sampling over-estimates the inf and under-estimates the sup.
CertificateReport enflo_certificate(const SpaceSpec& spec,
                                    const EmbeddingMap& map, MeanMode mode,
                                    const Budget& budget = {},
                                    std::int64_t samples = 10000,
                                    std::uint64_t seed = 0);

double certificate_bound(std::int64_t p, std::int64_t L);
Rat certificate_bound_sq(std::int64_t p, std::int64_t L);

}  // namespace enflo
