#include "enflo/json_io.hpp"

#include <sstream>

namespace enflo {

using nlohmann::json;

const char* mode_name(MeanMode mode) {
  switch (mode) {
    case MeanMode::ExactRational: return "exact-rational";
    case MeanMode::ExactFloat: return "exact-float";
    case MeanMode::Sampled: return "sampled";
  }
  return "?";
}

const char* verdict_name(CertificateVerdict verdict) {
  switch (verdict) {
    case CertificateVerdict::Pass: return "pass";
    case CertificateVerdict::Degenerate: return "degenerate";
    case CertificateVerdict::Fail: return "fail";
    case CertificateVerdict::Illustration: return "illustration";
  }
  return "?";
}

json spec_json(const SpaceSpec& spec) {
  json levels = json::array();
  for (std::int64_t m = 0; m <= spec.L; ++m)
    levels.push_back({{"m", m},
                      {"support", spec.support(m)},
                      {"step", spec.step(m)},
                      {"offsets", offset_count(spec, m)}});
  return {{"q", spec.q},   {"d", spec.d},
          {"p", spec.p},   {"L", spec.L},
          {"levels", levels}, {"degenerate_top", spec.degenerate_top()}};
}

json point_json(const Point& pt) {
  json arr = json::array();
  for (std::int64_t v : pt.to_dense()) arr.push_back(v);
  return arr;
}

json segment_json(const SpaceSpec& spec, const Segment& seg) {
  json out{{"a", point_json(seg.a)}, {"b", point_json(seg.b)}};
  if (seg.level)
    out["level"] = *seg.level;
  else {
    const auto lv = segment_level(spec, seg.a, seg.b);
    out["level"] = lv ? json(*lv) : json(nullptr);
  }
  return out;
}

json simplex_json(const DoubleSimplex& ds) {
  json u = json::array(), v = json::array();
  for (const Point& pt : ds.u) u.push_back(point_json(pt));
  for (const Point& pt : ds.v) v.push_back(point_json(pt));
  return {{"level", ds.level},
          {"layout", ds.layout == DoubleSimplex::Layout::Blocks ? "blocks"
                                                                : "wrap-pair"},
          {"index_set_size", ds.indexSetSize},
          {"block_size", ds.blockSize},
          {"u", u},
          {"v", v}};
}

json simplex_check_json(const SimplexCheck& check) {
  return {{"ok", check.ok},
          {"violation", check.violation},
          {"edges_checked", check.edgesChecked},
          {"lines_checked", check.linesChecked}};
}

json mean_table_json(const MeanTable& table) {
  json levels = json::array();
  for (const LevelMean& lm : table.levels) {
    json entry{{"m", lm.m}, {"value", lm.value}, {"samples", lm.samples}};
    if (table.mode == MeanMode::ExactRational)
      entry["exact"] = rat_string(lm.exact);
    if (table.mode == MeanMode::Sampled) entry["stderr"] = lm.stderrVal;
    levels.push_back(std::move(entry));
  }
  return {{"mode", mode_name(table.mode)}, {"levels", levels}};
}

json chain_report_json(const ChainReport& report) {
  json levels = json::array();
  for (const ChainLevel& lv : report.levels) {
    json entry{{"m", lv.m},
               {"g_prev", lv.gPrev},
               {"g_cur", lv.gCur},
               {"slack", lv.slack},
               {"ok", lv.ok}};
    if (!lv.slackExact.empty()) entry["slack_exact"] = lv.slackExact;
    if (lv.slackSigma >= 0) entry["slack_sigma"] = lv.slackSigma;
    levels.push_back(std::move(entry));
  }
  json out{{"mode", mode_name(report.mode)},
           {"means", mean_table_json(report.means)},
           {"levels", levels},
           {"factor", report.factor},
           {"iterated_factor", report.iteratedFactor},
           {"iterated_ok", report.iteratedOk},
           {"pass", report.pass}};
  if (report.eBoundApplies) out["e_bound_ok"] = report.eBoundOk;
  return out;
}

json orbit_report_json(const OrbitReport& report) {
  json out{{"m", report.m},
           {"mode", mode_name(report.mode)},
           {"count", report.count},
           {"line_mean", report.lineMean},
           {"edge_mean", report.edgeMean},
           {"ratio", report.ratio},
           {"ratio_bound", report.ratioBound},
           {"consistent", report.consistent}};
  if (report.mode == MeanMode::ExactRational) {
    out["line_aggregate"] = report.lineAggregate;
    out["line_expected"] = report.lineExpected;
    out["edge_aggregate"] = report.edgeAggregate;
    out["edge_expected"] = report.edgeExpected;
    out["identity_ok"] = report.identityOk;
    out["aggregate_inequality_ok"] = report.aggregateInequalityOk;
  } else {
    out["line_stderr"] = report.lineStderr;
    out["edge_stderr"] = report.edgeStderr;
  }
  return out;
}

json certificate_json(const CertificateReport& report) {
  json out{{"mode", mode_name(report.mode)},
           {"inf_top", report.infTop},
           {"sup_bottom", report.supBottom},
           {"ratio", report.ratio},
           {"bound", report.bound},
           {"limit_bound", report.limitBound},
           {"within_bound", report.withinBound},
           {"verdict", verdict_name(report.verdict)}};
  if (!report.infTopSq.empty()) {
    out["inf_top_sq"] = report.infTopSq;
    out["sup_bottom_sq"] = report.supBottomSq;
  }
  if (report.mode == MeanMode::Sampled) out["samples"] = report.samples;
  return out;
}

json moduli_json(const ModuliReport& report) {
  json scales = json::array();
  for (const ModuliScale& s : report.scales) {
    json entry{{"t", s.t}, {"pairs", s.pairs}};
    entry["rho1"] = s.rho1 ? json(*s.rho1) : json(nullptr);
    entry["rho2"] = s.rho2 ? json(*s.rho2) : json(nullptr);
    scales.push_back(std::move(entry));
  }
  return {{"exhaustive", report.exhaustive}, {"scales", scales}};
}

json embedding_check_json(const EmbeddingCheckReport& report) {
  return {{"pairs_checked", report.pairsChecked},
          {"failures", report.failures},
          {"inconclusive", report.inconclusive},
          {"pass", report.pass},
          {"details", report.details}};
}

json loop_check_json(const LoopCheckReport& report) {
  return {{"cycles_checked", report.cyclesChecked},
          {"non_tree_cycles", report.nonTreeCycles},
          {"all_identity", report.allIdentity},
          {"first_violation", report.firstViolation}};
}

std::string mean_table_csv(const MeanTable& table) {
  std::ostringstream os;
  os << "m,value,exact,stderr,samples\n";
  for (const LevelMean& lm : table.levels) {
    os << lm.m << ',' << lm.value << ',';
    if (table.mode == MeanMode::ExactRational) os << rat_string(lm.exact);
    os << ',';
    if (table.mode == MeanMode::Sampled) os << lm.stderrVal;
    os << ',' << lm.samples << '\n';
  }
  return os.str();
}

std::string moduli_csv(const ModuliReport& report) {
  std::ostringstream os;
  os << "t,pairs,rho1,rho2\n";
  for (const ModuliScale& s : report.scales) {
    os << s.t << ',' << s.pairs << ',';
    if (s.rho1) os << *s.rho1;
    os << ',';
    if (s.rho2) os << *s.rho2;
    os << '\n';
  }
  return os.str();
}

}  // namespace enflo
