#pragma once

#include <json.hpp>
#include <string>

#include "enflo/embedding.hpp"
#include "enflo/graphgroup.hpp"
#include "enflo/poincare.hpp"
#include "enflo/simplex.hpp"
#include "enflo/space.hpp"

namespace enflo {

// JSON views of the report types. nlohmann::json keeps object keys sorted,
// so serialized reports are byte-stable for identical inputs. Exact values
// are emitted as "p/q" strings, never as lossy doubles.
nlohmann::json spec_json(const SpaceSpec& spec);
nlohmann::json point_json(const Point& pt);
nlohmann::json segment_json(const SpaceSpec& spec, const Segment& seg);
nlohmann::json simplex_json(const DoubleSimplex& ds);
nlohmann::json simplex_check_json(const SimplexCheck& check);
nlohmann::json mean_table_json(const MeanTable& table);
nlohmann::json chain_report_json(const ChainReport& report);
nlohmann::json orbit_report_json(const OrbitReport& report);
nlohmann::json certificate_json(const CertificateReport& report);
nlohmann::json moduli_json(const ModuliReport& report);
nlohmann::json embedding_check_json(const EmbeddingCheckReport& report);
nlohmann::json loop_check_json(const LoopCheckReport& report);

std::string mean_table_csv(const MeanTable& table);
std::string moduli_csv(const ModuliReport& report);

const char* mode_name(MeanMode mode);
const char* verdict_name(CertificateVerdict verdict);

}  // namespace enflo
