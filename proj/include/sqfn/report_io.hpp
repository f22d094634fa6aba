#pragma once

#include <string>

#include "sqfn/config.hpp"
#include "sqfn/estimates.hpp"

#include "json.hpp"

namespace sqfn {

using Json = nlohmann::json;

/// Point clouds: CSV with header x0,...,x{m-1},weight (plus a label column
/// when the cloud is labeled). Writes are deterministic (%.17g).
void write_cloud_csv(const std::string& path, const AdrSet& e);
AdrSet read_cloud_csv(const std::string& path, double dim, double adr_const);

void write_cover_csv(const std::string& path, const WhitneyCover& cover);

Json lattice_to_json(const DyadicLattice& lattice);
DyadicLattice lattice_from_json(const Json& j);

Json adr_report_to_json(const AdrReport& report);
Json energy_to_json(const EnergyBreakdown& energy);
Json sfe_report_to_json(const SfeReport& report);
Json tb_report_to_json(const TbReport& report);
Json split_report_to_json(const SplitReport& report);
Json bpsfe_report_to_json(const BpsfePipelineReport& report);
Json curve_to_json(const DistributionCurve& curve);
Json lp_rows_to_json(const std::vector<LpSweepRow>& rows);
Json hp_report_to_json(const HpAtomReport& report);

/// Two-column CSV (lambda, measure) for plotting.
void write_curve_csv(const std::string& path, const DistributionCurve& curve);

/// Writes `body` wrapped with the config echo and digest.
void write_report(const std::string& path, const Config& config, const Json& body);

/// Reads a report/meta JSON and returns its embedded digest ("" if absent).
std::string read_report_digest(const std::string& path);

}  // namespace sqfn
