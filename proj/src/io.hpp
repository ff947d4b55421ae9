#pragma once

#include <json.hpp>
#include <string>

#include "ensemble.hpp"
#include "family.hpp"
#include "measure.hpp"
#include "path.hpp"
#include "replication.hpp"
#include "state.hpp"

namespace pathspace {

// I/O failures (missing files, malformed JSON); distinct from ValidationError
// so the CLI can map them to different exit codes.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

Json horizon_to_json(const Horizon& h);
Horizon horizon_from_json(const Json& j);

Json path_to_json(const Path& p);
Path path_from_json(const Json& j);

Json time_change_to_json(const TimeChange& tc);
TimeChange time_change_from_json(const Json& j);

Json metric_to_json(const MetricSpec& m);
MetricSpec metric_from_json(const Json& j);

Json function_to_json(const BoundedFunction& f);
BoundedFunction function_from_json(const Json& j);

Json family_to_json(const FunctionFamily& D);
FunctionFamily family_from_json(const Json& j);

Json region_to_json(const RegionSpec& r);
RegionSpec region_from_json(const Json& j);

Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

Json expr_to_json(const AlgebraicExpr& e);
AlgebraicExpr expr_from_json(const Json& j);

Json base_to_json(const ReplicationBase& b);
ReplicationBase base_from_json(const Json& j);

Json sampler_config_to_json(const SamplerConfig& c);
SamplerConfig sampler_config_from_json(const Json& j);

Json ensemble_to_json(const ProcessEnsemble& e);
ProcessEnsemble ensemble_from_json(const Json& j);

Json load_json_file(const std::string& file);
void save_json_file(const std::string& file, const Json& j);
std::string report_to_csv(const Json& report);

}  // namespace pathspace
