#pragma once

#include "io.hpp"

namespace pathspace {

// Subcommand implementations: pure config-in/report-out JSON. File loading is
// the caller's job (inputs arrive inline), so every report embeds the exact
// configuration that produced it.
Json run_dist(const Json& config);
Json run_modulus(const Json& config);
Json run_tightness(const Json& config);
Json run_fdc(const Json& config);
Json run_replicate(const Json& config);
Json run_simulate(const Json& config);
Json run_report(const Json& config);

Json run_command(const std::string& name, const Json& config);

}  // namespace pathspace
