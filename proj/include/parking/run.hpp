#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "parking/report.hpp"

namespace parking {

// Renders the report for one RunConfig; pure in the config, so identical
// configs produce identical bytes regardless of thread count.
std::string render_report(const RunConfig& config);

// Renders and writes to config.output_path (stdout when empty). Returns 0.
int run(const RunConfig& config);

// Fast release gate: a deterministic table of structural and statistical
// checks, each a pass/fail line on `out`. Returns 0 iff everything passed.
// corrupt_field flips the field test hook first (negative control).
int selftest(std::uint64_t seed, int threads, bool corrupt_field, std::ostream& out);

}  // namespace parking
