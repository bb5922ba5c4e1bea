#pragma once

#include <string>
#include <vector>

#include "machlab/acoustics.hpp"
#include "machlab/comp_euler.hpp"
#include "machlab/measures.hpp"
#include "machlab/sweeps.hpp"

namespace machlab {

struct ReportOptions {
  bool csv = true;
  bool json = true;
  bool svg = true;
  bool no_timing = false;  // write wall_time_s as 0 for byte-reproducible files
};

/// Writes sweep.csv / sweep.json / sweep.svg under out_dir; the JSON mirror
/// carries a config echo and the fitted slope. Returns the written paths.
std::vector<std::string> emit_report(const SweepReport& report, const SweepConfig& config,
                                     const std::string& out_dir,
                                     const ReportOptions& options = {});

std::vector<std::string> emit_decay_report(const DecayResult& result, double eps,
                                           const std::string& out_dir,
                                           const ReportOptions& options = {});

std::vector<std::string> emit_energy_log(const std::vector<EnergyRecord>& log,
                                         const std::string& out_dir);

std::vector<std::string> emit_ledger(const DefectLedger& ledger, const std::string& out_dir);

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);

}  // namespace machlab
