#pragma once

#include <string>
#include <utility>
#include <vector>

#include "machlab/grid.hpp"

namespace machlab {

/// Field snapshot format shared by the solvers and the harness: a flat
/// binary file of 64-bit floats (fields concatenated, each row-major) plus
/// a JSON sidecar carrying grid dims, lengths, time, eps and field names.
/// `path_base` is extended with ".f64" and ".json".
struct Snapshot {
  TorusGrid grid;
  double time = 0.0;
  double eps = 1.0;
  std::vector<std::pair<std::string, Field>> fields;
};

void write_snapshot(const std::string& path_base, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path_base);

Snapshot snapshot_of(const ConservedState& state);
ConservedState conserved_from_snapshot(const Snapshot& snap);

}  // namespace machlab
