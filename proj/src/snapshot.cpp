#include "machlab/snapshot.hpp"

#include <fstream>

#include "json.hpp"

namespace machlab {

void write_snapshot(const std::string& path_base, const Snapshot& snap) {
  nlohmann::json meta;
  meta["dims"] = snap.grid.dim == 1 ? std::vector<int>{snap.grid.cells[0]}
                                    : std::vector<int>{snap.grid.cells[0], snap.grid.cells[1]};
  meta["lengths"] = snap.grid.dim == 1
                        ? std::vector<double>{snap.grid.lengths[0]}
                        : std::vector<double>{snap.grid.lengths[0], snap.grid.lengths[1]};
  meta["time"] = snap.time;
  meta["eps"] = snap.eps;
  std::vector<std::string> names;
  for (const auto& [name, field] : snap.fields) names.push_back(name);
  meta["fields"] = names;

  {
    std::ofstream js(path_base + ".json");
    if (!js) throw std::runtime_error("write_snapshot: cannot open " + path_base + ".json");
    js << meta.dump(2) << "\n";
  }
  std::ofstream bin(path_base + ".f64", std::ios::binary);
  if (!bin) throw std::runtime_error("write_snapshot: cannot open " + path_base + ".f64");
  for (const auto& [name, field] : snap.fields) {
    if (field.size() != snap.grid.cell_count())
      throw std::invalid_argument("write_snapshot: field '" + name + "' shape mismatch");
    bin.write(reinterpret_cast<const char*>(field.data()),
              static_cast<std::streamsize>(field.size() * sizeof(double)));
  }
}

Snapshot read_snapshot(const std::string& path_base) {
  std::ifstream js(path_base + ".json");
  if (!js) throw std::runtime_error("read_snapshot: cannot open " + path_base + ".json");
  nlohmann::json meta = nlohmann::json::parse(js);

  Snapshot snap;
  const auto dims = meta.at("dims").get<std::vector<int>>();
  const auto lengths = meta.at("lengths").get<std::vector<double>>();
  snap.grid.dim = static_cast<int>(dims.size());
  snap.grid.cells = {dims[0], dims.size() > 1 ? dims[1] : 1};
  snap.grid.lengths = {lengths[0], lengths.size() > 1 ? lengths[1] : lengths[0]};
  snap.grid.validate();
  snap.time = meta.at("time").get<double>();
  snap.eps = meta.at("eps").get<double>();

  std::ifstream bin(path_base + ".f64", std::ios::binary);
  if (!bin) throw std::runtime_error("read_snapshot: cannot open " + path_base + ".f64");
  for (const auto& name : meta.at("fields").get<std::vector<std::string>>()) {
    Field field(snap.grid.cell_count());
    bin.read(reinterpret_cast<char*>(field.data()),
             static_cast<std::streamsize>(field.size() * sizeof(double)));
    if (!bin) throw std::runtime_error("read_snapshot: truncated data in " + path_base + ".f64");
    snap.fields.emplace_back(name, std::move(field));
  }
  return snap;
}

Snapshot snapshot_of(const ConservedState& state) {
  Snapshot snap;
  snap.grid = state.grid;
  snap.time = state.time;
  snap.eps = state.eps;
  snap.fields.emplace_back("rho", state.rho);
  snap.fields.emplace_back("mom_x", state.mom[0]);
  if (state.grid.dim == 2) snap.fields.emplace_back("mom_y", state.mom[1]);
  return snap;
}

ConservedState conserved_from_snapshot(const Snapshot& snap) {
  ConservedState state(snap.grid, snap.eps);
  state.time = snap.time;
  for (const auto& [name, field] : snap.fields) {
    if (name == "rho") state.rho = field;
    else if (name == "mom_x") state.mom[0] = field;
    else if (name == "mom_y" && snap.grid.dim == 2) state.mom[1] = field;
  }
  return state;
}

}  // namespace machlab
