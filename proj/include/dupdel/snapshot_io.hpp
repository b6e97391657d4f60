#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "dupdel/process.hpp"

namespace dupdel {

/// CSV with header `m,k,count,n_vertices`, one row per (checkpoint, size).
void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots);
std::vector<Snapshot> read_snapshots_csv(std::istream& in);

/// `{"m": .., "n_vertices": .., "counts": [[k, c], ...]}` with sizes ascending.
nlohmann::json snapshot_to_json(const Snapshot& snap);
/// Throws std::invalid_argument on schema violations.
Snapshot snapshot_from_json(const nlohmann::json& j);

nlohmann::json snapshots_to_json(std::span<const Snapshot> snapshots);

}  // namespace dupdel
