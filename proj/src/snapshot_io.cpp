#include "dupdel/snapshot_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dupdel {

void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots) {
    out << "m,k,count,n_vertices\n";
    for (const auto& snap : snapshots) {
        for (const auto& [k, c] : snap.counts) {
            out << snap.m << ',' << k << ',' << c << ',' << snap.n_vertices << '\n';
        }
    }
}

std::vector<Snapshot> read_snapshots_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "m,k,count,n_vertices") {
        throw std::invalid_argument("snapshot CSV: missing header");
    }
    std::vector<Snapshot> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::uint64_t m = 0, k = 0, c = 0, n = 0;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(row >> m >> c1 >> k >> c2 >> c >> c3 >> n) || c1 != ',' || c2 != ',' || c3 != ',') {
            throw std::invalid_argument("snapshot CSV: malformed row '" + line + "'");
        }
        if (out.empty() || out.back().m != m) {
            out.push_back(Snapshot{m, n, 0, {}});
        }
        out.back().counts.emplace_back(k, c);
        out.back().num_cliques += c;
    }
    return out;
}

nlohmann::json snapshot_to_json(const Snapshot& snap) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [k, c] : snap.counts) counts.push_back({k, c});
    return {{"m", snap.m}, {"n_vertices", snap.n_vertices}, {"counts", std::move(counts)}};
}

Snapshot snapshot_from_json(const nlohmann::json& j) {
    try {
        Snapshot snap;
        snap.m = j.at("m").get<std::uint64_t>();
        snap.n_vertices = j.at("n_vertices").get<Count>();
        Count vertices = 0;
        for (const auto& entry : j.at("counts")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw std::invalid_argument("counts entries must be [k, count] pairs");
            }
            const auto k = entry[0].get<std::size_t>();
            const auto c = entry[1].get<Count>();
            if (!snap.counts.empty() && k <= snap.counts.back().first) {
                throw std::invalid_argument("counts must be sorted by ascending size");
            }
            snap.counts.emplace_back(k, c);
            snap.num_cliques += c;
            vertices += k * c;
        }
        if (vertices != snap.n_vertices) {
            throw std::invalid_argument("n_vertices disagrees with sum of k * count");
        }
        return snap;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("snapshot JSON: ") + e.what());
    }
}

nlohmann::json snapshots_to_json(std::span<const Snapshot> snapshots) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : snapshots) arr.push_back(snapshot_to_json(s));
    return arr;
}

}  // namespace dupdel
