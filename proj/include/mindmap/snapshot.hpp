#pragma once
// Versioned text snapshot of a MindMap. Line-oriented, tab-separated:
//
//   MINDMAP v1
//   P  <initial_weight> <reinforcement> <decay_rate> <death_threshold> <graveyard_ticks>
//   T  <tick>
//   C  <token> <weight> alive <last_stimulated> <created_at>
//   E  <token_a> <token_b> <weight> <last_reinforced>
//   G  <token> <weight> <last_stimulated> <created_at> <died_at>
//
// Weights are hexadecimal floats so a round-trip preserves exact bit
// patterns. Tokens are percent-encoded (tabs, newlines, '%'). Lines are
// emitted in sorted order, so identical maps serialize identically.

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "engine.hpp"
#include "text.hpp"

namespace mindmap {

struct SnapshotError : std::runtime_error {
    explicit SnapshotError(const std::string& what) : std::runtime_error(what) {}
};

namespace snapshot {

inline constexpr const char* kHeader = "MINDMAP v1";

inline void save(const MindMap& map, std::ostream& out) {
    const auto& p = map.params();
    out << kHeader << '\n';
    out << "P\t" << text::hex_double(p.initial_weight) << '\t' << text::hex_double(p.reinforcement)
        << '\t' << text::hex_double(p.decay_rate) << '\t' << text::hex_double(p.death_threshold)
        << '\t' << text::format_u64(p.graveyard_ticks) << '\n';
    out << "T\t" << text::format_u64(map.tick()) << '\n';
    for (const auto& [token, cell] : map.cells()) {
        out << "C\t" << text::encode_token(token) << '\t' << text::hex_double(cell.weight)
            << "\talive\t" << text::format_u64(cell.last_stimulated) << '\t'
            << text::format_u64(cell.created_at) << '\n';
    }
    for (const auto& [key, conn] : map.connections()) {
        out << "E\t" << text::encode_token(key.a) << '\t' << text::encode_token(key.b) << '\t'
            << text::hex_double(conn.weight) << '\t' << text::format_u64(conn.last_reinforced)
            << '\n';
    }
    for (const auto& [token, entry] : map.graveyard()) {
        out << "G\t" << text::encode_token(token) << '\t' << text::hex_double(entry.cell.weight)
            << '\t' << text::format_u64(entry.cell.last_stimulated) << '\t'
            << text::format_u64(entry.cell.created_at) << '\t' << text::format_u64(entry.died_at)
            << '\n';
    }
}

inline std::string save_string(const MindMap& map) {
    std::ostringstream out;
    save(map, out);
    return out.str();
}

// Loads a v1 snapshot. Throws SnapshotError on any malformed input; never
// returns partial state.
inline MindMap load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw SnapshotError("not a MINDMAP v1 snapshot");

    bool have_params = false;
    bool have_tick = false;
    EngineParams params;
    Tick tick = 0;
    std::map<std::string, Cell> cells;
    std::map<EdgeKey, Connection> connections;
    std::map<std::string, GraveEntry> graveyard;

    std::size_t line_no = 1;
    try {
        while (std::getline(in, line)) {
            ++line_no;
            auto fields = text::split_tabs(line);
            if (fields.empty() || fields[0].size() != 1)
                throw SnapshotError("unrecognized snapshot line");
            switch (fields[0][0]) {
                case 'P': {
                    if (have_params || fields.size() != 6)
                        throw SnapshotError("bad P line");
                    params.initial_weight = text::parse_hex_double(fields[1]);
                    params.reinforcement = text::parse_hex_double(fields[2]);
                    params.decay_rate = text::parse_hex_double(fields[3]);
                    params.death_threshold = text::parse_hex_double(fields[4]);
                    params.graveyard_ticks = text::parse_u64(fields[5]);
                    have_params = true;
                    break;
                }
                case 'T': {
                    if (have_tick || fields.size() != 2) throw SnapshotError("bad T line");
                    tick = text::parse_u64(fields[1]);
                    have_tick = true;
                    break;
                }
                case 'C': {
                    if (fields.size() != 6 || fields[3] != "alive")
                        throw SnapshotError("bad C line");
                    Cell cell;
                    cell.weight = text::parse_hex_double(fields[2]);
                    cell.last_stimulated = text::parse_u64(fields[4]);
                    cell.created_at = text::parse_u64(fields[5]);
                    auto token = text::percent_decode(fields[1]);
                    if (!cells.emplace(std::move(token), cell).second)
                        throw SnapshotError("duplicate cell token");
                    break;
                }
                case 'E': {
                    if (fields.size() != 5) throw SnapshotError("bad E line");
                    Connection conn;
                    conn.weight = text::parse_hex_double(fields[3]);
                    conn.last_reinforced = text::parse_u64(fields[4]);
                    EdgeKey key(text::percent_decode(fields[1]), text::percent_decode(fields[2]));
                    if (!connections.emplace(std::move(key), conn).second)
                        throw SnapshotError("duplicate edge");
                    break;
                }
                case 'G': {
                    if (fields.size() != 6) throw SnapshotError("bad G line");
                    GraveEntry entry;
                    entry.cell.weight = text::parse_hex_double(fields[2]);
                    entry.cell.last_stimulated = text::parse_u64(fields[3]);
                    entry.cell.created_at = text::parse_u64(fields[4]);
                    entry.died_at = text::parse_u64(fields[5]);
                    auto token = text::percent_decode(fields[1]);
                    if (!graveyard.emplace(std::move(token), entry).second)
                        throw SnapshotError("duplicate graveyard token");
                    break;
                }
                default:
                    throw SnapshotError("unrecognized snapshot line tag");
            }
        }
        if (!have_params || !have_tick)
            throw SnapshotError("snapshot missing P or T line");
        return MindMap::from_parts(params, tick, std::move(cells), std::move(connections),
                                   std::move(graveyard));
    } catch (const SnapshotError& e) {
        throw SnapshotError("snapshot line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw SnapshotError("snapshot line " + std::to_string(line_no) + ": " + e.what());
    }
}

inline MindMap load_string(const std::string& data) {
    std::istringstream in(data);
    return load(in);
}

}  // namespace snapshot
}  // namespace mindmap
