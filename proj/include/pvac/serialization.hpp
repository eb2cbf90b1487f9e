#pragma once

#include <string>
#include <vector>

#include "pvac/energy.hpp"
#include "pvac/grid.hpp"
#include "pvac/parabolic_solver.hpp"

namespace pvac {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double x);

/// One row per (snapshot, node): t,x,v,eta,eta_x.
std::string snapshots_csv(const std::vector<Snapshot>& snapshots, const Grid1D& grid);

/// Long format, one row per (time, term): t,p,s,k,value,total.
std::string energy_csv(const EnergySeries& series);

/// Binary frame: "PVSF", uint32 little-endian header length, JSON header,
/// then little-endian float64 payload, one field after another.
std::string encode_frame(const Snapshot& snapshot);
std::string encode_frames(const std::vector<Snapshot>& snapshots);
/// Throws IoFailure on a truncated or malformed stream.
std::vector<Snapshot> decode_frames(const std::string& bytes);

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::string& path, const std::string& contents);

std::string sha256_hex(const std::string& bytes);

}  // namespace pvac
