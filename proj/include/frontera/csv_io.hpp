#pragma once

#include "frontera/dynamics.hpp"
#include "frontera/grid.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace frontera {

inline constexpr std::string_view timeseries_header = "t,g,h,sup_u,sup_v,u_center,v_center";
inline constexpr std::string_view snapshot_header   = "x,u,v";
inline constexpr std::string_view index_header      = "index,t,left_front,right_front";

/// %.17g with '.' as decimal separator regardless of locale.
std::string format_double( double value );

void write_timeseries( const std::vector< Sample >& samples, std::ostream& out );
void write_snapshot( const State& state, const Grid& grid, std::ostream& out );

/// Writes the timeseries CSV. IoError if the file cannot be written.
void emit_timeseries( const Trajectory& tr, const std::string& path );
void emit_snapshot( const State& state, const Grid& grid, const std::string& path );

/// Writes every snapshot of tr to <prefix><k>.csv plus <prefix>index.csv
/// listing k, t and the front positions.
void emit_snapshots( const Trajectory& tr, const Grid& grid, const std::string& prefix );

std::vector< Sample > parse_timeseries( std::string_view text );
std::vector< Sample > read_timeseries( const std::string& path );

/// Rebuilds a trajectory from a timeseries file and, if `snapshot_prefix`
/// is non-empty, the snapshot files listed in its index. dx and x_min are
/// taken from the snapshots; dt is left to the caller.
Trajectory read_trajectory( const std::string& timeseries_path, const std::string& snapshot_prefix );

} // namespace frontera
