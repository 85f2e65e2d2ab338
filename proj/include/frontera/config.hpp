#pragma once

#include "frontera/run_config.hpp"

#include <string>
#include <string_view>

namespace frontera {

/// Parses and validates a JSON run configuration. Missing keys take their
/// defaults (see docs/config.md). Every violated invariant is collected and
/// reported in a single ValidationError; malformed JSON raises ParseError.
RunConfig load_config( std::string_view text );

/// Reads `path` and calls load_config. IoError if unreadable.
RunConfig load_config_file( const std::string& path );

/// Invariant violations of an in-memory configuration (empty when valid).
std::vector< std::string > validate_config( const RunConfig& cfg );

/// Canonical JSON text with every key present; load_config(dump_config(c))
/// reproduces c exactly.
std::string dump_config( const RunConfig& cfg );

bool configs_equal( const RunConfig& a, const RunConfig& b );

} // namespace frontera
