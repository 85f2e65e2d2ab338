#include "frontera/csv_io.hpp"

#include "frontera/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace frontera {

namespace {

std::ofstream open_for_write( const std::string& path )
{
    std::ofstream out( path, std::ios::binary | std::ios::trunc );
    if ( !out )
        throw IoError( "cannot write '" + path + "'" );
    return out;
}

std::string slurp( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw IoError( "cannot read '" + path + "'" );
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void finish( std::ofstream& out, const std::string& path )
{
    out.flush();
    if ( !out )
        throw IoError( "write to '" + path + "' failed" );
}

double parse_double( std::string_view field, std::size_t line )
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars( field.data(), field.data() + field.size(), value );
    if ( ec != std::errc() || ptr != field.data() + field.size() )
        throw ParseError( line, "line " + std::to_string( line ) + ": bad number '" + std::string( field ) + "'" );
    return value;
}

/// Splits text into lines of comma-separated numbers after checking the header.
std::vector< std::vector< double > > parse_table( std::string_view text, std::string_view header, std::size_t columns )
{
    std::vector< std::vector< double > > rows;
    std::size_t                          line_no = 0;
    std::size_t                          pos     = 0;
    while ( pos < text.size() )
    {
        std::size_t end = text.find( '\n', pos );
        if ( end == std::string_view::npos )
            end = text.size();
        std::string_view line = text.substr( pos, end - pos );
        pos                   = end + 1;
        ++line_no;
        if ( line_no == 1 )
        {
            if ( line != header )
                throw ParseError( 0, "expected header '" + std::string( header ) + "'" );
            continue;
        }
        if ( line.empty() )
            continue;
        std::vector< double > row;
        std::size_t           start = 0;
        while ( true )
        {
            const std::size_t comma = line.find( ',', start );
            row.push_back( parse_double( line.substr( start, comma - start ), line_no ) );
            if ( comma == std::string_view::npos )
                break;
            start = comma + 1;
        }
        if ( row.size() != columns )
            throw ParseError( line_no, "line " + std::to_string( line_no ) + ": expected " + std::to_string( columns )
                                           + " columns" );
        rows.push_back( std::move( row ) );
    }
    if ( line_no == 0 )
        throw ParseError( 0, "empty file" );
    return rows;
}

} // namespace

std::string format_double( double value )
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars( buf, buf + sizeof( buf ), value, std::chars_format::general, 17 );
    return std::string( buf, ptr );
}

void write_timeseries( const std::vector< Sample >& samples, std::ostream& out )
{
    out << timeseries_header << '\n';
    for ( const auto& s : samples )
    {
        out << format_double( s.t ) << ',' << format_double( s.left_front ) << ',' << format_double( s.right_front ) << ','
            << format_double( s.sup_u ) << ',' << format_double( s.sup_v ) << ',' << format_double( s.u_center ) << ','
            << format_double( s.v_center ) << '\n';
    }
}

void write_snapshot( const State& state, const Grid& grid, std::ostream& out )
{
    out << snapshot_header << '\n';
    for ( std::size_t i = 0; i < grid.size(); ++i )
    {
        const double v = i < state.v.values.size() ? state.v.values[i] : 0.0;
        out << format_double( grid.node( i ) ) << ',' << format_double( state.u.values[i] ) << ',' << format_double( v )
            << '\n';
    }
}

void emit_timeseries( const Trajectory& tr, const std::string& path )
{
    auto out = open_for_write( path );
    write_timeseries( tr.samples, out );
    finish( out, path );
}

void emit_snapshot( const State& state, const Grid& grid, const std::string& path )
{
    auto out = open_for_write( path );
    write_snapshot( state, grid, out );
    finish( out, path );
}

void emit_snapshots( const Trajectory& tr, const Grid& grid, const std::string& prefix )
{
    const std::string index_path = prefix + "index.csv";
    auto              index      = open_for_write( index_path );
    index << index_header << '\n';
    for ( std::size_t k = 0; k < tr.snapshots.size(); ++k )
    {
        const State& s = tr.snapshots[k];
        emit_snapshot( s, grid, prefix + std::to_string( k ) + ".csv" );
        index << k << ',' << format_double( s.t ) << ',' << format_double( s.left_front ) << ','
              << format_double( s.right_front ) << '\n';
    }
    finish( index, index_path );
}

std::vector< Sample > parse_timeseries( std::string_view text )
{
    std::vector< Sample > samples;
    for ( const auto& row : parse_table( text, timeseries_header, 7 ) )
        samples.push_back( Sample{ row[0], row[1], row[2], row[3], row[4], row[5], row[6] } );
    return samples;
}

std::vector< Sample > read_timeseries( const std::string& path )
{
    return parse_timeseries( slurp( path ) );
}

Trajectory read_trajectory( const std::string& timeseries_path, const std::string& snapshot_prefix )
{
    Trajectory tr;
    tr.samples = read_timeseries( timeseries_path );
    if ( snapshot_prefix.empty() )
        return tr;

    const auto index = parse_table( slurp( snapshot_prefix + "index.csv" ), index_header, 4 );
    for ( const auto& entry : index )
    {
        const auto k    = static_cast< std::size_t >( entry[0] );
        const auto rows = parse_table( slurp( snapshot_prefix + std::to_string( k ) + ".csv" ), snapshot_header, 3 );
        if ( rows.size() < 2 )
            throw ParseError( 0, "snapshot " + std::to_string( k ) + " has fewer than two nodes" );
        State s;
        s.t           = entry[1];
        s.left_front  = entry[2];
        s.right_front = entry[3];
        for ( const auto& row : rows )
        {
            s.u.values.push_back( row[1] );
            s.v.values.push_back( row[2] );
        }
        tr.x_min = rows.front()[0];
        tr.dx    = ( rows.back()[0] - rows.front()[0] ) / static_cast< double >( rows.size() - 1 );
        const Grid grid( rows.front()[0], rows.back()[0], tr.dx );
        s.u.support = active_range( grid, s.left_front, s.right_front );
        s.v.support = { 0, rows.size() };
        tr.snapshots.push_back( std::move( s ) );
    }
    if ( !tr.snapshots.empty() )
        tr.final_state = tr.snapshots.back();
    return tr;
}

} // namespace frontera
