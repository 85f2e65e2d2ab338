#include "frontera/config.hpp"

#include "frontera/errors.hpp"
#include "frontera/grid.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace frontera {

namespace {

using json = nlohmann::ordered_json;

std::string fmt( double x )
{
    std::ostringstream os;
    os.precision( 17 );
    os << x;
    return os.str();
}

/// Pulls typed values out of the document, recording problems instead of
/// throwing so that all of them can be reported at once.
class Reader
{
  public:
    std::vector< std::string > problems;

    const json* object( const json& parent, const char* key, const std::string& path )
    {
        if ( !parent.contains( key ) )
            return nullptr;
        const json& node = parent.at( key );
        if ( !node.is_object() )
        {
            problems.push_back( path + key + ": expected an object" );
            return nullptr;
        }
        return &node;
    }

    void known_keys( const json& obj, const std::string& path, std::initializer_list< const char* > allowed )
    {
        for ( const auto& item : obj.items() )
        {
            const bool ok = std::any_of( allowed.begin(), allowed.end(),
                                         [&]( const char* a ) { return item.key() == a; } );
            if ( !ok )
                problems.push_back( "unknown key '" + path + item.key() + "'" );
        }
    }

    void number( const json& obj, const char* key, const std::string& path, double& out )
    {
        if ( !obj.contains( key ) )
            return;
        const json& node = obj.at( key );
        if ( !node.is_number() )
        {
            problems.push_back( path + key + ": expected a number" );
            return;
        }
        out = node.get< double >();
    }

    void number( const json& obj, const char* key, const std::string& path, std::optional< double >& out )
    {
        if ( !obj.contains( key ) || obj.at( key ).is_null() )
            return;
        double value = 0.0;
        const auto before = problems.size();
        number( obj, key, path, value );
        if ( problems.size() == before )
            out = value;
    }

    void count( const json& obj, const char* key, const std::string& path, std::size_t& out )
    {
        if ( !obj.contains( key ) )
            return;
        const json& node = obj.at( key );
        if ( !node.is_number_integer() || node.get< long long >() < 0 )
        {
            problems.push_back( path + key + ": expected a non-negative integer" );
            return;
        }
        out = node.get< std::size_t >();
    }

    void boolean( const json& obj, const char* key, const std::string& path, bool& out )
    {
        if ( !obj.contains( key ) )
            return;
        const json& node = obj.at( key );
        if ( !node.is_boolean() )
        {
            problems.push_back( path + key + ": expected true or false" );
            return;
        }
        out = node.get< bool >();
    }

    void string( const json& obj, const char* key, const std::string& path, std::string& out )
    {
        if ( !obj.contains( key ) )
            return;
        const json& node = obj.at( key );
        if ( !node.is_string() )
        {
            problems.push_back( path + key + ": expected a string" );
            return;
        }
        out = node.get< std::string >();
    }

    void numbers( const json& obj, const char* key, const std::string& path, std::vector< double >& out )
    {
        if ( !obj.contains( key ) )
            return;
        const json& node = obj.at( key );
        if ( !node.is_array() || !std::all_of( node.begin(), node.end(), []( const json& e ) { return e.is_number(); } ) )
        {
            problems.push_back( path + key + ": expected an array of numbers" );
            return;
        }
        out.clear();
        for ( const auto& e : node )
            out.push_back( e.get< double >() );
    }
};

void read_params( Reader& r, const json& root, CompetitionParams& p )
{
    const json* node = r.object( root, "params", "" );
    if ( !node )
        return;
    r.known_keys( *node, "params.", { "d1", "d2", "a1", "b1", "c1", "a2", "b2", "c2", "mu", "h0" } );
    r.number( *node, "d1", "params.", p.d1 );
    r.number( *node, "d2", "params.", p.d2 );
    r.number( *node, "a1", "params.", p.a1 );
    r.number( *node, "b1", "params.", p.b1 );
    r.number( *node, "c1", "params.", p.c1 );
    r.number( *node, "a2", "params.", p.a2 );
    r.number( *node, "b2", "params.", p.b2 );
    r.number( *node, "c2", "params.", p.c2 );
    r.number( *node, "mu", "params.", p.mu );
    r.number( *node, "h0", "params.", p.h0 );
}

void read_kernel( Reader& r, const json& root, RunConfig& cfg )
{
    const json* node = r.object( root, "kernel", "" );
    if ( !node )
        return;
    r.known_keys( *node, "kernel.", { "family", "sigma", "shape" } );
    std::string family = std::string( to_string( cfg.kernel.family() ) );
    double      sigma  = cfg.kernel.sigma();
    double      shape  = 0.5 * sigma;
    r.string( *node, "family", "kernel.", family );
    r.number( *node, "sigma", "kernel.", sigma );
    if ( !node->contains( "shape" ) )
        shape = 0.5 * sigma;
    r.number( *node, "shape", "kernel.", shape );
    try
    {
        const KernelFamily f = kernel_family_from_string( family );
        if ( !( sigma > 0.0 ) || !std::isfinite( sigma ) )
        {
            r.problems.push_back( "kernel.sigma must be positive" );
            return;
        }
        switch ( f )
        {
            case KernelFamily::UniformBox:
                cfg.kernel = Kernel::uniform_box( sigma );
                break;
            case KernelFamily::Triangular:
                cfg.kernel = Kernel::triangular( sigma );
                break;
            case KernelFamily::TruncatedGaussian:
                if ( !( shape > 0.0 ) || !std::isfinite( shape ) )
                {
                    r.problems.push_back( "kernel.shape must be positive" );
                    return;
                }
                cfg.kernel = Kernel::truncated_gaussian( sigma, shape );
                break;
        }
    }
    catch ( const UsageError& e )
    {
        r.problems.push_back( std::string( "kernel: " ) + e.what() );
    }
}

void read_initial( Reader& r, const json& root, RunConfig& cfg )
{
    const json* node = r.object( root, "initial", "" );
    if ( !node )
        return;
    r.known_keys( *node, "initial.", { "u0", "v0" } );
    if ( const json* u0 = r.object( *node, "u0", "initial." ) )
    {
        r.known_keys( *u0, "initial.u0.", { "shape", "amplitude" } );
        r.number( *u0, "amplitude", "initial.u0.", cfg.u0.amplitude );
        std::string shape = cfg.u0.shape == U0Shape::Cosine ? "cosine" : "parabolic";
        r.string( *u0, "shape", "initial.u0.", shape );
        if ( shape == "cosine" )
            cfg.u0.shape = U0Shape::Cosine;
        else if ( shape == "parabolic" )
            cfg.u0.shape = U0Shape::Parabolic;
        else
            r.problems.push_back( "initial.u0.shape must be 'cosine' or 'parabolic', got '" + shape + "'" );
    }
    if ( const json* v0 = r.object( *node, "v0", "initial." ) )
    {
        r.known_keys( *v0, "initial.v0.", { "constant", "table" } );
        if ( v0->contains( "constant" ) && v0->contains( "table" ) )
        {
            r.problems.push_back( "initial.v0: give either 'constant' or 'table', not both" );
        }
        else if ( v0->contains( "table" ) )
        {
            if ( const json* table = r.object( *v0, "table", "initial.v0." ) )
            {
                r.known_keys( *table, "initial.v0.table.", { "x", "v" } );
                V0Profile::Table t;
                r.numbers( *table, "x", "initial.v0.table.", t.x );
                r.numbers( *table, "v", "initial.v0.table.", t.v );
                cfg.v0.data = std::move( t );
            }
        }
        else
        {
            V0Profile::Constant c;
            r.number( *v0, "constant", "initial.v0.", c.value );
            cfg.v0.data = c;
        }
    }
}

void read_classify( Reader& r, const json& root, ClassifyCriteria& c )
{
    const json* node = r.object( root, "classify", "" );
    if ( !node )
        return;
    r.known_keys( *node, "classify.", { "horizon", "speed_tol", "vanish_tol", "limit_tol", "stop_on_decision" } );
    r.number( *node, "horizon", "classify.", c.horizon );
    r.number( *node, "speed_tol", "classify.", c.speed_tol );
    r.number( *node, "vanish_tol", "classify.", c.vanish_tol );
    r.number( *node, "limit_tol", "classify.", c.limit_tol );
    r.boolean( *node, "stop_on_decision", "classify.", c.stop_on_decision );
}

void read_output( Reader& r, const json& root, OutputPaths& out )
{
    const json* node = r.object( root, "output", "" );
    if ( !node )
        return;
    r.known_keys( *node, "output.", { "timeseries", "snapshot_prefix" } );
    r.string( *node, "timeseries", "output.", out.timeseries );
    r.string( *node, "snapshot_prefix", "output.", out.snapshot_prefix );
}

} // namespace

std::vector< std::string > validate_config( const RunConfig& cfg )
{
    std::vector< std::string > problems;
    const auto                 bad = cfg.params.non_positive_fields();
    if ( !bad.empty() )
    {
        std::string names;
        for ( const auto& n : bad )
            names += ( names.empty() ? "" : ", " ) + n;
        problems.push_back( "parameters must be positive: " + names );
    }

    if ( !( cfg.u0.amplitude > 0.0 ) || !std::isfinite( cfg.u0.amplitude ) )
        problems.push_back( "initial.u0.amplitude must be positive" );
    bool v0_ok = true;
    if ( const auto* c = std::get_if< V0Profile::Constant >( &cfg.v0.data ) )
    {
        if ( !( c->value > 0.0 ) || !std::isfinite( c->value ) )
        {
            problems.push_back( "initial.v0.constant must be positive" );
            v0_ok = false;
        }
    }
    else
    {
        const auto& t = std::get< V0Profile::Table >( cfg.v0.data );
        if ( t.x.size() < 2 || t.x.size() != t.v.size() )
        {
            problems.push_back( "initial.v0.table needs x and v of equal length >= 2" );
            v0_ok = false;
        }
        else
        {
            for ( std::size_t i = 1; i < t.x.size(); ++i )
            {
                if ( !( t.x[i] > t.x[i - 1] ) )
                {
                    problems.push_back( "initial.v0.table.x must be strictly increasing" );
                    v0_ok = false;
                    break;
                }
            }
            if ( std::any_of( t.v.begin(), t.v.end(), []( double v ) { return !( v > 0.0 ) || !std::isfinite( v ); } ) )
            {
                problems.push_back( "initial.v0.table.v must be positive" );
                v0_ok = false;
            }
        }
    }

    const bool dx_ok = cfg.dx > 0.0 && std::isfinite( cfg.dx );
    if ( !dx_ok )
        problems.push_back( "dx must be positive" );
    const bool dt_ok = cfg.dt > 0.0 && std::isfinite( cfg.dt );
    if ( !dt_ok )
        problems.push_back( "dt must be positive" );
    if ( !( cfg.horizon >= 0.0 ) || !std::isfinite( cfg.horizon ) )
        problems.push_back( "horizon must be non-negative" );
    if ( cfg.sample_every < 1 )
        problems.push_back( "sample_every must be at least 1" );
    for ( double t : cfg.snapshot_times )
    {
        if ( !( t >= 0.0 ) || t > cfg.horizon )
        {
            problems.push_back( "snapshot time " + fmt( t ) + " lies outside [0, horizon]" );
            break;
        }
    }
    const auto& c = cfg.criteria;
    for ( const auto& [name, value] : { std::pair{ "classify.horizon", c.horizon }, std::pair{ "classify.speed_tol", c.speed_tol },
                                        std::pair{ "classify.vanish_tol", c.vanish_tol },
                                        std::pair{ "classify.limit_tol", c.limit_tol } } )
    {
        if ( value && ( !( *value > 0.0 ) || !std::isfinite( *value ) ) )
            problems.push_back( std::string( name ) + " must be positive" );
    }

    const bool params_ok = bad.empty();
    if ( !( cfg.x_min < cfg.x_max ) )
    {
        problems.push_back( "window must satisfy x_min < x_max" );
    }
    else if ( dx_ok )
    {
        try
        {
            const Grid grid = build_grid( cfg.x_min, cfg.x_max, cfg.dx );
            if ( params_ok )
            {
                const double h0  = cfg.params.h0;
                const double tol = 1e-9 * cfg.dx;
                if ( !grid.lattice_index( -h0, tol ) || !grid.lattice_index( h0, tol ) )
                    problems.push_back( "+-h0 = " + fmt( h0 ) + " must lie on the grid (x_min + k dx)" );
                if ( -h0 <= cfg.x_min || h0 >= cfg.x_max )
                    problems.push_back( "window must contain [-h0, h0] in its interior" );
            }
        }
        catch ( const NonConformingWindow& e )
        {
            problems.push_back( e.what() );
        }
    }

    if ( params_ok && v0_ok && cfg.u0.amplitude > 0.0 && dt_ok )
    {
        const double bound = cfg.stability_bound();
        if ( cfg.dt > bound )
            problems.push_back( "dt = " + fmt( cfg.dt ) + " exceeds the stability bound " + fmt( bound ) );
        // Runs that stop on a decision are checked against the classifier's
        // tighter requirement when they start.
        if ( !c.stop_on_decision && cfg.x_min < cfg.x_max )
        {
            const double need = cfg.required_half_window( cfg.horizon );
            if ( cfg.x_min > -need || cfg.x_max < need )
                problems.push_back( "window [" + fmt( cfg.x_min ) + ", " + fmt( cfg.x_max ) + "] must contain [-" + fmt( need )
                                    + ", " + fmt( need ) + "] to hold the fronts up to the horizon" );
        }
    }
    return problems;
}

RunConfig load_config( std::string_view text )
{
    json root;
    try
    {
        root = json::parse( text.begin(), text.end() );
    }
    catch ( const json::parse_error& e )
    {
        throw ParseError( e.byte, e.what() );
    }
    if ( !root.is_object() )
        throw ParseError( 0, "top-level value must be an object" );

    RunConfig cfg;
    Reader    r;
    r.known_keys( root, "", { "params", "kernel", "initial", "window", "dx", "dt", "horizon", "sample_every",
                              "snapshot_times", "snapshot_every", "classify", "output" } );
    read_params( r, root, cfg.params );
    read_kernel( r, root, cfg );
    read_initial( r, root, cfg );
    if ( root.contains( "window" ) )
    {
        std::vector< double > window;
        r.numbers( root, "window", "", window );
        if ( window.size() == 2 )
        {
            cfg.x_min = window[0];
            cfg.x_max = window[1];
        }
        else
        {
            r.problems.push_back( "window: expected [x_min, x_max]" );
        }
    }
    r.number( root, "dx", "", cfg.dx );
    r.number( root, "dt", "", cfg.dt );
    r.number( root, "horizon", "", cfg.horizon );
    r.count( root, "sample_every", "", cfg.sample_every );
    r.numbers( root, "snapshot_times", "", cfg.snapshot_times );
    r.count( root, "snapshot_every", "", cfg.snapshot_every );
    read_classify( r, root, cfg.criteria );
    read_output( r, root, cfg.output );

    auto problems = std::move( r.problems );
    if ( problems.empty() )
        problems = validate_config( cfg );
    else
    {
        auto more = validate_config( cfg );
        problems.insert( problems.end(), more.begin(), more.end() );
    }
    if ( !problems.empty() )
        throw ValidationError( std::move( problems ) );
    return cfg;
}

RunConfig load_config_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw IoError( "cannot read config file '" + path + "'" );
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config( buf.str() );
}

std::string dump_config( const RunConfig& cfg )
{
    const auto& p = cfg.params;
    json        root;
    root["params"] = { { "d1", p.d1 }, { "d2", p.d2 }, { "a1", p.a1 }, { "b1", p.b1 }, { "c1", p.c1 },
                       { "a2", p.a2 }, { "b2", p.b2 }, { "c2", p.c2 }, { "mu", p.mu }, { "h0", p.h0 } };

    json kernel = { { "family", std::string( to_string( cfg.kernel.family() ) ) }, { "sigma", cfg.kernel.sigma() } };
    if ( cfg.kernel.family() == KernelFamily::TruncatedGaussian )
        kernel["shape"] = cfg.kernel.shape();
    root["kernel"] = kernel;

    json v0;
    if ( const auto* c = std::get_if< V0Profile::Constant >( &cfg.v0.data ) )
        v0["constant"] = c->value;
    else
    {
        const auto& t = std::get< V0Profile::Table >( cfg.v0.data );
        v0["table"]   = { { "x", t.x }, { "v", t.v } };
    }
    root["initial"] = { { "u0",
                          { { "shape", cfg.u0.shape == U0Shape::Cosine ? "cosine" : "parabolic" },
                            { "amplitude", cfg.u0.amplitude } } },
                        { "v0", v0 } };
    root["window"]         = { cfg.x_min, cfg.x_max };
    root["dx"]             = cfg.dx;
    root["dt"]             = cfg.dt;
    root["horizon"]        = cfg.horizon;
    root["sample_every"]   = cfg.sample_every;
    root["snapshot_times"] = cfg.snapshot_times;
    root["snapshot_every"] = cfg.snapshot_every;

    const auto& c   = cfg.criteria;
    auto        opt = []( const std::optional< double >& v ) { return v ? json( *v ) : json( nullptr ); };
    root["classify"] = { { "horizon", opt( c.horizon ) },
                         { "speed_tol", opt( c.speed_tol ) },
                         { "vanish_tol", opt( c.vanish_tol ) },
                         { "limit_tol", opt( c.limit_tol ) },
                         { "stop_on_decision", c.stop_on_decision } };
    root["output"] = { { "timeseries", cfg.output.timeseries }, { "snapshot_prefix", cfg.output.snapshot_prefix } };
    return root.dump( 2 ) + "\n";
}

bool configs_equal( const RunConfig& a, const RunConfig& b )
{
    return a.params == b.params && kernels_equal( a.kernel, b.kernel ) && a.u0 == b.u0 && a.v0 == b.v0
           && a.x_min == b.x_min && a.x_max == b.x_max && a.dx == b.dx && a.dt == b.dt && a.horizon == b.horizon
           && a.sample_every == b.sample_every && a.snapshot_times == b.snapshot_times
           && a.snapshot_every == b.snapshot_every && a.criteria == b.criteria && a.output == b.output;
}

} // namespace frontera
