// frontera: command-line driver for the free-boundary competition solver.
//
// Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
// 3 numerical failure (stability, positivity, convergence).

#include "frontera/classify.hpp"
#include "frontera/config.hpp"
#include "frontera/csv_io.hpp"
#include "frontera/eigen.hpp"
#include "frontera/errors.hpp"
#include "frontera/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace frontera;

namespace {

constexpr int exit_ok           = 0;
constexpr int exit_usage        = 1;
constexpr int exit_verification = 2;
constexpr int exit_numerical    = 3;

std::string num( double x )
{
    return format_double( x );
}

std::string opt_num( const std::optional< double >& x )
{
    return x ? num( *x ) : "none";
}

struct SpeciesRates
{
    double d;
    double a;
};

SpeciesRates species_rates( const RunConfig& cfg, int species )
{
    const auto& p = cfg.params;
    if ( species == 0 )
        species = p.regime() == Regime::Inferior ? 2 : 1;
    return species == 2 ? SpeciesRates{ p.d2, p.a2 } : SpeciesRates{ p.d1, p.a1 };
}

void print_outcome( const Outcome& out )
{
    const auto& ev = out.evidence;
    std::cout << "verdict = " << to_string( out.verdict ) << '\n'
              << "regime = " << to_string( out.regime ) << '\n'
              << "horizon = " << num( out.horizon ) << '\n'
              << "final_time = " << num( ev.final_time ) << '\n'
              << "final_length = " << num( ev.final_length ) << '\n'
              << "r_star = " << opt_num( ev.r_star ) << '\n'
              << "decision_length = " << opt_num( ev.decision_length ) << '\n'
              << "final_front_speed = " << num( ev.final_front_speed ) << '\n'
              << "sup_u_final = " << num( ev.sup_u_final ) << '\n'
              << "sup_v_final = " << num( ev.sup_v_final ) << '\n'
              << "u_limit_gap = " << num( ev.u_limit_gap ) << '\n'
              << "v_limit_gap = " << num( ev.v_limit_gap ) << '\n'
              << "crossing_time = " << opt_num( ev.crossing_time ) << '\n';
    for ( const auto& n : out.notes )
        std::cout << "note: " << n << '\n';
}

void write_outputs( const RunConfig& cfg, const Trajectory& tr )
{
    if ( cfg.output.timeseries.empty() )
        write_timeseries( tr.samples, std::cout );
    else
        emit_timeseries( tr, cfg.output.timeseries );
    if ( !cfg.output.snapshot_prefix.empty() )
        emit_snapshots( tr, build_grid( cfg.x_min, cfg.x_max, cfg.dx ), cfg.output.snapshot_prefix );
}

int cmd_simulate( const std::string& path )
{
    const RunConfig cfg = load_config_file( path );
    preflight_window( cfg, cfg.horizon );
    const Trajectory tr = run( cfg );
    write_outputs( cfg, tr );
    return exit_ok;
}

int cmd_eigen( const std::string& path, double length, int species, double tol )
{
    const RunConfig    cfg   = load_config_file( path );
    const SpeciesRates rates = species_rates( cfg, species );
    EigenProblem       problem{ rates.d, rates.a, -0.5 * length, 0.5 * length, cfg.dx, cfg.kernel };
    const EigenResult  res = principal_eigenpair( problem, tol );
    std::cout << "length = " << num( length ) << '\n'
              << "lambda1 = " << num( res.lambda1 ) << '\n'
              << "cells = " << res.phi.size() << '\n'
              << "iterations = " << res.iterations << '\n'
              << "residual = " << num( res.residual ) << '\n';
    return exit_ok;
}

int cmd_rstar( const std::string& path, int species, double tol )
{
    const RunConfig    cfg   = load_config_file( path );
    const SpeciesRates rates = species_rates( cfg, species );
    const double       r     = critical_length( rates.d, rates.a, cfg.kernel, cfg.dx, tol );
    std::cout << "r_star = " << num( r ) << '\n'
              << "d = " << num( rates.d ) << '\n'
              << "a = " << num( rates.a ) << '\n'
              << "initial_length = " << num( 2.0 * cfg.params.h0 ) << '\n';
    return exit_ok;
}

int cmd_classify( const std::string& path )
{
    const RunConfig      cfg    = load_config_file( path );
    const Criteria       crit   = resolve_criteria( cfg );
    const Classification result = classify_run( cfg, crit );
    print_outcome( result.outcome );
    if ( !cfg.output.timeseries.empty() )
        emit_timeseries( result.trajectory, cfg.output.timeseries );
    if ( !cfg.output.snapshot_prefix.empty() )
        emit_snapshots( result.trajectory, build_grid( cfg.x_min, cfg.x_max, cfg.dx ), cfg.output.snapshot_prefix );
    return exit_ok;
}

int cmd_mustar( const std::string& path, const std::vector< double >& bracket, double tol )
{
    if ( bracket.size() != 2 )
        throw UsageError( "--bracket expects lo,hi" );
    const RunConfig         cfg  = load_config_file( path );
    const Criteria          crit = resolve_criteria( cfg );
    const ThresholdEstimate est  = find_mu_star( cfg, bracket[0], bracket[1], tol, crit );
    std::cout << "mu_lo = " << num( est.mu_lo ) << '\n'
              << "mu_hi = " << num( est.mu_hi ) << '\n'
              << "r_star = " << num( est.r_star ) << '\n'
              << "decision_length = " << num( est.decision_length ) << '\n'
              << "always_spreading = " << ( est.always_spreading ? "true" : "false" ) << '\n'
              << "converged = " << ( est.converged ? "true" : "false" ) << '\n'
              << "iterations = " << est.iterations << '\n'
              << "undecided_failures = " << est.undecided_failures << '\n';
    for ( const auto& p : est.probes )
    {
        std::cout << "probe mu = " << num( p.mu ) << " verdict = " << to_string( p.verdict )
                  << " horizon = " << num( p.horizon_used ) << ( p.doubled ? " (doubled)" : "" ) << '\n';
    }
    return est.converged ? exit_ok : exit_numerical;
}

int cmd_audit( const std::string& traj, const std::string& snapshots, const std::string& config_path, double tol,
               bool symmetry )
{
    const RunConfig cfg = load_config_file( config_path );
    Trajectory      tr  = read_trajectory( traj, snapshots );
    tr.dt               = cfg.dt;
    if ( snapshots.empty() )
    {
        tr.dx    = cfg.dx;
        tr.x_min = cfg.x_min;
    }
    if ( tol < 0.0 )
        tol = 5.0 * cfg.dt;
    const AuditReport report = check_state_invariants( tr, cfg.params, tol, AuditOptions{ symmetry } );
    for ( const auto& c : report.checks )
    {
        std::cout << c.name << ": " << ( !c.applicable ? "SKIP" : c.passed ? "PASS" : "FAIL" )
                  << " residual = " << num( c.residual ) << " t = " << num( c.time ) << '\n';
    }
    std::cout << "tol = " << num( tol ) << '\n' << "audit: " << ( report.passed() ? "PASS" : "FAIL" ) << '\n';
    return report.passed() ? exit_ok : exit_verification;
}

int cmd_order( const std::string& lower_path, const std::string& upper_path, const std::string& lower_snaps,
               const std::string& upper_snaps, double tol, double dt )
{
    if ( tol < 0.0 )
    {
        if ( !( dt > 0.0 ) )
            throw UsageError( "verify order needs --tol or --dt" );
        tol = 5.0 * dt;
    }
    Trajectory lower = read_trajectory( lower_path, lower_snaps );
    Trajectory upper = read_trajectory( upper_path, upper_snaps );
    lower.dt = upper.dt = dt > 0.0 ? dt : tol / 5.0;
    const OrderReport report = check_order( lower, upper, tol );
    for ( const auto& r : report.relations )
    {
        std::cout << r.name << ": " << ( r.passed ? "PASS" : "FAIL" ) << " gap = " << num( r.worst_gap )
                  << " t = " << num( r.worst_time ) << '\n';
    }
    std::cout << "samples = " << report.samples_compared << '\n'
              << "snapshots = " << report.snapshots_compared << '\n'
              << "tol = " << num( tol ) << '\n'
              << "order: " << ( report.passed() ? "PASS" : "FAIL" ) << '\n';
    return report.passed() ? exit_ok : exit_verification;
}

int cmd_config_echo( const std::string& path )
{
    std::cout << dump_config( load_config_file( path ) );
    return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Nonlocal free-boundary competition solver" };
    app.require_subcommand( 1 );

    std::string cfg_path;
    int         species = 0;
    double      tol     = -1.0; // negative: derive from dt

    auto* simulate = app.add_subcommand( "simulate", "integrate a configuration and write the timeseries CSV" );
    simulate->add_option( "config", cfg_path, "JSON configuration" )->required();

    double length = 0.0;
    double eig_tol = 1e-10;
    auto*  eigen  = app.add_subcommand( "eigen", "principal eigenvalue on an interval of given length" );
    eigen->add_option( "config", cfg_path, "JSON configuration" )->required();
    eigen->add_option( "--length", length, "interval length" )->required()->check( CLI::PositiveNumber );
    eigen->add_option( "--species", species, "1 or 2 (default: by regime)" )->check( CLI::Range( 1, 2 ) );
    eigen->add_option( "--tol", eig_tol, "residual tolerance" )->check( CLI::PositiveNumber );

    double rstar_tol = 1e-6;
    auto*  rstar     = app.add_subcommand( "rstar", "critical length where the principal eigenvalue vanishes" );
    rstar->add_option( "config", cfg_path, "JSON configuration" )->required();
    rstar->add_option( "--species", species, "1 or 2 (default: by regime)" )->check( CLI::Range( 1, 2 ) );
    rstar->add_option( "--tol", rstar_tol, "bisection tolerance" )->check( CLI::PositiveNumber );

    auto* classify = app.add_subcommand( "classify", "long-run spreading/vanishing verdict" );
    classify->add_option( "config", cfg_path, "JSON configuration" )->required();

    std::vector< double > bracket;
    double                mu_tol = 0.05;
    auto*                 mustar = app.add_subcommand( "mustar", "bracket the threshold expansion capacity" );
    mustar->add_option( "config", cfg_path, "JSON configuration" )->required();
    mustar->add_option( "--bracket", bracket, "lo,hi" )->required()->delimiter( ',' )->expected( 2 );
    mustar->add_option( "--tol", mu_tol, "relative bracket width" )->check( CLI::PositiveNumber );

    auto*       verify = app.add_subcommand( "verify", "audit or order-check trajectories" );
    verify->require_subcommand( 1 );
    std::string traj, snaps, lower, upper, lower_snaps, upper_snaps;
    bool        symmetry = false;
    double      dt       = 0.0;
    auto*       audit    = verify->add_subcommand( "audit", "invariant audit of one trajectory" );
    audit->add_option( "trajectory", traj, "timeseries CSV" )->required();
    audit->add_option( "--config", cfg_path, "configuration that produced it" )->required();
    audit->add_option( "--snapshots", snaps, "snapshot prefix" );
    audit->add_option( "--tol", tol, "tolerance (default 5 dt)" )->check( CLI::NonNegativeNumber );
    audit->add_flag( "--symmetry", symmetry, "also check mirror symmetry" );
    auto* order = verify->add_subcommand( "order", "ordering check lower <= upper" );
    order->add_option( "lower", lower, "timeseries CSV of the lower run" )->required();
    order->add_option( "upper", upper, "timeseries CSV of the upper run" )->required();
    order->add_option( "--lower-snapshots", lower_snaps, "snapshot prefix of the lower run" );
    order->add_option( "--upper-snapshots", upper_snaps, "snapshot prefix of the upper run" );
    order->add_option( "--tol", tol, "tolerance" )->check( CLI::NonNegativeNumber );
    order->add_option( "--dt", dt, "time step; tolerance defaults to 5 dt" );

    auto* config = app.add_subcommand( "config", "configuration utilities" );
    config->require_subcommand( 1 );
    auto* echo = config->add_subcommand( "echo", "print the validated configuration with defaults" );
    echo->add_option( "config", cfg_path, "JSON configuration" )->required();

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e );
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if ( simulate->parsed() )
            return cmd_simulate( cfg_path );
        if ( eigen->parsed() )
            return cmd_eigen( cfg_path, length, species, eig_tol );
        if ( rstar->parsed() )
            return cmd_rstar( cfg_path, species, rstar_tol );
        if ( classify->parsed() )
            return cmd_classify( cfg_path );
        if ( mustar->parsed() )
            return cmd_mustar( cfg_path, bracket, mu_tol );
        if ( audit->parsed() )
            return cmd_audit( traj, snaps, cfg_path, tol, symmetry );
        if ( order->parsed() )
            return cmd_order( lower, upper, lower_snaps, upper_snaps, tol, dt );
        if ( echo->parsed() )
            return cmd_config_echo( cfg_path );
    }
    catch ( const NumericalError& e )
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    catch ( const Error& e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
