#include "frontera/classify.hpp"

#include "frontera/eigen.hpp"
#include "frontera/errors.hpp"
#include "frontera/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace frontera {

std::string_view to_string( Verdict verdict )
{
    switch ( verdict )
    {
        case Verdict::SpreadingU:
            return "SpreadingU";
        case Verdict::VanishingU:
            return "VanishingU";
        case Verdict::Undecided:
            return "Undecided";
    }
    return "unknown";
}

TheoryBounds theory_bounds( const CompetitionParams& params,
                            double                   u0_sup,
                            double                   v0_sup,
                            const Kernel&            kernel,
                            double                   grid_dx )
{
    TheoryBounds tb;
    tb.u_carrying     = params.a1 / params.b1;
    tb.v_carrying     = params.a2 / params.c2;
    tb.k0             = std::max( tb.u_carrying, tb.v_carrying );
    tb.m0             = std::max( { u0_sup, v0_sup, tb.k0 } );
    tb.superior_limit = { tb.u_carrying, 0.0 };
    tb.inferior_limit = { 0.0, tb.v_carrying };
    tb.regime         = params.regime();

    const double tol = 1e-4 * kernel.sigma();
    switch ( tb.regime )
    {
        case Regime::Superior:
            if ( params.a1 < params.d1 )
            {
                tb.r_star = critical_length( params.d1, params.a1, kernel, grid_dx, tol );
                // Superior means a1 > c1 a2 / c2, so the reduced rate is positive.
                const double reduced = params.a1 - params.c1 * params.a2 / params.c2;
                tb.decision_length   = critical_length( params.d1, reduced, kernel, grid_dx, tol );
            }
            else
                tb.hypothesis_failure = "a1 < d1 fails";
            break;
        case Regime::Inferior:
            if ( params.a2 < params.d2 )
                tb.r_star = critical_length( params.d2, params.a2, kernel, grid_dx, tol );
            else
                tb.hypothesis_failure = "a2 < d2 fails";
            break;
        case Regime::Mixed:
            tb.hypothesis_failure = "mixed regime: neither superior nor inferior";
            break;
    }
    return tb;
}

Criteria resolve_criteria( const RunConfig& cfg )
{
    const auto& c = cfg.criteria;
    Criteria    out;
    out.horizon          = c.horizon.value_or( cfg.horizon );
    out.speed_tol        = c.speed_tol.value_or( 1e-5 * cfg.kernel.sigma() );
    out.vanish_tol       = c.vanish_tol.value_or( 1e-3 * cfg.params.u_carrying() );
    out.limit_tol        = c.limit_tol.value_or( 0.05 );
    out.stop_on_decision = c.stop_on_decision;
    return out;
}

void preflight_window( const RunConfig& cfg, double horizon, std::optional< double > stop_length )
{
    double need = cfg.required_half_window( horizon );
    if ( stop_length )
    {
        const double per_check = cfg.params.mu * cfg.m0() * cfg.kernel.half_first_moment() * cfg.dt
                                 * static_cast< double >( std::max< std::size_t >( cfg.sample_every, 1 ) );
        need = std::min( need, *stop_length + per_check + cfg.kernel.sigma() );
    }
    if ( cfg.x_min > -need || cfg.x_max < need )
    {
        std::ostringstream msg;
        msg.precision( 6 );
        msg << "window [" << cfg.x_min << ", " << cfg.x_max << "] must contain [-" << need << ", " << need
            << "] to hold the fronts up to t = " << horizon;
        throw ValidationError( { msg.str() } );
    }
}

namespace {

double trailing_front_speed( const std::vector< Sample >& samples, double horizon )
{
    if ( samples.size() < 2 )
        return 0.0;
    const double t_end   = samples.back().t;
    const double t_start = t_end - 0.1 * horizon;
    double       speed   = 0.0;
    bool         any     = false;
    for ( std::size_t k = 1; k < samples.size(); ++k )
    {
        if ( samples[k - 1].t < t_start - 1e-12 )
            continue;
        const double dt = samples[k].t - samples[k - 1].t;
        const double vr = ( samples[k].right_front - samples[k - 1].right_front ) / dt;
        const double vl = ( samples[k - 1].left_front - samples[k].left_front ) / dt;
        speed           = std::max( { speed, vr, vl } );
        any             = true;
    }
    if ( !any )
    {
        const auto&  a  = samples[samples.size() - 2];
        const auto&  b  = samples.back();
        const double dt = b.t - a.t;
        speed = std::max( ( b.right_front - a.right_front ) / dt, ( a.left_front - b.left_front ) / dt );
    }
    return speed;
}

std::string fmt( double x )
{
    std::ostringstream os;
    os.precision( 6 );
    os << x;
    return os.str();
}

} // namespace

Classification classify_run( const RunConfig& cfg, const Criteria& crit )
{
    const auto&        p  = cfg.params;
    const TheoryBounds tb = theory_bounds( p, cfg.u0_sup(), cfg.v0.sup(), cfg.kernel, cfg.dx );

    Classification result;
    Outcome&       out = result.outcome;
    out.regime         = tb.regime;
    out.horizon        = crit.horizon;

    if ( tb.regime != Regime::Mixed && !tb.r_star )
    {
        throw InvalidRegime( std::string( to_string( tb.regime ) ) + " regime analysis needs " + *tb.hypothesis_failure );
    }
    const bool                    superior = tb.regime == Regime::Superior;
    const std::optional< double > r_star   = tb.r_star;
    const std::optional< double > decision = superior ? tb.decision_length : std::nullopt;

    RunConfig run_cfg = cfg;
    run_cfg.horizon   = crit.horizon;
    preflight_window( run_cfg, crit.horizon, crit.stop_on_decision ? decision : std::nullopt );

    std::optional< double > crossing;
    RunOptions              options;
    if ( superior )
    {
        options.observer = [&]( const Sample& s, const State& ) {
            if ( !crossing && s.length() > *decision )
            {
                crossing = s.t;
                if ( crit.stop_on_decision )
                    return false;
            }
            return true;
        };
    }
    result.trajectory = run( run_cfg, options );
    const auto& samples = result.trajectory.samples;
    const auto& last    = samples.back();

    Evidence& ev         = out.evidence;
    ev.final_length      = last.length();
    ev.r_star            = r_star;
    ev.decision_length   = decision;
    ev.final_front_speed = trailing_front_speed( samples, crit.horizon );
    ev.sup_u_final       = last.sup_u;
    ev.sup_v_final       = last.sup_v;
    ev.crossing_time     = crossing;
    ev.final_time        = last.t;

    const double ku              = tb.u_carrying;
    const double kv              = tb.v_carrying;
    const double spread_gap_u    = std::abs( last.u_center - ku ) / ku;
    const double spread_gap_v    = std::abs( last.v_center ) / kv;
    const double vanish_gap_u    = std::abs( last.u_center ) / ku;
    const double vanish_gap_v    = std::abs( last.v_center - kv ) / kv;
    const bool   fronts_stopped  = ev.final_front_speed < crit.speed_tol;
    const bool   u_died          = last.sup_u < crit.vanish_tol;

    auto use_gaps = [&]( bool spreading ) {
        ev.u_limit_gap = spreading ? spread_gap_u : vanish_gap_u;
        ev.v_limit_gap = spreading ? spread_gap_v : vanish_gap_v;
    };

    switch ( tb.regime )
    {
        case Regime::Superior:
        {
            if ( crossing )
            {
                out.verdict = Verdict::SpreadingU;
                use_gaps( true );
                out.notes.push_back( "length exceeded the decision length " + fmt( *decision ) + " at t = "
                                     + fmt( *crossing ) );
                if ( ev.u_limit_gap > crit.limit_tol || ev.v_limit_gap > crit.limit_tol )
                    out.notes.push_back( "limit (a1/b1, 0) not yet attained at t = " + fmt( ev.final_time ) );
            }
            else if ( fronts_stopped && u_died && ev.final_length <= *decision + cfg.dx )
            {
                out.verdict = Verdict::VanishingU;
                use_gaps( false );
            }
            else
            {
                use_gaps( true );
                out.notes.push_back( "no decision by t = " + fmt( ev.final_time ) + ": front speed "
                                     + fmt( ev.final_front_speed ) + ", sup u " + fmt( last.sup_u ) );
            }
            break;
        }
        case Regime::Inferior:
        {
            use_gaps( false );
            out.notes.push_back( "inferior regime: classified by the limit (0, a2/c2)" );
            if ( fronts_stopped && u_died && vanish_gap_v <= crit.limit_tol )
                out.verdict = Verdict::VanishingU;
            break;
        }
        case Regime::Mixed:
        {
            use_gaps( false );
            out.notes.push_back( "mixed regime: no long-run theory available, verdict withheld" );
            break;
        }
    }
    return result;
}

Outcome classify_long_run( const RunConfig& cfg, const Criteria& crit )
{
    return classify_run( cfg, crit ).outcome;
}

std::vector< Outcome > classify_sweep( const RunConfig& cfg, const std::vector< double >& mus, const Criteria& crit )
{
    return parallel_map< Outcome >( mus.size(), [&]( std::size_t i ) {
        RunConfig probe = cfg;
        probe.params.mu = mus[i];
        return classify_long_run( probe, crit );
    } );
}

ThresholdEstimate find_mu_star( const RunConfig& cfg_template,
                                double           mu_min,
                                double           mu_max,
                                double           tol,
                                const Criteria&  crit )
{
    if ( !( mu_min > 0.0 ) || !( mu_max > mu_min ) || !( tol > 0.0 ) )
    {
        throw BadBracket( "mu bracket needs 0 < mu_min < mu_max and tol > 0" );
    }
    const auto&        p  = cfg_template.params;
    const TheoryBounds tb = theory_bounds( p, cfg_template.u0_sup(), cfg_template.v0.sup(), cfg_template.kernel,
                                           cfg_template.dx );
    if ( tb.regime != Regime::Superior || !tb.r_star )
    {
        throw InvalidRegime( "threshold search needs a superior u with a1 < d1" );
    }

    ThresholdEstimate est;
    est.r_star          = *tb.r_star;
    est.decision_length = *tb.decision_length;

    Criteria probe_crit         = crit;
    probe_crit.stop_on_decision = true;

    auto probe = [&]( double mu ) {
        RunConfig cfg = cfg_template;
        cfg.params.mu = mu;
        Probe pr{ mu, Verdict::Undecided, probe_crit.horizon, false };
        pr.verdict = classify_long_run( cfg, probe_crit ).verdict;
        if ( pr.verdict == Verdict::Undecided )
        {
            Criteria longer = probe_crit;
            longer.horizon *= 2.0;
            pr.verdict      = classify_long_run( cfg, longer ).verdict;
            pr.horizon_used = longer.horizon;
            pr.doubled      = true;
            if ( pr.verdict == Verdict::Undecided )
                ++est.undecided_failures;
        }
        est.probes.push_back( pr );
        return pr.verdict;
    };

    if ( 2.0 * p.h0 >= *tb.decision_length )
    {
        probe( mu_min );
        est.always_spreading = true;
        est.mu_lo            = 0.0;
        est.mu_hi            = mu_min;
        est.converged        = true;
        return est;
    }

    const Verdict at_min = probe( mu_min );
    const Verdict at_max = probe( mu_max );
    if ( at_min != Verdict::VanishingU || at_max != Verdict::SpreadingU )
    {
        throw BadBracket( "bracket endpoints classified as (" + std::string( to_string( at_min ) ) + ", "
                          + std::string( to_string( at_max ) ) + "), expected (VanishingU, SpreadingU)" );
    }

    double      lo          = mu_min;
    double      hi          = mu_max;
    double      fraction    = 0.5; // position of the next probe in log space
    std::size_t consecutive = 0;
    constexpr std::size_t max_probes = 64;
    while ( hi - lo > tol * hi && est.iterations < max_probes )
    {
        const double mid = std::exp( ( 1.0 - fraction ) * std::log( lo ) + fraction * std::log( hi ) );
        ++est.iterations;
        const Verdict v = probe( mid );
        if ( v == Verdict::SpreadingU )
        {
            hi = mid;
        }
        else if ( v == Verdict::VanishingU )
        {
            lo = mid;
        }
        else
        {
            // Undecided even after doubling: try a different point before giving up.
            if ( ++consecutive >= 3 )
                break;
            fraction = consecutive % 2 == 1 ? 0.25 : 0.75;
            continue;
        }
        consecutive = 0;
        fraction    = 0.5;
    }
    est.mu_lo     = lo;
    est.mu_hi     = hi;
    est.converged = hi - lo <= tol * hi;
    return est;
}

} // namespace frontera
