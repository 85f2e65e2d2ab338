#include "frontera/verify.hpp"

#include "frontera/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace frontera {

namespace {

std::string fmt( double x )
{
    std::ostringstream os;
    os.precision( 6 );
    os << x;
    return os.str();
}

void note_worst( double gap, double t, double& worst, double& worst_t )
{
    if ( gap > worst )
    {
        worst   = gap;
        worst_t = t;
    }
}

const State* snapshot_at( const Trajectory& tr, double t )
{
    for ( const auto& s : tr.snapshots )
        if ( s.t == t )
            return &s;
    return nullptr;
}

} // namespace

bool OrderReport::passed() const
{
    return std::all_of( relations.begin(), relations.end(), []( const OrderRelation& r ) { return r.passed; } );
}

OrderReport check_order( const Trajectory& lower, const Trajectory& upper, double tol )
{
    if ( lower.samples.size() != upper.samples.size() )
    {
        throw SampleMismatch( "sample counts differ: " + std::to_string( lower.samples.size() ) + " vs "
                              + std::to_string( upper.samples.size() ) );
    }
    const double time_tol = 1e-9 * std::max( lower.dt, upper.dt );
    for ( std::size_t k = 0; k < lower.samples.size(); ++k )
    {
        if ( std::abs( lower.samples[k].t - upper.samples[k].t ) > time_tol )
            throw SampleMismatch( "sample " + std::to_string( k ) + " times differ: " + fmt( lower.samples[k].t ) + " vs "
                                  + fmt( upper.samples[k].t ) );
    }

    OrderReport report;
    report.tol       = tol;
    report.relations = { OrderRelation{ "u<=u_upper" }, OrderRelation{ "v>=v_upper" }, OrderRelation{ "g>=g_upper" },
                         OrderRelation{ "h<=h_upper" } };
    report.samples_compared = lower.samples.size();
    report.per_sample.reserve( lower.samples.size() );

    for ( std::size_t k = 0; k < lower.samples.size(); ++k )
    {
        const Sample& lo = lower.samples[k];
        const Sample& up = upper.samples[k];
        std::array< double, 4 > gap{
            std::max( { 0.0, lo.sup_u - up.sup_u, lo.u_center - up.u_center } ),
            std::max( { 0.0, up.sup_v - lo.sup_v, up.v_center - lo.v_center } ),
            std::max( 0.0, up.left_front - lo.left_front ),
            std::max( 0.0, lo.right_front - up.right_front ),
        };

        const State* ls = snapshot_at( lower, lo.t );
        const State* us = snapshot_at( upper, up.t );
        if ( ls && us )
        {
            if ( ls->u.values.size() != us->u.values.size() || ls->v.values.size() != us->v.values.size() )
                throw SampleMismatch( "snapshots at t = " + fmt( lo.t ) + " live on different grids" );
            for ( std::size_t i = 0; i < ls->u.values.size(); ++i )
                gap[0] = std::max( gap[0], ls->u.values[i] - us->u.values[i] );
            for ( std::size_t i = 0; i < ls->v.values.size(); ++i )
                gap[1] = std::max( gap[1], us->v.values[i] - ls->v.values[i] );
            ++report.snapshots_compared;
        }

        for ( std::size_t r = 0; r < 4; ++r )
            note_worst( gap[r], lo.t, report.relations[r].worst_gap, report.relations[r].worst_time );
        report.per_sample.push_back( gap );
    }
    for ( auto& r : report.relations )
        r.passed = r.worst_gap <= tol;
    return report;
}

bool AuditReport::passed() const
{
    return std::all_of( checks.begin(), checks.end(), []( const AuditCheck& c ) { return c.passed; } );
}

const AuditCheck* AuditReport::find( std::string_view name ) const
{
    for ( const auto& c : checks )
        if ( c.name == name )
            return &c;
    return nullptr;
}

AuditReport check_state_invariants( const Trajectory&        tr,
                                    const CompetitionParams& p,
                                    double                   tol,
                                    const AuditOptions&      options )
{
    AuditReport report;
    report.tol = tol;
    AuditCheck positivity{ "positivity" };
    AuditCheck interior{ "interior_positivity" };
    AuditCheck outside{ "zero_outside_fronts" };
    AuditCheck bounds{ "sup_bounds" };
    AuditCheck envelope{ "envelope_domination" };
    AuditCheck monotone{ "front_monotonicity" };
    AuditCheck symmetry{ "symmetry" };
    symmetry.applicable = options.check_symmetry;

    // Pointwise checks on every stored state.
    std::vector< const State* > states;
    for ( const auto& s : tr.snapshots )
        states.push_back( &s );
    if ( !tr.final_state.u.values.empty() )
        states.push_back( &tr.final_state );

    for ( const State* s : states )
    {
        const auto& u = s->u.values;
        const auto& v = s->v.values;
        for ( std::size_t i = 0; i < u.size(); ++i )
        {
            const double x = tr.x_min + static_cast< double >( i ) * tr.dx;
            note_worst( -u[i], s->t, positivity.residual, positivity.time );
            if ( i < v.size() )
                note_worst( -v[i], s->t, positivity.residual, positivity.time );
            if ( x <= s->left_front || x >= s->right_front )
                note_worst( std::abs( u[i] ), s->t, outside.residual, outside.time );
            else if ( x >= s->left_front + tr.dx && x <= s->right_front - tr.dx && !( u[i] > 0.0 ) )
                note_worst( interior.residual + 1.0, s->t, interior.residual, interior.time ); // counts nodes
        }
        if ( options.check_symmetry )
        {
            note_worst( std::abs( s->left_front + s->right_front ), s->t, symmetry.residual, symmetry.time );
            const std::size_t n = u.size();
            for ( std::size_t i = 0; i < n / 2; ++i )
            {
                note_worst( std::abs( u[i] - u[n - 1 - i] ), s->t, symmetry.residual, symmetry.time );
                if ( v.size() == n )
                    note_worst( std::abs( v[i] - v[n - 1 - i] ), s->t, symmetry.residual, symmetry.time );
            }
        }
    }

    if ( !tr.samples.empty() )
    {
        const double u0_sup  = tr.samples.front().sup_u;
        const double v0_sup  = tr.samples.front().sup_v;
        const double u_bound = std::max( u0_sup, p.a1 / p.b1 );
        const double v_bound = std::max( v0_sup, p.a2 / p.c2 );
        const double h0      = tr.samples.front().right_front;
        const double g0      = tr.samples.front().left_front;
        for ( std::size_t k = 0; k < tr.samples.size(); ++k )
        {
            const Sample& s = tr.samples[k];
            note_worst( s.sup_u - u_bound, s.t, bounds.residual, bounds.time );
            note_worst( s.sup_v - v_bound, s.t, bounds.residual, bounds.time );
            note_worst( s.sup_u - logistic_envelope( s.t, p.a1, p.b1, u0_sup ), s.t, envelope.residual, envelope.time );
            note_worst( s.sup_v - logistic_envelope( s.t, p.a2, p.c2, v0_sup ), s.t, envelope.residual, envelope.time );
            note_worst( h0 - s.right_front, s.t, monotone.residual, monotone.time );
            note_worst( s.left_front - g0, s.t, monotone.residual, monotone.time );
            if ( k > 0 )
            {
                const Sample& prev = tr.samples[k - 1];
                note_worst( prev.right_front - s.right_front, s.t, monotone.residual, monotone.time );
                note_worst( s.left_front - prev.left_front, s.t, monotone.residual, monotone.time );
                if ( !( s.t > prev.t ) )
                    note_worst( std::max( prev.t - s.t, 1e-300 ), s.t, monotone.residual, monotone.time );
            }
        }
    }

    positivity.passed = positivity.residual <= 0.0;
    interior.passed   = interior.residual <= 0.0;
    outside.passed    = outside.residual <= 0.0;
    bounds.passed     = bounds.residual <= tol;
    envelope.passed   = envelope.residual <= tol;
    monotone.passed   = monotone.residual <= 0.0;
    symmetry.passed   = !symmetry.applicable || symmetry.residual <= tol;

    report.checks = { positivity, interior, outside, bounds, envelope, monotone, symmetry };
    return report;
}

DichotomyReport check_dichotomy_consistency( const Outcome& out, const Trajectory& tr, double r_star, double tol )
{
    DichotomyReport report;
    std::optional< double > crossing;
    for ( const auto& s : tr.samples )
    {
        if ( s.length() > r_star )
        {
            crossing = s.t;
            break;
        }
    }
    const double final_length = tr.samples.empty() ? 0.0 : tr.samples.back().length();

    switch ( out.verdict )
    {
        case Verdict::Undecided:
            report.notes.push_back( "verdict Undecided: no consistency rule applies" );
            return report;
        case Verdict::VanishingU:
            if ( final_length > r_star + tol )
            {
                report.passed = false;
                report.notes.push_back( "VanishingU but final length " + fmt( final_length ) + " exceeds R* + tol = "
                                        + fmt( r_star + tol ) );
            }
            break;
        case Verdict::SpreadingU:
            break;
    }
    if ( crossing )
    {
        if ( out.verdict != Verdict::SpreadingU )
        {
            report.passed = false;
            report.notes.push_back( "length exceeded R* at t = " + fmt( *crossing ) + " but verdict is "
                                    + std::string( to_string( out.verdict ) ) );
        }
        else
        {
            report.notes.push_back( "length crossed R* = " + fmt( r_star ) + " at t = " + fmt( *crossing ) );
        }
    }
    return report;
}

} // namespace frontera
