#pragma once

#include "frontera/kernel.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace frontera {

enum class Regime
{
    Superior, // a1/a2 > max(b1/b2, c1/c2)
    Inferior, // a1/a2 < min(b1/b2, c1/c2)
    Mixed
};

std::string_view to_string( Regime regime );

/// The ten model constants of the competition system.
struct CompetitionParams
{
    double d1 = 3.0;
    double d2 = 1.0;
    double a1 = 2.5;
    double b1 = 1.0;
    double c1 = 1.0;
    double a2 = 1.0;
    double b2 = 2.0;
    double c2 = 2.0;
    double mu = 1.0;
    double h0 = 0.15;

    Regime regime() const;
    double u_carrying() const { return a1 / b1; }
    double v_carrying() const { return a2 / c2; }

    /// Names of fields that are not strictly positive and finite.
    std::vector< std::string > non_positive_fields() const;

    friend bool operator==( const CompetitionParams&, const CompetitionParams& ) = default;
};

enum class U0Shape
{
    Cosine,   // A cos(pi x / (2 h0))
    Parabolic // A (1 - (x/h0)^2)
};

struct U0Profile
{
    double  amplitude = 1.0;
    U0Shape shape     = U0Shape::Cosine;

    double value_at( double x, double h0 ) const;

    friend bool operator==( const U0Profile&, const U0Profile& ) = default;
};

/// v0 either constant or tabulated (linear interpolation, constant beyond the table).
struct V0Profile
{
    struct Constant
    {
        double value = 0.5;
        friend bool operator==( const Constant&, const Constant& ) = default;
    };
    struct Table
    {
        std::vector< double > x;
        std::vector< double > v;
        friend bool operator==( const Table&, const Table& ) = default;
    };

    std::variant< Constant, Table > data = Constant{};

    double value_at( double x ) const;
    double sup() const;
    double inf() const;

    friend bool operator==( const V0Profile&, const V0Profile& ) = default;
};

/// Thresholds for long-run classification. Unset tolerances resolve to
/// speed 1e-5 sigma, vanish 1e-3 a1/b1 and limit 5% relative.
struct ClassifyCriteria
{
    std::optional< double > horizon;
    std::optional< double > speed_tol;
    std::optional< double > vanish_tol;
    std::optional< double > limit_tol;
    bool                    stop_on_decision = false;

    friend bool operator==( const ClassifyCriteria&, const ClassifyCriteria& ) = default;
};

struct OutputPaths
{
    std::string timeseries;      // empty: not written
    std::string snapshot_prefix; // snapshot k goes to <prefix><k>.csv

    friend bool operator==( const OutputPaths&, const OutputPaths& ) = default;
};

struct RunConfig
{
    CompetitionParams     params;
    Kernel                kernel = Kernel::uniform_box( 1.0 );
    U0Profile             u0;
    V0Profile             v0;
    double                x_min        = -64.0;
    double                x_max        = 64.0;
    double                dx           = 0.05;
    double                dt           = 0.01;
    double                horizon      = 100.0;
    std::size_t           sample_every = 10;
    std::vector< double > snapshot_times;
    std::size_t           snapshot_every = 0; // in samples; 0 disables
    ClassifyCriteria      criteria;
    OutputPaths           output;

    std::size_t steps() const;
    double      u0_sup() const { return u0.amplitude; }

    /// M0 = max(||u0||, ||v0||, K0), K0 = max(a1/b1, a2/c2).
    double m0() const;

    /// 0.5 / (d1 + d2 + a1 + a2 + (b1 + c1 + b2 + c2) M0).
    double stability_bound() const;

    /// Half-width that rigorously contains the fronts up to `horizon`:
    /// h0 + mu M0 m1 T + sigma, with m1 the kernel's half first moment.
    double required_half_window( double horizon_used ) const;
};

bool kernels_equal( const Kernel& a, const Kernel& b );

} // namespace frontera
