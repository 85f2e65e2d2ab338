#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace frontera {

/// Base class for every error raised by the library. Each subclass maps to
/// one failure kind so callers (the CLI in particular) can pick exit codes.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Configuration or input that cannot be used as given.
class UsageError : public Error
{
  public:
    using Error::Error;
};

/// Failure of a numerical procedure (stability, positivity, convergence).
class NumericalError : public Error
{
  public:
    using Error::Error;
};

class NonConformingWindow : public UsageError
{
  public:
    using UsageError::UsageError;
};

class FrontOutsideWindow : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

class SupportMismatch : public UsageError
{
  public:
    using UsageError::UsageError;
};

class EmptyInterval : public UsageError
{
  public:
    using UsageError::UsageError;
};

class ZeroField : public UsageError
{
  public:
    using UsageError::UsageError;
};

class InvalidRegime : public UsageError
{
  public:
    using UsageError::UsageError;
};

class BracketFailure : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

class StabilityViolation : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

class PositivityLoss : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

class BadBracket : public UsageError
{
  public:
    using UsageError::UsageError;
};

class SampleMismatch : public UsageError
{
  public:
    using UsageError::UsageError;
};

class IoError : public Error
{
  public:
    using Error::Error;
};

class ParseError : public UsageError
{
  public:
    ParseError( std::size_t position, const std::string& message )
    : UsageError( "parse error at byte " + std::to_string( position ) + ": " + message )
    , position_( position )
    {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// All invariant violations of a configuration, reported together.
class ValidationError : public UsageError
{
  public:
    explicit ValidationError( std::vector< std::string > problems )
    : UsageError( join( problems ) )
    , problems_( std::move( problems ) )
    {}

    const std::vector< std::string >& problems() const { return problems_; }

  private:
    static std::string join( const std::vector< std::string >& problems )
    {
        std::string out = "invalid configuration:";
        for ( const auto& p : problems )
        {
            out += "\n  - " + p;
        }
        return out;
    }

    std::vector< std::string > problems_;
};

} // namespace frontera
