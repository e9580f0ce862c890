#ifndef RECURVE_ERRORS_HPP
#define RECURVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace recurve {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A linear-algebra or series computation ran out of certified precision.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

// Precondition on available precision not met.
struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& msg) : Error(msg) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

// A zero divisor was hit while inverting in a number field or etale
// algebra presented by a reducible polynomial.
struct ReducibleExtension : Error {
    explicit ReducibleExtension(const std::string& msg) : Error(msg) {}
};

struct NonUnitLeadingCoefficient : Error {
    explicit NonUnitLeadingCoefficient(const std::string& msg) : Error(msg) {}
};

struct KernelDimensionError : Error {
    explicit KernelDimensionError(const std::string& msg) : Error(msg) {}
};

struct SingularConic : Error {
    explicit SingularConic(const std::string& msg) : Error(msg) {}
};

struct NoValidSolution : Error {
    explicit NoValidSolution(const std::string& msg) : Error(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct ParityFailure : Error {
    explicit ParityFailure(const std::string& msg) : Error(msg) {}
};

struct PointNotOnConic : Error {
    explicit PointNotOnConic(const std::string& msg) : Error(msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg) : Error(msg) {}
};

struct BadInitialRoot : Error {
    explicit BadInitialRoot(const std::string& msg) : Error(msg) {}
};

struct DegenerateParametrization : Error {
    explicit DegenerateParametrization(const std::string& msg) : Error(msg) {}
};

struct SingularAtPoint : Error {
    explicit SingularAtPoint(const std::string& msg) : Error(msg) {}
};

struct InconsistentInput : Error {
    explicit InconsistentInput(const std::string& msg) : Error(msg) {}
};

struct UnknownObject : Error {
    explicit UnknownObject(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace recurve

#endif
