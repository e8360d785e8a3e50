#ifndef PRODFN_ERRORS_HPP
#define PRODFN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prodfn {

// Broad failure classes, mapped to CLI exit codes (see tools/).
enum class ErrorClass {
    config,     // exit 2
    data,       // exit 3
    numerical,  // exit 4
    io          // exit 5
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

// --- data errors -----------------------------------------------------------

struct NonPositiveValue : Error {
    explicit NonPositiveValue(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct NonFiniteValue : Error {
    explicit NonFiniteValue(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct SeriesTooShort : Error {
    explicit SeriesTooShort(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct EmptyIntersection : Error {
    explicit EmptyIntersection(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct EmptyDataset : Error {
    explicit EmptyDataset(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct MissingInvestment : Error {
    explicit MissingInvestment(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct DiscontinuousSpan : Error {
    explicit DiscontinuousSpan(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct TooFewBenchmarks : Error {
    explicit TooFewBenchmarks(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(ErrorClass::data, "line " + std::to_string(line) + ", column " +
                                      std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

struct MissingColumn : Error {
    explicit MissingColumn(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct NonNumericCell : Error {
    explicit NonNumericCell(const std::string& what) : Error(ErrorClass::data, what) {}
};

struct DuplicateYear : Error {
    explicit DuplicateYear(const std::string& what) : Error(ErrorClass::data, what) {}
};

// --- numerical errors ------------------------------------------------------

struct SingularDesign : Error {
    explicit SingularDesign(const std::string& what) : Error(ErrorClass::numerical, what) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error(ErrorClass::numerical, what) {}
};

struct InsufficientObservations : Error {
    explicit InsufficientObservations(const std::string& what)
        : Error(ErrorClass::numerical, what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(ErrorClass::numerical, what) {}
};

struct RhoOutOfRange : Error {
    explicit RhoOutOfRange(const std::string& what) : Error(ErrorClass::numerical, what) {}
};

struct NonPositiveLongRunVariance : Error {
    explicit NonPositiveLongRunVariance(const std::string& what)
        : Error(ErrorClass::numerical, what) {}
};

struct Inconclusive : Error {
    explicit Inconclusive(const std::string& what) : Error(ErrorClass::numerical, what) {}
};

struct ZeroVariance : Error {
    explicit ZeroVariance(const std::string& what) : Error(ErrorClass::numerical, what) {}
};

struct AllZeroResiduals : Error {
    explicit AllZeroResiduals(const std::string& what) : Error(ErrorClass::numerical, what) {}
};

// --- config errors ---------------------------------------------------------

struct SchemaMismatch : Error {
    explicit SchemaMismatch(const std::string& what) : Error(ErrorClass::config, what) {}
};

struct NoTrendTerm : Error {
    explicit NoTrendTerm(const std::string& what) : Error(ErrorClass::config, what) {}
};

struct UnsupportedSampleSize : Error {
    explicit UnsupportedSampleSize(const std::string& what) : Error(ErrorClass::config, what) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& what) : Error(ErrorClass::config, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorClass::config, what) {}
};

// --- io errors --------------------------------------------------------------

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorClass::io, what) {}
};

}  // namespace prodfn

#endif  // PRODFN_ERRORS_HPP
