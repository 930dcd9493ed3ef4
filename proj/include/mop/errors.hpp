#ifndef MOP_ERRORS_HPP
#define MOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mop {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem-domain failures: the input is well-formed but the requested
// object does not exist (or is not unique).
struct DomainFailure : Error {
    using Error::Error;
};

// Numeric failures: the object may exist but could not be computed at the
// requested precision / within the iteration budget.
struct NumericFailure : Error {
    using Error::Error;
};

struct SingularSystem : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct NonNormalIndex : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct NoSolution : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct NonUnique : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct TableExhausted : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct UnsupportedForTable : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct DomainError : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct InsufficientTerms : DomainFailure {
    using DomainFailure::DomainFailure;
};
struct FormatError : DomainFailure {
    using DomainFailure::DomainFailure;
};

struct NonConvergence : NumericFailure {
    using NumericFailure::NumericFailure;
};
struct IllConditioned : NumericFailure {
    using NumericFailure::NumericFailure;
};
struct NewtonDivergence : NumericFailure {
    using NumericFailure::NumericFailure;
};
struct BranchAmbiguity : NumericFailure {
    using NumericFailure::NumericFailure;
};

} // namespace mop

#endif // MOP_ERRORS_HPP
