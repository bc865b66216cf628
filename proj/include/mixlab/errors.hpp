#pragma once

#include <stdexcept>
#include <string>

namespace mixlab {

// One exception class per rejection reason so callers and tests can catch
// precisely the failure they expect.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define MIXLAB_ERROR(Name)                                             \
    struct Name : Error {                                              \
        explicit Name(const std::string& msg) : Error(msg) {}          \
        const char* kind() const noexcept override { return #Name; }   \
    }

MIXLAB_ERROR(OutOfRange);
MIXLAB_ERROR(SelfLoop);
MIXLAB_ERROR(DuplicateEdge);
MIXLAB_ERROR(Disconnected);
MIXLAB_ERROR(EmptyGraph);
MIXLAB_ERROR(Unreachable);
MIXLAB_ERROR(BadParams);
MIXLAB_ERROR(SizeCapExceeded);
MIXLAB_ERROR(RejectionBudgetExceeded);
MIXLAB_ERROR(OddDegreeSum);
MIXLAB_ERROR(DegenerateKernel);
MIXLAB_ERROR(TooLarge);
MIXLAB_ERROR(DimensionMismatch);
MIXLAB_ERROR(NotATree);
MIXLAB_ERROR(NotCentered);
MIXLAB_ERROR(BadBoundary);
MIXLAB_ERROR(NoConvergence);
MIXLAB_ERROR(TooFewPoints);
MIXLAB_ERROR(ParseError);

#undef MIXLAB_ERROR

}  // namespace mixlab
