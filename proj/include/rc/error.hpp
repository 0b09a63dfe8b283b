#pragma once

#include <stdexcept>
#include <string>

namespace rc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RC_DECLARE_ERROR(Name)                                   \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

RC_DECLARE_ERROR(DimensionMismatch);
RC_DECLARE_ERROR(InvalidArgument);
RC_DECLARE_ERROR(DegenerateMatrix);
RC_DECLARE_ERROR(NoConvergence);
RC_DECLARE_ERROR(InputOutOfRange);
RC_DECLARE_ERROR(IndivisibleClusters);
RC_DECLARE_ERROR(LengthMismatch);
RC_DECLARE_ERROR(SingularSystem);
RC_DECLARE_ERROR(Diverged);
RC_DECLARE_ERROR(UnsupportedDegree);
RC_DECLARE_ERROR(ZeroVariance);
RC_DECLARE_ERROR(InsufficientLengths);
RC_DECLARE_ERROR(ConfigError);

#undef RC_DECLARE_ERROR

} // namespace rc
