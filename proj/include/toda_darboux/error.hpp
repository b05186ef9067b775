#pragma once

#include <stdexcept>
#include <string>

namespace toda_darboux {

enum class ErrorCode {
    InvalidArgument,
    Size,
    SingularLeadingMinor,
    SamplingFailed,
    PeelBreakdown,
    TableBreakdown,
    Index,
    BlowUp,
    InsufficientSamples,
    Parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `index` carries the offending
/// position when there is one (leading-minor size, row, gamma index, step);
/// it is -1 otherwise.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, long index = -1)
        : std::runtime_error(message), code_(code), index_(index)
    {}

    ErrorCode code() const noexcept { return code_; }
    long index() const noexcept { return index_; }

    /// Same error with a pipeline-stage label prefixed to the message.
    Error with_stage(const std::string& stage) const
    {
        return Error(code_, stage + ": " + what(), index_);
    }

private:
    ErrorCode code_;
    long index_;
};

} // namespace toda_darboux
