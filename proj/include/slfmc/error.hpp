#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slfmc {

enum class ErrorCode {
    Syntax,
    UnknownFunction,
    ArityMismatch,
    UnboundVariable,
    TableMiss,
    OutOfRange,
    Schema,
    NonTotalTransition,
    DanglingReference,
    StrategyDomain,
    ModeMismatch,
    DepthInsufficient,
    OracleCap,
    ResourceCap,
    AlphabetMismatch,
    NotInFragment,
    OpenCombination,
    TableDomain,
    CertificateRegion,
    EmptyAlphabet,
    Io,
    Usage,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library. The code is machine-readable and is
/// what the CLI prints in its error report.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace slfmc
