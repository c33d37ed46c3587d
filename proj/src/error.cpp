#include "slfmc/error.hpp"

namespace slfmc {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "syntax";
        case ErrorCode::UnknownFunction: return "unknown_function";
        case ErrorCode::ArityMismatch: return "arity_mismatch";
        case ErrorCode::UnboundVariable: return "unbound_variable";
        case ErrorCode::TableMiss: return "table_miss";
        case ErrorCode::OutOfRange: return "out_of_range";
        case ErrorCode::Schema: return "schema";
        case ErrorCode::NonTotalTransition: return "non_total_transition";
        case ErrorCode::DanglingReference: return "dangling_reference";
        case ErrorCode::StrategyDomain: return "strategy_domain";
        case ErrorCode::ModeMismatch: return "mode_mismatch";
        case ErrorCode::DepthInsufficient: return "depth_insufficient";
        case ErrorCode::OracleCap: return "oracle_cap";
        case ErrorCode::ResourceCap: return "resource_cap";
        case ErrorCode::AlphabetMismatch: return "alphabet_mismatch";
        case ErrorCode::NotInFragment: return "not_in_fragment";
        case ErrorCode::OpenCombination: return "open_combination";
        case ErrorCode::TableDomain: return "table_domain";
        case ErrorCode::CertificateRegion: return "certificate_region";
        case ErrorCode::EmptyAlphabet: return "empty_alphabet";
        case ErrorCode::Io: return "io";
        case ErrorCode::Usage: return "usage";
    }
    return "unknown";
}

}  // namespace slfmc
