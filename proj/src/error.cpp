#include "ottdb/error.hpp"

namespace ottdb {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownTable: return "UnknownTable";
        case ErrorCode::UnknownColumn: return "UnknownColumn";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::DuplicateKey: return "DuplicateKey";
        case ErrorCode::ForeignKeyViolation: return "ForeignKeyViolation";
        case ErrorCode::CheckViolation: return "CheckViolation";
        case ErrorCode::RestrictViolation: return "RestrictViolation";
        case ErrorCode::NoSuchRow: return "NoSuchRow";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::HeaderMismatch: return "HeaderMismatch";
        case ErrorCode::MalformedCsv: return "MalformedCsv";
        case ErrorCode::UnterminatedString: return "UnterminatedString";
        case ErrorCode::UnterminatedQuotedIdentifier: return "UnterminatedQuotedIdentifier";
        case ErrorCode::UnknownCharacter: return "UnknownCharacter";
        case ErrorCode::UnexpectedToken: return "UnexpectedToken";
        case ErrorCode::TrailingInput: return "TrailingInput";
        case ErrorCode::InvalidLiteral: return "InvalidLiteral";
        case ErrorCode::AmbiguousColumn: return "AmbiguousColumn";
        case ErrorCode::UngroupedColumn: return "UngroupedColumn";
        case ErrorCode::DuplicateAlias: return "DuplicateAlias";
        case ErrorCode::UnsupportedJoin: return "UnsupportedJoin";
        case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::AuthorizationDenied: return "AuthorizationDenied";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, SourcePos pos)
    : std::runtime_error(message), code_(code), pos_(pos) {}

}  // namespace ottdb
