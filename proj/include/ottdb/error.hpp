#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ottdb {

enum class ErrorCode {
    // catalog / storage
    UnknownTable,
    UnknownColumn,
    ArityMismatch,
    TypeMismatch,
    DuplicateKey,
    ForeignKeyViolation,
    CheckViolation,
    RestrictViolation,
    NoSuchRow,
    SchemaError,
    HeaderMismatch,
    MalformedCsv,
    // sql frontend
    UnterminatedString,
    UnterminatedQuotedIdentifier,
    UnknownCharacter,
    UnexpectedToken,
    TrailingInput,
    InvalidLiteral,
    AmbiguousColumn,
    UngroupedColumn,
    DuplicateAlias,
    UnsupportedJoin,
    // execution
    ArithmeticOverflow,
    Timeout,
    // session
    AuthorizationDenied,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Line and column are 1-based.
struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t offset = 0;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    Error(ErrorCode code, const std::string& message, SourcePos pos);

    ErrorCode code() const noexcept { return code_; }
    const std::optional<SourcePos>& position() const noexcept { return pos_; }

private:
    ErrorCode code_;
    std::optional<SourcePos> pos_;
};

}  // namespace ottdb
