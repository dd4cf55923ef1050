#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ottdb {

enum class ColumnType { Int, Decimal, Text, Bool };

std::string_view to_string(ColumnType type);

inline bool is_numeric(ColumnType type) { return type != ColumnType::Text; }

/// Int, Decimal and Bool compare with each other numerically; Text only with Text.
inline bool comparable(ColumnType a, ColumnType b) { return is_numeric(a) == is_numeric(b); }

/// Fixed-point decimal with six fractional digits.
struct Decimal {
    static constexpr std::int64_t kScale = 1'000'000;
    static constexpr int kDigits = 6;

    std::int64_t units = 0;

    static Decimal from_int(std::int64_t v);  // throws ArithmeticOverflow
    static std::optional<Decimal> parse(std::string_view text);

    /// Shortest form: "10", "7.5", "-0.25".
    std::string to_string() const;

    friend bool operator==(const Decimal&, const Decimal&) = default;
};

class Value {
public:
    using Storage = std::variant<std::int64_t, Decimal, std::string, bool>;

    Value() : data_(std::int64_t{0}) {}
    Value(std::int64_t v) : data_(v) {}
    Value(int v) : data_(std::int64_t{v}) {}
    Value(Decimal v) : data_(v) {}
    Value(std::string v) : data_(std::move(v)) {}
    Value(const char* v) : data_(std::string(v)) {}
    Value(bool v) : data_(v) {}

    ColumnType type() const { return static_cast<ColumnType>(data_.index()); }

    bool is_int() const { return std::holds_alternative<std::int64_t>(data_); }
    bool is_decimal() const { return std::holds_alternative<Decimal>(data_); }
    bool is_text() const { return std::holds_alternative<std::string>(data_); }
    bool is_bool() const { return std::holds_alternative<bool>(data_); }

    std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
    Decimal as_decimal() const { return std::get<Decimal>(data_); }
    const std::string& as_text() const { return std::get<std::string>(data_); }
    bool as_bool() const { return std::get<bool>(data_); }

    /// Numeric value scaled by Decimal::kScale. Precondition: numeric type.
    __int128 scaled() const;

    /// Canonical text form used by CSV and result rendering (booleans as 0/1).
    std::string to_string() const;

    /// Parses the canonical text form for a column of the given type.
    static std::optional<Value> parse(ColumnType type, std::string_view text);

    const Storage& storage() const { return data_; }

private:
    Storage data_;
};

/// Total order: all numeric values (compared after coercion) sort before text.
std::strong_ordering compare(const Value& a, const Value& b);

inline bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
inline std::strong_ordering operator<=>(const Value& a, const Value& b) { return compare(a, b); }

/// Exact representational identity (type and payload), unlike operator==.
bool identical(const Value& a, const Value& b);

struct ValueHash {
    std::size_t operator()(const Value& v) const;
};

using Row = std::vector<Value>;

std::strong_ordering compare_rows(const Row& a, const Row& b);

struct RowHash {
    std::size_t operator()(const Row& row) const;
};

struct RowEq {
    bool operator()(const Row& a, const Row& b) const { return compare_rows(a, b) == 0; }
};

}  // namespace ottdb
