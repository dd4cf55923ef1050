#include "ottdb/value.hpp"

#include "ottdb/error.hpp"

#include <charconv>
#include <functional>
#include <limits>

namespace ottdb {

std::string_view to_string(ColumnType type) {
    switch (type) {
        case ColumnType::Int: return "INT";
        case ColumnType::Decimal: return "DECIMAL";
        case ColumnType::Text: return "TEXT";
        case ColumnType::Bool: return "BOOL";
    }
    return "?";
}

namespace {

constexpr __int128 kI64Min = std::numeric_limits<std::int64_t>::min();
constexpr __int128 kI64Max = std::numeric_limits<std::int64_t>::max();

bool parse_int64(std::string_view text, std::int64_t& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

Decimal Decimal::from_int(std::int64_t v) {
    __int128 scaled = static_cast<__int128>(v) * kScale;
    if (scaled < kI64Min || scaled > kI64Max) {
        throw Error(ErrorCode::ArithmeticOverflow, "integer " + std::to_string(v) + " out of decimal range");
    }
    return Decimal{static_cast<std::int64_t>(scaled)};
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        i = 1;
    }
    __int128 whole = 0;
    std::size_t whole_digits = 0;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++whole_digits) {
        whole = whole * 10 + (text[i] - '0');
        if (whole > kI64Max) return std::nullopt;
    }
    __int128 frac = 0;
    int frac_digits = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            if (frac_digits == kDigits) {
                if (text[i] != '0') return std::nullopt;  // more precision than we store
                continue;
            }
            frac = frac * 10 + (text[i] - '0');
            ++frac_digits;
        }
        if (frac_digits == 0 && whole_digits == 0) return std::nullopt;
    }
    if (i != text.size() || (whole_digits == 0 && frac_digits == 0)) return std::nullopt;
    for (int d = frac_digits; d < kDigits; ++d) frac *= 10;
    __int128 units = whole * kScale + frac;
    if (negative) units = -units;
    if (units < kI64Min || units > kI64Max) return std::nullopt;
    return Decimal{static_cast<std::int64_t>(units)};
}

std::string Decimal::to_string() const {
    __int128 v = units;
    bool negative = v < 0;
    if (negative) v = -v;
    auto whole = static_cast<unsigned long long>(v / kScale);
    auto frac = static_cast<unsigned long long>(v % kScale);
    std::string out = negative ? "-" : "";
    out += std::to_string(whole);
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, kDigits - digits.size(), '0');
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
        out += '.';
        out += digits;
    }
    return out;
}

__int128 Value::scaled() const {
    switch (type()) {
        case ColumnType::Int: return static_cast<__int128>(as_int()) * Decimal::kScale;
        case ColumnType::Decimal: return as_decimal().units;
        case ColumnType::Bool: return as_bool() ? Decimal::kScale : 0;
        case ColumnType::Text: break;
    }
    throw Error(ErrorCode::TypeMismatch, "text value used as a number");
}

std::string Value::to_string() const {
    switch (type()) {
        case ColumnType::Int: return std::to_string(as_int());
        case ColumnType::Decimal: return as_decimal().to_string();
        case ColumnType::Text: return as_text();
        case ColumnType::Bool: return as_bool() ? "1" : "0";
    }
    return {};
}

std::optional<Value> Value::parse(ColumnType type, std::string_view text) {
    switch (type) {
        case ColumnType::Int: {
            std::int64_t v = 0;
            if (!parse_int64(text, v)) return std::nullopt;
            return Value(v);
        }
        case ColumnType::Decimal: {
            auto d = Decimal::parse(text);
            if (!d) return std::nullopt;
            return Value(*d);
        }
        case ColumnType::Text:
            return Value(std::string(text));
        case ColumnType::Bool:
            if (text == "1") return Value(true);
            if (text == "0") return Value(false);
            return std::nullopt;
    }
    return std::nullopt;
}

std::strong_ordering compare(const Value& a, const Value& b) {
    const bool a_text = a.is_text();
    const bool b_text = b.is_text();
    if (a_text != b_text) return a_text ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a_text) {
        int c = a.as_text().compare(b.as_text());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    if (a.is_int() && b.is_int()) return a.as_int() <=> b.as_int();
    __int128 x = a.scaled();
    __int128 y = b.scaled();
    return x < y ? std::strong_ordering::less : x > y ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool identical(const Value& a, const Value& b) { return a.storage() == b.storage(); }

std::size_t ValueHash::operator()(const Value& v) const {
    if (v.is_text()) return std::hash<std::string>{}(v.as_text());
    __int128 s = v.scaled();
    auto lo = static_cast<std::uint64_t>(s);
    auto hi = static_cast<std::uint64_t>(s >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9E3779B97F4A7C15ull));
}

std::strong_ordering compare_rows(const Row& a, const Row& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return a.size() <=> b.size();
}

std::size_t RowHash::operator()(const Row& row) const {
    std::size_t h = 0xcbf29ce484222325ull;
    ValueHash vh;
    for (const auto& v : row) h = (h ^ vh(v)) * 0x100000001b3ull;
    return h;
}

}  // namespace ottdb
