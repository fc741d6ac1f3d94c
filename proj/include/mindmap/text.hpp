#pragma once
// Locale-independent text helpers shared by the snapshot format, the DOT
// exporter and the report writers: hexadecimal float round-tripping,
// fixed/general decimal formatting, percent-encoding of raw tokens.

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mindmap::text {

// Shortest hexadecimal form that round-trips the exact bit pattern.
inline std::string hex_double(double value) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::hex);
    return std::string(buf, r.ptr);
}

inline double parse_hex_double(std::string_view s) {
    double value = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), value, std::chars_format::hex);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::invalid_argument("bad hexadecimal float: '" + std::string(s) + "'");
    return value;
}

// Fixed 4-decimal form used for DOT edge labels.
inline std::string fixed4(double value) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 4);
    return std::string(buf, r.ptr);
}

// Six significant digits, trailing zeros dropped; the report float format.
inline std::string sig6(double value) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
    return std::string(buf, r.ptr);
}

inline std::string format_u64(std::uint64_t value) {
    char buf[24];
    auto r = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, r.ptr);
}

inline std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t value = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), value);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::invalid_argument("bad unsigned integer: '" + std::string(s) + "'");
    return value;
}

inline std::int64_t parse_i64(std::string_view s) {
    std::int64_t value = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), value);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer: '" + std::string(s) + "'");
    return value;
}

inline double parse_double(std::string_view s) {
    double value = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), value);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::invalid_argument("bad number: '" + std::string(s) + "'");
    return value;
}

namespace detail {
inline constexpr char kHexDigits[] = "0123456789ABCDEF";

inline int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace detail

// Percent-encode every byte the predicate selects ('%' is always encoded).
template <typename Pred>
std::string percent_encode(std::string_view raw, Pred needs_escape) {
    std::string out;
    out.reserve(raw.size());
    for (unsigned char c : raw) {
        if (c == '%' || needs_escape(c)) {
            out.push_back('%');
            out.push_back(detail::kHexDigits[c >> 4]);
            out.push_back(detail::kHexDigits[c & 0xF]);
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

// Encoding used for tokens inside tab-separated snapshot lines.
inline std::string encode_token(std::string_view raw) {
    return percent_encode(raw, [](unsigned char c) {
        return c == '\t' || c == '\n' || c == '\r';
    });
}

// Encoding used for signature files: one signature per line, so every
// non-printable byte (and a leading '#', handled by the writer) is escaped.
inline std::string encode_printable(std::string_view raw) {
    return percent_encode(raw, [](unsigned char c) { return c < 0x20 || c == 0x7F; });
}

inline std::string percent_decode(std::string_view encoded) {
    std::string out;
    out.reserve(encoded.size());
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        char c = encoded[i];
        if (c != '%') {
            out.push_back(c);
            continue;
        }
        if (i + 2 >= encoded.size())
            throw std::invalid_argument("truncated percent escape");
        int hi = detail::hex_value(encoded[i + 1]);
        int lo = detail::hex_value(encoded[i + 2]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("bad percent escape in '" + std::string(encoded) + "'");
        out.push_back(static_cast<char>((hi << 4) | lo));
        i += 2;
    }
    return out;
}

// Split a tab-separated line into fields (fields themselves never contain
// tabs; tokens are percent-encoded before joining).
inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

}  // namespace mindmap::text
