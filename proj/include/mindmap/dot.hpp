#pragma once
// Deterministic DOT export: nodes sorted by token, edges sorted by endpoint
// pair, weights as 4-decimal edge labels. Identical maps yield byte-identical
// text.

#include <string>

#include "engine.hpp"
#include "text.hpp"

namespace mindmap {

namespace detail {
inline std::string dot_quote(const std::string& raw) {
    std::string out;
    out.reserve(raw.size() + 2);
    out.push_back('"');
    for (char c : raw) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}
}  // namespace detail

inline std::string export_dot(const MindMap& map) {
    std::string out = "graph mindmap {\n";
    for (const auto& [token, cell] : map.cells()) {
        out += "  ";
        out += detail::dot_quote(token);
        out += ";\n";
    }
    for (const auto& [key, conn] : map.connections()) {
        out += "  ";
        out += detail::dot_quote(key.a);
        out += " -- ";
        out += detail::dot_quote(key.b);
        out += " [label=\"";
        out += text::fixed4(conn.weight);
        out += "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace mindmap
