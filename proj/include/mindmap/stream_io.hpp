#pragma once
// Line-delimited input parsers: transaction streams, search-session logs,
// bibliographic records (JSON lines or the CSV variant with a quoted
// semicolon-joined author field), baseline rankings and signature files.
// All parsers are single-pass and constant-memory per line; malformed lines
// are reported with their line number and skipped.

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "biblio.hpp"
#include "engine.hpp"
#include "feedback.hpp"
#include "text.hpp"

namespace mindmap::io {

struct LineError {
    std::size_t line = 0;
    std::string message;
};

struct ParseReport {
    std::size_t lines = 0;   // physical lines seen
    std::size_t parsed = 0;  // records delivered
    std::vector<LineError> errors;

    bool ok() const { return errors.empty(); }
};

namespace detail {

inline bool blank(const std::string& line) {
    for (char c : line)
        if (c != ' ' && c != '\t' && c != '\r') return false;
    return true;
}

// Strict-ish RFC4180 field splitter; doubled quotes escape inside quoted
// fields. Throws std::invalid_argument on dangling quotes.
inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quote");
    fields.push_back(std::move(current));
    return fields;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(std::move(current));
    return parts;
}

// One forward pass over the stream; fn(line_no, line) for every non-blank
// line, errors collected into the report.
template <typename Fn>
ParseReport for_each_line(std::istream& in, ParseReport& report, Fn&& fn) {
    std::string line;
    while (std::getline(in, line)) {
        ++report.lines;
        if (blank(line)) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        try {
            fn(report.lines, line);
            ++report.parsed;
        } catch (const std::exception& e) {
            report.errors.push_back({report.lines, e.what()});
        }
    }
    return report;
}

inline nlohmann::json parse_json_object(const std::string& line) {
    auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("not a JSON object");
    return j;
}

}  // namespace detail

// {"id": "...", "items": ["A", "B"], "ts": 12}
template <typename Sink>
ParseReport parse_transactions(std::istream& in, Sink&& sink) {
    ParseReport report;
    detail::for_each_line(in, report, [&](std::size_t, const std::string& line) {
        auto j = detail::parse_json_object(line);
        if (!j.contains("id") || !j["id"].is_string())
            throw std::invalid_argument("missing or non-string 'id'");
        if (!j.contains("items") || !j["items"].is_array())
            throw std::invalid_argument("missing or non-array 'items'");
        Transaction txn;
        txn.id = j["id"].get<std::string>();
        for (const auto& item : j["items"]) {
            if (!item.is_string()) throw std::invalid_argument("non-string item");
            txn.items.push_back(item.get<std::string>());
        }
        if (j.contains("ts")) {
            if (!j["ts"].is_number_integer() || j["ts"].get<std::int64_t>() < 0)
                throw std::invalid_argument("'ts' must be a nonnegative integer");
            txn.timestamp = j["ts"].get<std::uint64_t>();
        }
        distinct_items(txn);  // validates tokens and non-emptiness
        sink(std::move(txn));
    });
    return report;
}

inline ParseReport parse_transactions(std::istream& in, std::vector<Transaction>& out) {
    return parse_transactions(in, [&](Transaction&& t) { out.push_back(std::move(t)); });
}

// {"q": "...", "results": [{"doc": "...", "score": 1.0}],
//  "clicks": ["d1"], "dwell": {"d1": 12.5}}
template <typename Sink>
ParseReport parse_sessions(std::istream& in, Sink&& sink) {
    ParseReport report;
    detail::for_each_line(in, report, [&](std::size_t, const std::string& line) {
        auto j = detail::parse_json_object(line);
        if (!j.contains("q") || !j["q"].is_string())
            throw std::invalid_argument("missing or non-string 'q'");
        feedback::Session s;
        s.query = j["q"].get<std::string>();
        if (feedback::tokenize(s.query).empty())
            throw std::invalid_argument("query has no terms");
        if (j.contains("results")) {
            if (!j["results"].is_array()) throw std::invalid_argument("'results' must be an array");
            for (const auto& r : j["results"]) {
                if (!r.is_object() || !r.contains("doc") || !r["doc"].is_string() ||
                    !r.contains("score") || !r["score"].is_number())
                    throw std::invalid_argument("result entries need 'doc' and numeric 'score'");
                s.results.emplace_back(r["doc"].get<std::string>(), r["score"].get<double>());
            }
        }
        if (j.contains("clicks")) {
            if (!j["clicks"].is_array()) throw std::invalid_argument("'clicks' must be an array");
            for (const auto& c : j["clicks"]) {
                if (!c.is_string()) throw std::invalid_argument("non-string click");
                s.clicks.push_back(c.get<std::string>());
            }
        }
        if (j.contains("dwell")) {
            if (!j["dwell"].is_object()) throw std::invalid_argument("'dwell' must be an object");
            for (const auto& [doc, seconds] : j["dwell"].items()) {
                if (!seconds.is_number() || seconds.get<double>() < 0)
                    throw std::invalid_argument("dwell values must be nonnegative numbers");
                s.dwell[doc] = seconds.get<double>();
            }
        }
        sink(std::move(s));
    });
    return report;
}

inline ParseReport parse_sessions(std::istream& in, std::vector<feedback::Session>& out) {
    return parse_sessions(in, [&](feedback::Session&& s) { out.push_back(std::move(s)); });
}

// JSON lines {"id", "authors": [...], "year", "title"?} or the CSV variant
//   id,"Author One;Author Two",2006,Optional title
template <typename Sink>
ParseReport parse_pub_records(std::istream& in, Sink&& sink) {
    ParseReport report;
    detail::for_each_line(in, report, [&](std::size_t, const std::string& line) {
        biblio::PubRecord rec;
        if (line.front() == '{') {
            auto j = detail::parse_json_object(line);
            if (!j.contains("id") || !j["id"].is_string())
                throw std::invalid_argument("missing or non-string 'id'");
            if (!j.contains("authors") || !j["authors"].is_array())
                throw std::invalid_argument("missing or non-array 'authors'");
            if (!j.contains("year") || !j["year"].is_number_integer())
                throw std::invalid_argument("missing or non-integer 'year'");
            rec.id = j["id"].get<std::string>();
            for (const auto& a : j["authors"]) {
                if (!a.is_string()) throw std::invalid_argument("non-string author");
                rec.authors.push_back(a.get<std::string>());
            }
            rec.year = j["year"].get<int>();
            if (j.contains("title")) {
                if (!j["title"].is_string()) throw std::invalid_argument("non-string 'title'");
                rec.title = j["title"].get<std::string>();
            }
        } else {
            auto fields = detail::split_csv(line);
            if (fields.size() < 3 || fields.size() > 4)
                throw std::invalid_argument("expected id,authors,year[,title]");
            rec.id = fields[0];
            rec.authors = detail::split_on(fields[1], ';');
            rec.year = static_cast<int>(text::parse_i64(fields[2]));
            if (fields.size() == 4) rec.title = fields[3];
        }
        if (rec.authors.empty() ||
            std::any_of(rec.authors.begin(), rec.authors.end(),
                        [](const std::string& a) { return a.empty(); }))
            throw std::invalid_argument("record needs at least one non-empty author");
        sink(std::move(rec));
    });
    return report;
}

inline ParseReport parse_pub_records(std::istream& in, std::vector<biblio::PubRecord>& out) {
    return parse_pub_records(in, [&](biblio::PubRecord&& r) { out.push_back(std::move(r)); });
}

// {"doc": "...", "score": 1.0} per line, order defines the baseline ranking.
template <typename Sink>
ParseReport parse_baseline(std::istream& in, Sink&& sink) {
    ParseReport report;
    detail::for_each_line(in, report, [&](std::size_t, const std::string& line) {
        auto j = detail::parse_json_object(line);
        if (!j.contains("doc") || !j["doc"].is_string() || !j.contains("score") ||
            !j["score"].is_number())
            throw std::invalid_argument("baseline entries need 'doc' and numeric 'score'");
        sink(j["doc"].get<std::string>(), j["score"].get<double>());
    });
    return report;
}

// One signature per line, percent-encoded; '#' lines are comments.
template <typename Sink>
ParseReport parse_signatures(std::istream& in, Sink&& sink) {
    ParseReport report;
    detail::for_each_line(in, report, [&](std::size_t, const std::string& line) {
        if (line.front() == '#') return;
        auto sig = text::percent_decode(line);
        if (sig.empty()) throw std::invalid_argument("empty signature");
        sink(std::move(sig));
    });
    return report;
}

inline ParseReport parse_signatures(std::istream& in, std::vector<std::string>& out) {
    return parse_signatures(in, [&](std::string&& s) { out.push_back(std::move(s)); });
}

inline void write_signature_file(std::ostream& out, const std::vector<std::string>& signatures) {
    for (const auto& sig : signatures) {
        auto encoded = text::encode_printable(sig);
        if (!encoded.empty() && encoded.front() == '#') encoded = "%23" + encoded.substr(1);
        out << encoded << '\n';
    }
}

}  // namespace mindmap::io
