#pragma once
// Implicit-feedback graph over search sessions. Three cell kinds live in one
// engine map, distinguished by token prefix: "t:" query terms, "q:" whole
// queries, "d:" clicked documents. Connection kinds follow the endpoints:
// term-term, query-term and query-document; documents never connect to
// terms. Each session is one transaction: the whole graph decays once, the
// session's cells and connections are reinforced, clicked documents extra
// by dwell time (saturating at dwell_saturation seconds).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "engine.hpp"

namespace mindmap::feedback {

enum class CellKind { Term, Query, Document };

struct Session {
    std::string query;
    std::vector<std::pair<std::string, double>> results;  // (doc id, baseline score)
    std::vector<std::string> clicks;                      // subset of result doc ids
    std::map<std::string, double> dwell;                  // doc id -> seconds, keys subset of clicks
};

struct FeedbackParams {
    double baseline_coeff = 1.0;    // weight of the baseline score
    double direct_coeff = 0.5;      // weight of the query->document association
    double neighbor_coeff = 0.25;   // weight of associations via overlapping queries
    double dwell_saturation = 30.0; // seconds of dwell that count as full engagement
    EngineParams engine;

    void validate() const {
        if (baseline_coeff < 0 || direct_coeff < 0 || neighbor_coeff < 0)
            throw std::invalid_argument("feedback coefficients must be >= 0");
        if (!(dwell_saturation > 0)) throw std::invalid_argument("dwell_saturation must be > 0");
        engine.validate();
    }
};

// Lowercase + whitespace split; deliberately no stemming.
inline std::vector<std::string> tokenize(const std::string& query) {
    std::vector<std::string> terms;
    std::string current;
    for (unsigned char c : query) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            if (!current.empty()) terms.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : static_cast<char>(c));
        }
    }
    if (!current.empty()) terms.push_back(std::move(current));
    return terms;
}

inline std::string term_token(const std::string& term) { return "t:" + term; }
inline std::string doc_token(const std::string& doc) { return "d:" + doc; }

// Query cells are keyed by the normalized query: lowercased tokens joined by
// single spaces.
inline std::string query_token(const std::string& query) {
    auto terms = tokenize(query);
    std::string norm;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) norm.push_back(' ');
        norm += terms[i];
    }
    return "q:" + norm;
}

inline std::optional<CellKind> kind_of(const std::string& token) {
    if (token.rfind("t:", 0) == 0) return CellKind::Term;
    if (token.rfind("q:", 0) == 0) return CellKind::Query;
    if (token.rfind("d:", 0) == 0) return CellKind::Document;
    return std::nullopt;
}

inline std::string raw_of(const std::string& token) { return token.substr(2); }

inline bool allowed_edge(CellKind x, CellKind y) {
    if (x > y) std::swap(x, y);
    return (x == CellKind::Term && y == CellKind::Term) ||
           (x == CellKind::Term && y == CellKind::Query) ||
           (x == CellKind::Query && y == CellKind::Document);
}

class FeedbackGraph {
public:
    FeedbackGraph() : FeedbackGraph(FeedbackParams{}) {}
    explicit FeedbackGraph(FeedbackParams params) : params_(params), map_(params.engine) {
        params_.validate();
    }

    // Adopt an existing map (tests, persistence). Every cell must carry a
    // kind prefix and every connection must be one of the three kinds.
    FeedbackGraph(FeedbackParams params, MindMap map) : params_(params), map_(std::move(map)) {
        params_.validate();
        for (const auto& [token, cell] : map_.cells())
            if (!kind_of(token)) throw std::invalid_argument("cell without kind prefix: " + token);
        for (const auto& [key, conn] : map_.connections())
            if (!allowed_edge(*kind_of(key.a), *kind_of(key.b)))
                throw std::invalid_argument("forbidden edge kind: " + key.a + " -- " + key.b);
    }

    // One search session as one transaction. Throws before mutating on an
    // invalid session (empty query, click outside the result list, dwell
    // for an unclicked document).
    void ingest_session(const Session& session) {
        auto terms = tokenize(session.query);
        if (terms.empty()) throw std::invalid_argument("session query has no terms");

        std::set<std::string> result_docs;
        for (const auto& [doc, score] : session.results) result_docs.insert(doc);
        std::set<std::string> clicked(session.clicks.begin(), session.clicks.end());
        for (const auto& doc : clicked)
            if (!result_docs.count(doc))
                throw std::invalid_argument("click on a document not in the results: " + doc);
        for (const auto& [doc, seconds] : session.dwell) {
            if (!clicked.count(doc))
                throw std::invalid_argument("dwell for an unclicked document: " + doc);
            if (seconds < 0) throw std::invalid_argument("negative dwell: " + doc);
        }

        std::set<std::string> term_set(terms.begin(), terms.end());
        const std::string q = query_token(session.query);
        const double eta = params_.engine.reinforcement;

        Stimulus s;
        s.cells.push_back(q);
        for (const auto& t : term_set) s.cells.push_back(term_token(t));
        for (const auto& d : clicked) s.cells.push_back(doc_token(d));

        for (auto i = term_set.begin(); i != term_set.end(); ++i)
            for (auto j = std::next(i); j != term_set.end(); ++j)
                s.edges.push_back({term_token(*i), term_token(*j), eta});
        for (const auto& t : term_set) s.edges.push_back({q, term_token(t), eta});
        for (const auto& d : clicked) {
            auto it = session.dwell.find(d);
            double seconds = it == session.dwell.end() ? 0.0 : it->second;
            double saturation = std::min(seconds / params_.dwell_saturation, 1.0);
            s.edges.push_back({q, doc_token(d), eta * (1.0 + saturation)});
        }
        map_.apply(s);
    }

    // score'(d) = baseline_coeff * baseline(d)
    //           + direct_coeff   * w_hat(q, d)
    //           + neighbor_coeff * sum over overlapping queries q' of
    //                              jaccard(q, q') * w_hat(q', d)
    // where w_hat normalizes by the largest query-document weight in the
    // graph. Output is sorted by score' descending, ties keep baseline order.
    std::vector<std::pair<std::string, double>> rerank(
        const std::string& query,
        const std::vector<std::pair<std::string, double>>& baseline) const {
        if (baseline.empty()) throw std::invalid_argument("empty baseline");

        auto terms = tokenize(query);
        std::set<std::string> term_set(terms.begin(), terms.end());
        const std::string q = query_token(query);

        double max_qd = 0;
        for (const auto& [key, conn] : map_.connections()) {
            auto ka = kind_of(key.a), kb = kind_of(key.b);
            if ((ka == CellKind::Query && kb == CellKind::Document) ||
                (ka == CellKind::Document && kb == CellKind::Query))
                max_qd = std::max(max_qd, conn.weight);
        }

        // Queries sharing at least one live term edge with q, with their
        // Jaccard similarity over term sets.
        std::vector<std::pair<std::string, double>> neighbors_sim;
        if (!term_set.empty()) {
            std::set<std::string> candidates;
            for (const auto& t : term_set)
                for (const auto& [other, weight] : map_.neighbors(term_token(t)))
                    if (kind_of(other) == CellKind::Query && other != q) candidates.insert(other);
            for (const auto& cand : candidates) {
                std::set<std::string> cand_terms;
                for (const auto& [other, weight] : map_.neighbors(cand))
                    if (kind_of(other) == CellKind::Term) cand_terms.insert(raw_of(other));
                std::size_t shared = 0;
                for (const auto& t : term_set) shared += cand_terms.count(t);
                std::size_t unioned = term_set.size() + cand_terms.size() - shared;
                if (shared > 0 && unioned > 0)
                    neighbors_sim.emplace_back(cand, static_cast<double>(shared) /
                                                         static_cast<double>(unioned));
            }
        }

        auto normalized_weight = [&](const std::string& a, const std::string& b) {
            if (max_qd <= 0) return 0.0;
            auto w = map_.connection_weight(a, b);
            return w ? *w / max_qd : 0.0;
        };

        std::vector<std::pair<std::string, double>> out;
        out.reserve(baseline.size());
        for (const auto& [doc, score] : baseline) {
            const std::string d = doc_token(doc);
            double boosted = params_.baseline_coeff * score +
                             params_.direct_coeff * normalized_weight(q, d);
            for (const auto& [cand, sim] : neighbors_sim)
                boosted += params_.neighbor_coeff * sim * normalized_weight(cand, d);
            out.emplace_back(doc, boosted);
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& x, const auto& y) { return x.second > y.second; });
        return out;
    }

    // Strongest term-term associations of one term.
    std::vector<std::pair<std::string, double>> related_terms(const std::string& term,
                                                              std::size_t k) const {
        if (k == 0) throw std::invalid_argument("related_terms requires k >= 1");
        auto toks = tokenize(term);
        if (toks.size() != 1) return {};
        std::vector<std::pair<std::string, double>> found;
        for (const auto& [other, weight] : map_.neighbors(term_token(toks[0])))
            if (kind_of(other) == CellKind::Term) found.emplace_back(raw_of(other), weight);
        std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        if (found.size() > k) found.resize(k);
        return found;
    }

    const FeedbackParams& params() const { return params_; }
    const MindMap& map() const { return map_; }

private:
    FeedbackParams params_;
    MindMap map_;
};

}  // namespace mindmap::feedback
