#pragma once
// Signature store over a directed symbol graph with activation-sum alerting.
//
// Symbols are single bytes, shared across signatures; inserting a signature
// never changes the weight of a symbol that is already known. New symbols
// split the weight budget left by the known ones equally, and each stored
// signature keeps a terminal residual so that a complete match always
// activates to exactly 1. Activation above 1 marks the record over-unity:
// it is kept, flagged, and never renormalized.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mindmap::anima {

// Tolerance for the "exactly 1" / "exactly 0" branches; equal splits such as
// 1/3 are not representable exactly.
inline constexpr double kUnityTolerance = 1e-9;

struct Verdict {
    enum class Kind { NoAlert, Probabilistic, Alert, NotConsidered };

    Kind kind = Kind::NoAlert;
    double probability = 0;  // set for Probabilistic only

    static Verdict alert() { return {Kind::Alert, 0}; }
    static Verdict no_alert() { return {Kind::NoAlert, 0}; }
    static Verdict not_considered() { return {Kind::NotConsidered, 0}; }
    static Verdict probabilistic(double p) {
        if (!(p > 0 && p < 1))
            throw std::invalid_argument("probabilistic verdict needs p in (0,1)");
        return {Kind::Probabilistic, p};
    }

    friend bool operator==(const Verdict& x, const Verdict& y) {
        return x.kind == y.kind && x.probability == y.probability;
    }
};

inline const char* verdict_tag(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::NoAlert: return "NoAlert";
        case Verdict::Kind::Probabilistic: return "Probabilistic";
        case Verdict::Kind::Alert: return "Alert";
        case Verdict::Kind::NotConsidered: return "NotConsidered";
    }
    return "?";
}

// Four-branch alert rule on an activation sum.
inline Verdict classify(double sum) {
    if (sum < 0) throw std::invalid_argument("activation sum cannot be negative");
    if (sum <= kUnityTolerance) return Verdict::no_alert();
    if (sum >= 1 - kUnityTolerance && sum <= 1 + kUnityTolerance) return Verdict::alert();
    if (sum > 1) return Verdict::not_considered();
    return Verdict::probabilistic(sum);
}

struct SignatureRecord {
    std::string signature;
    double residual = 0;      // terminal completion weight
    bool over_unity = false;  // path weights alone exceed 1
};

struct ScanHit {
    std::size_t offset = 0;
    std::size_t length = 0;
    Verdict verdict;
};

class SigStore {
public:
    // Inserts a signature. Known symbols keep their weight; new symbols
    // split the remaining budget max(0, 1 - S) equally, where S is the sum
    // of the known symbols' weights along the path. Re-inserting an
    // identical signature is a no-op.
    void insert(const std::string& signature) {
        if (signature.empty()) throw std::invalid_argument("empty signature");
        if (records_.count(signature)) return;

        double known_sum = 0;
        std::set<unsigned char> fresh;
        for (unsigned char symbol : signature) {
            auto it = cells_.find(symbol);
            if (it != cells_.end()) known_sum += it->second;
            else fresh.insert(symbol);
        }
        if (!fresh.empty()) {
            double share = std::max(0.0, 1.0 - known_sum) / static_cast<double>(fresh.size());
            for (unsigned char symbol : fresh) cells_.emplace(symbol, share);
        }
        for (std::size_t i = 0; i + 1 < signature.size(); ++i)
            edges_.emplace(static_cast<unsigned char>(signature[i]),
                           static_cast<unsigned char>(signature[i + 1]));

        double path_sum = 0;
        for (unsigned char symbol : signature) path_sum += cells_.at(symbol);

        SignatureRecord record;
        record.signature = signature;
        if (path_sum > 1 + kUnityTolerance) {
            record.residual = 0;
            record.over_unity = true;
        } else {
            record.residual = std::max(0.0, 1.0 - path_sum);
        }
        records_.emplace(signature, record);
        max_length_ = std::max(max_length_, signature.size());
    }

    // Activation of a query: the summed weights of the longest prefix run
    // whose symbols all exist and whose consecutive pairs are stored edges,
    // plus the record residual when the query is a stored signature.
    double activation_sum(const std::string& query) const {
        if (query.empty()) throw std::invalid_argument("empty query");
        double sum = 0;
        for (std::size_t i = 0; i < query.size(); ++i) {
            unsigned char symbol = query[i];
            auto it = cells_.find(symbol);
            if (it == cells_.end()) break;
            if (i > 0 && !edges_.count({static_cast<unsigned char>(query[i - 1]), symbol})) break;
            sum += it->second;
        }
        auto rec = records_.find(query);
        if (rec != records_.end()) sum += rec->second.residual;
        return sum;
    }

    // Classifies every window of length 1..max stored signature length at
    // every offset; reports Alerts and Probabilistic hits with p >= p_min,
    // ordered by offset then length.
    std::vector<ScanHit> scan(std::string_view data, double p_min) const {
        if (!(p_min >= 0 && p_min <= 1)) throw std::invalid_argument("p_min must be in [0,1]");
        std::vector<ScanHit> hits;
        if (records_.empty()) return hits;

        std::vector<double> prefix;  // reused per offset
        for (std::size_t offset = 0; offset < data.size(); ++offset) {
            std::size_t limit = std::min(max_length_, data.size() - offset);

            // One walk per offset: prefix[r] is the activation of a run of
            // length r starting here.
            prefix.assign(1, 0.0);
            for (std::size_t i = 0; i < limit; ++i) {
                unsigned char symbol = data[offset + i];
                auto it = cells_.find(symbol);
                if (it == cells_.end()) break;
                if (i > 0 &&
                    !edges_.count({static_cast<unsigned char>(data[offset + i - 1]), symbol}))
                    break;
                prefix.push_back(prefix.back() + it->second);
            }
            std::size_t run = prefix.size() - 1;

            for (std::size_t len = 1; len <= limit; ++len) {
                double sum = prefix[std::min(run, len)];
                if (len <= run) {
                    // Only a fully-matched window can be a stored signature.
                    auto rec = records_.find(std::string(data.substr(offset, len)));
                    if (rec != records_.end()) sum += rec->second.residual;
                }
                Verdict verdict = classify(sum);
                if (verdict.kind == Verdict::Kind::Alert ||
                    (verdict.kind == Verdict::Kind::Probabilistic && verdict.probability >= p_min))
                    hits.push_back({offset, len, verdict});
            }
        }
        return hits;
    }

    const std::map<unsigned char, double>& cells() const { return cells_; }
    const std::set<std::pair<unsigned char, unsigned char>>& edges() const { return edges_; }
    const std::map<std::string, SignatureRecord>& records() const { return records_; }
    std::size_t max_signature_length() const { return max_length_; }

    std::optional<double> cell_weight(unsigned char symbol) const {
        auto it = cells_.find(symbol);
        if (it == cells_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::map<unsigned char, double> cells_;
    std::set<std::pair<unsigned char, unsigned char>> edges_;
    std::map<std::string, SignatureRecord> records_;
    std::size_t max_length_ = 0;
};

}  // namespace mindmap::anima
