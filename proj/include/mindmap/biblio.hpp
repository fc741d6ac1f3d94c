#pragma once
// Temporal co-authorship graphs over bibliographic record streams. Records
// are bucketed by year; a sliding window materializes the co-author graph
// of exactly the records inside it. Edge multiplicities are exact integer
// counts of shared in-window publications (a double edge means two common
// papers), not decayed weights. Collaboration trends classify a pair's
// presence across a window sequence.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mindmap::biblio {

struct PubRecord {
    std::string id;
    std::vector<std::string> authors;
    int year = 0;
    std::string title;
};

using AuthorPair = std::pair<std::string, std::string>;

inline AuthorPair pair_key(std::string a, std::string b) {
    if (a == b) throw std::invalid_argument("author pair needs two distinct names");
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

struct WindowConfig {
    int width = 1;  // years covered: [start, start + width)
    int step = 1;   // years between consecutive window starts

    void validate() const {
        if (width < 1) throw std::invalid_argument("window width must be >= 1");
        if (step < 1) throw std::invalid_argument("window step must be >= 1");
    }
};

struct CoauthorGraph {
    std::set<std::string> authors;
    std::map<AuthorPair, int> edges;  // pair -> multiplicity
};

enum class Trend { Absent, Visiting, Recurring, Constant };

inline const char* trend_tag(Trend t) {
    switch (t) {
        case Trend::Absent: return "Absent";
        case Trend::Visiting: return "Visiting";
        case Trend::Recurring: return "Recurring";
        case Trend::Constant: return "Constant";
    }
    return "?";
}

// Label plus the window-index bounds of the present range (meaningless for
// Absent). A Constant label over a sub-range reports that range.
struct TrendResult {
    Trend label = Trend::Absent;
    int first_window = -1;
    int last_window = -1;

    friend bool operator==(const TrendResult&, const TrendResult&) = default;
};

// Window start years covering [first_year, last_year].
inline std::vector<int> window_starts(const WindowConfig& cfg, int first_year, int last_year) {
    cfg.validate();
    if (first_year > last_year) throw std::invalid_argument("first_year must be <= last_year");
    std::vector<int> starts;
    for (long long s = first_year; s <= last_year; s += cfg.step)
        starts.push_back(static_cast<int>(s));
    return starts;
}

class BiblioStore {
public:
    // Buffers one record. A duplicate id is ignored and counted. Author
    // lists are deduplicated by exact match; an empty list is rejected.
    void ingest(const PubRecord& rec) {
        std::vector<std::string> authors;
        for (const auto& name : rec.authors) {
            if (name.empty()) throw std::invalid_argument("empty author name in '" + rec.id + "'");
            if (std::find(authors.begin(), authors.end(), name) == authors.end())
                authors.push_back(name);
        }
        if (authors.empty())
            throw std::invalid_argument("record '" + rec.id + "' has no authors");
        if (!ids_.insert(rec.id).second) {
            ++duplicate_warnings_;
            return;
        }

        PubRecord stored = rec;
        stored.authors = authors;
        for (const auto& name : authors) authors_by_year_[stored.year].insert(name);
        for (std::size_t i = 0; i < authors.size(); ++i)
            for (std::size_t j = i + 1; j < authors.size(); ++j)
                ++pair_year_counts_[pair_key(authors[i], authors[j])][stored.year];
        by_year_[stored.year].push_back(std::move(stored));
        ++record_count_;
    }

    // Co-author graph of the records with start_year <= year < start_year +
    // width; multiplicities are counted within the window only.
    CoauthorGraph window(int start_year, const WindowConfig& cfg) const {
        cfg.validate();
        const long long end = static_cast<long long>(start_year) + cfg.width;
        CoauthorGraph graph;
        for (auto it = authors_by_year_.lower_bound(start_year);
             it != authors_by_year_.end() && it->first < end; ++it)
            graph.authors.insert(it->second.begin(), it->second.end());
        for (const auto& [pair, year_counts] : pair_year_counts_) {
            int multiplicity = 0;
            for (auto it = year_counts.lower_bound(start_year);
                 it != year_counts.end() && it->first < end; ++it)
                multiplicity += it->second;
            if (multiplicity > 0) graph.edges.emplace(pair, multiplicity);
        }
        return graph;
    }

    // Presence of the pair across the window sequence: present everywhere
    // contiguously -> Constant (over the present sub-range); present with a
    // gap between two present windows -> Recurring; present exactly once ->
    // Visiting; never present -> Absent.
    TrendResult trend(const std::string& author_a, const std::string& author_b,
                      const WindowConfig& cfg, int first_year, int last_year) const {
        auto starts = window_starts(cfg, first_year, last_year);
        auto key = pair_key(author_a, author_b);
        auto found = pair_year_counts_.find(key);

        std::vector<bool> present(starts.size(), false);
        if (found != pair_year_counts_.end()) {
            for (std::size_t i = 0; i < starts.size(); ++i) {
                const long long end = static_cast<long long>(starts[i]) + cfg.width;
                auto it = found->second.lower_bound(starts[i]);
                present[i] = it != found->second.end() && it->first < end;
            }
        }

        int first = -1, last = -1, count = 0;
        for (std::size_t i = 0; i < present.size(); ++i) {
            if (!present[i]) continue;
            if (first < 0) first = static_cast<int>(i);
            last = static_cast<int>(i);
            ++count;
        }
        if (count == 0) return {Trend::Absent, -1, -1};
        if (count == 1) return {Trend::Visiting, first, last};
        if (count == last - first + 1) return {Trend::Constant, first, last};
        return {Trend::Recurring, first, last};
    }

    std::size_t duplicate_warnings() const { return duplicate_warnings_; }
    std::size_t record_count() const { return record_count_; }
    const std::map<int, std::vector<PubRecord>>& records_by_year() const { return by_year_; }

    std::optional<int> min_year() const {
        if (by_year_.empty()) return std::nullopt;
        return by_year_.begin()->first;
    }
    std::optional<int> max_year() const {
        if (by_year_.empty()) return std::nullopt;
        return by_year_.rbegin()->first;
    }

private:
    std::map<int, std::vector<PubRecord>> by_year_;
    std::set<std::string> ids_;
    std::size_t duplicate_warnings_ = 0;
    std::size_t record_count_ = 0;
    std::map<AuthorPair, std::map<int, int>> pair_year_counts_;
    std::map<int, std::set<std::string>> authors_by_year_;
};

// Connected components of the subgraph keeping edges with multiplicity >=
// min_multiplicity. Authors without a qualifying edge are excluded. Output:
// members sorted within each community, communities sorted by size
// descending then by first member.
inline std::vector<std::vector<std::string>> communities(const CoauthorGraph& graph,
                                                         int min_multiplicity) {
    if (min_multiplicity < 1) throw std::invalid_argument("min_multiplicity must be >= 1");

    std::map<std::string, std::string> parent;
    auto find_root = [&](std::string name) {
        while (parent.at(name) != name) {
            parent.at(name) = parent.at(parent.at(name));
            name = parent.at(name);
        }
        return name;
    };
    for (const auto& [pair, multiplicity] : graph.edges) {
        if (multiplicity < min_multiplicity) continue;
        parent.try_emplace(pair.first, pair.first);
        parent.try_emplace(pair.second, pair.second);
        auto ra = find_root(pair.first);
        auto rb = find_root(pair.second);
        if (ra != rb) parent.at(rb) = ra;
    }

    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [name, p] : parent) groups[find_root(name)].push_back(name);

    std::vector<std::vector<std::string>> out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() > y.size();
        return x.front() < y.front();
    });
    return out;
}

}  // namespace mindmap::biblio
