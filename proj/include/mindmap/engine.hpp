#pragma once
// Incremental mind-map engine over transactional streams.
//
// Each transaction becomes a mini-network (complete graph over its distinct
// items) that is merged into the global map: existing cells and connections
// are reinforced, new ones start at the initial weight. Every tick all
// weights decay multiplicatively; starved cells die into a graveyard from
// which a re-stimulation within the retention horizon revives them.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mindmap {

using Tick = std::uint64_t;

constexpr std::size_t kMaxTokenBytes = 256;

struct EngineParams {
    double initial_weight = 1.0;   // weight of freshly inserted cells/connections
    double reinforcement = 1.0;    // additive increment on re-stimulation
    double decay_rate = 0.05;      // multiplicative loss per tick, in [0,1)
    double death_threshold = 0.01; // weights below this die
    Tick graveyard_ticks = 100;    // revival horizon for dead cells

    void validate() const {
        if (!(initial_weight > 0)) throw std::invalid_argument("initial_weight must be > 0");
        if (!(reinforcement > 0)) throw std::invalid_argument("reinforcement must be > 0");
        if (!(decay_rate >= 0 && decay_rate < 1))
            throw std::invalid_argument("decay_rate must be in [0,1)");
        if (!(death_threshold >= 0)) throw std::invalid_argument("death_threshold must be >= 0");
        if (!(initial_weight > death_threshold))
            throw std::invalid_argument("initial_weight must exceed death_threshold");
    }
};

// Undirected endpoint pair, stored normalized (a < b). Self-loops are not
// representable.
struct EdgeKey {
    std::string a;
    std::string b;

    EdgeKey() = default;
    EdgeKey(std::string x, std::string y) {
        if (x == y) throw std::invalid_argument("self-loop connection: '" + x + "'");
        if (x < y) {
            a = std::move(x);
            b = std::move(y);
        } else {
            a = std::move(y);
            b = std::move(x);
        }
    }

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct Cell {
    double weight = 0;
    Tick last_stimulated = 0;
    Tick created_at = 0;
};

struct Connection {
    double weight = 0;
    Tick last_reinforced = 0;
};

struct GraveEntry {
    Cell cell;       // state captured at death
    Tick died_at = 0;
};

struct Transaction {
    std::string id;
    std::vector<std::string> items;
    std::optional<std::uint64_t> timestamp;
};

// One transaction's worth of structure before merging: every distinct item
// as a cell plus the complete graph over them, all at the initial weight.
struct MiniNetwork {
    std::vector<std::string> cells;   // distinct, sorted
    std::vector<EdgeKey> connections; // C(n,2) pairs, sorted
    double weight = 0;
};

namespace detail {
inline bool bits_equal(double x, double y) {
    return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
}
}  // namespace detail

inline void validate_token(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty item token");
    if (token.size() > kMaxTokenBytes)
        throw std::invalid_argument("item token exceeds " + std::to_string(kMaxTokenBytes) + " bytes");
}

// Distinct items of a transaction, sorted. Throws if the transaction is
// empty after deduplication or contains an invalid token.
inline std::vector<std::string> distinct_items(const Transaction& txn) {
    std::set<std::string> seen;
    for (const auto& item : txn.items) {
        validate_token(item);
        seen.insert(item);
    }
    if (seen.empty()) throw std::invalid_argument("transaction '" + txn.id + "' has no items");
    return {seen.begin(), seen.end()};
}

inline MiniNetwork build_mini_network(const Transaction& txn, const EngineParams& params) {
    params.validate();
    MiniNetwork net;
    net.cells = distinct_items(txn);
    net.weight = params.initial_weight;
    for (std::size_t i = 0; i < net.cells.size(); ++i)
        for (std::size_t j = i + 1; j < net.cells.size(); ++j)
            net.connections.emplace_back(net.cells[i], net.cells[j]);
    return net;
}

// A generalized mini-network: cells to stimulate plus connections with an
// explicit reinforcement increment each. The plain engine uses a uniform
// increment; the feedback layer supplies per-kind increments.
struct Stimulus {
    struct Edge {
        std::string a;
        std::string b;
        double increment = 0;
    };
    std::vector<std::string> cells;
    std::vector<Edge> edges;
};

class MindMap {
public:
    MindMap() { params_.validate(); }
    explicit MindMap(EngineParams params) : params_(params) { params_.validate(); }

    // Rebuild from explicit state (snapshot loading, tests). Validates the
    // structural invariants and throws std::invalid_argument on violation.
    static MindMap from_parts(EngineParams params, Tick tick,
                              std::map<std::string, Cell> cells,
                              std::map<EdgeKey, Connection> connections,
                              std::map<std::string, GraveEntry> graveyard) {
        params.validate();
        MindMap m(params);
        m.tick_ = tick;
        m.cells_ = std::move(cells);
        m.connections_ = std::move(connections);
        m.graveyard_ = std::move(graveyard);
        m.check_invariants();
        return m;
    }

    // Full ingest pipeline: advance the tick, decay everything, merge the
    // transaction's mini-network, revive, reap, purge. Throws before any
    // mutation if the transaction is invalid.
    void ingest(const Transaction& txn) {
        auto items = distinct_items(txn);  // validates first; map untouched on error
        Stimulus s;
        s.cells = std::move(items);
        for (std::size_t i = 0; i < s.cells.size(); ++i)
            for (std::size_t j = i + 1; j < s.cells.size(); ++j)
                s.edges.push_back({s.cells[i], s.cells[j], params_.reinforcement});
        apply(s);
    }

    // Same pipeline with caller-chosen connections and increments. Edge
    // endpoints must be listed among the stimulus cells.
    void apply(const Stimulus& stimulus) {
        for (const auto& token : stimulus.cells) validate_token(token);
        std::set<std::string> listed(stimulus.cells.begin(), stimulus.cells.end());
        for (const auto& e : stimulus.edges) {
            if (!listed.count(e.a) || !listed.count(e.b))
                throw std::invalid_argument("stimulus edge endpoint not listed as a cell");
            if (e.increment < 0) throw std::invalid_argument("negative edge increment");
        }

        advance_and_decay();
        for (const auto& token : listed) touch_cell(token);
        for (const auto& e : stimulus.edges) touch_edge(e.a, e.b, e.increment);
        reap_and_purge();
    }

    // One idle time-step: decay, death and graveyard processing, no
    // stimulation.
    void decay_tick() {
        advance_and_decay();
        reap_and_purge();
    }

    // The k strongest connections, descending by weight; ties broken by the
    // smaller endpoint token, then the larger.
    std::vector<std::pair<EdgeKey, double>> top_k(std::size_t k) const {
        if (k == 0) throw std::invalid_argument("top_k requires k >= 1");
        std::vector<std::pair<EdgeKey, double>> all;
        all.reserve(connections_.size());
        for (const auto& [key, conn] : connections_) all.emplace_back(key, conn.weight);
        std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        if (all.size() > k) all.resize(k);
        return all;
    }

    // Induced sub-map of all alive cells within `depth` hops of `token`.
    // Unknown token yields an empty sub-map; depth 0 the cell alone.
    MindMap neighborhood(const std::string& token, std::size_t depth) const {
        MindMap sub(params_);
        sub.tick_ = tick_;
        if (!cells_.count(token)) return sub;

        std::map<std::string, std::vector<const std::string*>> adjacency;
        for (const auto& [key, conn] : connections_) {
            adjacency[key.a].push_back(&key.b);
            adjacency[key.b].push_back(&key.a);
        }

        std::set<std::string> reached{token};
        std::vector<std::string> frontier{token};
        for (std::size_t hop = 0; hop < depth && !frontier.empty(); ++hop) {
            std::vector<std::string> next;
            for (const auto& cur : frontier) {
                auto it = adjacency.find(cur);
                if (it == adjacency.end()) continue;
                for (const std::string* other : it->second)
                    if (reached.insert(*other).second) next.push_back(*other);
            }
            frontier = std::move(next);
        }

        for (const auto& t : reached) sub.cells_.emplace(t, cells_.at(t));
        for (const auto& [key, conn] : connections_)
            if (reached.count(key.a) && reached.count(key.b)) sub.connections_.emplace(key, conn);
        return sub;
    }

    // Alive neighbors of a cell with the connecting weight, sorted by token.
    std::vector<std::pair<std::string, double>> neighbors(const std::string& token) const {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& [key, conn] : connections_) {
            if (key.a == token) out.emplace_back(key.b, conn.weight);
            else if (key.b == token) out.emplace_back(key.a, conn.weight);
        }
        return out;
    }

    const EngineParams& params() const { return params_; }
    void set_params(EngineParams p) {
        p.validate();
        params_ = p;
    }
    Tick tick() const { return tick_; }
    const std::map<std::string, Cell>& cells() const { return cells_; }
    const std::map<EdgeKey, Connection>& connections() const { return connections_; }
    const std::map<std::string, GraveEntry>& graveyard() const { return graveyard_; }

    std::optional<double> cell_weight(const std::string& token) const {
        auto it = cells_.find(token);
        if (it == cells_.end()) return std::nullopt;
        return it->second.weight;
    }

    std::optional<double> connection_weight(const std::string& x, const std::string& y) const {
        auto it = connections_.find(EdgeKey(x, y));
        if (it == connections_.end()) return std::nullopt;
        return it->second.weight;
    }

    // Field-by-field equality with bit-exact weight comparison.
    friend bool operator==(const MindMap& lhs, const MindMap& rhs) {
        auto params_eq = [](const EngineParams& p, const EngineParams& q) {
            return detail::bits_equal(p.initial_weight, q.initial_weight) &&
                   detail::bits_equal(p.reinforcement, q.reinforcement) &&
                   detail::bits_equal(p.decay_rate, q.decay_rate) &&
                   detail::bits_equal(p.death_threshold, q.death_threshold) &&
                   p.graveyard_ticks == q.graveyard_ticks;
        };
        auto cell_eq = [](const Cell& c, const Cell& d) {
            return detail::bits_equal(c.weight, d.weight) &&
                   c.last_stimulated == d.last_stimulated && c.created_at == d.created_at;
        };
        if (!params_eq(lhs.params_, rhs.params_) || lhs.tick_ != rhs.tick_) return false;
        if (lhs.cells_.size() != rhs.cells_.size() ||
            lhs.connections_.size() != rhs.connections_.size() ||
            lhs.graveyard_.size() != rhs.graveyard_.size())
            return false;
        for (auto l = lhs.cells_.begin(), r = rhs.cells_.begin(); l != lhs.cells_.end(); ++l, ++r)
            if (l->first != r->first || !cell_eq(l->second, r->second)) return false;
        for (auto l = lhs.connections_.begin(), r = rhs.connections_.begin();
             l != lhs.connections_.end(); ++l, ++r)
            if (l->first != r->first || !detail::bits_equal(l->second.weight, r->second.weight) ||
                l->second.last_reinforced != r->second.last_reinforced)
                return false;
        for (auto l = lhs.graveyard_.begin(), r = rhs.graveyard_.begin(); l != lhs.graveyard_.end();
             ++l, ++r)
            if (l->first != r->first || !cell_eq(l->second.cell, r->second.cell) ||
                l->second.died_at != r->second.died_at)
                return false;
        return true;
    }

    // Structural invariants; throws std::invalid_argument on violation.
    void check_invariants() const {
        for (const auto& [token, cell] : cells_) {
            validate_token(token);
            if (cell.weight < 0) throw std::invalid_argument("negative cell weight: " + token);
            if (cell.last_stimulated > tick_ || cell.created_at > tick_)
                throw std::invalid_argument("cell tick fields exceed map tick: " + token);
            if (graveyard_.count(token))
                throw std::invalid_argument("cell both alive and in graveyard: " + token);
        }
        for (const auto& [key, conn] : connections_) {
            if (conn.weight < 0)
                throw std::invalid_argument("negative connection weight: " + key.a + "," + key.b);
            if (!cells_.count(key.a) || !cells_.count(key.b))
                throw std::invalid_argument("connection endpoint not alive: " + key.a + "," + key.b);
            if (conn.last_reinforced > tick_)
                throw std::invalid_argument("connection tick field exceeds map tick");
        }
        for (const auto& [token, entry] : graveyard_) {
            validate_token(token);
            if (entry.cell.weight < 0)
                throw std::invalid_argument("negative graveyard weight: " + token);
            if (entry.died_at > tick_)
                throw std::invalid_argument("graveyard death tick exceeds map tick: " + token);
        }
    }

private:
    void advance_and_decay() {
        ++tick_;
        const double keep = 1.0 - params_.decay_rate;
        for (auto& [token, cell] : cells_) cell.weight *= keep;
        for (auto& [key, conn] : connections_) conn.weight *= keep;
    }

    void touch_cell(const std::string& token) {
        auto it = cells_.find(token);
        if (it != cells_.end()) {
            it->second.weight += params_.reinforcement;
            it->second.last_stimulated = tick_;
            return;
        }
        auto grave = graveyard_.find(token);
        if (grave != graveyard_.end() && tick_ - grave->second.died_at <= params_.graveyard_ticks) {
            // Revival: reset weight, keep the original creation tick.
            Cell revived;
            revived.weight = params_.initial_weight;
            revived.last_stimulated = tick_;
            revived.created_at = grave->second.cell.created_at;
            cells_.emplace(token, revived);
            graveyard_.erase(grave);
            return;
        }
        // Fresh cell; a stale graveyard entry, if any, falls to the purge below.
        Cell fresh;
        fresh.weight = params_.initial_weight;
        fresh.last_stimulated = tick_;
        fresh.created_at = tick_;
        cells_.emplace(token, fresh);
    }

    void touch_edge(const std::string& x, const std::string& y, double increment) {
        EdgeKey key(x, y);
        auto it = connections_.find(key);
        if (it != connections_.end()) {
            it->second.weight += increment;
            it->second.last_reinforced = tick_;
        } else {
            connections_.emplace(key, Connection{params_.initial_weight, tick_});
        }
    }

    void reap_and_purge() {
        std::set<std::string> dying;
        for (auto it = cells_.begin(); it != cells_.end();) {
            if (it->second.weight < params_.death_threshold) {
                dying.insert(it->first);
                graveyard_[it->first] = GraveEntry{it->second, tick_};
                it = cells_.erase(it);
            } else {
                ++it;
            }
        }
        for (auto it = connections_.begin(); it != connections_.end();) {
            if (it->second.weight < params_.death_threshold || dying.count(it->first.a) ||
                dying.count(it->first.b)) {
                it = connections_.erase(it);
            } else {
                ++it;
            }
        }
        for (auto it = graveyard_.begin(); it != graveyard_.end();) {
            if (tick_ - it->second.died_at > params_.graveyard_ticks) it = graveyard_.erase(it);
            else ++it;
        }
    }

    EngineParams params_{};
    Tick tick_ = 0;
    std::map<std::string, Cell> cells_;
    std::map<EdgeKey, Connection> connections_;
    std::map<std::string, GraveEntry> graveyard_;
};

}  // namespace mindmap
