#pragma once

// Exactly optimal-depth parallel spooky pebbling for concrete (length, s),
// under unit or ancilla-aware weighted space caps.
//
// astar_search runs backward from the final configuration to the first
// configuration with the target site pebbled, with state-space reductions
// that preserve optimality:
//   - ghosts are implied: they fill every site of [1, F] not holding a
//     pebble, where F is the dirty frontier (the rightmost non-empty site
//     below the target); F >= the rightmost pebble, but ghosts may extend
//     above all pebbles, so F is part of the state,
//   - Ghost(i) rides phase 2 of the step whose phase 1 last uses site i,
//     which is either Pebble(i+1) or the frontier retraction Unpebble(i+1),
//   - unpebbling only retracts the frontier right to left, one site per
//     step, and the frontier never grows during cleanup,
//   - the forward prefix from the empty board to any first-production
//     configuration is the forced left-to-right blast over the markers.
// The admissible heuristic is the remaining frontier distance, so depth-2l
// solutions are explored before depth-2l+1 ones.
//
// bfs_oracle is the independent check: exhaustive breadth-first search over
// full (pebble, ghost) configurations with no reductions at all.

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>

#include "pebbling/core.hpp"

namespace pebbling {

struct LimitExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class TieBreak : uint8_t { none, min_total_ops };

// Search-state key: bit i (1 <= i <= 119) marks a pebble, bit 0 marks the
// target pebble still sitting at the final site (plain variant only), bits
// 120..126 hold the dirty frontier F.
struct PebbleConfig {
    unsigned __int128 v = 0;

    friend bool operator==(const PebbleConfig&, const PebbleConfig&) = default;
    friend bool operator<(const PebbleConfig& a, const PebbleConfig& b) { return a.v < b.v; }
};

struct PebbleConfigHash {
    size_t operator()(const PebbleConfig& c) const {
        uint64_t lo = static_cast<uint64_t>(c.v);
        uint64_t hi = static_cast<uint64_t>(c.v >> 64);
        uint64_t x = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x2545f4914f6cdd1dULL);
        x ^= x >> 29;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 32;
        return static_cast<size_t>(x);
    }
};

struct OptResult {
    long long optimal_depth = 0;
    long long total_ops = 0;
    Schedule schedule;
    long long expanded_nodes = 0;
    TieBreak tie_break = TieBreak::none;
    long long max_popped_f = 0;  // admissibility diagnostic: max f over finalized pops
};

enum class SearchStatus : uint8_t { found, infeasible, memory_limit };

struct SearchResult {
    SearchStatus status = SearchStatus::infeasible;
    OptResult result;
};

namespace search_detail {

using u128 = unsigned __int128;

inline int top_bit(u128 v) {
    if (v == 0) return 0;
    uint64_t hi = static_cast<uint64_t>(v >> 64);
    if (hi) return 127 - __builtin_clzll(hi);
    return 63 - __builtin_clzll(static_cast<uint64_t>(v));
}

inline int popcount(u128 v) {
    return __builtin_popcountll(static_cast<uint64_t>(v)) +
           __builtin_popcountll(static_cast<uint64_t>(v >> 64));
}

inline u128 bit(int i) { return static_cast<u128>(1) << i; }

// Exact integer view of the weight profile: all weights scaled by the common
// denominator, so weighted caps compare as plain integers.
struct ScaledWeights {
    bool weighted = false;
    long long denom = 1;
    std::vector<long long> site;   // index 0..ell
    std::vector<long long> trans;
    long long cap = 0;             // scaled weighted cap (valid when weighted)

    static ScaledWeights make(int ell, const WeightProfile& w, const std::optional<Rat>& cap) {
        ScaledWeights sw;
        sw.weighted = cap.has_value();
        long long l = 1;
        auto fold = [&](long long q) {
            long long g = std::gcd(l, q);
            l = l / g * q;
        };
        for (int i = 0; i <= ell; ++i) {
            fold(w.site_weight(i).denominator());
            fold(w.transient_weight(i).denominator());
        }
        if (cap) fold(cap->denominator());
        sw.denom = l;
        sw.site.resize(static_cast<size_t>(ell) + 1);
        sw.trans.resize(static_cast<size_t>(ell) + 1);
        for (int i = 0; i <= ell; ++i) {
            const Rat s = w.site_weight(i);
            const Rat t = w.transient_weight(i);
            sw.site[static_cast<size_t>(i)] = s.numerator() * (l / s.denominator());
            sw.trans[static_cast<size_t>(i)] = t.numerator() * (l / t.denominator());
        }
        if (cap) sw.cap = cap->numerator() * (l / cap->denominator());
        return sw;
    }

    long long sum_sites(u128 mask) const {
        long long total = 0;
        while (mask) {
            const int i = top_bit(mask);
            total += site[static_cast<size_t>(i)];
            mask ^= bit(i);
        }
        return total;
    }
};

// Space feasibility of the forced blast prefix for marker set P: step j
// pebbles site j and ghosts site j-1 unless it is a marker.
inline bool prefix_feasible(u128 markers, int ell, int s, const ScaledWeights& sw) {
    long long count_below = 0;  // |markers in [1, j-1]|
    long long weight_below = 0;
    for (int j = 1; j <= ell; ++j) {
        // Counted sites: markers below j, the support j-1 (unless it is a
        // marker, already counted, or the source), and j itself.
        const bool extra_left = j - 1 >= 1 && (markers & bit(j - 1)) == 0;
        const long long space = count_below + (extra_left ? 1 : 0) + 1;
        if (space > s) return false;
        if (sw.weighted) {
            const long long wsp = weight_below + sw.site[static_cast<size_t>(j)] +
                                  (extra_left ? sw.site[static_cast<size_t>(j - 1)] : 0) +
                                  sw.trans[static_cast<size_t>(j)];
            if (wsp > sw.cap) return false;
        }
        if (j <= ell - 1 && (markers & bit(j)) != 0) {
            ++count_below;
            weight_below += sw.site[static_cast<size_t>(j)];
        }
    }
    return true;
}

inline std::vector<TimeStep> prefix_steps(u128 markers, int ell) {
    std::vector<TimeStep> steps;
    steps.reserve(static_cast<size_t>(ell));
    for (int j = 1; j <= ell; ++j) {
        TimeStep st{{pebble_at(j)}, {}};
        if (j - 1 >= 1 && (markers & bit(j - 1)) == 0) st.ghosts.push_back(j - 1);
        steps.push_back(std::move(st));
    }
    return steps;
}

constexpr int kMaxSite = 119;
constexpr u128 kSiteMask = ((static_cast<u128>(1) << 120) - 1) & ~static_cast<u128>(1);

inline PebbleConfig make_config(u128 sites, int frontier, bool target_present) {
    PebbleConfig c;
    c.v = (sites & kSiteMask) | (static_cast<u128>(frontier) << 120) |
          (target_present ? static_cast<u128>(1) : 0);
    return c;
}

inline u128 sites_of(PebbleConfig c) { return c.v & kSiteMask; }
inline int frontier_of(PebbleConfig c) { return static_cast<int>(c.v >> 120); }
inline bool target_of(PebbleConfig c) { return (c.v & 1) != 0; }

// Forward step from game-state Y to game-state X, decoded from the two
// configurations. Fresh pebbles, the frontier retraction (when F drops),
// the ghosts created by this step, and the target removal on a plain flag
// flip.
inline TimeStep materialize_step(PebbleConfig y, PebbleConfig x, int ell) {
    const u128 ybits = sites_of(y);
    const u128 xbits = sites_of(x);
    const u128 added = xbits & ~ybits;
    u128 removed = ybits & ~xbits;
    u128 ubit = 0;
    if (frontier_of(y) > frontier_of(x)) {
        ubit = bit(frontier_of(y));
        removed ^= ubit;
    }

    TimeStep step;
    for (int i = 1; i <= ell; ++i)
        if (added & bit(i)) step.moves.push_back(pebble_at(i));
    if (ubit) step.moves.push_back(unpebble_at(frontier_of(y)));
    if (target_of(y) && !target_of(x)) step.moves.push_back(unpebble_at(ell));
    for (int i = 1; i <= ell; ++i)
        if (removed & bit(i)) step.ghosts.push_back(i);
    return step;
}

}  // namespace search_detail

// Finds a minimum-depth schedule for the given pebble budget; s bounds the
// per-step space of Definition 2.6 and space_cap (when given) bounds the
// weighted counterpart, compared exactly. Deterministic: ties between
// minimum-depth solutions resolve by total Pebble+Unpebble count (when
// requested) and then by a fixed total order on configurations.
inline SearchResult astar_search(int ell, int s, const WeightProfile& weights = {},
                                 std::optional<Rat> space_cap = std::nullopt,
                                 Variant variant = Variant::plain,
                                 TieBreak tie_break = TieBreak::none,
                                 long long node_cap = 1LL << 26) {
    using namespace search_detail;
    if (ell < 1) throw std::invalid_argument("astar_search: length must be >= 1");
    if (s < 1) throw std::invalid_argument("astar_search: s must be >= 1");
    if (ell > kMaxSite + 1)
        throw LimitExceeded("astar_search: length exceeds the fixed-width state");

    const ScaledWeights sw = ScaledWeights::make(ell, weights, space_cap);
    const bool plain = variant == Variant::plain;
    const bool ops_matter = tie_break == TieBreak::min_total_ops;

    struct NodeRec {
        uint32_t g = 0;
        uint32_t ops = 0;
        PebbleConfig parent;
        bool has_parent = false;
        bool closed = false;
    };
    std::unordered_map<PebbleConfig, NodeRec, PebbleConfigHash> nodes;

    auto heuristic = [&](PebbleConfig c) -> long long {
        long long h = (ell - 1 - frontier_of(c)) + ell;
        if (plain && !target_of(c)) ++h;
        return h;
    };

    // Pop order: f first, always. Within an f-plateau, ops-optimizing runs
    // pop cheapest-first (lexicographic label correctness); plain depth
    // searches pop deepest-first, which dives toward a goal when optimal
    // schedules are plentiful. Either way the order is total, so results do
    // not depend on insertion order.
    struct Entry {
        long long f;
        uint32_t ops;
        uint32_t g;
        PebbleConfig key;
        bool ops_matter;
        bool operator>(const Entry& o) const {
            if (f != o.f) return f > o.f;
            if (ops_matter && ops != o.ops) return ops > o.ops;
            if (!ops_matter && g != o.g) return g < o.g;
            return o.key < key;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;

    const PebbleConfig start{};  // final state: no pebbles, target gone
    nodes[start] = NodeRec{};
    open.push(Entry{heuristic(start), 0, 0, start, ops_matter});

    SearchResult res;
    long long expanded = 0;
    long long max_f = 0;

    auto relax = [&](PebbleConfig y, PebbleConfig x, uint32_t g, uint32_t ops) {
        auto [it, inserted] = nodes.try_emplace(y);
        NodeRec& rec = it->second;
        if (!inserted && rec.closed) return;
        if (inserted || g < rec.g || (g == rec.g && ops < rec.ops)) {
            rec.g = g;
            rec.ops = ops;
            rec.parent = x;
            rec.has_parent = true;
            open.push(Entry{g + heuristic(y), ops, g, y, ops_matter});
        } else if (g == rec.g && ops == rec.ops && rec.has_parent && x < rec.parent) {
            rec.parent = x;  // deterministic choice among equal-cost parents
        }
    };

    // V_m: the state right after the blast step that pebbles the target.
    // The blast ghosts everything it passes except the markers, so the dirty
    // zone reaches exactly ell - 1.
    auto is_goal = [&](PebbleConfig c) {
        if (plain && !target_of(c)) return false;
        if (frontier_of(c) != ell - 1) return false;
        return prefix_feasible(sites_of(c), ell, s, sw);
    };

    while (!open.empty()) {
        const Entry e = open.top();
        open.pop();
        const auto it = nodes.find(e.key);
        if (it == nodes.end()) continue;
        if (it->second.closed) continue;
        if (e.g != it->second.g || e.ops != it->second.ops) continue;  // stale
        it->second.closed = true;
        const NodeRec rec = it->second;
        ++expanded;
        max_f = std::max(max_f, e.f);

        if (is_goal(e.key)) {
            OptResult& out = res.result;
            out.optimal_depth = rec.g + ell;
            out.tie_break = tie_break;
            out.expanded_nodes = expanded;
            out.max_popped_f = max_f;

            Schedule sched;
            sched.length = ell;
            sched.variant = variant;
            sched.steps = prefix_steps(sites_of(e.key), ell);
            PebbleConfig cur = e.key;
            while (!(cur == start)) {
                const NodeRec& r = nodes.at(cur);
                sched.steps.push_back(materialize_step(cur, r.parent, ell));
                cur = r.parent;
            }
            long long ops_total = 0;
            for (const TimeStep& st : sched.steps) ops_total += static_cast<long long>(st.moves.size());
            out.total_ops = ops_total;
            out.schedule = std::move(sched);
            res.status = SearchStatus::found;
            return res;
        }

        // Enumerate predecessors. Choose the subset A of this configuration's
        // pebbles that were freshly placed by the step (no two adjacent);
        // their supports that are not pebbled here were ghosted by the same
        // step. On top of that, optionally undo a frontier retraction
        // Unpebble(F+1) whose support F was kept or ghosted, or - on a plain
        // flag flip - the target removal Unpebble(ell), again with its
        // support ell-1 kept or ghosted.
        const PebbleConfig x = e.key;
        const u128 xbits = sites_of(x);
        const bool present = target_of(x);
        const int fx = frontier_of(x);
        const int pc_x = popcount(xbits);
        const long long wsum_x = sw.weighted ? sw.sum_sites(xbits) : 0;

        const uint32_t g1 = rec.g + 1;
        const int targ = plain && present ? 1 : 0;
        const long long targ_w = targ ? sw.site[static_cast<size_t>(ell)] : 0;

        u128 sub = xbits;
        while (true) {
            if ((sub & (sub << 1)) == 0) {
                const u128 ghosts = (sub >> 1) & ~xbits & ~static_cast<u128>(1);
                const int space_a = pc_x + popcount(ghosts);
                long long w_a = 0, trans_a = 0;
                if (sw.weighted) {
                    w_a = wsum_x + sw.sum_sites(ghosts);
                    u128 a = sub;
                    while (a) {
                        const int i = top_bit(a);
                        trans_a += sw.trans[static_cast<size_t>(i)];
                        a ^= bit(i);
                    }
                }
                const uint32_t nops = static_cast<uint32_t>(popcount(sub));
                const u128 ybase = (xbits & ~sub) | ghosts;

                // (a) pebbling-only step
                if (sub != 0 && space_a + targ <= s &&
                    (!sw.weighted || w_a + targ_w + trans_a <= sw.cap)) {
                    relax(make_config(ybase, fx, present), x, g1,
                          ops_matter ? rec.ops + nops : 0);
                }
                // (b) undo the frontier retraction Unpebble(fx + 1)
                if (fx + 1 <= ell - 1) {
                    const int u = fx + 1;
                    const long long u_w =
                        sw.weighted
                            ? sw.site[static_cast<size_t>(u)] + sw.trans[static_cast<size_t>(u)]
                            : 0;
                    // (b1) support fx kept across the step
                    if ((fx == 0 || (xbits & bit(fx)) != 0) && (sub & bit(fx)) == 0 &&
                        space_a + 1 + targ <= s &&
                        (!sw.weighted || w_a + u_w + targ_w + trans_a <= sw.cap)) {
                        relax(make_config(ybase | bit(u), u, present), x, g1,
                              ops_matter ? rec.ops + nops + 1 : 0);
                    }
                    // (b2) support fx ghosted in the same step
                    if (fx >= 1 && (xbits & bit(fx)) == 0 && space_a + 2 + targ <= s &&
                        (!sw.weighted ||
                         w_a + u_w + sw.site[static_cast<size_t>(fx)] + targ_w + trans_a <=
                             sw.cap)) {
                        relax(make_config(ybase | bit(fx) | bit(u), u, present), x, g1,
                              ops_matter ? rec.ops + nops + 1 : 0);
                    }
                }
                // (c) undo the target removal Unpebble(ell) (plain only)
                if (plain && !present && fx == ell - 1) {
                    const long long ell_w =
                        sw.weighted ? sw.site[static_cast<size_t>(ell)] +
                                          sw.trans[static_cast<size_t>(ell)]
                                    : 0;
                    // (c1) support ell-1 kept (trivial for ell == 1)
                    if ((ell == 1 || (xbits & bit(ell - 1)) != 0) &&
                        (ell == 1 || (sub & bit(ell - 1)) == 0) && space_a + 1 <= s &&
                        (!sw.weighted || w_a + ell_w + trans_a <= sw.cap)) {
                        relax(make_config(ybase, fx, true), x, g1,
                              ops_matter ? rec.ops + nops + 1 : 0);
                    }
                    // (c2) support ell-1 ghosted in the same step
                    if (ell >= 2 && (xbits & bit(ell - 1)) == 0 && space_a + 2 <= s &&
                        (!sw.weighted ||
                         w_a + ell_w + sw.site[static_cast<size_t>(ell - 1)] + trans_a <=
                             sw.cap)) {
                        relax(make_config(ybase | bit(ell - 1), fx, true), x, g1,
                              ops_matter ? rec.ops + nops + 1 : 0);
                    }
                }
            }
            if (sub == 0) break;
            sub = (sub - 1) & xbits;
        }

        if (static_cast<long long>(nodes.size()) > node_cap) {
            res.status = SearchStatus::memory_limit;
            res.result.expanded_nodes = expanded;
            return res;
        }
    }

    res.status = SearchStatus::infeasible;
    res.result.expanded_nodes = expanded;
    return res;
}

// Exhaustive forward BFS over the full state space {pebble, ghost, empty}^l,
// no reductions. Guarded to small instances; the ground truth the A* search
// is tested against.
inline SearchResult bfs_oracle(int ell, int s, const WeightProfile& weights = {},
                               std::optional<Rat> space_cap = std::nullopt,
                               Variant variant = Variant::plain) {
    using namespace search_detail;
    if (ell < 1 || s < 1) throw std::invalid_argument("bfs_oracle: bad parameters");
    if (ell > 10 || s > 6) throw LimitExceeded("bfs_oracle: guarded to length <= 10, s <= 6");

    const ScaledWeights sw = ScaledWeights::make(ell, weights, space_cap);
    const bool measured = variant == Variant::measured_target;

    // Key: 2 bits per site (1..ell), then the produced flag.
    const uint32_t nkeys = 1u << (2 * ell + 1);
    auto site_of = [&](uint32_t key, int i) -> SiteState {
        return static_cast<SiteState>((key >> (2 * (i - 1))) & 3u);
    };
    auto with_site = [&](uint32_t key, int i, SiteState st) -> uint32_t {
        const int sh = 2 * (i - 1);
        return (key & ~(3u << sh)) | (static_cast<uint32_t>(st) << sh);
    };
    const uint32_t produced_bit = 1u << (2 * ell);

    struct Prev {
        uint32_t parent;
        uint16_t pebbles, unpebbles, ghosts;  // site masks, bit i-1 for site i
    };
    std::vector<int32_t> dist(nkeys, -1);
    std::unordered_map<uint32_t, Prev> prev;
    std::vector<uint32_t> frontier{0}, next;
    dist[0] = 0;

    const uint32_t goal = produced_bit;  // all sites empty, target was produced
    long long expanded = 0;

    auto weight_of_key = [&](uint32_t key) -> long long {
        long long w = 0;
        for (int i = 1; i <= ell; ++i)
            if (site_of(key, i) == SiteState::pebble) w += sw.site[static_cast<size_t>(i)];
        return w;
    };

    int depth = 0;
    while (!frontier.empty()) {
        ++depth;
        next.clear();
        for (uint32_t from : frontier) {
            ++expanded;
            const long long base_count = [&] {
                long long c = 0;
                for (int i = 1; i <= ell; ++i)
                    if (site_of(from, i) == SiteState::pebble) ++c;
                return c;
            }();
            const long long base_w = sw.weighted ? weight_of_key(from) : 0;

            auto emit = [&](uint16_t pebbles, uint16_t unpebbles) {
                if (pebbles == 0 && unpebbles == 0) return;  // ghost-only steps disallowed
                uint32_t mid = from;
                long long trans = 0;
                for (int i = 1; i <= ell; ++i) {
                    if (pebbles & (1u << (i - 1))) {
                        mid = with_site(mid, i, SiteState::pebble);
                        trans += sw.trans[static_cast<size_t>(i)];
                    } else if (unpebbles & (1u << (i - 1))) {
                        mid = with_site(mid, i, SiteState::empty);
                        trans += sw.trans[static_cast<size_t>(i)];
                    }
                }
                // Ghost subsets over sites pebbled after phase 1.
                std::vector<int> pebbled;
                for (int i = 1; i <= ell; ++i)
                    if (site_of(mid, i) == SiteState::pebble) pebbled.push_back(i);
                const int np = static_cast<int>(pebbled.size());
                for (uint32_t gm = 0; gm < (1u << np); ++gm) {
                    uint32_t to = mid;
                    uint16_t gmask = 0;
                    for (int b = 0; b < np; ++b)
                        if (gm & (1u << b)) {
                            to = with_site(to, pebbled[static_cast<size_t>(b)], SiteState::ghost);
                            gmask |= static_cast<uint16_t>(1u << (pebbled[static_cast<size_t>(b)] - 1));
                        }
                    // Definition 2.6 space of this step, then the weighted one.
                    long long fresh = 0, fresh_w = 0;
                    for (int i = 1; i <= ell; ++i) {
                        if ((pebbles & (1u << (i - 1))) && site_of(to, i) == SiteState::pebble) {
                            ++fresh;
                            fresh_w += sw.site[static_cast<size_t>(i)];
                        }
                    }
                    if (base_count + fresh > s) continue;
                    if (sw.weighted && base_w + fresh_w + trans > sw.cap) continue;

                    uint32_t key = to | (from & produced_bit);
                    if (site_of(to, ell) == SiteState::pebble) {
                        key |= produced_bit;
                        if (measured && !(from & produced_bit))
                            key = with_site(key, ell, SiteState::empty);  // free Measure, once
                    }
                    if (dist[key] < 0) {
                        dist[key] = depth;
                        prev[key] = Prev{from, pebbles, unpebbles, gmask};
                        next.push_back(key);
                    }
                }
            };

            // Enumerate every phase-1 subset with pairwise disjoint active
            // sets: a move at site i occupies {i-1, i}, so the next eligible
            // site is i+2.
            std::vector<std::tuple<int, uint16_t, uint16_t>> work{{1, 0, 0}};
            while (!work.empty()) {
                auto [i, pm, um] = work.back();
                work.pop_back();
                if (i > ell) {
                    emit(pm, um);
                    continue;
                }
                work.push_back({i + 1, pm, um});  // no move at site i
                const bool left_pebbled = i == 1 || site_of(from, i - 1) == SiteState::pebble;
                if (left_pebbled) {
                    if (site_of(from, i) != SiteState::pebble)
                        work.push_back({i + 2, static_cast<uint16_t>(pm | (1u << (i - 1))), um});
                    else
                        work.push_back({i + 2, pm, static_cast<uint16_t>(um | (1u << (i - 1)))});
                }
            }
        }
        // Goal check per layer (BFS: first layer containing the goal is optimal).
        if (dist[goal] == depth) break;
        frontier.swap(next);
    }

    SearchResult res;
    if (dist[goal] < 0) {
        res.status = SearchStatus::infeasible;
        res.result.expanded_nodes = expanded;
        return res;
    }

    Schedule sched;
    sched.length = ell;
    sched.variant = variant;
    std::vector<TimeStep> rev;
    uint32_t cur = goal;
    while (cur != 0) {
        const Prev& p = prev.at(cur);
        TimeStep st;
        for (int i = 1; i <= ell; ++i)
            if (p.pebbles & (1u << (i - 1))) st.moves.push_back(pebble_at(i));
        for (int i = 1; i <= ell; ++i)
            if (p.unpebbles & (1u << (i - 1))) st.moves.push_back(unpebble_at(i));
        for (int i = 1; i <= ell; ++i)
            if (p.ghosts & (1u << (i - 1))) st.ghosts.push_back(i);
        rev.push_back(std::move(st));
        cur = p.parent;
    }
    sched.steps.assign(rev.rbegin(), rev.rend());

    res.status = SearchStatus::found;
    res.result.optimal_depth = dist[goal];
    res.result.schedule = std::move(sched);
    res.result.expanded_nodes = expanded;
    long long ops = 0;
    for (const TimeStep& st : res.result.schedule.steps) ops += static_cast<long long>(st.moves.size());
    res.result.total_ops = ops;
    return res;
}

// Smallest pebble budget that still reaches target_depth, scanning s upward.
inline int min_pebbles_for_depth(int ell, long long target_depth,
                                 const WeightProfile& weights = {},
                                 Variant variant = Variant::plain,
                                 bool cap_weighted = false) {
    if (target_depth < depth_lower_bound(ell, variant))
        throw std::invalid_argument("min_pebbles_for_depth: target below the depth lower bound");
    for (int s = 1; s <= ell + 1; ++s) {
        auto r = astar_search(ell, s, weights,
                              cap_weighted ? std::optional<Rat>(Rat{s}) : std::nullopt, variant,
                              TieBreak::none);
        if (r.status == SearchStatus::memory_limit)
            throw std::runtime_error("min_pebbles_for_depth: node cap exceeded");
        if (r.status == SearchStatus::found && r.result.optimal_depth <= target_depth) return s;
    }
    throw std::runtime_error("min_pebbles_for_depth: no budget reached the target");
}

}  // namespace pebbling
