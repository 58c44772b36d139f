#pragma once

// Parallel spooky pebble games on a line graph: states, moves, parallel time
// steps, schedule replay and the four metrics (depth / cost / space /
// weighted space).
//
// Sites are indexed 0..length; site 0 is a dummy that always holds a pebble.
// A time step has two phases: phase 1 is a set of Pebble/Unpebble moves with
// pairwise disjoint active sets, phase 2 is a set of Ghost moves. Ghost-only
// steps are not allowed in schedules.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace pebbling {

using Rat = boost::rational<long long>;

enum class SiteState : uint8_t { empty = 0, pebble = 1, ghost = 2 };

enum class MoveKind : uint8_t { pebble, unpebble, ghost };

enum class Variant : uint8_t { plain, measured_target };

struct Move {
    MoveKind kind;
    int index;  // in [1, length]

    friend bool operator==(const Move&, const Move&) = default;
};

inline Move pebble_at(int i) { return {MoveKind::pebble, i}; }
inline Move unpebble_at(int i) { return {MoveKind::unpebble, i}; }

// Phase-1 moves plus phase-2 ghost indices.
struct TimeStep {
    std::vector<Move> moves;   // Pebble/Unpebble only
    std::vector<int> ghosts;   // sites measured in phase 2

    friend bool operator==(const TimeStep&, const TimeStep&) = default;
};

struct Schedule {
    int length = 0;
    Variant variant = Variant::plain;
    std::vector<TimeStep> steps;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct GameState {
    int length = 0;
    std::vector<SiteState> sites;  // indices 0..length, sites[0] == pebble

    static GameState initial(int length) {
        GameState st;
        st.length = length;
        st.sites.assign(static_cast<size_t>(length) + 1, SiteState::empty);
        st.sites[0] = SiteState::pebble;
        return st;
    }
};

struct StepError : std::runtime_error {
    enum class Kind { precondition_violated, overlapping_active_sets };
    Kind kind;
    std::optional<Move> move;

    StepError(Kind k, std::optional<Move> m, const std::string& what)
        : std::runtime_error(what), kind(k), move(m) {}
};

// Per-site persistent weight (default 1) and transient weight charged to
// phase-1 moves at that site (default 0). Residue rules express profiles
// like "extra ancilla register at every i = 1 mod (w+1)".
struct WeightProfile {
    struct TransientRule {
        int mod = 0;
        int residue = 0;
        Rat weight{0};
    };

    Rat default_site_weight{1};
    std::vector<TransientRule> transient_rules;
    std::map<int, Rat> site_overrides;
    std::map<int, Rat> transient_overrides;

    Rat site_weight(int i) const {
        auto it = site_overrides.find(i);
        return it != site_overrides.end() ? it->second : default_site_weight;
    }

    Rat transient_weight(int i) const {
        auto it = transient_overrides.find(i);
        if (it != transient_overrides.end()) return it->second;
        Rat w{0};
        for (const auto& r : transient_rules)
            if (r.mod > 0 && i % r.mod == r.residue) w += r.weight;
        return w;
    }

    bool is_unit() const {
        return default_site_weight == Rat{1} && transient_rules.empty() &&
               site_overrides.empty() && transient_overrides.empty();
    }

    // Ancilla-aware profile for the factoring application: one extra
    // transient register at every multiplicative-update index.
    static WeightProfile factoring(int window, Rat tau = Rat{1}) {
        WeightProfile w;
        w.transient_rules.push_back({window + 1, 1 % (window + 1), tau});
        return w;
    }
};

struct ValidationFailure {
    int step_index = -1;  // 0-based; -1 means end-state failure
    std::string reason;
};

struct ValidationReport {
    bool valid = false;
    long long depth = 0;
    long long cost = 0;
    long long space = 0;
    Rat weighted_space{0};
    std::optional<ValidationFailure> failure;
};

inline int move_target(const Move& m) { return m.index; }

// Applies one time step to a copy of `state`. Throws StepError when a
// phase-1 precondition fails, active sets overlap, or a ghost targets a
// non-pebbled site (phase-2 legality is judged after phase 1).
inline GameState apply_time_step(const GameState& state, const TimeStep& step) {
    GameState out = state;
    const int ell = state.length;

    std::vector<uint8_t> active(static_cast<size_t>(ell) + 1, 0);
    auto claim = [&](int site, const Move& m) {
        if (active[static_cast<size_t>(site)]) {
            throw StepError(StepError::Kind::overlapping_active_sets, m,
                            "overlapping active sets at site " + std::to_string(site));
        }
        active[static_cast<size_t>(site)] = 1;
    };

    // Structural overlap check first: it does not depend on the state.
    for (const Move& m : step.moves) {
        if (m.index < 1 || m.index > ell)
            throw StepError(StepError::Kind::precondition_violated, m,
                            "move index out of range");
        claim(m.index - 1, m);
        claim(m.index, m);
    }

    for (const Move& m : step.moves) {
        switch (m.kind) {
            case MoveKind::pebble:
                if (state.sites[static_cast<size_t>(m.index - 1)] != SiteState::pebble)
                    throw StepError(StepError::Kind::precondition_violated, m,
                                    "Pebble(" + std::to_string(m.index) + "): site " +
                                        std::to_string(m.index - 1) + " not pebbled");
                if (state.sites[static_cast<size_t>(m.index)] == SiteState::pebble)
                    throw StepError(StepError::Kind::precondition_violated, m,
                                    "Pebble(" + std::to_string(m.index) + "): site already pebbled");
                out.sites[static_cast<size_t>(m.index)] = SiteState::pebble;
                break;
            case MoveKind::unpebble:
                if (state.sites[static_cast<size_t>(m.index - 1)] != SiteState::pebble ||
                    state.sites[static_cast<size_t>(m.index)] != SiteState::pebble)
                    throw StepError(StepError::Kind::precondition_violated, m,
                                    "Unpebble(" + std::to_string(m.index) +
                                        "): needs pebbles at sites " +
                                        std::to_string(m.index - 1) + " and " +
                                        std::to_string(m.index));
                out.sites[static_cast<size_t>(m.index)] = SiteState::empty;
                break;
            case MoveKind::ghost:
                throw StepError(StepError::Kind::precondition_violated, m,
                                "Ghost moves belong to phase 2");
        }
    }

    for (int g : step.ghosts) {
        Move gm{MoveKind::ghost, g};
        if (g < 1 || g > ell)
            throw StepError(StepError::Kind::precondition_violated, gm,
                            "ghost index out of range");
        if (out.sites[static_cast<size_t>(g)] != SiteState::pebble)
            throw StepError(StepError::Kind::precondition_violated, gm,
                            "Ghost(" + std::to_string(g) + "): site not pebbled after phase 1");
        out.sites[static_cast<size_t>(g)] = SiteState::ghost;
    }
    return out;
}

// Minimum achievable depth: the rightmost occupied index moves by at most
// one per step, so 2*length for plain games and 2*length - 1 when the target
// pebble is consumed by the free measurement.
inline long long depth_lower_bound(int length, Variant variant) {
    if (length < 1) throw std::invalid_argument("depth_lower_bound: length must be >= 1");
    return variant == Variant::plain ? 2LL * length : 2LL * length - 1;
}

namespace detail {

// Shared replay core. Computes per-step space usage (number of sites in
// [1, length] pebbled at either end of the step) and, when `weights` is
// non-null, the weighted counterpart as an exact rational scaled to int64.
struct Replay {
    const Schedule& sched;
    const WeightProfile* weights;

    long long denom = 1;                 // common denominator for scaled weights
    std::vector<long long> site_w;       // scaled persistent weights, index 0..ell
    std::vector<long long> trans_w;      // scaled transient weights

    std::vector<SiteState> sites;
    long long pebble_count = 0;          // pebbles in [1, ell]
    long long weight_sum = 0;            // scaled persistent weight of pebbled sites

    explicit Replay(const Schedule& s, const WeightProfile* w) : sched(s), weights(w) {
        const int ell = s.length;
        sites.assign(static_cast<size_t>(ell) + 1, SiteState::empty);
        sites[0] = SiteState::pebble;
        if (weights) {
            long long l = 1;
            auto fold = [&](const Rat& r) {
                long long q = r.denominator();
                long long g = std::gcd(l, q);
                l = l / g * q;
            };
            for (int i = 0; i <= ell; ++i) {
                fold(weights->site_weight(i));
                fold(weights->transient_weight(i));
            }
            denom = l;
            site_w.resize(static_cast<size_t>(ell) + 1);
            trans_w.resize(static_cast<size_t>(ell) + 1);
            for (int i = 0; i <= ell; ++i) {
                Rat sw = weights->site_weight(i);
                Rat tw = weights->transient_weight(i);
                site_w[static_cast<size_t>(i)] = sw.numerator() * (denom / sw.denominator());
                trans_w[static_cast<size_t>(i)] = tw.numerator() * (denom / tw.denominator());
            }
        }
    }

    void set(int i, SiteState st) {
        auto& slot = sites[static_cast<size_t>(i)];
        if (i >= 1) {
            if (slot == SiteState::pebble && st != SiteState::pebble) {
                --pebble_count;
                if (weights) weight_sum -= site_w[static_cast<size_t>(i)];
            } else if (slot != SiteState::pebble && st == SiteState::pebble) {
                ++pebble_count;
                if (weights) weight_sum += site_w[static_cast<size_t>(i)];
            }
        }
        slot = st;
    }
};

}  // namespace detail

// Replays `schedule` from the initial state. On success all four metrics are
// reported; on the first offending step the report carries its index and
// reason. Pure function of (schedule, weights).
inline ValidationReport validate(const Schedule& schedule, const WeightProfile& weights = {}) {
    ValidationReport rep;
    const int ell = schedule.length;
    if (ell < 1) {
        rep.failure = ValidationFailure{-1, "length must be >= 1"};
        return rep;
    }

    detail::Replay rp(schedule, &weights);
    bool produced = false;
    bool measured = false;
    long long max_space = 0;
    long long max_wspace = 0;
    long long cost = 0;

    std::vector<uint8_t> active(static_cast<size_t>(ell) + 1, 0);
    std::vector<int> touched;

    for (size_t t = 0; t < schedule.steps.size(); ++t) {
        const TimeStep& step = schedule.steps[t];
        auto fail = [&](const std::string& why) {
            rep.failure = ValidationFailure{static_cast<int>(t), why};
            return rep;
        };

        if (step.moves.empty()) return fail("ghost-only time steps are not allowed");

        // Phase 1: check disjoint active sets and preconditions, then apply.
        touched.clear();
        bool overlap = false;
        for (const Move& m : step.moves) {
            if (m.index < 1 || m.index > ell) return fail("move index out of range");
            if (m.kind == MoveKind::ghost) return fail("ghost listed as a phase-1 move");
            for (int site : {m.index - 1, m.index}) {
                if (active[static_cast<size_t>(site)]) overlap = true;
                active[static_cast<size_t>(site)] = 1;
                touched.push_back(site);
            }
        }
        for (int site : touched) active[static_cast<size_t>(site)] = 0;
        if (overlap) return fail("overlapping active sets");

        for (const Move& m : step.moves) {
            const SiteState left = rp.sites[static_cast<size_t>(m.index - 1)];
            const SiteState self = rp.sites[static_cast<size_t>(m.index)];
            if (m.kind == MoveKind::pebble) {
                if (left != SiteState::pebble || self == SiteState::pebble)
                    return fail("Pebble(" + std::to_string(m.index) + ") precondition violated");
            } else {
                if (left != SiteState::pebble || self != SiteState::pebble)
                    return fail("Unpebble(" + std::to_string(m.index) + ") precondition violated");
            }
        }

        const long long count_before = rp.pebble_count;
        const long long wsum_before = rp.weight_sum;
        long long fresh = 0;
        long long fresh_w = 0;
        long long trans = 0;
        for (const Move& m : step.moves) {
            ++cost;
            trans += rp.trans_w[static_cast<size_t>(m.index)];
            if (m.kind == MoveKind::pebble) {
                ++fresh;
                fresh_w += rp.site_w[static_cast<size_t>(m.index)];
                rp.set(m.index, SiteState::pebble);
            } else {
                rp.set(m.index, SiteState::empty);
            }
        }

        // Phase 2. A ghost of a site pebbled earlier in this very step makes
        // that site pebbled at neither end, so it leaves the space count.
        for (int g : step.ghosts) {
            if (g < 1 || g > ell) return fail("ghost index out of range");
            if (rp.sites[static_cast<size_t>(g)] != SiteState::pebble)
                return fail("Ghost(" + std::to_string(g) + ") targets a non-pebbled site");
            bool fresh_here = false;
            for (const Move& m : step.moves)
                if (m.kind == MoveKind::pebble && m.index == g) fresh_here = true;
            if (fresh_here) {
                --fresh;
                fresh_w -= rp.site_w[static_cast<size_t>(g)];
            }
            rp.set(g, SiteState::ghost);
        }

        max_space = std::max(max_space, count_before + fresh);
        max_wspace = std::max(max_wspace, wsum_before + fresh_w + trans);

        if (rp.sites[static_cast<size_t>(ell)] == SiteState::pebble) {
            produced = true;
            if (schedule.variant == Variant::measured_target && !measured) {
                measured = true;  // free Measure event, once, between steps
                rp.set(ell, SiteState::empty);
            }
        }
    }

    rep.depth = static_cast<long long>(schedule.steps.size());
    rep.cost = cost;
    rep.space = max_space;
    rep.weighted_space = Rat{max_wspace, rp.denom};

    if (!produced) {
        rep.failure = ValidationFailure{-1, "site " + std::to_string(ell) + " is never pebbled"};
        return rep;
    }
    if (rp.pebble_count != 0) {
        rep.failure = ValidationFailure{-1, "final state still holds pebbles"};
        return rep;
    }
    for (int i = 1; i <= ell; ++i) {
        if (rp.sites[static_cast<size_t>(i)] == SiteState::ghost) {
            rep.failure = ValidationFailure{-1, "final state still holds a ghost at site " + std::to_string(i)};
            return rep;
        }
    }
    rep.valid = true;
    return rep;
}

// Per-step space profile of a valid schedule (same accounting as validate).
inline std::vector<long long> space_profile(const Schedule& schedule) {
    detail::Replay rp(schedule, nullptr);
    const int ell = schedule.length;
    bool measured = false;
    std::vector<long long> profile;
    profile.reserve(schedule.steps.size());
    for (const TimeStep& step : schedule.steps) {
        const long long before = rp.pebble_count;
        long long fresh = 0;
        for (const Move& m : step.moves) {
            if (m.kind == MoveKind::pebble) {
                ++fresh;
                rp.set(m.index, SiteState::pebble);
            } else {
                rp.set(m.index, SiteState::empty);
            }
        }
        for (int g : step.ghosts) {
            for (const Move& m : step.moves)
                if (m.kind == MoveKind::pebble && m.index == g) --fresh;
            rp.set(g, SiteState::ghost);
        }
        profile.push_back(before + fresh);
        if (rp.sites[static_cast<size_t>(ell)] == SiteState::pebble &&
            schedule.variant == Variant::measured_target && !measured) {
            measured = true;
            rp.set(ell, SiteState::empty);
        }
    }
    return profile;
}

}  // namespace pebbling
