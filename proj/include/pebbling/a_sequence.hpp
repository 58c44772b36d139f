#pragma once

// The A-sequence construction: optimal-depth parallel spooky pebbling of a
// line graph. Blast sweeps a pebble across a segment leaving marker pebbles
// at A-sequence spacings; Unblast cleans a blasted segment right to left,
// re-blasting the left part in parallel. The full game reaches depth exactly
// 2*length (2*length - 1 when the target is measured away) with
// O(log length) pebbles.
//
// b_formula / u_bound / u_recurrence are closed-form space references used
// as independent oracles by the tests; the step emission never consults them.

#include <cstdlib>
#include <mutex>
#include <vector>

#include <gmpxx.h>

#include "pebbling/core.hpp"

namespace pebbling {

struct SpanNotASequence : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A_1 = 1, A_2 = 2, A_3 = 2, A_k = A_{k-2} + A_{k-3}.
class ASeq {
  public:
    static const mpz_class& value(int k) {
        if (k < 1) throw OutOfRange("a_seq: k must be >= 1");
        static std::vector<mpz_class> memo{0, 1, 2, 2};  // memo[0] unused
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        while (static_cast<int>(memo.size()) <= k) {
            const size_t n = memo.size();
            memo.push_back(memo[n - 2] + memo[n - 3]);
        }
        return memo[static_cast<size_t>(k)];
    }

    static long long value_i64(int k) {
        const mpz_class& v = value(k);
        if (!v.fits_slong_p()) throw OutOfRange("a_seq: value does not fit in 64 bits");
        return v.get_si();
    }
};

inline mpz_class a_seq(int k) { return ASeq::value(k); }

// Largest index j with A_j <= n. Note a_inv(2) = 3.
inline int a_inv(const mpz_class& n) {
    if (n < 1) throw OutOfRange("a_inv: n must be >= 1");
    int j = 1;
    while (ASeq::value(j + 1) <= n) ++j;
    return j;
}

inline int a_inv(long long n) { return a_inv(mpz_class(static_cast<long>(n))); }

// Smallest k >= 2 with A_k >= n.
inline int a_index_geq(long long n) {
    int k = 2;
    while (ASeq::value_i64(k) < n) ++k;
    return k;
}

namespace aseq_detail {

// Blast over [i_start, i_start + A_k - 1]. Emits A_k - 1 steps; step t
// pebbles site i_start + t and ghosts its predecessor unless that site stays
// behind as a marker.
inline void emit_blast(int k, long long i_start, std::vector<TimeStep>& out) {
    if (k == 1) return;  // single-site segment, nothing to do
    if (k == 2 || k == 3) {
        out.push_back(TimeStep{{pebble_at(static_cast<int>(i_start + 1))}, {}});
        return;
    }
    const long long a_km3 = ASeq::value_i64(k - 3);
    out.push_back(TimeStep{{pebble_at(static_cast<int>(i_start + 1))}, {}});
    for (long long j = i_start + 2; j <= i_start + a_km3; ++j)
        out.push_back(TimeStep{{pebble_at(static_cast<int>(j))}, {static_cast<int>(j - 1)}});
    emit_blast(k - 2, i_start + a_km3, out);
}

// Marker pebbles left behind by emit_blast (including the one at i_start).
inline void blast_markers(int k, long long i_start, std::vector<long long>& out) {
    out.push_back(i_start);
    if (k == 1) return;
    if (k == 2 || k == 3) {
        out.push_back(i_start + 1);
        return;
    }
    blast_markers(k - 2, i_start + ASeq::value_i64(k - 3), out);
}

inline void merge_parallel(TimeStep& dst, const TimeStep& src) {
    // The two sub-schedules act on disjoint segments; check rather than assume.
    for (const Move& a : dst.moves)
        for (const Move& b : src.moves)
            if (std::abs(a.index - b.index) < 2)
                throw std::logic_error("unblast interleaving: active sets overlap at site " +
                                       std::to_string(a.index));
    dst.moves.insert(dst.moves.end(), src.moves.begin(), src.moves.end());
    dst.ghosts.insert(dst.ghosts.end(), src.ghosts.begin(), src.ghosts.end());
}

// Unblast over [i_start, i_start + A_k - 1], entered in the blast exit
// state. Step t unpebbles site i_start + A_k - t; the first
// A_{k-2} - A_{k-3} steps clean the right segment alone, the next
// A_{k-3} - 1 run its tail in parallel with a re-blast of the left segment.
inline void emit_unblast(int k, long long i_start, std::vector<TimeStep>& out) {
    if (k == 1) return;
    if (k == 2 || k == 3) {
        out.push_back(TimeStep{{unpebble_at(static_cast<int>(i_start + 1))}, {}});
        return;
    }
    const long long a_km3 = ASeq::value_i64(k - 3);
    const long long split = ASeq::value_i64(k - 2) - a_km3;

    std::vector<TimeStep> right;
    emit_unblast(k - 2, i_start + a_km3, right);
    std::vector<TimeStep> left_blast;
    emit_blast(k - 3, i_start, left_blast);
    if (static_cast<long long>(right.size()) != split + static_cast<long long>(left_blast.size()))
        throw std::logic_error("unblast interleaving: step-count split mismatch");

    for (long long t = 0; t < split; ++t) out.push_back(std::move(right[static_cast<size_t>(t)]));
    for (size_t t = 0; t < left_blast.size(); ++t) {
        TimeStep step = std::move(right[static_cast<size_t>(split) + t]);
        merge_parallel(step, left_blast[t]);
        out.push_back(std::move(step));
    }
    out.push_back(TimeStep{{unpebble_at(static_cast<int>(i_start + a_km3))}, {}});
    emit_unblast(k - 3, i_start, out);
}

inline int k_for_span(long long i_start, long long i_end) {
    if (i_end < i_start) throw SpanNotASequence("segment is empty");
    const long long span = i_end - i_start;
    if (span == 0) return 1;
    int k = 2;
    while (ASeq::value_i64(k) - 1 < span) ++k;
    if (ASeq::value_i64(k) - 1 != span)
        throw SpanNotASequence("segment length " + std::to_string(span + 1) +
                               " is not A_k for any k");
    return k;
}

}  // namespace aseq_detail

// Blast(i_start, i_end): requires i_end - i_start = A_k - 1 and a pebble at
// i_start. Leaves markers at A-sequence offsets, ghosts elsewhere.
inline std::vector<TimeStep> blast(long long i_start, long long i_end) {
    const int k = aseq_detail::k_for_span(i_start, i_end);
    std::vector<TimeStep> out;
    aseq_detail::emit_blast(k, i_start, out);
    return out;
}

// Unblast(i_start, i_end): requires the blast exit state; leaves only the
// pebble at i_start.
inline std::vector<TimeStep> unblast(long long i_start, long long i_end) {
    const int k = aseq_detail::k_for_span(i_start, i_end);
    std::vector<TimeStep> out;
    aseq_detail::emit_unblast(k, i_start, out);
    return out;
}

struct ConstructionTrace {
    Schedule schedule;
    std::vector<long long> per_step_space;
};

// Full optimal-depth construction, truncated from game length A_k down to
// `length`: site i of the length-A_k game maps to i - (A_k - length), moves
// on dropped sites vanish, and a step whose phase 1 empties out is deleted
// with any surviving ghosts merged into the previous kept step.
inline ConstructionTrace construct(long long length, Variant variant) {
    if (length < 1) throw std::invalid_argument("construct: length must be >= 1");
    const int k = a_index_geq(length);
    const long long full = ASeq::value_i64(k);
    const long long offset = full - length;

    std::vector<TimeStep> steps;
    aseq_detail::emit_blast(k, 0, steps);
    steps.push_back(TimeStep{{pebble_at(static_cast<int>(full))}, {}});
    if (variant == Variant::plain)
        steps.push_back(TimeStep{{unpebble_at(static_cast<int>(full))}, {}});
    aseq_detail::emit_unblast(k, 0, steps);

    Schedule sched;
    sched.length = static_cast<int>(length);
    sched.variant = variant;
    for (TimeStep& step : steps) {
        TimeStep mapped;
        for (const Move& m : step.moves)
            if (m.index - offset >= 1)
                mapped.moves.push_back({m.kind, static_cast<int>(m.index - offset)});
        for (int g : step.ghosts)
            if (g - offset >= 1) mapped.ghosts.push_back(static_cast<int>(g - offset));
        if (mapped.moves.empty()) {
            if (!mapped.ghosts.empty()) {
                if (sched.steps.empty())
                    throw std::logic_error("construct: ghosts with no surviving step to ride");
                sched.steps.back().ghosts.insert(sched.steps.back().ghosts.end(),
                                                 mapped.ghosts.begin(), mapped.ghosts.end());
            }
            continue;
        }
        sched.steps.push_back(std::move(mapped));
    }

    ConstructionTrace trace;
    trace.per_step_space = space_profile(sched);
    trace.schedule = std::move(sched);
    return trace;
}

// Lemma reference values. b_formula is the exact blast space at step t;
// u_bound is the piecewise upper bound on unblast space; u_recurrence is the
// exact unblast space via the recurrence.

inline long long b_formula(int k, long long t) {
    if (k < 2) throw OutOfRange("b_formula: k must be >= 2");
    const long long ak = ASeq::value_i64(k);
    if (t < 1 || t > ak - 1) throw OutOfRange("b_formula: t out of [1, A_k - 1]");
    const long long a = k - a_inv(ak - t + 1);
    const long long half_up = a >= 0 ? (a + 1) / 2 : a / 2;  // ceil(a / 2)
    return half_up + 1;
}

inline long long u_recurrence(int k, long long t) {
    if (k < 2) throw OutOfRange("u_recurrence: k must be >= 2");
    const long long ak = ASeq::value_i64(k);
    if (t < 1 || t > ak - 1) throw OutOfRange("u_recurrence: t out of [1, A_k - 1]");
    if (k == 2 || k == 3) return 1;
    if (k == 4) return t == 1 ? 2 : 1;
    const long long a_km2 = ASeq::value_i64(k - 2);
    const long long a_km3 = ASeq::value_i64(k - 3);
    if (t <= a_km2 - a_km3) return 1 + u_recurrence(k - 2, t);
    if (t <= a_km2 - 1) return b_formula(k - 3, t - (a_km2 - a_km3)) + 1 + u_recurrence(k - 2, t);
    if (t == a_km2) return (k - 1) / 2;
    return u_recurrence(k - 3, t - a_km2);
}

inline long long u_bound(int k, long long t) {
    if (k < 6) throw OutOfRange("u_bound: k must be >= 6");
    const long long ak = ASeq::value_i64(k);
    if (t < 1 || t > ak - 1) throw OutOfRange("u_bound: t out of [1, A_k - 1]");
    if (t <= ak - ASeq::value_i64(k - 1) + 1) return k - 3;
    if (t <= ak - ASeq::value_i64(k - 2) + 1) return k - 4;
    if (t <= ak - ASeq::value_i64(k - 3) + 1) return k - 5;
    if (t <= ak - ASeq::value_i64(k - 5) + 1) return k - 6;
    for (int r = 3; r <= (k - 3) / 2; ++r) {
        if (t >= ak - ASeq::value_i64(k - 2 * r + 1) + 2 && t <= ak - ASeq::value_i64(k - 2 * r - 1) + 1)
            return k - r - 5;
    }
    throw OutOfRange("u_bound: t not covered");
}

// Instrumented standalone replays over a segment [0, A_k - 1], measuring the
// Definition-2.6 space of each step while excluding the given pebble at the
// segment start (site 0 here). Used by tests against the lemma oracles.

inline std::vector<long long> blast_space_profile(int k) {
    const long long span = ASeq::value_i64(k) - 1;
    Schedule seg;
    seg.length = static_cast<int>(span);
    seg.variant = Variant::plain;
    seg.steps = blast(0, span);
    return space_profile(seg);
}

inline std::vector<long long> unblast_space_profile(int k) {
    const long long span = ASeq::value_i64(k) - 1;
    Schedule seg;
    seg.length = static_cast<int>(span);
    seg.variant = Variant::plain;
    seg.steps = blast(0, span);
    const size_t blast_len = seg.steps.size();
    auto tail = unblast(0, span);
    seg.steps.insert(seg.steps.end(), tail.begin(), tail.end());
    auto prof = space_profile(seg);
    return std::vector<long long>(prof.begin() + static_cast<long long>(blast_len), prof.end());
}

}  // namespace pebbling
