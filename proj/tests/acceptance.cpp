// Acceptance suite: one line per criterion, PASS or FAIL, with the checked
// quantities. Criterion 8 is a long search (set PEBBLE_RUN_LONG=1 to run
// it); everything else runs unconditionally. Exits nonzero if any executed
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include "pebbling/a_sequence.hpp"
#include "pebbling/core.hpp"
#include "pebbling/estimator.hpp"
#include "pebbling/search.hpp"

using namespace pebbling;

namespace {

int failures = 0;

void report_line(int criterion, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Construction correctness over the full range and large samples.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    long long checked = 0;
    std::string err;
    auto check_one = [&](long long ell) {
        const auto tr = construct(ell, Variant::plain);
        const auto rep = validate(tr.schedule);
        if (!rep.valid) {
            err = "length " + std::to_string(ell) + " does not validate";
            return false;
        }
        if (rep.depth != 2 * ell) {
            err = "length " + std::to_string(ell) + " depth " + std::to_string(rep.depth);
            return false;
        }
        if (ell >= 7) {
            const long long bound = static_cast<long long>(
                std::ceil(2.47 * std::log2(static_cast<double>(ell)) - 2.77));
            if (rep.space > bound) {
                err = "length " + std::to_string(ell) + " space " + std::to_string(rep.space) +
                      " > " + std::to_string(bound);
                return false;
            }
        }
        ++checked;
        return true;
    };
    bool ok = true;
    for (long long ell = 1; ell <= 4096 && ok; ++ell) ok = check_one(ell);
    for (long long ell : {100000LL, 123457LL, 524288LL, 999983LL, 1000000LL})
        if (ok) ok = check_one(ell);
    std::ostringstream os;
    os << "construction validates with depth 2l and bounded space (" << checked
       << " lengths, " << std::fixed << seconds_since(t0) << " s)";
    report_line(1, ok, ok ? os.str() : err);
}

// 2. Blast/unblast depth and space against the lemma oracles.
void criterion2() {
    bool ok = true;
    std::string err;
    for (int k = 2; k <= 26 && ok; ++k) {
        const auto b = blast_space_profile(k);
        if (static_cast<long long>(b.size()) != ASeq::value_i64(k) - 1) {
            ok = false;
            err = "blast depth wrong at k=" + std::to_string(k);
            break;
        }
        for (size_t t = 0; t < b.size(); ++t)
            if (b[t] != b_formula(k, static_cast<long long>(t) + 1)) {
                ok = false;
                err = "blast space != b formula at k=" + std::to_string(k) + " t=" +
                      std::to_string(t + 1);
                break;
            }
    }
    for (int k = 5; k <= 26 && ok; ++k) {
        const auto u = unblast_space_profile(k);
        if (static_cast<long long>(u.size()) != ASeq::value_i64(k) - 1) {
            ok = false;
            err = "unblast depth wrong at k=" + std::to_string(k);
            break;
        }
        for (size_t t = 0; t < u.size(); ++t) {
            const long long tt = static_cast<long long>(t) + 1;
            if (u[t] != u_recurrence(k, tt) || (k >= 6 && u[t] > u_bound(k, tt))) {
                ok = false;
                err = "unblast space off at k=" + std::to_string(k) + " t=" + std::to_string(tt);
                break;
            }
        }
    }
    if (ok && unblast_space_profile(6) != std::vector<long long>{3, 3, 2, 1}) ok = false;
    if (ok && unblast_space_profile(7) != std::vector<long long>{4, 4, 4, 3, 2, 1}) ok = false;
    if (ok && unblast_space_profile(8) != std::vector<long long>{4, 5, 5, 4, 3, 3, 2, 1}) ok = false;
    report_line(2, ok,
                ok ? "blast space = closed form (k in [2,26]); unblast space = recurrence, "
                     "within bound, exact vectors at k=6,7,8"
                   : err);
}

// 3. A-sequence properties, exact, k <= 60.
void criterion3() {
    bool ok = true;
    std::string err;
    for (int k = 2; k <= 60 && ok; ++k) {
        const bool eq = a_seq(k - 1) == a_seq(k);
        if ((k == 3) != eq || a_seq(k - 1) > a_seq(k)) {
            ok = false;
            err = "monotonicity fails at k=" + std::to_string(k);
        }
    }
    for (int k = 4; k <= 60 && ok; ++k) {
        mpz_class sum = 2;
        for (int i = 1; i <= (k - 2) / 2; ++i) sum += a_seq(k - 2 * i - 1);
        if (a_seq(k) != sum) {
            ok = false;
            err = "partial-sum identity fails at k=" + std::to_string(k);
        }
    }
    for (int k = 6; k <= 60 && ok; ++k)
        if (a_seq(k) != a_seq(k - 1) + a_seq(k - 5)) {
            ok = false;
            err = "A_k = A_{k-1} + A_{k-5} fails at k=" + std::to_string(k);
        }
    for (int k = 4; k <= 60 && ok; ++k)
        if (a_seq(k) - a_seq(k - 1) < a_seq(k - 1) - a_seq(k - 2)) {
            ok = false;
            err = "difference monotonicity fails at k=" + std::to_string(k);
        }
    if (ok) {
        const mpq_class ah(mpz_class("13247179572448"), mpz_class("10000000000000"));
        if (!(ah * ah * ah - ah - 1 >= 0)) {
            ok = false;
            err = "alpha upper bound not certified";
        }
        mpq_class pw = 1;
        for (int k = 1; k <= 60 && ok; ++k) {
            pw *= ah;
            if (k >= 7 && mpq_class(a_seq(k)) * 100 < 94 * pw) {
                ok = false;
                err = "growth bound fails at k=" + std::to_string(k);
            }
        }
    }
    report_line(3, ok, ok ? "A-sequence items 1-5 hold exactly for k <= 60" : err);
}

// 4. Search optimality against the exhaustive oracle.
void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string err;
    int configs = 0;
    for (int ell = 1; ell <= 8 && ok; ++ell)
        for (int s = 1; s <= 5 && ok; ++s)
            for (Variant v : {Variant::plain, Variant::measured_target})
                for (int wi = 0; wi < 2 && ok; ++wi) {
                    WeightProfile w;
                    std::optional<Rat> cap;
                    if (wi) {
                        w = WeightProfile::factoring(2);
                        cap = Rat{s};
                    }
                    const auto a = astar_search(ell, s, w, cap, v, TieBreak::none);
                    const auto b = bfs_oracle(ell, s, w, cap, v);
                    ++configs;
                    if (a.status != b.status ||
                        (a.status == SearchStatus::found &&
                         a.result.optimal_depth != b.result.optimal_depth)) {
                        ok = false;
                        err = "mismatch at l=" + std::to_string(ell) + " s=" + std::to_string(s) +
                              " variant=" + (v == Variant::plain ? "plain" : "measured") +
                              " weights=" + std::to_string(wi);
                    }
                    if (ok && a.status == SearchStatus::found) {
                        const auto rep = validate(a.result.schedule, w);
                        if (!rep.valid || rep.depth != a.result.optimal_depth || rep.space > s ||
                            (cap && rep.weighted_space > *cap)) {
                            ok = false;
                            err = "schedule check fails at l=" + std::to_string(ell) +
                                  " s=" + std::to_string(s);
                        }
                    }
                }
    std::ostringstream os;
    os << "A* depth = oracle depth on the full sweep (" << configs << " configs, " << std::fixed
       << seconds_since(t0) << " s)";
    report_line(4, ok, ok ? os.str() : err);
}

// 5. The log D bound regression values.
void criterion5() {
    const long long with_terms = log_d_bound(2048, 222, 303, root_hermite(200), true);
    const long long without = log_d_bound(2048, 222, 303, root_hermite(200), false);
    const bool ok = with_terms == 44 && without == 26;
    report_line(5, ok,
                "log D bound at (2048, 222, 303, BKZ-200): " + std::to_string(with_terms) +
                    " with lower-order terms, " + std::to_string(without) + " without");
}

// 6. Parameter selection reproduces every reported (d, m, logD) triple.
void criterion6() {
    struct Row {
        int n, beta, d, m;
        long long log_d;
    };
    const Row rows[] = {
        {2048, 60, 90, 203, 59},  {2048, 120, 90, 242, 56},  {2048, 160, 94, 242, 54},
        {2048, 200, 94, 255, 53}, {4096, 60, 162, 314, 72},  {4096, 120, 166, 371, 67},
        {4096, 160, 166, 388, 65}, {4096, 200, 162, 401, 64},
    };
    bool ok = d_max(2048, 2) == 94;
    std::string err = ok ? "" : "d_max(2048, 2) != 94";
    for (const Row& r : rows) {
        const auto p = select_params(r.n, r.beta, 2);
        if (p.d != r.d || p.m != r.m || p.log_d != r.log_d) {
            ok = false;
            std::ostringstream os;
            os << "divergence at n=" << r.n << " beta=" << r.beta << ": scanned objective gives (d="
               << p.d << ", m=" << p.m << ", logD=" << p.log_d << "), reported (d=" << r.d
               << ", m=" << r.m << ", logD=" << r.log_d << ")";
            err = os.str();
        }
    }
    report_line(6, ok,
                ok ? "all eight (d, m, logD) triples reproduced at w=2; d_max(2048, 2) = 94" : err);
}

// 7. Depth reproduction via the variant lower bound.
void criterion7() {
    struct Row {
        int n, beta;
        long long depth;
        long long slack;
    };
    const Row rows[] = {
        {2048, 60, 175, 0},  {2048, 120, 163, 0}, {2048, 160, 157, 0}, {2048, 200, 157, 0},
        {4096, 120, 200, 1},  // reported one above the bound; permitted +-1
        {4096, 160, 193, 0}, {4096, 200, 187, 0},
    };
    bool ok = true;
    std::string err;
    for (const Row& r : rows) {
        const auto p = select_params(r.n, r.beta, 2);
        const int ell = game_length(p.log_d, 2);
        const long long bound = depth_lower_bound(ell, Variant::measured_target);
        if (std::llabs(bound - r.depth) > r.slack) {
            ok = false;
            err = "n=" + std::to_string(r.n) + " beta=" + std::to_string(r.beta) + ": 2l-1 = " +
                  std::to_string(bound) + " vs reported " + std::to_string(r.depth);
        }
    }
    report_line(7, ok,
                ok ? "2l-1 matches the reported depths (157, 163, 157, 175; 193, 187; 200 within 1)"
                   : err);
}

// 8. Long-running search certification, behind an opt-in gate.
void criterion8() {
    const char* gate = std::getenv("PEBBLE_RUN_LONG");
    if (!gate || std::string(gate) != "1") {
        std::printf("SKIP  criterion  8: long search gated off (set PEBBLE_RUN_LONG=1); "
                    "the suite passes it by omission, not by assertion\n");
        return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const WeightProfile w = WeightProfile::factoring(2);
    const auto r = astar_search(79, 12, w, Rat{12}, Variant::measured_target, TieBreak::none,
                                1LL << 26);
    if (r.status == SearchStatus::memory_limit) {
        report_line(8, false, "node cap exceeded; a memory limit is a reported failure");
        return;
    }
    if (r.status != SearchStatus::found) {
        report_line(8, false, "search reported infeasible at (79, 12)");
        return;
    }
    const auto rep = validate(r.result.schedule, w);
    const bool ok = rep.valid && r.result.optimal_depth == 157 && rep.depth == 157 &&
                    rep.weighted_space <= Rat{12};
    std::ostringstream os;
    os << "A* at (l=79, s=12, measured, factoring weights) certifies depth "
       << r.result.optimal_depth << ", total ops " << r.result.total_ops << " (reported total 253), "
       << std::fixed << seconds_since(t0) << " s";
    report_line(8, ok, os.str());
}

// 9. Totals and qubit ratios of the result tables.
void criterion9() {
    const long long s12_totals[][3] = {
        {2048, 60, 295}, {2048, 120, 266}, {2048, 160, 253},
        {4096, 120, 381}, {4096, 160, 345}, {4096, 200, 326},
    };
    bool ok = true;
    std::string err;
    for (const auto& row : s12_totals) {
        EstimatorParams p;
        p.n = static_cast<int>(row[0]);
        p.beta = static_cast<int>(row[1]);
        p.s = 12;
        const auto rep = estimate(p, Strategy::table);
        if (rep.total_mults != row[2]) {  // exact, well inside the +5% allowance
            ok = false;
            err = "total mismatch at n=" + std::to_string(p.n) + " beta=" + std::to_string(p.beta);
        }
    }
    for (const StaticRow& row : pebbling_result_rows()) {
        EstimatorParams p;
        p.n = row.n;
        p.beta = row.beta;
        p.s = row.s;
        const auto rep = estimate(p, Strategy::table);
        if (std::fabs(rep.qubit_ratio - row.qubits_per_n) > 0.1) {
            ok = false;
            err = "qubit ratio off at n=" + std::to_string(row.n) + " beta=" +
                  std::to_string(row.beta) + " s=" + std::to_string(row.s) + ": " +
                  std::to_string(rep.qubit_ratio);
        }
    }
    report_line(9, ok,
                ok ? "s=12 totals match the reported 253/266/295/345/326/381; recomputed qubit "
                     "ratios within 0.1 on all rows"
                   : err);
}

// 10. Fibonacci comparison rows.
void criterion10() {
    struct Row {
        int n, beta;
        long long r, s, d, m, log_d, k, depth, total;
        double qubits;
    };
    const Row rows[] = {
        {2048, 60, 1, 1, 165, 227, 52, 75, 900, 1800, 14.0},
        {2048, 60, 4, 2, 74, 210, 63, 31, 620, 1240, 13.3},
        {2048, 120, 1, 1, 177, 260, 48, 69, 828, 1656, 13.9},
        {2048, 120, 4, 2, 75, 228, 60, 29, 580, 1160, 13.1},
        {2048, 160, 1, 1, 189, 277, 46, 66, 792, 1584, 14.0},
        {2048, 160, 4, 2, 74, 253, 59, 29, 580, 1160, 13.1},
        {2048, 200, 1, 1, 222, 303, 44, 64, 768, 1536, 14.9},
        {2048, 200, 4, 2, 74, 278, 58, 28, 560, 1120, 13.0},
        {4096, 60, 1, 1, 290, 333, 66, 95, 1140, 2280, 14.7},
        {4096, 60, 4, 2, 129, 315, 77, 37, 740, 1480, 13.4},
        {4096, 120, 1, 1, 317, 381, 60, 87, 1044, 2088, 14.7},
        {4096, 120, 4, 2, 128, 363, 73, 35, 700, 1400, 13.2},
        {4096, 160, 1, 1, 358, 411, 57, 82, 984, 1968, 15.1},
        {4096, 160, 4, 2, 129, 367, 71, 34, 680, 1360, 13.2},
        {4096, 200, 1, 1, 354, 434, 55, 79, 948, 1896, 14.8},
        {4096, 200, 4, 2, 131, 427, 69, 34, 680, 1360, 13.2},
    };
    bool ok = true;
    std::string err;
    for (const Row& row : rows) {
        const auto [depth, total] = fibonacci_costs(row.r, row.s, row.k);
        if (depth != row.depth || total != row.total) {
            ok = false;
            err = "formula mismatch from the reported (d, K) at n=" + std::to_string(row.n) +
                  " beta=" + std::to_string(row.beta) + " r=" + std::to_string(row.r);
            break;
        }
        if (std::fabs(fibonacci_qubit_ratio(row.n, row.d, row.k, row.r, row.s) - row.qubits) > 0.1) {
            ok = false;
            err = "space bound off at n=" + std::to_string(row.n) + " beta=" +
                  std::to_string(row.beta) + " r=" + std::to_string(row.r);
            break;
        }
        const auto rep = fibonacci_estimate(row.n, row.beta, row.r, row.s);
        if (rep.d != row.d || rep.m != row.m || rep.log_d != row.log_d ||
            std::llabs(rep.fib_k - row.k) > 1) {
            ok = false;
            err = "selection or K off at n=" + std::to_string(row.n) + " beta=" +
                  std::to_string(row.beta) + " r=" + std::to_string(row.r) + " (got d=" +
                  std::to_string(rep.d) + " m=" + std::to_string(rep.m) + " logD=" +
                  std::to_string(rep.log_d) + " K=" + std::to_string(rep.fib_k) + ")";
            break;
        }
    }
    report_line(10, ok,
                ok ? "all 16 rows: depth/total exact from the reported (d, K); computed K within "
                     "1; space bounds within 0.1"
                   : err);
}

// 11. Randomized property floor.
void criterion11() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(424242);
    bool ok = true;
    std::string err;
    int searches = 0;
    for (int cfg = 0; cfg < 125 && ok; ++cfg) {
        const int ell = 1 + static_cast<int>(rng() % 20);
        const Variant v = rng() % 2 ? Variant::measured_target : Variant::plain;
        const bool weighted = rng() % 2;
        WeightProfile w;
        if (weighted) w = WeightProfile::factoring(2);
        long long prev = -1;
        for (int s = 1; s <= 8 && ok; ++s) {
            std::optional<Rat> cap;
            if (weighted) cap = Rat{s};
            const auto r = astar_search(ell, s, w, cap, v, TieBreak::none);
            ++searches;
            if (r.status != SearchStatus::found) continue;
            const auto rep = validate(r.result.schedule, w);
            if (!rep.valid || rep.depth != r.result.optimal_depth) {
                ok = false;
                err = "invalid schedule at l=" + std::to_string(ell) + " s=" + std::to_string(s);
            }
            if (r.result.optimal_depth < depth_lower_bound(ell, v)) {
                ok = false;
                err = "depth below bound at l=" + std::to_string(ell);
            }
            if (prev >= 0 && r.result.optimal_depth > prev) {
                ok = false;
                err = "depth increased in s at l=" + std::to_string(ell) +
                      " s=" + std::to_string(s);
            }
            prev = r.result.optimal_depth;
        }
    }
    std::ostringstream os;
    os << searches << " randomized searches: schedules validate, depths respect the bound and "
       << "are non-increasing in s (" << std::fixed << seconds_since(t0) << " s)";
    report_line(11, ok, ok ? os.str() : err);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all executed criteria passed\n");
    return 0;
}
