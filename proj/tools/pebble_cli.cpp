// Command-line front end: construction, optimal search, validation, metrics
// and factoring cost estimation with machine-readable output.
//
// Exit codes: 0 ok, 1 I/O or parse failure, 2 invalid flags, 3 infeasible,
// 4 node cap exceeded, 5 invalid schedule. Diagnostics go to stderr, data to
// stdout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pebbling/a_sequence.hpp"
#include "pebbling/core.hpp"
#include "pebbling/estimator.hpp"
#include "pebbling/search.hpp"
#include "pebbling/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitMemoryLimit = 4;
constexpr int kExitInvalidSchedule = 5;

long long default_node_cap() {
    if (const char* env = std::getenv("PEBBLE_NODE_CAP")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring malformed PEBBLE_NODE_CAP\n";
    }
    return 1LL << 26;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::ios_base::failure("write to " + path + " failed");
}

pebbling::Variant parse_variant(const std::string& v) {
    if (v == "plain") return pebbling::Variant::plain;
    if (v == "measured_target") return pebbling::Variant::measured_target;
    throw CLI::ValidationError("--variant", "must be 'plain' or 'measured_target'");
}

pebbling::OutputFormat parse_format(const std::string& f) {
    if (f == "json") return pebbling::OutputFormat::json;
    if (f == "csv") return pebbling::OutputFormat::csv;
    if (f == "md") return pebbling::OutputFormat::md;
    if (f == "text") return pebbling::OutputFormat::text;
    throw CLI::ValidationError("--format", "must be one of json, csv, md, text");
}

pebbling::Rat parse_rat_arg(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return pebbling::Rat{std::stoll(s)};
    return pebbling::Rat{std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

std::string rat_str(const pebbling::Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string report_json(const pebbling::ValidationReport& rep) {
    std::ostringstream os;
    os << "{\"valid\":" << (rep.valid ? "true" : "false") << ",\"depth\":" << rep.depth
       << ",\"cost\":" << rep.cost << ",\"space\":" << rep.space << ",\"weighted_space\":\""
       << rat_str(rep.weighted_space) << "\"";
    if (rep.failure) {
        os << ",\"failure\":{\"step\":" << rep.failure->step_index << ",\"reason\":\""
           << rep.failure->reason << "\"}";
    }
    os << "}";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace pebbling;

    CLI::App app{"parallel spooky pebble games on the line graph"};
    app.require_subcommand(1);
    int threads = 1;  // worker-count hint; results do not depend on it
    app.add_option("--threads", threads, "worker count hint");

    // construct
    auto* c_cmd = app.add_subcommand("construct", "optimal-depth A-sequence schedule");
    long long c_len = 0;
    std::string c_variant = "plain";
    std::string c_out;
    c_cmd->add_option("--length", c_len, "line graph length")->required()->check(CLI::PositiveNumber);
    c_cmd->add_option("--variant", c_variant, "plain|measured_target");
    c_cmd->add_option("--out", c_out, "write the schedule JSON here");

    // search
    auto* s_cmd = app.add_subcommand("search", "exact optimal-depth search");
    int s_len = 0, s_pebbles = 0;
    std::string s_variant = "plain", s_weights, s_tie = "none", s_out, s_cap;
    long long s_node_cap = default_node_cap();
    s_cmd->add_option("--length", s_len, "line graph length")->required()->check(CLI::PositiveNumber);
    s_cmd->add_option("--pebbles", s_pebbles, "pebble budget")->required()->check(CLI::PositiveNumber);
    s_cmd->add_option("--weights", s_weights, "weight profile JSON file");
    s_cmd->add_option("--variant", s_variant, "plain|measured_target");
    s_cmd->add_option("--tie-break", s_tie, "none|min-total-ops");
    s_cmd->add_option("--node-cap", s_node_cap, "stored-node limit");
    s_cmd->add_option("--space-cap", s_cap, "weighted space cap (p/q)");
    s_cmd->add_option("--out", s_out, "write the schedule JSON here");

    // validate
    auto* v_cmd = app.add_subcommand("validate", "replay and check a schedule file");
    std::string v_file, v_weights;
    v_cmd->add_option("file", v_file, "schedule JSON file")->required();
    v_cmd->add_option("--weights", v_weights, "weight profile JSON file");

    // metrics
    auto* m_cmd = app.add_subcommand("metrics", "metrics of a schedule file");
    std::string m_file, m_weights, m_format = "csv";
    m_cmd->add_option("file", m_file, "schedule JSON file")->required();
    m_cmd->add_option("--weights", m_weights, "weight profile JSON file");
    m_cmd->add_option("--format", m_format, "json|csv|md|text");

    // estimate
    auto* e_cmd = app.add_subcommand("estimate", "factoring cost estimate rows");
    std::vector<int> e_n{2048}, e_beta{160}, e_pebbles{12};
    int e_window = 2;
    std::string e_strategy = "table", e_format = "csv", e_tau = "1";
    long long e_node_cap = default_node_cap();
    e_cmd->add_option("--n", e_n, "modulus bit length (repeatable)");
    e_cmd->add_option("--beta", e_beta, "BKZ block size (repeatable)");
    e_cmd->add_option("--window", e_window, "window size w")->check(CLI::PositiveNumber);
    e_cmd->add_option("--pebbles", e_pebbles, "pebble budget s (repeatable)");
    e_cmd->add_option("--strategy", e_strategy, "table|construction|astar");
    e_cmd->add_option("--format", e_format, "json|csv|md|text");
    e_cmd->add_option("--tau", e_tau, "transient ancilla weight (p/q)");
    e_cmd->add_option("--node-cap", e_node_cap, "stored-node limit for astar");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    (void)threads;
    try {
        if (*c_cmd) {
            const ConstructionTrace trace = construct(c_len, parse_variant(c_variant));
            const ValidationReport rep = validate(trace.schedule);
            if (!rep.valid) {
                std::cerr << "internal error: constructed schedule failed validation\n";
                return kExitInvalidSchedule;
            }
            if (!c_out.empty()) write_file(c_out, serialize(trace.schedule));
            std::cout << "depth=" << rep.depth << " space=" << rep.space << "\n";
            return kExitOk;
        }

        if (*s_cmd) {
            WeightProfile weights;
            std::optional<Rat> cap;
            if (!s_weights.empty()) {
                weights = parse_weights(read_file(s_weights));
                cap = Rat{s_pebbles};
            }
            if (!s_cap.empty()) cap = parse_rat_arg(s_cap);
            TieBreak tie = TieBreak::none;
            if (s_tie == "min-total-ops")
                tie = TieBreak::min_total_ops;
            else if (s_tie != "none")
                throw CLI::ValidationError("--tie-break", "must be 'none' or 'min-total-ops'");

            const SearchResult r = astar_search(s_len, s_pebbles, weights, cap,
                                                parse_variant(s_variant), tie, s_node_cap);
            if (r.status == SearchStatus::infeasible) {
                std::cerr << "infeasible: no schedule within the budget\n";
                return kExitInfeasible;
            }
            if (r.status == SearchStatus::memory_limit) {
                std::cerr << "node cap exceeded (" << s_node_cap << " stored nodes)\n";
                return kExitMemoryLimit;
            }
            if (!s_out.empty()) write_file(s_out, serialize(r.result.schedule));
            std::cout << "depth=" << r.result.optimal_depth << " ops=" << r.result.total_ops
                      << "\n";
            return kExitOk;
        }

        if (*v_cmd || *m_cmd) {
            const bool metrics_mode = static_cast<bool>(*m_cmd);
            const std::string file = metrics_mode ? m_file : v_file;
            const std::string wfile = metrics_mode ? m_weights : v_weights;
            Schedule sched;
            WeightProfile weights;
            try {
                sched = parse_schedule(read_file(file));
                if (!wfile.empty()) weights = parse_weights(read_file(wfile));
            } catch (const ParseError& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                return kExitIo;
            }
            const ValidationReport rep = validate(sched, weights);
            if (metrics_mode) {
                if (!rep.valid) {
                    std::cerr << "invalid schedule: " << rep.failure->reason << "\n";
                    return kExitInvalidSchedule;
                }
                const OutputFormat fmt = parse_format(m_format);
                if (fmt == OutputFormat::json) {
                    std::cout << report_json(rep) << "\n";
                } else if (fmt == OutputFormat::md) {
                    std::cout << "| depth | cost | space | weighted_space |\n|---|---|---|---|\n| "
                              << rep.depth << " | " << rep.cost << " | " << rep.space << " | "
                              << rat_str(rep.weighted_space) << " |\n";
                } else if (fmt == OutputFormat::text) {
                    std::cout << "depth=" << rep.depth << " cost=" << rep.cost
                              << " space=" << rep.space
                              << " weighted_space=" << rat_str(rep.weighted_space) << "\n";
                } else {
                    std::cout << "depth,cost,space,weighted_space\n"
                              << rep.depth << "," << rep.cost << "," << rep.space << ","
                              << rat_str(rep.weighted_space) << "\n";
                }
                return kExitOk;
            }
            std::cout << report_json(rep) << "\n";
            return rep.valid ? kExitOk : kExitInvalidSchedule;
        }

        if (*e_cmd) {
            Strategy strat;
            if (e_strategy == "table")
                strat = Strategy::table;
            else if (e_strategy == "construction")
                strat = Strategy::construction;
            else if (e_strategy == "astar")
                strat = Strategy::astar;
            else
                throw CLI::ValidationError("--strategy", "must be table, construction or astar");

            std::vector<CostReport> rows;
            for (int n : e_n)
                for (int beta : e_beta)
                    for (int s : e_pebbles) {
                        EstimatorParams p;
                        p.n = n;
                        p.beta = beta;
                        p.w = e_window;
                        p.s = s;
                        p.tau = parse_rat_arg(e_tau);
                        rows.push_back(estimate(p, strat, e_node_cap));
                    }
            std::cout << report(rows, parse_format(e_format));
            if (e_format != "csv" && e_format != "md" && e_format != "text") std::cout << "\n";
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const MemoryLimitError& e) {
        std::cerr << e.what() << "\n";
        return kExitMemoryLimit;
    } catch (const InfeasibleError& e) {
        std::cerr << e.what() << "\n";
        return kExitInfeasible;
    } catch (const UnknownConfiguration& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
