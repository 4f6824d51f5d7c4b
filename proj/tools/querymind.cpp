// querymind -- experiment runner over the C interface.
//
// Exit status: 0 success, 1 validation error, 2 capacity error,
// 3 invariant violation detected during the run.

#include "querymind/querymind.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct Args
{
    int n = 4;
    int k = 6;
    std::string feedback = "bw";
    std::string repeats = "yes";
    std::string mode = "adaptive";
    std::string strategy = "minimax";
    int turn_budget = 0;
    std::uint64_t space_budget = 0;
    int s_cap = 6;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    std::string hidden;
    std::string query;
    std::string queries_file;
    int lemma_c = 0;
};

using Runner = qm_status (*)(const qm_config_t *, const qm_options_t *, qm_result **);

void add_common(CLI::App *cmd, Args &a)
{
    cmd->add_option("--n", a.n, "Sequence length")->capture_default_str();
    cmd->add_option("--k", a.k, "Number of colors")->capture_default_str();
    cmd->add_option("--feedback", a.feedback, "Feedback: b (black only) or bw (black and white)")
        ->check(CLI::IsMember({"b", "bw"}))
        ->capture_default_str();
    cmd->add_option("--repeats", a.repeats, "Whether colors may repeat: yes or no (bare flag means yes)")
        ->expected(0, 1)
        ->default_str("yes")
        ->check(CLI::IsMember({"yes", "no"}));
    cmd->add_option("--mode", a.mode, "adaptive or nonadaptive")
        ->check(CLI::IsMember({"adaptive", "nonadaptive"}))
        ->capture_default_str();
    cmd->add_option("--strategy", a.strategy,
                    "minimax, basis or first-consistent (basis ignores white pegs)")
        ->check(CLI::IsMember({"minimax", "basis", "first-consistent"}))
        ->capture_default_str();
    cmd->add_option("--turn-budget", a.turn_budget,
                    "Turn limit per game and exact-solver depth cap (0: n*k+1)")
        ->capture_default_str();
    cmd->add_option("--space-budget", a.space_budget,
                    "Largest code space the command may enumerate (0: command default)")
        ->capture_default_str();
    cmd->add_option("--s-cap", a.s_cap, "Largest query-set size tried by the subset search")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "Seed for the hidden-code choice and greedy tie-breaking")
        ->capture_default_str();
    cmd->add_option("--threads", a.threads, "Worker threads (0: all hardware threads)")
        ->capture_default_str();
    cmd->add_option("--out", a.out,
                    "Directory for JSON/CSV artifacts; QUERYMIND_OUT overrides. "
                    "Without one, JSON goes to stdout");
}

int exit_code(qm_status s)
{
    switch (s) {
    case QM_OK: return 0;
    case QM_INVALID_ARGUMENT:
    case QM_INVALID_CODE:
    case QM_DOMAIN: return 1;
    case QM_CAPACITY: return 2;
    default: return 3;
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read query file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path &path, const char *text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
}

int run(const std::string &command, Runner runner, const Args &a)
{
    qm_config_t config;
    qm_config_init(&config);
    config.n = a.n;
    config.k = a.k;
    config.feedback = a.feedback == "b" ? QM_BLACK_ONLY : QM_BLACK_WHITE;
    config.repeats = a.repeats == "no" ? QM_REPEATS_FORBIDDEN : QM_REPEATS_ALLOWED;
    config.mode = a.mode == "nonadaptive" ? QM_NONADAPTIVE : QM_ADAPTIVE;

    std::string queries_text;
    if (!a.queries_file.empty()) {
        try {
            queries_text = read_file(a.queries_file);
        } catch (const std::exception &e) {
            std::cerr << "querymind: error: " << e.what() << "\n";
            return 1;
        }
    }

    qm_options_t options;
    qm_options_init(&options);
    options.strategy = a.strategy.c_str();
    options.turn_budget = a.turn_budget;
    options.space_budget = a.space_budget;
    options.s_cap = a.s_cap;
    options.seed = a.seed;
    options.threads = a.threads;
    options.hidden = a.hidden.empty() ? nullptr : a.hidden.c_str();
    options.query = a.query.empty() ? nullptr : a.query.c_str();
    options.queries_text = a.queries_file.empty() ? nullptr : queries_text.c_str();
    options.lemma_c = a.lemma_c;

    qm_result *result = nullptr;
    const qm_status status = runner(&config, &options, &result);
    if (result == nullptr) {
        std::cerr << "querymind: error: " << qm_last_error() << "\n";
        return exit_code(status);
    }

    std::string out_dir = a.out;
    if (const char *env = std::getenv("QUERYMIND_OUT"); env != nullptr && *env != '\0')
        out_dir = env;
    int code = exit_code(status);
    try {
        if (out_dir.empty()) {
            std::cout << qm_result_json(result);
            std::cerr << qm_result_summary(result);
        } else {
            const std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            write_file(dir / (command + ".json"), qm_result_json(result));
            if (const char *csv = qm_result_csv(result))
                write_file(dir / (command + ".csv"), csv);
            std::cout << qm_result_summary(result);
        }
    } catch (const std::exception &e) {
        std::cerr << "querymind: error: " << e.what() << "\n";
        code = 1;
    }
    qm_result_destroy(result);
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Mastermind-variant solvers, worst-case sweeps and bound calculators"};
    app.set_version_flag("--version", std::string(qm_version()));
    app.require_subcommand(1);

    Args args;
    struct Command
    {
        const char *name;
        const char *help;
        Runner runner;
    };
    const Command commands[] = {
        {"solve", "Play one game against a fixed hidden code", qm_solve},
        {"worst-case", "Play every hidden code and report the worst case", qm_worst_case},
        {"exact-value", "Optimal worst-case number of queries by full game-tree search",
         qm_exact_value},
        {"bounds", "Exact lower-bound quantities for (n, k)", qm_bounds},
        {"adversary-trace", "Play against the max-bucket adversary and check the trace bound",
         qm_adversary_trace},
        {"nonadaptive-search", "Minimal and greedy identifiable query sets", qm_nonadaptive_search},
        {"entropy-audit", "Single-query response entropy without repeats", qm_entropy_audit},
    };
    for (const auto &c : commands) {
        CLI::App *cmd = app.add_subcommand(c.name, c.help);
        add_common(cmd, args);
        const std::string name = c.name;
        if (name == "solve")
            cmd->add_option("--hidden", args.hidden,
                            "Hidden code such as 1,2,3,4 (default: chosen by --seed)");
        if (name == "entropy-audit")
            cmd->add_option("--query", args.query, "Audit one query (default: every code)");
        if (name == "nonadaptive-search")
            cmd->add_option("--queries", args.queries_file,
                            "Query-set file to check: one code per line, '#' comments");
        if (name == "adversary-trace")
            cmd->add_option("--lemma-c", args.lemma_c, "Check the trace bound for this C only")
                ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    for (const auto &c : commands)
        if (app.got_subcommand(c.name))
            return run(c.name, c.runner, args);
    return 1;
}
