#include <bicirc/circulant.hpp>
#include <bicirc/classifier.hpp>
#include <bicirc/errors.hpp>
#include <bicirc/forcing.hpp>
#include <bicirc/iso.hpp>
#include <bicirc/linalg.hpp>
#include <bicirc/report.hpp>
#include <bicirc/solver.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace bicirc;

namespace
{
    constexpr int exit_validation = 2;
    constexpr int exit_budget = 3;

    auto default_threads() -> int
    {
        if (const char * env = std::getenv("BICIRC_THREADS")) {
            try {
                int t = std::stoi(env);
                if (t >= 1)
                    return t;
            }
            catch (const std::exception &) {
            }
            std::cerr << "ignoring BICIRC_THREADS=" << env << "\n";
        }
        return 1;
    }

    struct BudgetFlags
    {
        std::uint64_t nodes = 0;
        double seconds = 0;
        int max_vertices = 32;

        auto add_to(CLI::App * app) -> void
        {
            app->add_option("--budget-nodes", nodes, "give up after this many search nodes (0 = no limit)");
            app->add_option("--budget-secs", seconds, "give up after this many seconds (0 = no limit)")->check(CLI::NonNegativeNumber);
            app->add_option("--max-vertices", max_vertices, "largest graph the solver accepts")->check(CLI::Range(2, 64));
        }

        auto budget() const -> Budget { return Budget{max_vertices, nodes, seconds}; }
    };

    auto parse_reading(const std::string & text) -> RunReading
    {
        for (auto r : all_readings)
            if (to_string(r) == text)
                return r;
        throw ValidationError("unknown case 3b reading '" + text + "' (class-count, run-extent, regularity)");
    }

    /// Writes to --out when given, otherwise stdout.
    auto emit(const std::string & path, const std::string & text) -> void
    {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (! out)
            throw ValidationError("cannot write " + path);
        out << text;
    }

    auto parse_vertices(const BipartiteGraph & graph, const std::vector<std::string> & words) -> VertexSet
    {
        VertexSet set;
        for (auto & word : words) {
            std::stringstream in(word);
            std::string name;
            while (std::getline(in, name, ','))
                if (! name.empty())
                    set.insert(graph.parse_vertex(name));
        }
        return set;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"bipartite circulant graphs and zero forcing"};
    app.require_subcommand(1);
    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default from BICIRC_THREADS, else 1)")->check(CLI::PositiveNumber);

    // graph
    std::string spec_text, format = "json", out_path;
    auto graph_cmd = app.add_subcommand("graph", "print the graph of a spec");
    graph_cmd->add_option("spec", spec_text, "n:k:i1,...,ik")->required();
    graph_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    graph_cmd->add_option("--out", out_path);

    // closure
    std::vector<std::string> vertex_words;
    auto closure_cmd = app.add_subcommand("closure", "apply the forcing rule, one JSON line per force");
    closure_cmd->add_option("spec", spec_text)->required();
    closure_cmd->add_option("vertices", vertex_words, "initial black vertices, e.g. L0 R1 or L0,R1");

    // zf solve
    BudgetFlags budget;
    bool allow_disconnected = false;
    auto zf_cmd = app.add_subcommand("zf", "zero forcing number");
    zf_cmd->require_subcommand(1);
    auto solve_cmd = zf_cmd->add_subcommand("solve", "exact zero forcing number with witness");
    solve_cmd->add_option("spec", spec_text)->required();
    solve_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--allow-disconnected", allow_disconnected, "solve each component and add");
    budget.add_to(solve_cmd);

    // bounds
    bool orbit = false;
    auto bounds_cmd = app.add_subcommand("bounds", "all bounds with witnesses");
    bounds_cmd->add_option("spec", spec_text)->required();
    bounds_cmd->add_flag("--orbit", orbit, "minimise the span bound over the affine orbit");

    // classify
    std::string reading_text = "all";
    bool with_solver = false;
    auto classify_cmd = app.add_subcommand("classify", "match against the equality families");
    classify_cmd->add_option("spec", spec_text)->required();
    classify_cmd->add_option("--reading", reading_text, "case 3b reading: class-count, run-extent, regularity or all");
    classify_cmd->add_flag("--solve", with_solver, "also run the exact solver");
    budget.add_to(classify_cmd);

    // rank
    std::string matrix_file;
    auto rank_cmd = app.add_subcommand("rank", "exact rank of a circulant or a matrix file");
    auto rank_spec = rank_cmd->add_option("spec", spec_text);
    auto rank_file = rank_cmd->add_option("--matrix-file", matrix_file, "one row per line, space separated")->check(CLI::ExistingFile);
    rank_spec->excludes(rank_file);

    // scan
    ScanConfig scan;
    std::string scan_reading = "class-count";
    format = "json";
    auto scan_cmd = app.add_subcommand("scan", "bounds, exact Z, families and rank over a range");
    scan_cmd->add_option("--n-min", scan.n_min)->check(CLI::PositiveNumber);
    scan_cmd->add_option("--n-max", scan.n_max)->check(CLI::PositiveNumber);
    scan_cmd->add_option("--k-min", scan.k_min)->check(CLI::PositiveNumber);
    scan_cmd->add_option("--k-max", scan.k_max)->check(CLI::PositiveNumber);
    scan_cmd->add_flag("--filter-cycle-gcd", scan.require_cycle_gcd, "cubic specs with a power sharing a factor with n");
    scan_cmd->add_option("--reading", scan_reading);
    scan_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
    scan_cmd->add_option("--out", out_path);
    scan_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);
    budget.add_to(scan_cmd);

    // conjecture
    int n_max = 10, k = 3;
    auto conj_cmd = app.add_subcommand("conjecture", "look for isomorphic circulants that are not affine images");
    conj_cmd->add_option("--n-max", n_max)->check(CLI::Range(1, 32));
    conj_cmd->add_option("--k", k)->check(CLI::PositiveNumber);
    conj_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

    // uniqueness
    int n_half = 5;
    auto uniq_cmd = app.add_subcommand("uniqueness", "enumerate cubic bipartite graphs and solve each");
    uniq_cmd->add_option("--n-half", n_half)->check(CLI::Range(1, 7));

    CLI11_PARSE(app, argc, argv);

    try {
        if (graph_cmd->parsed()) {
            auto graph = build_graph(CirculantSpec::parse(spec_text));
            emit(out_path, format == "dot" ? to_dot(graph) : to_json(graph).dump(2) + "\n");
        }
        else if (closure_cmd->parsed()) {
            auto graph = build_graph(CirculantSpec::parse(spec_text));
            auto trace = closure(graph, parse_vertices(graph, vertex_words));
            for (auto & line : trace_lines(graph, trace))
                std::cout << line.dump() << "\n";
        }
        else if (solve_cmd->parsed()) {
            auto spec = CirculantSpec::parse(spec_text);
            auto graph = build_graph(spec);
            SolveOptions options{budget.budget(), threads, allow_disconnected};
            BoundReport bounds;
            if (is_connected_gcd(spec))
                bounds = bounds_report(spec);
            else
                bounds = lower_bounds(spec);
            try {
                auto result = solve_exact(spec, options);
                auto out = to_json(graph, result);
                Json line{{"spec", spec.to_string()}};
                line.update(out);
                line["bounds"] = to_json(graph, bounds);
                std::cout << line.dump(2) << "\n";
            }
            catch (const BudgetExceeded & e) {
                std::cout << Json{{"spec", spec.to_string()}, {"error", e.what()},
                    {"best_lower", e.best_lower}, {"best_upper", e.best_upper},
                    {"bounds", to_json(graph, bounds)}}.dump(2) << "\n";
                return exit_budget;
            }
        }
        else if (bounds_cmd->parsed()) {
            auto spec = CirculantSpec::parse(spec_text);
            Json out{{"spec", spec.to_string()}};
            out.update(to_json(build_graph(spec), bounds_report(spec, orbit)));
            std::cout << out.dump(2) << "\n";
        }
        else if (classify_cmd->parsed()) {
            auto spec = CirculantSpec::parse(spec_text);
            std::vector<RunReading> readings;
            if (reading_text == "all")
                readings.assign(std::begin(all_readings), std::end(all_readings));
            else
                readings.push_back(parse_reading(reading_text));

            Json families = Json::array(), by_reading = Json::object();
            std::set<FamilyCase> seen;
            for (auto r : readings) {
                auto found = classify(spec, r);
                Json names = Json::array();
                for (auto & f : found) {
                    names.push_back(to_string(f.variant));
                    // case 1, 2 and 3a do not depend on the reading
                    if (seen.insert(f.variant).second || f.variant == FamilyCase::Case3b)
                        families.push_back(to_json(f));
                }
                by_reading[to_string(r)] = names;
            }

            std::optional<int> predicted;
            if (! families.empty())
                predicted = 2 * (spec.k() - 1);
            Json out{{"spec", spec.to_string()}, {"families", families},
                {"predicted_z", predicted ? Json(*predicted) : Json(nullptr)},
                {"by_reading", by_reading}};

            bool discrepancy = false;
            for (auto & [name, list] : by_reading.items())
                discrepancy |= list != by_reading.begin().value();
            out["reading_discrepancy"] = discrepancy;

            out["solver_z"] = nullptr;
            out["agreement"] = nullptr;
            if (with_solver) {
                try {
                    int z = solve_exact(spec, SolveOptions{budget.budget(), threads}).z;
                    out["solver_z"] = z;
                    // no family means no prediction, which is consistent only if z is not 2(k-1)
                    out["agreement"] = predicted ? z == *predicted : z != 2 * (spec.k() - 1);
                }
                catch (const BudgetExceeded & e) {
                    out["solver_error"] = e.what();
                }
            }
            std::cout << out.dump(2) << "\n";
        }
        else if (rank_cmd->parsed()) {
            if (! matrix_file.empty()) {
                std::ifstream in(matrix_file);
                auto m = IntMatrix::read(in);
                std::cout << Json{{"matrix_file", matrix_file}, {"rows", m.rows()}, {"cols", m.cols()}, {"rank", rank(m)}}.dump(2) << "\n";
            }
            else if (! spec_text.empty()) {
                auto spec = CirculantSpec::parse(spec_text);
                std::cout << Json{{"spec", spec.to_string()}, {"rank", rank(to_matrix(spec))}}.dump(2) << "\n";
            }
            else
                throw ValidationError("rank needs a spec or --matrix-file");
        }
        else if (scan_cmd->parsed()) {
            scan.threads = threads;
            scan.solve.budget = budget.budget();
            scan.reading = parse_reading(scan_reading);
            auto report = to_json(run_scan(scan));
            emit(out_path, format == "table" ? scan_table(report) : report.dump(2) + "\n");
        }
        else if (conj_cmd->parsed()) {
            auto result = conjecture_scan(n_max, k, threads);
            for (auto & f : result.findings)
                if (f.status == ScanStatus::Counterexample)
                    std::cout << to_json(f).dump() << "\n";
            std::cout << std::left << std::setw(5) << "n" << std::setw(12) << "connected" << std::setw(9) << "classes"
                      << std::setw(8) << "pairs" << "counterexamples\n";
            for (auto & s : result.per_n)
                std::cout << std::setw(5) << s.n << std::setw(12) << s.connected_specs << std::setw(9) << s.classes
                          << std::setw(8) << s.pairs_tested << s.counterexamples << "\n";
            std::cout << "total counterexamples: " << result.counterexamples() << "\n";
        }
        else if (uniq_cmd->parsed()) {
            auto report = verify_cubic_uniqueness(n_half);
            std::cout << Json{{"n_half", report.n_half}, {"classes", report.classes}, {"z_values", report.z_values},
                {"z4_count", report.z4_count}, {"z4_matches_circulant", report.z4_matches_circulant},
                {"holds", report.holds()}}.dump(2) << "\n";
        }
    }
    catch (const ValidationError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
    catch (const BudgetExceeded & e) {
        std::cerr << "budget exceeded: " << e.what() << " (lower " << e.best_lower << ", upper " << e.best_upper << ")\n";
        return exit_budget;
    }
    return 0;
}
