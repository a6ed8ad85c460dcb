#include <bicirc/report.hpp>
#include <bicirc/errors.hpp>
#include <bicirc/linalg.hpp>

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace bicirc
{
    namespace
    {
        auto optional_json(const std::optional<int> & value) -> Json
        {
            return value ? Json(*value) : Json(nullptr);
        }
    }

    auto to_dot(const BipartiteGraph & graph, const std::string & name) -> std::string
    {
        std::ostringstream out;
        out << "graph " << name << " {\n";
        for (int v = 0 ; v < graph.vertex_count() ; ++v)
            out << "  " << graph.vertex_name(v) << ";\n";
        for (int v = 0 ; v < graph.left_count() ; ++v)
            graph.neighbours(v).for_each([&] (int w) {
                out << "  " << graph.vertex_name(v) << " -- " << graph.vertex_name(w) << ";\n";
            });
        out << "}\n";
        return out.str();
    }

    auto to_json(const BipartiteGraph & graph) -> Json
    {
        Json adjacency = Json::object();
        for (int v = 0 ; v < graph.vertex_count() ; ++v)
            adjacency[graph.vertex_name(v)] = vertex_names(graph, graph.neighbours(v));
        return Json{
            {"left", graph.left_count()},
            {"right", graph.right_count()},
            {"edges", graph.edge_count()},
            {"adjacency", adjacency}};
    }

    auto vertex_names(const BipartiteGraph & graph, VertexSet set) -> Json
    {
        Json names = Json::array();
        set.for_each([&] (int v) { names.push_back(graph.vertex_name(v)); });
        return names;
    }

    auto to_json(const BipartiteGraph & graph, const BoundWitness & bound) -> Json
    {
        return Json{
            {"value", bound.value},
            {"witness", vertex_names(graph, bound.witness)},
            {"source", bound.source}};
    }

    auto to_json(const BipartiteGraph & graph, const BoundReport & report) -> Json
    {
        return Json{
            {"lower_regular", report.lower_regular},
            {"lower_bipartite", report.lower_bipartite},
            {"lower_cycle", optional_json(report.lower_cycle)},
            {"upper_span", report.upper_span ? to_json(graph, *report.upper_span) : Json(nullptr)},
            {"upper_cycle", report.upper_cycle ? to_json(graph, *report.upper_cycle) : Json(nullptr)},
            {"best_lower", report.best_lower},
            {"best_upper", report.best_upper},
            {"warnings", report.warnings}};
    }

    auto to_json(const BipartiteGraph & graph, const SolveResult & result) -> Json
    {
        return Json{
            {"z", result.z},
            {"witness", vertex_names(graph, result.witness)},
            {"components", result.components},
            {"nodes", result.nodes_explored},
            {"time", result.wall_time.count()}};
    }

    auto to_json(const FamilyDescriptor & desc) -> Json
    {
        Json out{{"variant", to_string(desc.variant)}};
        switch (desc.variant) {
            case FamilyCase::Case1:
                break;
            case FamilyCase::Case2:
                out["alpha"] = desc.alpha;
                out["i"] = desc.step;
                out["r"] = desc.r;
                break;
            case FamilyCase::Case3a:
            case FamilyCase::Case3b:
                out["d"] = desc.d;
                out["c"] = desc.c;
                out["alpha"] = desc.alpha;
                out["beta"] = desc.beta;
                out["l"] = desc.l;
                out["gammas"] = desc.gammas;
                if (desc.variant == FamilyCase::Case3b) {
                    out["m"] = desc.m;
                    out["reading"] = to_string(desc.reading);
                }
                break;
        }
        return out;
    }

    auto to_json(const ScanFinding & finding) -> Json
    {
        Json out{
            {"n", finding.n},
            {"k", finding.k},
            {"first", finding.first.to_string()},
            {"second", finding.second.to_string()},
            {"status", to_string(finding.status)},
            {"iso", to_string(finding.certificate.result)}};
        if (finding.certificate.isomorphic())
            out["mapping"] = finding.certificate.mapping;
        else
            out["invariant"] = finding.certificate.distinguishing_invariant;
        return out;
    }

    auto trace_lines(const BipartiteGraph & graph, const ForcingTrace & trace) -> std::vector<Json>
    {
        std::vector<Json> lines;
        for (std::size_t s = 0 ; s < trace.steps.size() ; ++s)
            lines.push_back(Json{
                {"step", s + 1},
                {"forcer", graph.vertex_name(trace.steps[s].forcer)},
                {"forced", graph.vertex_name(trace.steps[s].forced)}});
        lines.push_back(Json{
            {"initial", vertex_names(graph, trace.initial)},
            {"final", vertex_names(graph, trace.final)},
            {"forcing_set", trace.final == graph.all_vertices()}});
        return lines;
    }

    auto ScanRow::sandwich_holds() const -> bool
    {
        return ! z || (bounds.best_lower <= *z && *z <= bounds.best_upper);
    }

    auto run_scan(const ScanConfig & config) -> ScanReport
    {
        if (config.n_min < 1 || config.n_min > config.n_max || config.k_min < 1 || config.k_min > config.k_max)
            throw ValidationError("scan ranges must be nonempty with positive bounds");
        if (2 * config.n_max > config.solve.budget.max_vertices)
            throw BudgetExceeded("scan range needs 2n <= " + std::to_string(config.solve.budget.max_vertices));

        std::vector<CirculantSpec> specs;
        for (int n = config.n_min ; n <= config.n_max ; ++n)
            for (int k = config.k_min ; k <= std::min(config.k_max, n) ; ++k) {
                std::set<CirculantSpec> canon;
                for (auto & spec : all_specs(n, k))
                    if (is_connected_gcd(spec))
                        canon.insert(canonical_form(spec));
                for (auto & spec : canon) {
                    if (config.require_cycle_gcd && ! lower_bounds(spec).lower_cycle)
                        continue;
                    specs.push_back(spec);
                }
            }

        std::vector<std::optional<ScanRow>> rows(specs.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i ; (i = next.fetch_add(1)) < specs.size() ; ) {
                auto & spec = specs[i];
                ScanRow row{spec};
                row.bounds = bounds_report(spec);
                row.upper_span_orbit = upper_bound_span(spec, true).value;
                row.families = classify(spec, config.reading);
                if (! row.families.empty())
                    row.predicted_z = 2 * (spec.k() - 1);
                row.rank = rank(to_matrix(spec));
                try {
                    auto solved = solve_exact(spec, config.solve);
                    row.z = solved.z;
                    row.nodes = solved.nodes_explored;
                    row.mr_bound = mr_lower_bound(spec, solved.z);
                }
                catch (const BudgetExceeded & e) {
                    row.error = e.what();
                    row.mr_bound = mr_lower_bound(spec, row.bounds.best_upper);
                }
                rows[i] = std::move(row);
            }
        };
        if (config.threads <= 1)
            worker();
        else {
            std::vector<std::jthread> pool;
            for (int t = 0 ; t < config.threads ; ++t)
                pool.emplace_back(worker);
        }

        ScanReport report{config, {}};
        for (auto & row : rows)
            report.rows.push_back(std::move(*row));
        std::sort(report.rows.begin(), report.rows.end(), [] (const ScanRow & a, const ScanRow & b) {
            return std::tuple(a.spec.n(), a.spec.k(), a.spec) < std::tuple(b.spec.n(), b.spec.k(), b.spec);
        });
        return report;
    }

    auto to_json(const ScanReport & report) -> Json
    {
        Json rows = Json::array();
        int solved = 0, eq_bipartite = 0, eq_best_lower = 0, eq_span = 0, eq_span_orbit = 0;
        int cycle_rows = 0, eq_cycle = 0, eq_best_upper = 0, predicted = 0, predicted_agree = 0, violations = 0;
        std::map<std::pair<int, int>, int> max_z;

        for (auto & row : report.rows) {
            auto graph = build_graph(row.spec);
            Json families = Json::array();
            for (auto & f : row.families)
                families.push_back(to_json(f));

            rows.push_back(Json{
                {"spec", row.spec.to_string()},
                {"n", row.spec.n()},
                {"k", row.spec.k()},
                {"connected", row.connected},
                {"lower_regular", row.bounds.lower_regular},
                {"lower_bipartite", row.bounds.lower_bipartite},
                {"lower_cycle", optional_json(row.bounds.lower_cycle)},
                {"upper_span", row.bounds.upper_span ? Json(row.bounds.upper_span->value) : Json(nullptr)},
                {"upper_span_orbit", row.upper_span_orbit},
                {"upper_cycle", row.bounds.upper_cycle ? Json(row.bounds.upper_cycle->value) : Json(nullptr)},
                {"best_lower", row.bounds.best_lower},
                {"best_upper", row.bounds.best_upper},
                {"z", optional_json(row.z)},
                {"predicted_z", optional_json(row.predicted_z)},
                {"families", families},
                {"rank", row.rank},
                {"mr_bound", optional_json(row.mr_bound)},
                {"nodes", row.nodes},
                {"sandwich", row.sandwich_holds()},
                {"error", row.error ? Json(*row.error) : Json(nullptr)}});

            if (! row.sandwich_holds())
                ++violations;
            if (row.predicted_z) {
                ++predicted;
                if (row.z == row.predicted_z)
                    ++predicted_agree;
            }
            if (! row.z)
                continue;
            int z = *row.z;
            ++solved;
            eq_bipartite += z == row.bounds.lower_bipartite;
            eq_best_lower += z == row.bounds.best_lower;
            eq_span += row.bounds.upper_span && z == row.bounds.upper_span->value;
            eq_span_orbit += z == row.upper_span_orbit;
            if (row.bounds.upper_cycle) {
                ++cycle_rows;
                eq_cycle += z == row.bounds.upper_cycle->value;
            }
            eq_best_upper += z == row.bounds.best_upper;
            auto & best = max_z[{row.spec.n(), row.spec.k()}];
            best = std::max(best, z);
        }

        auto fraction = [] (int part, int whole) -> Json {
            return whole ? Json(static_cast<double>(part) / whole) : Json(nullptr);
        };

        Json by_nk = Json::array();
        for (auto & [nk, z] : max_z)
            by_nk.push_back(Json{{"n", nk.first}, {"k", nk.second}, {"max_z", z}});

        auto & c = report.config;
        return Json{
            {"config", {
                {"n_min", c.n_min}, {"n_max", c.n_max}, {"k_min", c.k_min}, {"k_max", c.k_max},
                {"require_cycle_gcd", c.require_cycle_gcd}, {"reading", to_string(c.reading)}}},
            {"rows", rows},
            {"summary", {
                {"rows", report.rows.size()},
                {"solved", solved},
                {"sandwich_violations", violations},
                {"z_eq_lower_bipartite", eq_bipartite},
                {"z_eq_best_lower", eq_best_lower},
                {"z_eq_upper_span", eq_span},
                {"z_eq_upper_span_orbit", eq_span_orbit},
                {"cycle_rows", cycle_rows},
                {"z_eq_upper_cycle", eq_cycle},
                {"z_eq_best_upper", eq_best_upper},
                {"tightness", {
                    {"lower_bipartite", fraction(eq_bipartite, solved)},
                    {"upper_span", fraction(eq_span, solved)},
                    {"upper_span_orbit", fraction(eq_span_orbit, solved)},
                    {"upper_cycle", fraction(eq_cycle, cycle_rows)},
                    {"best_upper", fraction(eq_best_upper, solved)}}},
                {"predicted", predicted},
                {"predicted_agree", predicted_agree},
                {"max_z_by_n_k", by_nk}}}};
    }

    auto scan_table(const Json & report) -> std::string
    {
        auto cell = [] (const Json & value) -> std::string {
            if (value.is_null())
                return "-";
            if (value.is_string())
                return value.get<std::string>();
            return value.dump();
        };

        std::ostringstream out;
        out << std::left << std::setw(22) << "spec" << std::setw(4) << "z" << std::setw(6) << "lower"
            << std::setw(6) << "upper" << std::setw(6) << "span" << std::setw(6) << "orbit"
            << std::setw(6) << "cycle" << std::setw(6) << "pred" << std::setw(6) << "rank"
            << std::setw(5) << "mr>=" << "families\n";
        for (auto & row : report.at("rows")) {
            std::string families;
            for (auto & f : row.at("families"))
                families += (families.empty() ? "" : ",") + f.at("variant").get<std::string>();
            out << std::setw(22) << cell(row.at("spec")) << std::setw(4) << cell(row.at("z"))
                << std::setw(6) << cell(row.at("best_lower")) << std::setw(6) << cell(row.at("best_upper"))
                << std::setw(6) << cell(row.at("upper_span")) << std::setw(6) << cell(row.at("upper_span_orbit"))
                << std::setw(6) << cell(row.at("upper_cycle")) << std::setw(6) << cell(row.at("predicted_z"))
                << std::setw(6) << cell(row.at("rank")) << std::setw(5) << cell(row.at("mr_bound"))
                << (families.empty() ? "-" : families) << "\n";
        }

        auto & s = report.at("summary");
        out << "\nrows " << s.at("rows") << ", solved " << s.at("solved")
            << ", sandwich violations " << s.at("sandwich_violations") << "\n"
            << "z = lower_bipartite: " << s.at("z_eq_lower_bipartite")
            << ", z = span: " << s.at("z_eq_upper_span")
            << ", z = orbit span: " << s.at("z_eq_upper_span_orbit")
            << ", z = cycle: " << s.at("z_eq_upper_cycle") << "/" << s.at("cycle_rows")
            << ", predicted agree: " << s.at("predicted_agree") << "/" << s.at("predicted") << "\n";
        return out.str();
    }
}
