// ntcodes: command-line front end for the norm-trace code library.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ntcodes/error.hpp"
#include "ntcodes/report.hpp"

using nlohmann::json;
using namespace ntc;

namespace {

struct Flags {
    RunConfig cfg;
    std::string family = "cd";
    std::string E;
    std::vector<std::string> checks;
    std::string config_path;
    bool dual = false;
};

void emit_error(const std::string& kind, const std::string& message)
{
    std::string flat = message;
    for (auto& c : flat)
        if (c == '\n') c = ' ';
    std::cerr << "error kind=" << kind << " message=" << json(flat).dump() << std::endl;
}

void add_code_options(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--family", f.family, "cd, cda, cdab, cde, onepoint or twopoint")->capture_default_str();
    cmd->add_option("--d", f.cfg.code.d, "Degree d");
    cmd->add_option("--a", f.cfg.code.a, "Vanishing order at infinity");
    cmd->add_option("--b", f.cfg.code.b, "Vanishing order at the origin");
    cmd->add_option("--s", f.cfg.code.s, "One-point divisor degree");
    cmd->add_option("--m", f.cfg.code.m, "Two-point coefficient at infinity");
    cmd->add_option("--n", f.cfg.code.n, "Two-point coefficient at the origin");
    cmd->add_option("--E", f.E, "Points of E as x.y index pairs joined by '_'");
}

void add_curve_options(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--q", f.cfg.q, "Base field size (prime power)")->capture_default_str();
    cmd->add_option("--r", f.cfg.r, "Extension degree")->capture_default_str();
}

void finish_flags(Flags& f)
{
    f.cfg.code.family = family_from_string(f.family);
    f.cfg.code.E = parse_points(f.E);
    f.cfg.validate();
}

std::string table(const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], row[i].size());
        }
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(i + 1 == row.size() ? 0 : width[i]))
               << row[i];
        os << '\n';
    }
    return os.str();
}

std::string report_table(const Report& rep)
{
    std::ostringstream os;
    os << "key       " << rep.key << '\n';
    if (rep.config.checks.empty()) {
        os << "n k       " << rep.n << ' ' << rep.k << '\n';
        os << "engine    " << rep.engine << '\n';
        os << "distance  " << (rep.distance ? std::to_string(*rep.distance) : "> " + std::to_string(rep.searched_up_to))
           << '\n';
        std::vector<std::vector<std::string>> rows{{"weight", "count"}};
        for (const auto& [w, c] : rep.counts) rows.push_back({std::to_string(w), std::to_string(c)});
        os << '\n' << table(rows);
        std::map<std::string, std::size_t> classes;
        for (const auto& s : rep.supports) ++classes[s.cls];
        if (!classes.empty()) {
            std::vector<std::vector<std::string>> crow{{"support class", "supports"}};
            for (const auto& [c, k] : classes) crow.push_back({c, std::to_string(k)});
            os << '\n' << table(crow);
        }
    } else {
        std::vector<std::vector<std::string>> rows{{"check", "verdict", "ms", "claimed", "computed"}};
        for (const auto& c : rep.checks) {
            std::string claimed, computed;
            for (const auto& cl : c.claimed) claimed += (claimed.empty() ? "" : "; ") + cl.name + "=" + cl.value;
            for (const auto& [k, v] : c.computed)
                if (v.size() < 24) computed += (computed.empty() ? "" : "; ") + k + "=" + v;
            std::ostringstream ms;
            ms << std::fixed << std::setprecision(1) << c.elapsed_ms;
            rows.push_back({c.id, to_string(c.verdict), ms.str(), claimed, computed});
        }
        os << '\n' << table(rows);
        for (const auto& c : rep.checks)
            for (const auto& w : c.witnesses) os << "witness " << c.id << ": " << w << '\n';
    }
    return os.str();
}

void print_report(const Report& rep, const std::string& format)
{
    if (format == "json") std::cout << report_to_json(rep).dump(2) << '\n';
    else if (format == "csv") std::cout << json_to_csv(report_to_json(rep));
    else std::cout << report_table(rep);
}

/// At most one progress line every two seconds.
ProgressFn progress_printer()
{
    struct State {
        std::mutex mu;
        std::chrono::steady_clock::time_point last = std::chrono::steady_clock::now();
    };
    auto state = std::make_shared<State>();
    return [state](std::uint64_t subsets) {
        const std::lock_guard lock(state->mu);
        const auto now = std::chrono::steady_clock::now();
        if (now - state->last < std::chrono::seconds(2)) return;
        state->last = now;
        std::cerr << "progress subsets=" << subsets << std::endl;
    };
}

/// Consults the cache (when configured) before computing.
Report cached_run(const RunConfig& cfg, bool* hit = nullptr)
{
    if (hit) *hit = false;
    if (cfg.cache_dir.empty()) return run_config(cfg, progress_printer());
    const ReportCache cache(cfg.cache_dir);
    const auto warn = [](const std::string& msg) { std::cerr << "warning " << msg << std::endl; };
    if (auto rep = cache.load(cfg.key(), warn)) {
        if (hit) *hit = true;
        return *rep;
    }
    Report rep = run_config(cfg, progress_printer());
    cache.store(rep);
    return rep;
}

int cmd_field_info(const Flags& f)
{
    const auto curve = make_curve(f.cfg.q, f.cfg.r);
    const Field& fld = curve->field();
    json subfield = json::array();
    for (const auto e : fld.subfield_elements()) subfield.push_back(e.index);
    const json j{{"characteristic", fld.characteristic()},
                 {"q", fld.q()},
                 {"r", fld.r()},
                 {"order", fld.order()},
                 {"modulus", fld.modulus_string()},
                 {"primitive", fld.primitive().index},
                 {"primitive_poly", fld.to_poly_string(fld.primitive())},
                 {"subfield", subfield}};
    if (f.cfg.format == "json") std::cout << j.dump(2) << '\n';
    else if (f.cfg.format == "csv") std::cout << json_to_csv(j);
    else {
        std::string sub;
        for (const auto& e : subfield) sub += (sub.empty() ? "" : " ") + std::to_string(e.get<std::uint32_t>());
        std::cout << table({{"characteristic", std::to_string(fld.characteristic())},
                            {"order", std::to_string(fld.order())},
                            {"modulus", fld.modulus_string()},
                            {"primitive", std::to_string(fld.primitive().index) + " = " +
                                              fld.to_poly_string(fld.primitive())},
                            {"subfield", sub}});
    }
    return 0;
}

int cmd_curve_points(const Flags& f)
{
    const auto curve = make_curve(f.cfg.q, f.cfg.r);
    const Field& fld = curve->field();
    const auto& pts = curve->affine_points();
    if (f.cfg.format == "json") {
        json arr = json::array();
        for (const auto& p : pts)
            arr.push_back({{"x_index", p.x.index},
                           {"y_index", p.y.index},
                           {"x_poly", fld.to_poly_string(p.x)},
                           {"y_poly", fld.to_poly_string(p.y)}});
        std::cout << json{{"count", pts.size()}, {"points", arr}}.dump(2) << '\n';
    } else if (f.cfg.format == "csv") {
        std::cout << "x_index,y_index,x_poly,y_poly\n";
        for (const auto& p : pts)
            std::cout << p.x.index << ',' << p.y.index << ',' << fld.to_poly_string(p.x) << ','
                      << fld.to_poly_string(p.y) << '\n';
    } else {
        std::vector<std::vector<std::string>> rows{{"x_index", "y_index", "x_poly", "y_poly"}};
        for (const auto& p : pts)
            rows.push_back({std::to_string(p.x.index), std::to_string(p.y.index), fld.to_poly_string(p.x),
                            fld.to_poly_string(p.y)});
        std::cout << table(rows);
    }
    return 0;
}

int cmd_code_build(const Flags& f)
{
    const auto curve = make_curve(f.cfg.q, f.cfg.r);
    const LinearCode code = build_code(*curve, f.cfg.code);
    const auto& G = code.generator();
    json rows = json::array();
    for (std::size_t i = 0; i < G.rows(); ++i) {
        json row = json::array();
        for (const auto e : G.row(i)) row.push_back(e.index);
        rows.push_back(row);
    }
    json labels = json::array();
    for (const auto& p : code.labels()) labels.push_back({p.x.index, p.y.index});
    const json j{{"key", f.cfg.key()}, {"n", code.length()}, {"k", code.dimension()}, {"points", labels},
                 {"generator", rows}};
    if (f.cfg.format == "json") {
        std::cout << j.dump(2) << '\n';
    } else if (f.cfg.format == "csv") {
        std::cout << json_to_csv(j);
    } else {
        std::cout << "n " << code.length() << "  k " << code.dimension() << '\n';
        for (std::size_t i = 0; i < G.rows(); ++i) {
            for (std::size_t c = 0; c < G.cols(); ++c) std::cout << (c ? " " : "") << G.at(i, c).index;
            std::cout << '\n';
        }
    }
    return 0;
}

int cmd_run(Flags& f)
{
    const Report rep = cached_run(f.cfg);
    print_report(rep, f.cfg.format);
    return rep.any_fail() ? 1 : 0;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cmd_sweep(const Flags& f)
{
    const auto grid = parse_sweep(read_file(f.config_path), f.cfg);
    std::vector<Report> reports;
    std::vector<bool> hits;
    for (const auto& cfg : grid) {
        bool hit = false;
        std::cerr << "sweep " << reports.size() + 1 << "/" << grid.size() << " " << cfg.key() << std::endl;
        reports.push_back(cached_run(cfg, &hit));
        hits.push_back(hit);
    }
    bool failed = false;
    for (const auto& r : reports) failed = failed || r.any_fail();

    if (f.cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        std::cout << arr.dump(2) << '\n';
        return failed ? 1 : 0;
    }
    std::vector<std::vector<std::string>> rows{{"key", "cached", "n", "k", "distance", "count", "verdicts"}};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::string verdicts;
        for (const auto& c : r.checks) verdicts += (verdicts.empty() ? "" : " ") + c.id + ":" + to_string(c.verdict);
        const std::string dist = r.distance ? std::to_string(*r.distance) : "";
        const std::string count = r.distance ? std::to_string(r.counts.at(*r.distance)) : "";
        rows.push_back({r.key, hits[i] ? "yes" : "no", std::to_string(r.n), std::to_string(r.k), dist, count, verdicts});
    }
    if (f.cfg.format == "csv") {
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
            std::cout << '\n';
        }
    } else {
        std::cout << table(rows);
    }
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Norm-trace curve codes: construction, weight search and theorem checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--seed", f.cfg.seed, "Seed for randomized checks")->capture_default_str();
    app.add_option("--workers", f.cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--cache-dir", f.cfg.cache_dir, "Directory for cached reports");
    app.add_option("--format", f.cfg.format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();

    auto* field = app.add_subcommand("field", "Field commands");
    field->require_subcommand(1);
    auto* field_info = field->add_subcommand("info", "Order, modulus and subfield of GF(q^r)");
    add_curve_options(field_info, f);

    auto* curve = app.add_subcommand("curve", "Curve commands");
    curve->require_subcommand(1);
    auto* curve_points = curve->add_subcommand("points", "Affine rational points in canonical order");
    add_curve_options(curve_points, f);

    auto* code = app.add_subcommand("code", "Code commands");
    code->require_subcommand(1);
    auto* build = code->add_subcommand("build", "Generator matrix and (n, k)");
    add_curve_options(build, f);
    add_code_options(build, f);
    auto* analyze = code->add_subcommand("analyze", "Weight analysis of a code or its dual");
    add_curve_options(analyze, f);
    add_code_options(analyze, f);
    analyze->add_flag("--dual", f.dual, "Analyze the dual code");
    analyze->add_option("--w-max", f.cfg.w_max, "Largest weight to search")->capture_default_str();
    analyze->add_option("--engine", f.cfg.engine, "auto, exhaustive or support_search")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run theorem checks");
    add_curve_options(verify, f);
    add_code_options(verify, f);
    verify->add_option("--check", f.checks, "Check id (repeatable)")->required();
    verify->add_option("--trials", f.cfg.trials, "Random trials for the h1 check")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Run a parameter grid from a config file");
    sweep->add_option("--config", f.config_path, "Sweep config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return 2;
    }

    try {
        if (field_info->parsed()) {
            finish_flags(f);
            return cmd_field_info(f);
        }
        if (curve_points->parsed()) {
            finish_flags(f);
            return cmd_curve_points(f);
        }
        if (build->parsed()) {
            finish_flags(f);
            return cmd_code_build(f);
        }
        if (analyze->parsed()) {
            f.cfg.dual = f.dual;
            finish_flags(f);
            return cmd_run(f);
        }
        if (verify->parsed()) {
            f.cfg.checks = f.checks;
            finish_flags(f);
            return cmd_run(f);
        }
        if (sweep->parsed()) {
            finish_flags(f);
            return cmd_sweep(f);
        }
    } catch (const Error& e) {
        emit_error(std::string(to_string(e.kind())), e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
    return 0;
}
