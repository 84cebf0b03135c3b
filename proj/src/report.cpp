#include "ntcodes/report.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "ntcodes/error.hpp"
#include "ntcodes/linear_code.hpp"
#include "ntcodes/matrix.hpp"
#include "ntcodes/weight_search.hpp"

namespace ntc {

using nlohmann::json;

namespace {

[[noreturn]] void fail_config(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::int64_t parse_int(const std::string& key, const std::string& text)
{
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) fail_config("key '" + key + "' expects an integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    fail_config("key '" + key + "' expects true or false, got '" + text + "'");
}

std::string now_utc()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::vector<Point> parse_points(const std::string& text)
{
    std::vector<Point> out;
    if (trim(text).empty()) return out;
    for (const auto& part : split(trim(text), '_')) {
        const auto xy = split(part, '.');
        if (xy.size() != 2) fail_config("point '" + part + "' is not of the form x.y");
        const auto x = parse_int("E", xy[0]), y = parse_int("E", xy[1]);
        if (x < 0 || y < 0 || x > UINT32_MAX || y > UINT32_MAX) fail_config("point '" + part + "' out of range");
        out.push_back(Point::affine(Felt{static_cast<std::uint32_t>(x)}, Felt{static_cast<std::uint32_t>(y)}));
    }
    return out;
}

std::string format_points(const std::vector<Point>& points)
{
    std::string out;
    for (std::size_t i = 0; i < points.size(); ++i)
        out += (i ? "_" : "") + std::to_string(points[i].x.index) + "." + std::to_string(points[i].y.index);
    return out;
}

void RunConfig::validate() const
{
    if (q < 2) fail_config("q must be at least 2");
    try {
        split_prime_power(q);
    } catch (const Error&) {
        fail_config("q=" + std::to_string(q) + " is not a prime power");
    }
    if (r < 2) fail_config("r must be at least 2");
    long double order = 1;
    for (std::uint32_t i = 0; i < r; ++i) order *= static_cast<long double>(q);
    if (order > static_cast<long double>(1u << 24)) fail_config("field order q^r exceeds 2^24");
    if (w_max < 1 || w_max > 64) fail_config("w_max must lie in [1, 64]");
    if (engine != "auto" && engine != "exhaustive" && engine != "support_search")
        fail_config("engine must be auto, exhaustive or support_search");
    if (format != "json" && format != "csv" && format != "table") fail_config("format must be json, csv or table");
    if (trials < 0) fail_config("trials must be non-negative");
    if (code.d < 0 || code.a < 0 || code.b < 0 || code.s < 0 || code.m < 0 || code.n < 0)
        fail_config("code parameters must be non-negative");
    const auto& ids = check_ids();
    for (const auto& c : checks)
        if (std::find(ids.begin(), ids.end(), c) == ids.end()) fail_config("unknown check '" + c + "'");
}

std::string RunConfig::key() const
{
    std::ostringstream os;
    os << 'q' << q << 'r' << r << '-';
    if (checks.empty()) {
        os << to_string(code.family) << (dual ? "-dual" : "") << '-' << code.params_tag();
    } else {
        os << "verify.";
        for (std::size_t i = 0; i < checks.size(); ++i) os << (i ? "+" : "") << checks[i];
        os << "-d" << code.d << 'a' << code.a << 'b' << code.b << 's' << code.s << 't' << trials << 'x' << seed;
        if (!code.E.empty()) os << 'E' << format_points(code.E);
    }
    os << "-w" << w_max << "-v" << kSchemaVersion;
    return os.str();
}

json config_to_json(const RunConfig& cfg)
{
    return json{{"q", cfg.q},
                {"r", cfg.r},
                {"family", to_string(cfg.code.family)},
                {"d", cfg.code.d},
                {"a", cfg.code.a},
                {"b", cfg.code.b},
                {"s", cfg.code.s},
                {"m", cfg.code.m},
                {"n", cfg.code.n},
                {"E", format_points(cfg.code.E)},
                {"dual", cfg.dual},
                {"checks", cfg.checks},
                {"trials", cfg.trials},
                {"w_max", cfg.w_max},
                {"engine", cfg.engine},
                {"seed", cfg.seed}};
}

RunConfig config_from_json(const json& j)
{
    RunConfig cfg;
    cfg.q = j.at("q").get<std::uint64_t>();
    cfg.r = j.at("r").get<std::uint32_t>();
    cfg.code.family = family_from_string(j.at("family").get<std::string>());
    cfg.code.d = j.at("d").get<int>();
    cfg.code.a = j.at("a").get<int>();
    cfg.code.b = j.at("b").get<int>();
    cfg.code.s = j.at("s").get<std::int64_t>();
    cfg.code.m = j.at("m").get<std::int64_t>();
    cfg.code.n = j.at("n").get<std::int64_t>();
    cfg.code.E = parse_points(j.at("E").get<std::string>());
    cfg.dual = j.at("dual").get<bool>();
    cfg.checks = j.at("checks").get<std::vector<std::string>>();
    cfg.trials = j.at("trials").get<int>();
    cfg.w_max = j.at("w_max").get<std::size_t>();
    cfg.engine = j.at("engine").get<std::string>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

bool RunConfig::operator==(const RunConfig& other) const { return config_to_json(*this) == config_to_json(other); }

bool Report::any_fail() const
{
    return std::any_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.verdict == Verdict::Fail; });
}

namespace {

json check_to_json(const CheckOutcome& c)
{
    json claimed = json::array();
    for (const auto& cl : c.claimed) claimed.push_back({{"name", cl.name}, {"value", cl.value}, {"formula", cl.formula}});
    return json{{"id", c.id},           {"params", c.params},       {"verdict", to_string(c.verdict)},
                {"claimed", claimed},   {"computed", c.computed},   {"witness", c.witnesses},
                {"notes", c.notes},     {"elapsed_ms", c.elapsed_ms}, {"seed", c.seed}};
}

CheckOutcome check_from_json(const json& j)
{
    CheckOutcome c;
    c.id = j.at("id").get<std::string>();
    c.params = j.at("params").get<std::map<std::string, std::int64_t>>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    for (const auto& cl : j.at("claimed"))
        c.claimed.push_back(Claim{cl.at("name").get<std::string>(), cl.at("value").get<std::string>(),
                                  cl.at("formula").get<std::string>()});
    c.computed = j.at("computed").get<std::map<std::string, std::string>>();
    c.witnesses = j.at("witness").get<std::vector<std::string>>();
    c.notes = j.at("notes").get<std::vector<std::string>>();
    c.elapsed_ms = j.at("elapsed_ms").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

}  // namespace

json report_to_json(const Report& rep)
{
    json counts = json::object();
    for (const auto& [w, c] : rep.counts) counts[std::to_string(w)] = c;
    json supports = json::array();
    for (const auto& s : rep.supports)
        supports.push_back({{"points", s.points}, {"line", s.line ? json(*s.line) : json(nullptr)}, {"class", s.cls}});
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
    return json{{"config", config_to_json(rep.config)},
                {"key", rep.key},
                {"n", rep.n},
                {"k", rep.k},
                {"engine", rep.engine},
                {"distance", rep.distance ? json(*rep.distance) : json(nullptr)},
                {"counts", counts},
                {"searched_up_to", rep.searched_up_to},
                {"subsets_visited", rep.subsets_visited},
                {"supports", supports},
                {"checks", checks},
                {"elapsed_ms", rep.elapsed_ms},
                {"seed", rep.seed},
                {"version", rep.version},
                {"timestamp", rep.timestamp}};
}

Report report_from_json(const json& j)
{
    Report rep;
    rep.config = config_from_json(j.at("config"));
    rep.key = j.at("key").get<std::string>();
    rep.n = j.at("n").get<std::size_t>();
    rep.k = j.at("k").get<std::size_t>();
    rep.engine = j.at("engine").get<std::string>();
    if (!j.at("distance").is_null()) rep.distance = j.at("distance").get<std::size_t>();
    for (const auto& [w, c] : j.at("counts").items()) rep.counts[std::stoull(w)] = c.get<std::uint64_t>();
    rep.searched_up_to = j.at("searched_up_to").get<std::size_t>();
    rep.subsets_visited = j.at("subsets_visited").get<std::uint64_t>();
    for (const auto& s : j.at("supports")) {
        SupportEntry e;
        e.points = s.at("points").get<std::vector<std::array<std::uint32_t, 2>>>();
        if (!s.at("line").is_null()) e.line = s.at("line").get<std::string>();
        e.cls = s.at("class").get<std::string>();
        rep.supports.push_back(std::move(e));
    }
    for (const auto& c : j.at("checks")) rep.checks.push_back(check_from_json(c));
    rep.elapsed_ms = j.at("elapsed_ms").get<double>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.version = j.at("version").get<std::string>();
    rep.timestamp = j.at("timestamp").get<std::string>();
    return rep;
}

CurvePtr make_curve(std::uint64_t q, std::uint32_t r)
{
    const auto [p, e] = split_prime_power(q);
    return Curve::build(Field::build(p, e, r));
}

namespace {

using Clock = std::chrono::steady_clock;

Report start_report(const RunConfig& cfg)
{
    Report rep;
    rep.config = config_from_json(config_to_json(cfg));
    rep.key = cfg.key();
    rep.seed = cfg.seed;
    rep.timestamp = now_utc();
    return rep;
}

}  // namespace

Report run_analyze(const RunConfig& cfg, const ProgressFn& progress)
{
    cfg.validate();
    const auto start = Clock::now();
    Report rep = start_report(cfg);
    const CurvePtr curve = make_curve(cfg.q, cfg.r);
    const LinearCode code = build_code(*curve, cfg.code);
    rep.n = code.length();
    rep.k = code.dimension();
    const LinearCode target = cfg.dual ? dual(code) : code;

    std::string engine = cfg.engine;
    if (engine == "auto") {
        const double bits = static_cast<double>(target.dimension()) * std::log2(static_cast<double>(curve->order()));
        engine = !cfg.dual && bits <= 24.0 ? "exhaustive" : "support_search";
    }
    WeightReport weights;
    if (engine == "exhaustive") {
        weights = min_distance_exhaustive(target, cfg.workers, true);
    } else {
        SearchOptions opts;
        opts.w_max = std::min(cfg.w_max, target.length());
        opts.collect_supports = true;
        opts.workers = cfg.workers;
        opts.progress = progress;
        // The words of `target` are the null vectors of its dual's generator.
        const FMatrix check = cfg.dual ? code.generator() : nullspace(code.generator());
        weights = dual_weight_search(check, opts);
    }
    rep.engine = to_string(weights.engine);
    rep.distance = weights.min_distance;
    rep.counts = weights.counts;
    rep.searched_up_to = weights.searched_up_to;
    rep.subsets_visited = weights.subsets_visited;
    for (const auto& s : classify_supports(*curve, target.labels(), weights.supports)) {
        SupportEntry e;
        for (const auto& p : s.points) e.points.push_back({p.x.index, p.y.index});
        if (s.line) e.line = s.line->to_string();
        e.cls = s.class_name();
        rep.supports.push_back(std::move(e));
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return rep;
}

Report run_verify(const RunConfig& cfg, const ProgressFn& progress)
{
    cfg.validate();
    if (cfg.checks.empty()) fail_config("verify needs at least one check");
    const auto start = Clock::now();
    Report rep = start_report(cfg);
    const CurvePtr curve = make_curve(cfg.q, cfg.r);
    std::vector<CheckRequest> requests;
    for (const auto& id : cfg.checks)
        requests.push_back(CheckRequest{id,
                                        {{"d", cfg.code.d},
                                         {"a", cfg.code.a},
                                         {"b", cfg.code.b},
                                         {"s", cfg.code.s},
                                         {"trials", cfg.trials}},
                                        cfg.code.E});
    LabOptions opts;
    opts.workers = cfg.workers;
    opts.seed = cfg.seed;
    opts.progress = progress;
    rep.checks = run_checks(*curve, requests, opts);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return rep;
}

Report run_config(const RunConfig& cfg, const ProgressFn& progress)
{
    return cfg.checks.empty() ? run_analyze(cfg, progress) : run_verify(cfg, progress);
}

ReportCache::ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ReportCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<Report> ReportCache::load(const std::string& key,
                                        const std::function<void(const std::string&)>& warn) const
{
    const auto path = path_for(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
        std::ifstream in(path);
        const json j = json::parse(in);
        Report rep = report_from_json(j);
        if (rep.key != key) throw std::runtime_error("key mismatch");
        return rep;
    } catch (const std::exception& e) {
        if (warn) warn("cache entry " + path.string() + " is unreadable (" + e.what() + "); recomputing");
        return std::nullopt;
    }
}

void ReportCache::store(const Report& report) const
{
    static std::atomic<std::uint64_t> counter{0};
    std::filesystem::create_directories(dir_);
    const auto final_path = path_for(report.key);
    const auto tmp = dir_ / (report.key + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
        out << report_to_json(report).dump(2) << '\n';
        out.flush();
        if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, final_path);
}

namespace {

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "q") cfg.q = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "r") cfg.r = static_cast<std::uint32_t>(parse_int(key, value));
    else if (key == "family") cfg.code.family = family_from_string(value);
    else if (key == "d") cfg.code.d = static_cast<int>(parse_int(key, value));
    else if (key == "a") cfg.code.a = static_cast<int>(parse_int(key, value));
    else if (key == "b") cfg.code.b = static_cast<int>(parse_int(key, value));
    else if (key == "s") cfg.code.s = parse_int(key, value);
    else if (key == "m") cfg.code.m = parse_int(key, value);
    else if (key == "n") cfg.code.n = parse_int(key, value);
    else if (key == "E") cfg.code.E = parse_points(value);
    else if (key == "dual") cfg.dual = parse_bool(key, value);
    else if (key == "trials") cfg.trials = static_cast<int>(parse_int(key, value));
    else if (key == "w_max") cfg.w_max = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "engine") cfg.engine = value;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else fail_config("unknown sweep key '" + key + "'");
}

std::vector<std::string> parse_value_list(const std::string& key, const std::string& raw, std::size_t line_no)
{
    const std::string v = trim(raw);
    std::vector<std::string> items;
    if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
        for (const auto& item : split(v.substr(1, v.size() - 2), ',')) {
            const auto t = trim(item);
            if (t.empty()) fail_config("line " + std::to_string(line_no) + ": empty array element for '" + key + "'");
            items.push_back(t);
        }
        if (items.empty()) fail_config("line " + std::to_string(line_no) + ": empty array for '" + key + "'");
        return items;
    }
    if (const auto dots = v.find(".."); dots != std::string::npos && key != "E") {
        const auto lo = parse_int(key, trim(v.substr(0, dots))), hi = parse_int(key, trim(v.substr(dots + 2)));
        if (hi < lo) fail_config("line " + std::to_string(line_no) + ": empty range for '" + key + "'");
        for (auto i = lo; i <= hi; ++i) items.push_back(std::to_string(i));
        return items;
    }
    if (v.empty()) fail_config("line " + std::to_string(line_no) + ": missing value for '" + key + "'");
    items.push_back(v);
    return items;
}

}  // namespace

std::vector<RunConfig> parse_sweep(const std::string& text, const RunConfig& base)
{
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    std::set<std::string> seen;
    RunConfig fixed = base;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_config("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail_config("line " + std::to_string(line_no) + ": missing key");
        if (!seen.insert(key).second) fail_config("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        auto values = parse_value_list(key, line.substr(eq + 1), line_no);
        if (key == "checks") {
            fixed.checks = values;
            continue;
        }
        if (values.size() == 1) apply_key(fixed, key, values.front());
        else axes.emplace_back(key, std::move(values));
    }

    std::vector<RunConfig> grid;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        RunConfig cfg = fixed;
        for (std::size_t i = 0; i < axes.size(); ++i) apply_key(cfg, axes[i].first, axes[i].second[idx[i]]);
        cfg.validate();
        grid.push_back(std::move(cfg));
        std::size_t i = axes.size();
        while (i > 0) {
            --i;
            if (++idx[i] < axes[i].second.size()) break;
            idx[i] = 0;
            if (i == 0) return grid;
        }
        if (axes.empty()) return grid;
    }
}

namespace {

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void flatten(const json& j, const std::string& path, std::string& out)
{
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array() && !j.empty()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i), out);
    } else {
        out += csv_cell(path) + "," + csv_cell(j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

}  // namespace

std::string json_to_csv(const json& j)
{
    std::string out = "path,value\n";
    flatten(j, "", out);
    return out;
}

}  // namespace ntc
