// bergbox command line tool: monomial norms, commutator diagnostics, box
// covers, resolution verification and index certificates, emitted as
// deterministic CSV or JSON. Exit codes: 0 success, 1 verification failure,
// 2 usage or config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <bergbox/bergbox.hpp>

namespace {

using nlohmann::json;
using namespace bergbox;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitConfig = 2;

struct Options {
    std::string domain_path;
    std::string ideal_path;
    long truncation = 6;
    std::string shells = "10,20,40";
    std::uint64_t samples = 200000;
    std::uint64_t seed = 1;
    double tolerance = 3.0;
    std::string output;
    std::string format = "csv";
    bool raw_cover = false;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

std::vector<long> parse_shells(const std::string& text) {
    std::vector<long> shells;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw ConfigError("config: empty entry in --shells");
        std::size_t pos = 0;
        long v = std::stol(cur, &pos);
        if (pos != cur.size()) throw ConfigError("config: bad shell value \"" + cur + "\"");
        shells.push_back(v);
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else cur += c;
    }
    if (!cur.empty()) flush();
    if (shells.empty()) throw ConfigError("config: --shells must be nonempty");
    for (std::size_t i = 0; i < shells.size(); ++i)
        if (shells[i] <= 0 || (i > 0 && shells[i] <= shells[i - 1]))
            throw ConfigError("config: shells must be positive and strictly increasing");
    return shells;
}

json domain_to_json(const DomainSpec& spec) {
    json j;
    j["p"] = spec.p();
    j["constraints"] = json::array();
    for (const auto& c : spec.constraints()) j["constraints"].push_back(json{{"q", c.q}});
    j["dimension"] = spec.dimension();
    j["pure_ellipsoid"] = spec.pure_ellipsoid();
    return j;
}

json bounds_to_json(const BoxSpec& box) {
    json arr = json::array();
    for (const auto& [c, b] : box.bounds()) arr.push_back(json{{"coord", c + 1}, {"bound", b}});
    return arr;
}

std::string bounds_to_string(const BoxSpec& box) {
    std::string s;
    for (const auto& [c, b] : box.bounds()) {
        if (!s.empty()) s += "+";
        s += std::to_string(c + 1) + ":" + std::to_string(b);
    }
    return s;
}

std::string shuffle_to_string(const std::vector<std::size_t>& shuffle) {
    std::string s;
    for (std::size_t i : shuffle) {
        if (!s.empty()) s += "+";
        s += std::to_string(i + 1);
    }
    return s;
}

std::string n_header(std::size_t m) {
    std::string h;
    for (std::size_t i = 0; i < m; ++i) {
        if (i) h += ",";
        h += "n" + std::to_string(i + 1);
    }
    return h;
}

std::string n_row(const MultiIndex& n) {
    std::string s;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(n[i]);
    }
    return s;
}

json verification_to_json(const ExactnessReport& report) {
    json v;
    v["grid_bound"] = report.grid_bound;
    v["grid_points"] = report.grid_points;
    v["ideal_points"] = report.ideal_points;
    v["complement_points"] = report.complement_points;
    v["structure_ok"] = report.structure_ok;
    v["failure_count"] = report.failure_count;
    v["passed"] = report.passed();
    v["fiber_types"] = json::array();
    for (const auto& t : report.fiber_types)
        v["fiber_types"].push_back(
            json{{"covering_boxes", t.t}, {"points", t.points}, {"ranks", t.ranks}});
    v["failures"] = json::array();
    for (const auto& f : report.failures)
        v["failures"].push_back(
            json{{"n", f.n.entries()}, {"level", f.level}, {"reason", f.reason}});
    return v;
}

void verification_to_csv(const ExactnessReport& report, std::string& out) {
    out += "# section: verification\n";
    out += "grid_bound,grid_points,ideal_points,complement_points,structure_ok,failure_count,passed\n";
    out += std::to_string(report.grid_bound) + "," + std::to_string(report.grid_points) + "," +
           std::to_string(report.ideal_points) + "," + std::to_string(report.complement_points) +
           "," + (report.structure_ok ? "1" : "0") + "," + std::to_string(report.failure_count) +
           "," + (report.passed() ? "1" : "0") + "\n";
    if (!report.failures.empty()) {
        out += "# section: failures\n";
        out += "n,level,reason\n";
        for (const auto& f : report.failures)
            out += csv_quote(f.n.to_string()) + "," + std::to_string(f.level) + "," +
                   csv_quote(f.reason) + "\n";
    }
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each fills `out` completely and returns an exit code;
// nothing is written on a config error, so failed runs leave no partial file.
// ---------------------------------------------------------------------------

int cmd_norms(const Options& opt, std::string& out) {
    DomainSpec spec = normalize_domain(load_domain_file(opt.domain_path));
    if (opt.truncation < 0) throw ConfigError("config: --truncation must be >= 0");
    const std::size_t m = spec.dimension();
    check_budget(count_up_to_degree(m, opt.truncation), "norms");

    std::vector<std::pair<MultiIndex, double>> rows;
    for_each_up_to_degree(m, opt.truncation, [&](const std::vector<int>& e) {
        MultiIndex n(e);
        double v = log_norm(spec, n);
        rows.emplace_back(std::move(n), v);
    });

    if (opt.format == "json") {
        json j;
        j["command"] = "norms";
        j["domain"] = domain_to_json(spec);
        j["truncation"] = opt.truncation;
        j["rows"] = json::array();
        for (const auto& [n, v] : rows)
            j["rows"].push_back(json{{"n", n.entries()}, {"log_omega", v}});
        out = j.dump(2) + "\n";
    } else {
        out = n_header(m) + ",log_omega\n";
        for (const auto& [n, v] : rows) out += n_row(n) + "," + fmt(v) + "\n";
    }
    return kExitOk;
}

int cmd_oracle(const Options& opt, std::string& out) {
    DomainSpec spec = normalize_domain(load_domain_file(opt.domain_path));
    if (opt.truncation < 0) throw ConfigError("config: --truncation must be >= 0");
    if (opt.samples == 0) throw ConfigError("config: --samples must be >= 1");
    const std::size_t m = spec.dimension();
    if (m > 6)
        throw ResourceError("oracle: dimension " + std::to_string(m) +
                            " exceeds the Monte Carlo guard m <= 6");
    check_budget(count_up_to_degree(m, opt.truncation) * opt.samples, "oracle");

    struct Row {
        MultiIndex n;
        double formula, mc, stderr_log, z;
    };
    std::vector<Row> rows;
    bool breach = false;
    std::uint64_t seed = opt.seed;
    for_each_up_to_degree(m, opt.truncation, [&](const std::vector<int>& e) {
        MultiIndex n(e);
        const double formula = log_norm(spec, n);
        const auto mc = monte_carlo_log_norm(spec, n, opt.samples, seed++);
        const double z = (mc.log_estimate - formula) / mc.log_stderr;
        if (!(std::fabs(z) <= opt.tolerance)) breach = true;
        rows.push_back(Row{std::move(n), formula, mc.log_estimate, mc.log_stderr, z});
    });

    if (opt.format == "json") {
        json j;
        j["command"] = "oracle";
        j["domain"] = domain_to_json(spec);
        j["truncation"] = opt.truncation;
        j["samples"] = opt.samples;
        j["seed"] = opt.seed;
        j["tolerance"] = opt.tolerance;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back(json{{"n", r.n.entries()},
                                     {"log_omega_formula", r.formula},
                                     {"log_omega_mc", r.mc},
                                     {"mc_stderr", r.stderr_log},
                                     {"z_score", r.z}});
        j["passed"] = !breach;
        out = j.dump(2) + "\n";
    } else {
        out = n_header(m) + ",log_omega_formula,log_omega_mc,mc_stderr,z_score\n";
        for (const auto& r : rows)
            out += n_row(r.n) + "," + fmt(r.formula) + "," + fmt(r.mc) + "," +
                   fmt(r.stderr_log) + "," + fmt(r.z) + "\n";
    }
    return breach ? kExitVerificationFailed : kExitOk;
}

int cmd_commutators(const Options& opt, std::string& out) {
    DomainSpec spec = normalize_domain(load_domain_file(opt.domain_path));
    if (opt.truncation < 0) throw ConfigError("config: --truncation must be >= 0");
    const std::size_t m = spec.dimension();

    std::vector<std::vector<CommutatorEigenvalue>> tables;
    for (std::size_t v = 0; v < m; ++v)
        tables.push_back(truncated_self_commutator_diagonal(spec, v, opt.truncation));

    if (opt.format == "json") {
        json j;
        j["command"] = "commutators";
        j["domain"] = domain_to_json(spec);
        j["truncation"] = opt.truncation;
        j["rows"] = json::array();
        for (std::size_t v = 0; v < m; ++v)
            for (const auto& ev : tables[v])
                j["rows"].push_back(json{{"n", ev.n.entries()},
                                         {"var", variable_label(spec, v)},
                                         {"lambda_prime", ev.lambda_prime},
                                         {"lambda_double_prime", ev.lambda_double_prime},
                                         {"lambda", ev.lambda}});
        out = j.dump(2) + "\n";
    } else {
        out = n_header(m) + ",var,lambda_prime,lambda_double_prime,lambda\n";
        for (std::size_t v = 0; v < m; ++v)
            for (const auto& ev : tables[v])
                out += n_row(ev.n) + "," + variable_label(spec, v) + "," + fmt(ev.lambda_prime) +
                       "," + fmt(ev.lambda_double_prime) + "," + fmt(ev.lambda) + "\n";
    }
    return kExitOk;
}

int cmd_decay(const Options& opt, std::string& out) {
    DomainSpec spec = normalize_domain(load_domain_file(opt.domain_path));
    const auto shells = parse_shells(opt.shells);
    const auto profiles = decay_profile_all_vars(spec, shells);

    if (opt.format == "json") {
        json j;
        j["command"] = "decay";
        j["domain"] = domain_to_json(spec);
        j["shells"] = shells;
        j["rows"] = json::array();
        for (const auto& p : profiles)
            for (const auto& [N, v] : p.shells)
                j["rows"].push_back(json{{"shell", N},
                                         {"var", variable_label(spec, p.var)},
                                         {"max_abs_lambda", v}});
        out = j.dump(2) + "\n";
    } else {
        out = "shell,var,max_abs_lambda\n";
        for (const auto& p : profiles)
            for (const auto& [N, v] : p.shells)
                out += std::to_string(N) + "," + variable_label(spec, p.var) + "," + fmt(v) + "\n";
    }
    return kExitOk;
}

int cmd_staircase(const Options& opt, std::string& out) {
    MonomialIdeal ideal = load_ideal_file(opt.ideal_path);
    if (opt.truncation < 0) throw ConfigError("config: --truncation must be >= 0");
    const auto points = staircase_complement(ideal, static_cast<int>(opt.truncation));

    if (opt.format == "json") {
        json j;
        j["command"] = "staircase";
        j["dimension"] = ideal.dimension();
        j["truncation"] = opt.truncation;
        j["count"] = points.size();
        j["points"] = json::array();
        for (const auto& n : points) j["points"].push_back(n.entries());
        out = j.dump(2) + "\n";
    } else {
        out = n_header(ideal.dimension()) + "\n";
        for (const auto& n : points) out += n_row(n) + "\n";
    }
    return kExitOk;
}

int cmd_boxes(const Options& opt, std::string& out) {
    MonomialIdeal ideal = load_ideal_file(opt.ideal_path);
    const auto cover = box_cover(ideal, !opt.raw_cover);

    if (opt.format == "json") {
        json j;
        j["command"] = "boxes";
        j["dimension"] = ideal.dimension();
        j["minimized"] = !opt.raw_cover;
        j["count"] = cover.size();
        j["boxes"] = json::array();
        for (std::size_t i = 0; i < cover.size(); ++i)
            j["boxes"].push_back(json{{"id", i + 1}, {"bounds", bounds_to_json(cover[i])}});
        out = j.dump(2) + "\n";
    } else {
        out = "box,bounds\n";
        for (std::size_t i = 0; i < cover.size(); ++i)
            out += std::to_string(i + 1) + "," + csv_quote(bounds_to_string(cover[i])) + "\n";
    }
    return kExitOk;
}

// Shared by resolve/verify: empty covers are legitimate (unit-style ideals
// with an all-zero cover enumeration); then the complement must be empty.
struct ResolveOutcome {
    std::vector<BoxSpec> cover;
    std::optional<BoxComplex> complex;
    std::optional<ExactnessReport> report;
    bool complement_empty_ok = true;  // used when the cover is empty
    std::uint64_t uncovered = 0;

    bool passed() const {
        if (!cover.empty()) return report && report->passed();
        return complement_empty_ok;
    }
};

ResolveOutcome run_resolution(const MonomialIdeal& ideal, bool minimize, int N) {
    ResolveOutcome r;
    r.cover = box_cover(ideal, minimize);
    if (r.cover.empty()) {
        for_each_in_grid(ideal.dimension(), N, [&](const std::vector<int>& e) {
            if (!ideal.contains(MultiIndex(e))) ++r.uncovered;
        });
        r.complement_empty_ok = r.uncovered == 0;
        return r;
    }
    r.complex = build_complex(r.cover);
    r.report = verify_exactness(*r.complex, ideal, N);
    return r;
}

json certificate_to_json(const IndexCertificate& cert) {
    json j;
    j["k"] = cert.k;
    j["entries"] = json::array();
    for (const auto& e : cert.entries)
        j["entries"].push_back(json{{"sign", e.sign},
                                    {"q", e.q},
                                    {"shuffle", [&] {
                                         std::vector<std::size_t> s;
                                         for (std::size_t i : e.shuffle) s.push_back(i + 1);
                                         return s;
                                     }()},
                                    {"bounds", bounds_to_json(e.box)}});
    return j;
}

void certificate_to_csv(const IndexCertificate& cert, std::string& out) {
    out += "sign,q,shuffle,bounds\n";
    for (const auto& e : cert.entries)
        out += std::to_string(e.sign) + "," + std::to_string(e.q) + "," +
               csv_quote(shuffle_to_string(e.shuffle)) + "," + csv_quote(bounds_to_string(e.box)) +
               "\n";
}

int cmd_resolve(const Options& opt, std::string& out) {
    MonomialIdeal ideal = load_ideal_file(opt.ideal_path);
    if (opt.truncation < 0) throw ConfigError("config: --truncation must be >= 0");
    const auto outcome = run_resolution(ideal, !opt.raw_cover, static_cast<int>(opt.truncation));

    if (opt.format == "json") {
        json j;
        j["command"] = "resolve";
        j["dimension"] = ideal.dimension();
        j["minimized"] = !opt.raw_cover;
        j["cover"] = json::array();
        for (std::size_t i = 0; i < outcome.cover.size(); ++i)
            j["cover"].push_back(json{{"id", i + 1}, {"bounds", bounds_to_json(outcome.cover[i])}});
        j["levels"] = json::array();
        if (outcome.complex)
            for (std::size_t q = 1; q <= outcome.complex->k; ++q)
                j["levels"].push_back(json{{"q", q}, {"summands", outcome.complex->level(q).size()}});
        if (outcome.report) {
            j["verification"] = verification_to_json(*outcome.report);
        } else {
            j["verification"] = json{{"complement_empty", true},
                                     {"uncovered_points", outcome.uncovered},
                                     {"passed", outcome.passed()}};
            j["note"] = "staircase complement is empty; nothing to resolve";
        }
        j["certificate"] =
            outcome.complex ? certificate_to_json(index_certificate(*outcome.complex))
                            : json{{"k", 0}, {"entries", json::array()}};
        out = j.dump(2) + "\n";
    } else {
        out += "# section: cover\n";
        out += "box,bounds\n";
        for (std::size_t i = 0; i < outcome.cover.size(); ++i)
            out += std::to_string(i + 1) + "," + csv_quote(bounds_to_string(outcome.cover[i])) + "\n";
        out += "# section: levels\n";
        out += "q,summands\n";
        if (outcome.complex)
            for (std::size_t q = 1; q <= outcome.complex->k; ++q)
                out += std::to_string(q) + "," + std::to_string(outcome.complex->level(q).size()) +
                       "\n";
        if (outcome.report) {
            verification_to_csv(*outcome.report, out);
        } else {
            out += "# section: verification\n";
            out += "complement_empty,uncovered_points,passed\n";
            out += std::string("1,") + std::to_string(outcome.uncovered) + "," +
                   (outcome.passed() ? "1" : "0") + "\n";
        }
        out += "# section: certificate\n";
        if (outcome.complex)
            certificate_to_csv(index_certificate(*outcome.complex), out);
        else
            out += "sign,q,shuffle,bounds\n";
    }
    return outcome.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_verify(const Options& opt, std::string& out) {
    MonomialIdeal ideal = load_ideal_file(opt.ideal_path);
    if (opt.truncation < 0) throw ConfigError("config: --truncation must be >= 0");
    const auto outcome = run_resolution(ideal, !opt.raw_cover, static_cast<int>(opt.truncation));

    if (opt.format == "json") {
        json j;
        j["command"] = "verify";
        j["dimension"] = ideal.dimension();
        if (outcome.report) {
            j["verification"] = verification_to_json(*outcome.report);
        } else {
            j["verification"] = json{{"complement_empty", true},
                                     {"uncovered_points", outcome.uncovered},
                                     {"passed", outcome.passed()}};
        }
        out = j.dump(2) + "\n";
    } else {
        if (outcome.report) {
            verification_to_csv(*outcome.report, out);
        } else {
            out += "# section: verification\n";
            out += "complement_empty,uncovered_points,passed\n";
            out += std::string("1,") + std::to_string(outcome.uncovered) + "," +
                   (outcome.passed() ? "1" : "0") + "\n";
        }
    }
    return outcome.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_certificate(const Options& opt, std::string& out) {
    MonomialIdeal ideal = load_ideal_file(opt.ideal_path);
    const auto cover = box_cover(ideal, !opt.raw_cover);

    IndexCertificate cert;
    if (!cover.empty()) cert = index_certificate(build_complex(cover));

    if (opt.format == "json") {
        json j;
        j["command"] = "certificate";
        j["dimension"] = ideal.dimension();
        j["certificate"] = certificate_to_json(cert);
        out = j.dump(2) + "\n";
    } else {
        certificate_to_csv(cert, out);
    }
    return kExitOk;
}

int cmd_report(const Options& opt, std::string& out) {
    DomainSpec spec = normalize_domain(load_domain_file(opt.domain_path));
    if (opt.truncation < 0) throw ConfigError("config: --truncation must be >= 0");
    const auto shells = parse_shells(opt.shells);
    const std::size_t m = spec.dimension();

    std::optional<MonomialIdeal> ideal;
    if (!opt.ideal_path.empty()) {
        ideal = load_ideal_file(opt.ideal_path);
        if (ideal->dimension() != m)
            throw ConfigError("config: ideal dimension " + std::to_string(ideal->dimension()) +
                              " does not match domain dimension " + std::to_string(m));
    }

    check_budget(count_up_to_degree(m, opt.truncation), "report");
    std::vector<std::pair<MultiIndex, double>> norms;
    for_each_up_to_degree(m, opt.truncation, [&](const std::vector<int>& e) {
        MultiIndex n(e);
        double v = log_norm(spec, n);
        norms.emplace_back(std::move(n), v);
    });
    const auto profiles = decay_profile_all_vars(spec, shells);

    std::optional<ResolveOutcome> outcome;
    std::size_t staircase_count = 0;
    if (ideal) {
        outcome = run_resolution(*ideal, !opt.raw_cover, static_cast<int>(opt.truncation));
        staircase_count = staircase_complement(*ideal, static_cast<int>(opt.truncation)).size();
    }

    bool passed = !outcome || outcome->passed();

    if (opt.format == "json") {
        json j;
        j["command"] = "report";
        j["domain"] = domain_to_json(spec);
        j["truncation"] = opt.truncation;
        j["norms"] = json::array();
        for (const auto& [n, v] : norms)
            j["norms"].push_back(json{{"n", n.entries()}, {"log_omega", v}});
        j["decay"] = json::array();
        for (const auto& p : profiles)
            for (const auto& [N, v] : p.shells)
                j["decay"].push_back(json{{"shell", N},
                                          {"var", variable_label(spec, p.var)},
                                          {"max_abs_lambda", v}});
        if (outcome) {
            j["staircase_count"] = staircase_count;
            j["cover"] = json::array();
            for (std::size_t i = 0; i < outcome->cover.size(); ++i)
                j["cover"].push_back(
                    json{{"id", i + 1}, {"bounds", bounds_to_json(outcome->cover[i])}});
            if (outcome->report)
                j["verification"] = verification_to_json(*outcome->report);
            else
                j["verification"] = json{{"complement_empty", true},
                                         {"uncovered_points", outcome->uncovered},
                                         {"passed", outcome->passed()}};
            j["certificate"] =
                outcome->complex ? certificate_to_json(index_certificate(*outcome->complex))
                                 : json{{"k", 0}, {"entries", json::array()}};
        }
        j["passed"] = passed;
        out = j.dump(2) + "\n";
    } else {
        out += "# section: norms\n";
        out += n_header(m) + ",log_omega\n";
        for (const auto& [n, v] : norms) out += n_row(n) + "," + fmt(v) + "\n";
        out += "# section: decay\n";
        out += "shell,var,max_abs_lambda\n";
        for (const auto& p : profiles)
            for (const auto& [N, v] : p.shells)
                out += std::to_string(N) + "," + variable_label(spec, p.var) + "," + fmt(v) + "\n";
        if (outcome) {
            out += "# section: staircase\n";
            out += "count\n" + std::to_string(staircase_count) + "\n";
            out += "# section: cover\n";
            out += "box,bounds\n";
            for (std::size_t i = 0; i < outcome->cover.size(); ++i)
                out += std::to_string(i + 1) + "," + csv_quote(bounds_to_string(outcome->cover[i])) +
                       "\n";
            if (outcome->report) {
                verification_to_csv(*outcome->report, out);
            } else {
                out += "# section: verification\n";
                out += "complement_empty,uncovered_points,passed\n";
                out += std::string("1,") + std::to_string(outcome->uncovered) + "," +
                       (outcome->passed() ? "1" : "0") + "\n";
            }
            out += "# section: certificate\n";
            if (outcome->complex)
                certificate_to_csv(index_certificate(*outcome->complex), out);
            else
                out += "sign,q,shuffle,bounds\n";
        }
    }
    return passed ? kExitOk : kExitVerificationFailed;
}

int write_output(const Options& opt, const std::string& content) {
    if (opt.output.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return kExitOk;
    }
    std::ofstream f(opt.output, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << opt.output << "\n";
        return kExitConfig;
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman norms, commutator diagnostics and monomial-ideal resolutions "
                 "over intersections of complex ellipsoids"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool domain, bool ideal) {
        if (domain) sub->add_option("--domain", opt.domain_path, "domain config (JSON)");
        if (ideal) sub->add_option("--ideal", opt.ideal_path, "ideal config (JSON)");
        sub->add_option("--truncation", opt.truncation, "index truncation N");
        sub->add_option("--shells", opt.shells, "comma-separated shell list");
        sub->add_option("--samples", opt.samples, "Monte Carlo samples per index");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--tolerance", opt.tolerance, "z-score threshold");
        sub->add_option("--output", opt.output, "output path (default stdout)");
        sub->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--raw-cover", opt.raw_cover, "keep the raw cover enumeration (no minimization)");
        return sub;
    };

    struct Command {
        const char* name;
        bool needs_domain;
        bool needs_ideal;
        int (*run)(const Options&, std::string&);
    };
    const Command commands[] = {
        {"norms", true, false, cmd_norms},
        {"oracle", true, false, cmd_oracle},
        {"commutators", true, false, cmd_commutators},
        {"decay", true, false, cmd_decay},
        {"staircase", false, true, cmd_staircase},
        {"boxes", false, true, cmd_boxes},
        {"resolve", false, true, cmd_resolve},
        {"verify", false, true, cmd_verify},
        {"certificate", false, true, cmd_certificate},
        {"report", true, true, cmd_report},
    };
    for (const auto& c : commands) {
        auto* sub = add_common(app.add_subcommand(c.name, ""), true, true);
        (void)sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    const Command* selected = nullptr;
    for (const auto& c : commands)
        if (app.get_subcommand(c.name)->parsed()) selected = &c;
    if (!selected) {
        std::cerr << "error: no subcommand selected\n";
        return kExitConfig;
    }

    try {
        if (selected->needs_domain && opt.domain_path.empty())
            throw ConfigError("config: --domain is required for this command");
        if (selected->needs_ideal && opt.ideal_path.empty() &&
            std::string(selected->name) != "report")
            throw ConfigError("config: --ideal is required for this command");

        std::string content;
        const int code = selected->run(opt, content);
        const int io = write_output(opt, content);
        return io != kExitOk ? io : code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
