// udint -- batch experiment driver. Wires sequence specs, integrands and
// estimators together from flags or a JSON config and emits CSV/JSON reports
// plus a config sidecar for reproducibility.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "udint/distribution.hpp"
#include "udint/equidistribution.hpp"
#include "udint/estimators.hpp"
#include "udint/integrand.hpp"
#include "udint/report_io.hpp"
#include "udint/sequences.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

json parse_seq_flag(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = colon == std::string::npos ? text : text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "kronecker") {
        if (arg.empty()) fail("--seq kronecker needs a parameter, e.g. kronecker:sqrt2");
        json j{{"kind", "kronecker"}};
        if (arg == "sqrt2" || arg == "pi" || arg == "phi")
            j["alpha"] = arg; // named constants resolve inside the tool at full precision
        else
            j["alpha"] = std::stod(arg);
        return j;
    }
    if (kind == "hybrid_pi") {
        if (!arg.empty()) fail("--seq hybrid_pi takes no parameter");
        return json{{"kind", "hybrid_pi"}};
    }
    if (kind == "vdc" || kind == "van_der_corput") {
        if (arg.empty()) fail("--seq vdc needs a base, e.g. vdc:2");
        return json{{"kind", "van_der_corput"}, {"base", std::stoul(arg)}};
    }
    if (kind == "prng") {
        if (arg.empty()) fail("--seq prng needs a seed, e.g. prng:42");
        return json{{"kind", "prng"}, {"seed", std::stoull(arg)}};
    }
    fail("unknown sequence kind '" + kind + "' (expected kronecker|hybrid_pi|vdc|prng)");
}

const std::map<std::string, std::set<std::string>>& allowed_fields() {
    static const std::map<std::string, std::set<std::string>> table = {
        {"generate", {"command", "sequence", "n_max", "output", "format"}},
        {"discrepancy",
         {"command", "sequence", "n_max", "schedule", "checkpoints", "output", "format"}},
        {"integrate",
         {"command", "sequence", "integrand", "n_max", "schedule", "checkpoints", "output",
          "format"}},
        {"truncated",
         {"command", "sequence", "integrand", "n_max", "eps", "schedule", "checkpoints",
          "output", "format"}},
        {"conditions",
         {"command", "sequence", "integrand", "n_max", "tolerances", "output", "format"}},
        {"slln",
         {"command", "sequence", "distribution", "n_max", "schedule", "checkpoints", "output",
          "format"}},
        {"lemma-bound",
         {"command", "integrand", "eps", "n_max", "replicas", "base_seed", "output", "format"}},
    };
    return table;
}

const std::map<std::string, std::set<std::string>>& required_fields() {
    static const std::map<std::string, std::set<std::string>> table = {
        {"generate", {"sequence", "n_max"}},
        {"discrepancy", {"sequence", "n_max"}},
        {"integrate", {"sequence", "integrand", "n_max"}},
        {"truncated", {"sequence", "integrand", "n_max", "eps"}},
        {"conditions", {"sequence", "integrand", "n_max"}},
        {"slln", {"sequence", "distribution", "n_max"}},
        {"lemma-bound", {"integrand", "eps", "n_max", "replicas", "base_seed"}},
    };
    return table;
}

void validate_config(const json& cfg) {
    if (!cfg.contains("command")) fail("config carries no command");
    const std::string cmd = cfg.at("command").get<std::string>();
    auto it = allowed_fields().find(cmd);
    if (it == allowed_fields().end()) fail("unknown command '" + cmd + "'");
    for (auto field = cfg.begin(); field != cfg.end(); ++field) {
        if (!it->second.count(field.key()))
            fail("field '" + field.key() + "' is not applicable to command '" + cmd + "'");
    }
    for (const std::string& req : required_fields().at(cmd)) {
        if (!cfg.contains(req)) fail("command '" + cmd + "' requires field '" + req + "'");
    }
    if (cfg.contains("schedule") && cfg.at("schedule") != "geometric")
        fail("unknown schedule '" + cfg.at("schedule").get<std::string>() +
             "' (only 'geometric' is defined)");
    if (cfg.contains("schedule") && cfg.contains("checkpoints"))
        fail("give either a schedule name or an explicit checkpoint list, not both");
    if (cfg.contains("format")) {
        const std::string f = cfg.at("format").get<std::string>();
        if (f != "csv" && f != "json") fail("format must be csv or json");
    }
}

udint::Integrand build_integrand(const json& icfg, const udint::SequenceSpec* spec,
                                 std::uint64_t n_max) {
    std::string name;
    std::optional<double> p;
    if (icfg.is_string()) {
        name = icfg.get<std::string>(); // shorthand: "integrand": "square"
    } else {
        for (auto it = icfg.begin(); it != icfg.end(); ++it)
            if (it.key() != "name" && it.key() != "p")
                fail("integrand: unexpected field '" + it.key() + "'");
        name = icfg.at("name").get<std::string>();
        if (icfg.contains("p")) {
            const auto& pj = icfg.at("p");
            p = pj.is_string() ? udint::parse_rational(pj.get<std::string>()) : pj.get<double>();
        }
    }
    if (name == "counterexample") {
        if (p) fail("integrand 'counterexample' takes no parameter p");
        if (!spec)
            fail("integrand 'counterexample' needs a generating sequence and is not available "
                 "here");
        // stores the run's own prefix, so averaging along the run gives 0
        auto points = udint::generate(*spec, n_max);
        return udint::counterexample_integrand(points);
    }
    return udint::catalog::by_name(name, p);
}

std::vector<std::uint64_t> config_checkpoints(const json& cfg) {
    if (cfg.contains("checkpoints"))
        return cfg.at("checkpoints").get<std::vector<std::uint64_t>>();
    return {}; // estimators fall back to the geometric schedule
}

std::string resolve_output(const json& cfg) {
    std::string out = cfg.value("output", std::string());
    if (out.empty()) return out;
    fs::path p = out;
    if (p.is_relative()) {
        if (const char* dir = std::getenv("UDINT_OUT_DIR")) p = fs::path(dir) / p;
    }
    return p.string();
}

void emit(const json& cfg, const std::string& csv_body, const json& report) {
    const std::string format = cfg.value("format", std::string("csv"));
    const std::string body = format == "json" ? report.dump(2) + "\n" : csv_body;
    const std::string out = resolve_output(cfg);
    if (out.empty()) {
        std::cout << body;
        return;
    }
    {
        std::ofstream file(out, std::ios::binary);
        if (!file) fail("cannot open output file '" + out + "'");
        file << body;
        if (!file) fail("failed writing output file '" + out + "'");
    }
    std::ofstream sidecar(out + ".config.json", std::ios::binary);
    if (!sidecar) fail("cannot open sidecar '" + out + ".config.json'");
    sidecar << cfg.dump(2) << "\n";
}

void run_generate(const json& cfg) {
    udint::SequenceSpec spec = cfg.at("sequence").get<udint::SequenceSpec>();
    const auto n = cfg.at("n_max").get<std::uint64_t>();
    auto points = udint::generate(spec, n);
    std::string body = "n,x\n";
    json values = json::array();
    for (std::uint64_t i = 0; i < n; ++i) {
        body += std::to_string(i + 1);
        body += ',';
        body += udint::fmt_real(points[i].value());
        body += '\n';
        values.push_back(points[i].value());
    }
    emit(cfg, body, json{{"config", cfg}, {"points", values}});
}

void run_discrepancy(const json& cfg) {
    udint::SequenceSpec spec = cfg.at("sequence").get<udint::SequenceSpec>();
    const auto n = cfg.at("n_max").get<std::uint64_t>();
    auto points = udint::generate(spec, n);
    std::vector<std::uint64_t> ns;
    if (cfg.contains("schedule"))
        ns = udint::geometric_checkpoints(n);
    else if (cfg.contains("checkpoints")) {
        ns = config_checkpoints(cfg);
        for (std::uint64_t c : ns)
            if (c == 0 || c > n) fail("discrepancy: checkpoint out of range");
    } else {
        ns = {n};
    }
    std::string body = "n,d_star,c,d\n";
    json rows = json::array();
    for (std::uint64_t prefix : ns) {
        auto rep = udint::star_discrepancy(
            std::span<const udint::Point01>(points.data(), prefix));
        body += std::to_string(rep.n);
        body += ',';
        body += udint::fmt_real(rep.d_star);
        body += ',';
        body += udint::fmt_real(rep.worst_c);
        body += ',';
        body += udint::fmt_real(rep.worst_d);
        body += '\n';
        rows.push_back(udint::discrepancy_json(rep));
    }
    emit(cfg, body, json{{"config", cfg}, {"reports", rows}});
}

void run_integrate(const json& cfg) {
    udint::SequenceSpec spec = cfg.at("sequence").get<udint::SequenceSpec>();
    const auto n = cfg.at("n_max").get<std::uint64_t>();
    auto f = build_integrand(cfg.at("integrand"), &spec, n);
    auto traj = udint::cesaro_mean(f, spec, n, config_checkpoints(cfg));
    emit(cfg, udint::trajectory_csv(traj),
         json{{"config", cfg}, {"trajectory", udint::trajectory_json(traj)}});
}

void run_truncated(const json& cfg) {
    udint::SequenceSpec spec = cfg.at("sequence").get<udint::SequenceSpec>();
    const auto n = cfg.at("n_max").get<std::uint64_t>();
    auto f = build_integrand(cfg.at("integrand"), &spec, n);
    auto traj =
        udint::truncated_mean(f, spec, n, cfg.at("eps").get<double>(), config_checkpoints(cfg));
    emit(cfg, udint::trajectory_csv(traj),
         json{{"config", cfg}, {"trajectory", udint::trajectory_json(traj)}});
}

void run_conditions(const json& cfg) {
    udint::SequenceSpec spec = cfg.at("sequence").get<udint::SequenceSpec>();
    const auto n = cfg.at("n_max").get<std::uint64_t>();
    auto f = build_integrand(cfg.at("integrand"), &spec, n);
    udint::ConditionTolerances tol;
    if (cfg.contains("tolerances")) {
        const json& t = cfg.at("tolerances");
        for (auto it = t.begin(); it != t.end(); ++it)
            if (it.key() != "tail" && it.key() != "oscillation" && it.key() != "integral_gap")
                fail("tolerances: unexpected field '" + it.key() + "'");
        tol.tail = t.value("tail", tol.tail);
        tol.oscillation = t.value("oscillation", tol.oscillation);
        tol.integral_gap = t.value("integral_gap", tol.integral_gap);
    }
    auto report = udint::check_conditions(f, spec, n, tol);
    emit(cfg, udint::condition_csv(report),
         json{{"config", cfg}, {"report", udint::condition_json(report)}});
}

void run_slln(const json& cfg) {
    udint::SequenceSpec spec = cfg.at("sequence").get<udint::SequenceSpec>();
    const auto n = cfg.at("n_max").get<std::uint64_t>();
    auto F = udint::distribution_from_json(cfg.at("distribution"));
    const bool iid = std::holds_alternative<udint::PrngSpec>(spec.kind);
    if (!iid)
        std::cerr << "note: sequence kind '" << spec.kind_name()
                  << "' is deterministic; the run averages along a fixed sequence rather than "
                     "simulating i.i.d. draws\n";
    auto traj = udint::slln_trajectory(F, spec, n, config_checkpoints(cfg));
    emit(cfg, udint::trajectory_csv(traj),
         json{{"config", cfg},
              {"iid_sequence", iid},
              {"trajectory", udint::trajectory_json(traj)}});
}

void run_lemma_bound(const json& cfg) {
    const auto n = cfg.at("n_max").get<std::uint64_t>();
    auto f = build_integrand(cfg.at("integrand"), nullptr, n);
    const double eps = cfg.at("eps").get<double>();
    const auto replicas = cfg.at("replicas").get<std::uint64_t>();
    const auto base_seed = cfg.at("base_seed").get<std::uint64_t>();
    auto res = udint::replica_deviation_sq(f, eps, n, replicas, base_seed);
    std::string body = "replica,seed,deviation_sq\n";
    for (std::uint64_t r = 0; r < replicas; ++r) {
        body += std::to_string(r);
        body += ',';
        body += std::to_string(base_seed + r);
        body += ',';
        body += udint::fmt_real(res.per_replica[r]);
        body += '\n';
    }
    emit(cfg, body,
         json{{"config", cfg},
              {"per_replica", res.per_replica},
              {"mean", res.mean},
              {"std_error", res.std_error}});
}

void execute(json cfg) {
    validate_config(cfg);
    const std::string cmd = cfg.at("command").get<std::string>();
    if (cmd == "generate")
        run_generate(cfg);
    else if (cmd == "discrepancy")
        run_discrepancy(cfg);
    else if (cmd == "integrate")
        run_integrate(cfg);
    else if (cmd == "truncated")
        run_truncated(cfg);
    else if (cmd == "conditions")
        run_conditions(cfg);
    else if (cmd == "slln")
        run_slln(cfg);
    else if (cmd == "lemma-bound")
        run_lemma_bound(cfg);
    else
        fail("unknown command '" + cmd + "'");
}

json load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) fail("cannot open config file '" + path + "'");
    json j;
    file >> j;
    if (!j.is_object()) fail("config file must hold a JSON object");
    return j;
}

// flag values shared across subcommands; presence is tested via count()
struct Flags {
    std::string seq, f_name, p_str, dist, schedule, output, config_path;
    std::string format = "csv";
    std::uint64_t n = 0, replicas = 0, base_seed = 0;
    double eps = 0.0, p_num = 0.0, rate = 0.0, atom = 0.0, weight = 0.0, location = 0.0;
    double tol_tail = 0.0, tol_osc = 0.0, tol_gap = 0.0;
    std::vector<std::uint64_t> checkpoints;
};

void add_output_flags(CLI::App* sub, Flags& fl) {
    sub->add_option("--out", fl.output, "output file (stdout if omitted); a .config.json sidecar "
                                        "is written next to it");
    sub->add_option("--format", fl.format, "csv|json")->capture_default_str();
    sub->add_option("--config", fl.config_path, "JSON config file; its fields override flags");
}

void add_schedule_flags(CLI::App* sub, Flags& fl) {
    sub->add_option("--schedule", fl.schedule, "checkpoint schedule name (geometric)");
    sub->add_option("--checkpoints", fl.checkpoints, "explicit checkpoint list")
        ->delimiter(',');
}

bool flag_given(CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

json common_config(CLI::App* sub, const Flags& fl, const std::string& command, bool with_seq) {
    json cfg{{"command", command}};
    if (with_seq && flag_given(sub, "--seq")) cfg["sequence"] = parse_seq_flag(fl.seq);
    if (flag_given(sub, "--n")) cfg["n_max"] = fl.n;
    if (flag_given(sub, "--out")) cfg["output"] = fl.output;
    if (flag_given(sub, "--format")) cfg["format"] = fl.format;
    if (flag_given(sub, "--schedule")) cfg["schedule"] = fl.schedule;
    if (flag_given(sub, "--checkpoints")) cfg["checkpoints"] = fl.checkpoints;
    return cfg;
}

void overlay_config_file(json& cfg, CLI::App* sub, const Flags& fl,
                         const std::string& command) {
    if (!sub->count("--config")) return;
    json file = load_config_file(fl.config_path);
    if (file.contains("command") && file.at("command") != command)
        fail("config file names command '" + file.at("command").get<std::string>() +
             "' but subcommand '" + command + "' was invoked");
    for (auto it = file.begin(); it != file.end(); ++it) cfg[it.key()] = *it; // file wins
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"udint: Lebesgue integrals on (0,1) via uniformly distributed sequences"};
    app.require_subcommand(1);
    Flags fl;

    auto* gen = app.add_subcommand("generate", "emit the first n points of a sequence");
    gen->add_option("--seq", fl.seq, "sequence spec, e.g. kronecker:sqrt2|hybrid_pi|vdc:2|prng:42");
    gen->add_option("--n", fl.n, "number of points");
    add_output_flags(gen, fl);
    gen->callback([&] {
        json cfg = common_config(gen, fl, "generate", true);
        overlay_config_file(cfg, gen, fl, "generate");
        execute(cfg);
    });

    auto* dis = app.add_subcommand("discrepancy", "star discrepancy of a sequence prefix");
    dis->add_option("--seq", fl.seq, "sequence spec");
    dis->add_option("--n", fl.n, "prefix length");
    add_schedule_flags(dis, fl);
    add_output_flags(dis, fl);
    dis->callback([&] {
        json cfg = common_config(dis, fl, "discrepancy", true);
        overlay_config_file(cfg, dis, fl, "discrepancy");
        execute(cfg);
    });

    auto add_integrand_flags = [&fl](CLI::App* sub) {
        sub->add_option("--f", fl.f_name,
                        "integrand: square|log_recip|inv_sqrt|inv_sqrt_shift|signed_demo|"
                        "counterexample");
        sub->add_option("--p", fl.p_str, "rational parameter for inv_sqrt_shift, e.g. 1/2");
    };
    auto integrand_config = [&fl](CLI::App* sub, json& cfg) {
        if (sub->count("--f")) {
            json f{{"name", fl.f_name}};
            if (sub->count("--p")) f["p"] = fl.p_str;
            cfg["integrand"] = f;
        } else if (sub->count("--p")) {
            fail("--p given without --f");
        }
    };

    auto* integ = app.add_subcommand("integrate", "running mean of f along a sequence");
    integ->add_option("--seq", fl.seq, "sequence spec");
    integ->add_option("--n", fl.n, "number of terms");
    add_integrand_flags(integ);
    add_schedule_flags(integ, fl);
    add_output_flags(integ, fl);
    integ->callback([&] {
        json cfg = common_config(integ, fl, "integrate", true);
        integrand_config(integ, cfg);
        overlay_config_file(cfg, integ, fl, "integrate");
        execute(cfg);
    });

    auto* trunc = app.add_subcommand("truncated",
                                     "running mean of the index-truncated summands of f");
    trunc->add_option("--seq", fl.seq, "sequence spec");
    trunc->add_option("--n", fl.n, "number of terms");
    trunc->add_option("--eps", fl.eps, "truncation scale; term k is kept while f < k*eps");
    add_integrand_flags(trunc);
    add_schedule_flags(trunc, fl);
    add_output_flags(trunc, fl);
    trunc->callback([&] {
        json cfg = common_config(trunc, fl, "truncated", true);
        integrand_config(trunc, cfg);
        if (trunc->count("--eps")) cfg["eps"] = fl.eps;
        overlay_config_file(cfg, trunc, fl, "truncated");
        execute(cfg);
    });

    auto* cond = app.add_subcommand("conditions",
                                    "convergence-condition diagnostics for f along a sequence");
    cond->add_option("--seq", fl.seq, "sequence spec");
    cond->add_option("--n", fl.n, "number of terms");
    add_integrand_flags(cond);
    cond->add_option("--tol-tail", fl.tol_tail, "tolerance for the tail-term diagnostic");
    cond->add_option("--tol-osc", fl.tol_osc, "tolerance for the oscillation diagnostic");
    cond->add_option("--tol-gap", fl.tol_gap, "tolerance for the integral-gap diagnostic");
    add_output_flags(cond, fl);
    cond->callback([&] {
        json cfg = common_config(cond, fl, "conditions", true);
        integrand_config(cond, cfg);
        json tol;
        if (cond->count("--tol-tail")) tol["tail"] = fl.tol_tail;
        if (cond->count("--tol-osc")) tol["oscillation"] = fl.tol_osc;
        if (cond->count("--tol-gap")) tol["integral_gap"] = fl.tol_gap;
        if (!tol.empty()) cfg["tolerances"] = tol;
        overlay_config_file(cfg, cond, fl, "conditions");
        execute(cfg);
    });

    auto* slln = app.add_subcommand("slln", "sample-mean trajectory of quantile(F, u_k)");
    slln->add_option("--seq", fl.seq, "sequence spec (prng for the i.i.d. model)");
    slln->add_option("--n", fl.n, "number of draws");
    slln->add_option("--dist", fl.dist,
                     "distribution: bernoulli|point_mass|uniform|exponential|mixed_atom_uniform");
    slln->add_option("--p", fl.p_num, "bernoulli success probability");
    slln->add_option("--rate", fl.rate, "exponential rate");
    slln->add_option("--atom", fl.atom, "mixed_atom_uniform atom location");
    slln->add_option("--weight", fl.weight, "mixed_atom_uniform atom weight");
    slln->add_option("--location", fl.location, "point_mass location");
    add_schedule_flags(slln, fl);
    add_output_flags(slln, fl);
    slln->callback([&] {
        json cfg = common_config(slln, fl, "slln", true);
        if (slln->count("--dist")) {
            json d{{"dist", fl.dist}};
            if (slln->count("--p")) d["p"] = fl.p_num;
            if (slln->count("--rate")) d["rate"] = fl.rate;
            if (slln->count("--atom")) d["atom"] = fl.atom;
            if (slln->count("--weight")) d["weight"] = fl.weight;
            if (slln->count("--location")) d["location"] = fl.location;
            cfg["distribution"] = d;
        }
        overlay_config_file(cfg, slln, fl, "slln");
        execute(cfg);
    });

    auto* lemma = app.add_subcommand(
        "lemma-bound", "replica average of the squared truncated-mean deviation");
    add_integrand_flags(lemma);
    lemma->add_option("--eps", fl.eps, "truncation scale");
    lemma->add_option("--n", fl.n, "points per replica");
    lemma->add_option("--replicas", fl.replicas, "number of prng replicas");
    lemma->add_option("--base-seed", fl.base_seed, "seed of replica 0; replica r uses base+r");
    add_output_flags(lemma, fl);
    lemma->callback([&] {
        json cfg = common_config(lemma, fl, "lemma-bound", false);
        integrand_config(lemma, cfg);
        if (lemma->count("--eps")) cfg["eps"] = fl.eps;
        if (lemma->count("--replicas")) cfg["replicas"] = fl.replicas;
        if (lemma->count("--base-seed")) cfg["base_seed"] = fl.base_seed;
        overlay_config_file(cfg, lemma, fl, "lemma-bound");
        execute(cfg);
    });

    auto* runner = app.add_subcommand("run", "execute a saved config (e.g. a sidecar) verbatim");
    runner->add_option("--config", fl.config_path, "JSON config file")->required();
    runner->callback([&] { execute(load_config_file(fl.config_path)); });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
