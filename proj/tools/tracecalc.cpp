// tracecalc: check specifications, monitor JSON-lines event streams,
// enumerate bounded semantics and run the compositionality harness.
//
// Exit codes: 0 ok, 1 violation, 2 not contractive, 3 parse error,
// 4 malformed input, 5 equivalence failure.

#include "tracecalc/analysis.hpp"
#include "tracecalc/comp_semantics.hpp"
#include "tracecalc/interpreter.hpp"
#include "tracecalc/json_io.hpp"
#include "tracecalc/spec_dsl.hpp"
#include "tracecalc/theorem.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace tracecalc;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kNotContractive = 2, kParse = 3, kInput = 4, kEquiv = 5 };

struct Config {
    std::string spec_path;
    std::string events_path = "-";
    std::size_t horizon = 4;
    bool horizon_set = false;
    std::string pool = "0,1";
    std::uint64_t seed = 1;
    std::size_t count = 1000;
    std::size_t fuel = 0;
    std::string format = "text";
    bool skip_bad_lines = false;
    std::string reading = "prefix";
    std::string mutant;
};

json value_json(const Value& v) { return json::parse(v.to_json()); }

json subst_json(const Substitution& s) {
    json o = json::object();
    for (const auto& [x, v] : s.bindings())
        o[x] = value_json(v);
    return o;
}

std::vector<Value> parse_pool(const std::string& text) {
    std::vector<Value> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            out.push_back(parse_json_value(item));
        } catch (const JsonInputError&) {
            out.push_back(Value(item));
        }
    }
    return out;
}

// Loads and compiles a specification; returns an exit code on failure.
int load_spec(const Config& cfg, ParsedSpec& out) {
    std::ifstream in(cfg.spec_path, std::ios::binary);
    if (!in) {
        std::cerr << cfg.spec_path << ": cannot read specification\n";
        return kParse;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        out = parse_spec(buf.str(), cfg.spec_path);
    } catch (const SpecParseError& e) {
        for (const auto& d : e.diagnostics)
            std::cerr << d.render() << "\n";
        return kParse;
    }
    return kOk;
}

int report_contractivity(const Config& cfg, const ParsedSpec& spec) {
    auto c = check_contractive(spec.system);
    if (c.contractive)
        return kOk;
    std::cerr << cfg.spec_path << ": not contractive: " << c.diagnostic << "\n";
    return kNotContractive;
}

int cmd_check(const Config& cfg) {
    ParsedSpec spec;
    if (int rc = load_spec(cfg, spec))
        return rc;
    if (int rc = report_contractivity(cfg, spec))
        return rc;
    if (cfg.format == "json") {
        std::cout << json{{"status", "ok"}, {"main", spec.main}, {"equations", spec.equations.size()}}.dump()
                  << "\n";
    } else {
        std::cout << "ok: " << spec.equations.size() << " equation(s), main " << spec.main << "\n";
    }
    return kOk;
}

int cmd_monitor(const Config& cfg) {
    ParsedSpec spec;
    if (int rc = load_spec(cfg, spec))
        return rc;
    if (int rc = report_contractivity(cfg, spec))
        return rc;

    std::ifstream file;
    std::istream* in = &std::cin;
    if (cfg.events_path != "-") {
        file.open(cfg.events_path, std::ios::binary);
        if (!file) {
            std::cerr << cfg.events_path << ": cannot read events\n";
            return kInput;
        }
        in = &file;
    }
    const bool js = cfg.format == "json";
    auto sys = std::make_shared<const TermSystem>(spec.system);
    auto types = std::make_shared<const EventTypes>(spec.types);
    MonitorState st = session_new(sys, types, cfg.fuel);

    std::string line;
    std::size_t index = 0;
    std::size_t line_no = 0;
    std::ios::sync_with_stdio(false);
    while (std::getline(*in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::optional<Event> ev;
        try {
            ev = parse_event_line(line);
        } catch (const JsonInputError& e) {
            if (js)
                std::cout << json{{"line", line_no}, {"error", e.what()}}.dump() << "\n";
            else
                std::cout << "line " << line_no << ": error: " << e.what() << "\n";
            if (cfg.skip_bad_lines) {
                std::cerr << "warning: skipped line " << line_no << "\n";
                continue;
            }
            std::cout.flush();
            return kInput;
        }
        FeedResult r = session_feed(st, *ev);
        st = std::move(r.state);
        const bool ok = r.status == FeedStatus::Ok;
        const bool accepting = session_status(st).accepting;
        if (js) {
            std::cout << "{\"index\":" << index << ",\"status\":\"" << (ok ? "ok" : "violation")
                      << "\",\"accepting\":" << (accepting ? "true" : "false") << "}\n";
        } else {
            std::cout << index << " " << (ok ? "ok" : "violation") << (accepting ? " accepting" : "") << "\n";
        }
        if (!ok) {
            if (js)
                std::cout << json{{"final", "violated"}, {"at", index}}.dump() << "\n";
            else
                std::cout << "final: violated at " << index << "\n";
            return kViolation;
        }
        ++index;
    }
    const bool accepted = session_status(st).accepting;
    if (js)
        std::cout << json{{"final", accepted ? "accepted" : "incomplete"}}.dump() << "\n";
    else
        std::cout << "final: " << (accepted ? "accepted" : "incomplete") << "\n";
    return kOk;
}

int cmd_enumerate(const Config& cfg) {
    ParsedSpec spec;
    if (int rc = load_spec(cfg, spec))
        return rc;
    if (int rc = report_contractivity(cfg, spec))
        return rc;
    auto pool = parse_pool(cfg.pool);
    std::vector<Event> alphabet;
    std::vector<std::string> labels;
    for (auto& a : build_alphabet(spec.types, pool)) {
        alphabet.push_back(a.event);
        labels.push_back(a.label);
    }
    EnumerateOptions eo;
    eo.horizon = cfg.horizon;
    eo.fuel = cfg.fuel;
    InstTraceSet s = enumerate(spec.system, spec.types, spec.system.root_term(), alphabet, eo);

    std::vector<InstTrace> items(s.members.begin(), s.members.end());
    std::stable_sort(items.begin(), items.end(), [&](const InstTrace& a, const InstTrace& b) {
        if (a.trace.size() != b.trace.size())
            return a.trace.size() < b.trace.size();
        std::string ra = render_word(a.trace, labels), rb = render_word(b.trace, labels);
        return ra != rb ? ra < rb : a.sigma < b.sigma;
    });
    for (const auto& m : items) {
        if (cfg.format == "json") {
            json tr = json::array();
            for (Letter l : m.trace)
                tr.push_back(labels[l]);
            std::cout << json{{"trace", tr}, {"subst", subst_json(m.sigma)}}.dump() << "\n";
        } else {
            std::cout << render_word(m.trace, labels);
            if (!m.sigma.empty())
                std::cout << "  " << m.sigma.render();
            std::cout << "\n";
        }
    }
    return kOk;
}

int cmd_equiv(const Config& cfg) {
    HarnessOptions ho;
    ho.horizon = cfg.horizon_set ? cfg.horizon : 5;
    ho.fuel = cfg.fuel;
    ho.reading = cfg.reading == "operational" ? Reading::Operational : Reading::Prefix;
    ho.mutation = cfg.mutant == "plain-union" ? Mutation::PlainUnion : Mutation::None;
    GeneratorOptions go;
    go.pool = parse_pool(cfg.pool);
    CorpusSummary sum = run_corpus(cfg.seed, cfg.count, go, ho);

    const bool js = cfg.format == "json";
    json claims = json::object();
    for (Claim c : {Claim::Union, Claim::Concat, Claim::Inter, Claim::Shuffle, Claim::Let})
        claims[claim_name(c)] = sum.per_claim_failures[static_cast<int>(c)];
    if (js) {
        json rep{{"seed", cfg.seed},          {"count", cfg.count},
                 {"horizon", ho.horizon},     {"reading", reading_name(ho.reading)},
                 {"comparisons", sum.comparisons}, {"inequalities", sum.inequalities},
                 {"undetermined", sum.undetermined}, {"failures_by_claim", claims}};
        if (sum.first_failure) {
            const auto& f = *sum.first_failure;
            json tr = json::array();
            for (Letter l : f.result.counterexample->trace)
                tr.push_back(sum.labels[l]);
            rep["first_counterexample"] = {{"case", f.case_index},
                                           {"claim", claim_name(f.result.claim)},
                                           {"system", f.system_text},
                                           {"t1", f.t1},
                                           {"t2", f.t2},
                                           {"trace", tr},
                                           {"subst", subst_json(f.result.counterexample->sigma)},
                                           {"side", f.result.only_operational ? "operational" : "compositional"}};
        }
        std::cout << rep.dump() << "\n";
    } else {
        std::cout << "seed " << cfg.seed << ", " << sum.cases << " case(s), horizon " << ho.horizon << ", reading "
                  << reading_name(ho.reading) << "\n";
        std::cout << sum.comparisons << " comparison(s), " << sum.inequalities << " inequality(ies)";
        if (sum.undetermined)
            std::cout << ", " << sum.undetermined << " productivity check(s) cut off by the exploration limits";
        std::cout << "\n";
        for (auto& [k, v] : claims.items())
            if (v.get<std::size_t>())
                std::cout << "  " << k << ": " << v.get<std::size_t>() << " unequal\n";
        if (sum.first_failure) {
            const auto& f = *sum.first_failure;
            std::cout << "first counterexample (case " << f.case_index << ", claim " << claim_name(f.result.claim)
                      << "):\n"
                      << f.system_text << "  t1 = " << f.t1 << "\n  t2 = " << f.t2 << "\n  trace "
                      << render_inst(*f.result.counterexample, sum.labels) << " only on the "
                      << (f.result.only_operational ? "operational" : "compositional") << " side\n";
        }
    }
    return sum.inequalities ? kEquiv : kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-expression monitor and semantics toolkit.\n"
                 "The main equation is the one named Main, or the first equation if none is."};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--fuel", cfg.fuel, "Nested unfoldings allowed per step (0 = 10 x equations)");
    };

    auto* check = app.add_subcommand("check", "Parse a specification and check contractivity");
    check->add_option("--spec", cfg.spec_path, "Specification file")->required();
    add_common(check);

    auto* monitor = app.add_subcommand("monitor", "Monitor a JSON-lines event stream");
    monitor->add_option("--spec", cfg.spec_path, "Specification file")->required();
    monitor->add_option("--events", cfg.events_path, "Event file, or - for stdin");
    monitor->add_flag("--skip-bad-lines", cfg.skip_bad_lines, "Warn about malformed lines instead of aborting");
    add_common(monitor);

    auto* enumerate_cmd = app.add_subcommand("enumerate", "List the bounded semantics of the main equation");
    enumerate_cmd->add_option("--spec", cfg.spec_path, "Specification file")->required();
    enumerate_cmd->add_option("--horizon", cfg.horizon, "Maximum trace length")->check(CLI::NonNegativeNumber);
    enumerate_cmd->add_option("--pool", cfg.pool, "Comma-separated parameter values for the alphabet");
    add_common(enumerate_cmd);

    auto* equiv = app.add_subcommand("equiv", "Compare operational and compositional semantics on generated terms");
    equiv->add_option("--seed", cfg.seed, "Generator seed");
    equiv->add_option("--count", cfg.count, "Number of generated systems");
    equiv->add_option("--horizon", cfg.horizon, "Maximum trace length (default 5)")
        ->check(CLI::NonNegativeNumber)
        ->each([&](const std::string&) { cfg.horizon_set = true; });
    equiv->add_option("--pool", cfg.pool, "Comma-separated parameter values for the alphabet");
    equiv->add_option("--reading", cfg.reading, "How left-preference side conditions are read")
        ->check(CLI::IsMember({"prefix", "operational"}));
    equiv->add_option("--inject-mutant", cfg.mutant, "Replace an operator by a faulty variant (testing only)")
        ->check(CLI::IsMember({"plain-union"}))
        ->group("");
    add_common(equiv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kInput;
    }

    if ((app.got_subcommand(enumerate_cmd) || app.got_subcommand(equiv)) && parse_pool(cfg.pool).empty()) {
        std::cerr << "--pool must list at least one value\n";
        return kInput;
    }

    try {
        if (app.got_subcommand(check))
            return cmd_check(cfg);
        if (app.got_subcommand(monitor))
            return cmd_monitor(cfg);
        if (app.got_subcommand(enumerate_cmd))
            return cmd_enumerate(cfg);
        return cmd_equiv(cfg);
    } catch (const FuelExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotContractive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
}
