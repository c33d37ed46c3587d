#include "commands.hpp"

#include "slfmc/bqctl.hpp"
#include "slfmc/concepts.hpp"
#include "slfmc/error.hpp"
#include "slfmc/omega.hpp"
#include "slfmc/oracle.hpp"
#include "slfmc/parity.hpp"
#include "slfmc/parser.hpp"
#include "slfmc/sentence.hpp"
#include "slfmc/sl1g.hpp"
#include "slfmc/translation.hpp"
#include "slfmc/value_set.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

namespace slfmc::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

struct FormulaInput {
    Formula formula;
    json digest;
};

// A formula argument is a file when one exists at that path, else literal text.
FormulaInput load_formula(const std::string& arg, Dialect d) {
    std::error_code ec;
    if (fs::is_regular_file(arg, ec)) {
        std::string text = read_text(arg);
        auto defs = parse_formula_file(text, d);
        if (defs.empty()) throw Error(ErrorCode::Syntax, "no formula in '" + arg + "'");
        return {defs.back().second, {{"path", arg}, {"fnv1a64", fnv1a(text)}, {"name", defs.back().first}}};
    }
    return {parse_formula(arg, d), {{"text", arg}, {"fnv1a64", fnv1a(arg)}}};
}

struct ModelInput {
    json doc;
    json digest;
};

ModelInput load_model(const std::string& path) {
    std::string text = read_text(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Schema, path + ": " + e.what());
    }
    return {j, {{"path", path}, {"fnv1a64", fnv1a(text)}}};
}

bool is_game(const json& j) { return j.is_object() && j.contains("agents"); }

void write_dot(const Common& c, const std::string& name, const std::string& content, json& report) {
    if (c.dot_dir.empty()) return;
    fs::create_directories(c.dot_dir);
    fs::path p = fs::path(c.dot_dir) / name;
    // Written to a temporary first so readers never see a partial file.
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + p.string() + "'");
        out << content;
    }
    fs::rename(tmp, p);
    report["dot"].push_back(p.string());
}

std::string parity_dot(const ParityGame& g, const ParitySolution* sol = nullptr) {
    std::ostringstream os;
    os << "digraph parity {\n";
    for (int v = 0; v < g.size(); ++v) {
        os << "  v" << v << " [shape=" << (g.owner[v] == kEven ? "ellipse" : "box") << ", label=\"";
        if (v < static_cast<int>(g.names.size()) && !g.names[v].empty()) os << g.names[v] << " ";
        os << "p" << g.priority[v] << "\"";
        if (sol) os << ", color=" << (sol->winner[v] == kEven ? "blue" : "red");
        os << "];\n";
    }
    for (int v = 0; v < g.size(); ++v)
        for (int w : g.succ[v]) {
            os << "  v" << v << " -> v" << w;
            if (sol && sol->strategy[v] == w) os << " [style=bold]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

// Records the verdict when a predicate was given; the exit status follows it.
void apply_predicate(const Common& c, const Rat& value, Outcome& out) {
    if (!c.pred) return;
    Predicate p = Predicate::parse(*c.pred);
    bool ok = p.contains(value);
    out.report["predicate"] = p.str();
    out.report["verdict"] = ok;
    out.status = ok ? 0 : 2;
}

json value_list(const ValueSet& s) {
    json a = json::array();
    for (const auto& v : s) a.push_back(v.str());
    return a;
}

OracleMode oracle_mode(const std::string& m) {
    if (m.empty() || m == "exact") return OracleMode::XBoundedExact;
    if (m == "memoryless") return OracleMode::MemorylessApprox;
    if (m == "horizon") return OracleMode::HorizonTree;
    throw Error(ErrorCode::Usage, "unknown oracle mode '" + m + "' (exact, memoryless, horizon)");
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Outcome cmd_parse(const std::string& formula, const Common& c) {
    Dialect d = parse_dialect(c.dialect);
    auto in = load_formula(formula, d);
    const Formula& f = in.formula;
    Outcome out;
    json& r = out.report;
    r["input"] = in.digest;
    r["formula"] = print(f);
    r["size"] = formula_size(f);
    r["state_formula"] = is_state_formula(f);
    auto td = temporal_depth(f);
    r["x_depth"] = td ? json(*td) : json(nullptr);
    r["nesting_depth"] = nesting_depth(f);
    json atoms = json::array();
    for (const auto& a : atoms_of(f)) atoms.push_back(a);
    r["atoms"] = atoms;
    if (d == Dialect::SL) {
        json fv = json::array();
        for (const auto& v : free_vars(f)) fv.push_back(v);
        r["free_vars"] = fv;
        r["one_goal"] = is_sl1g(f);
        if (is_sl1g(f)) r["sentence_depth"] = sentence_depth(f);
    } else if (d == Dialect::QCTL) {
        json fp = json::array();
        for (const auto& p : free_props(f)) fp.push_back(p);
        r["free_props"] = fp;
    }
    return out;
}

Outcome cmd_values(const std::string& formula, const Common& c) {
    auto in = load_formula(formula, parse_dialect(c.dialect));
    ValueSet base = parse_base(c.base.empty() ? "0,1" : c.base);
    Outcome out;
    out.report["input"] = in.digest;
    out.report["base"] = value_list(base);
    out.report["set"] = value_list(value_set(in.formula, base));
    auto b = size_bound_check(in.formula, base);
    out.report["bound"] = b.bound;
    out.report["within_bound"] = b.ok;
    return out;
}

Outcome cmd_translate(const std::string& game, const std::string& formula, const Common& c) {
    auto model = load_model(game);
    Wcgs g = Wcgs::from_json(model.doc);
    auto in = load_formula(formula, Dialect::SL);
    Translation tr = translate(in.formula, g);
    Outcome out;
    out.report["inputs"] = {{"game", model.digest}, {"formula", in.digest}};
    out.report["manifest"] = json::parse(tr.manifest_json(g));
    out.report["qctl"] = print(tr.formula);
    out.report["kripke"] = tr.model.kripke.to_json();
    write_dot(c, "kripke.dot", tr.model.kripke.dot(), out.report);
    return out;
}

Outcome cmd_oracle(const std::string& model_path, const std::string& formula, const Common& c) {
    auto model = load_model(model_path);
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    OracleResult res;
    if (is_game(model.doc)) {
        Wcgs g = Wcgs::from_json(model.doc);
        auto in = load_formula(formula, Dialect::SL);
        OracleOptions o;
        o.mode = oracle_mode(c.mode);
        o.horizon = c.horizon;
        o.cap = cap_from_env(o.cap);
        res = eval_sl(in.formula, g, o);
        out.report["inputs"] = {{"game", model.digest}, {"formula", in.digest}};
        out.report["mode"] = c.mode.empty() ? "exact" : c.mode;
    } else {
        Wks k = Wks::from_json(model.doc);
        auto in = load_formula(formula, Dialect::QCTL);
        TreeOptions o;
        o.cap = cap_from_env(o.cap);
        int depth;
        if (c.mode.empty() || c.mode == "exact") {
            auto td = temporal_depth(in.formula);
            if (!td) throw Error(ErrorCode::DepthInsufficient, "exact tree mode needs an X-bounded formula; use --mode window");
            depth = *td;
            out.report["mode"] = "exact";
        } else if (c.mode == "window") {
            o.mode = TreeMode::Window;
            if (c.horizon < 0) throw Error(ErrorCode::Usage, "window mode needs --horizon");
            depth = c.horizon;
            out.report["mode"] = "window";
        } else {
            throw Error(ErrorCode::Usage, "unknown tree oracle mode '" + c.mode + "' (exact, window)");
        }
        res = eval_bqctl(in.formula, unfold_wks(k, depth), 0, o);
        out.report["inputs"] = {{"kripke", model.digest}, {"formula", in.digest}};
        out.report["tree_depth"] = depth;
    }
    out.report["value"] = res.value.str();
    out.report["exact"] = res.exact;
    out.report["telemetry"] = {{"enumerated", res.enumerated}, {"seconds", since(t0)}};
    apply_predicate(c, res.value, out);
    return out;
}

Outcome cmd_mc_sl1g(const std::string& game, const std::string& formula, const Common& c) {
    auto model = load_model(game);
    Wcgs g = Wcgs::from_json(model.doc);
    auto in = load_formula(formula, Dialect::SL);
    Sl1gResult r = check_sl1g_report(in.formula, g);
    Outcome out;
    out.report["inputs"] = {{"game", model.digest}, {"formula", in.digest}};
    out.report["mode"] = "exact";
    out.report["exact"] = true;
    out.report["value"] = r.value.str();
    if (r.has_witness) {
        json w = r.witness.strategy.to_json(g);
        w["variable"] = r.witness.var;
        out.report["witness"] = w;
    } else {
        out.report["witness"] = nullptr;
    }
    out.report["telemetry"] = r.telemetry_json();
    apply_predicate(c, r.value, out);
    write_dot(c, "game.dot", g.dot(), out.report);
    return out;
}

namespace {

Outcome run_bqctl(const Formula& phi, const Wks& k, const Common& c, json inputs) {
    Outcome out;
    out.report["inputs"] = std::move(inputs);
    out.report["mode"] = "exact";
    out.report["exact"] = true;
    ValueSet base = c.base.empty() ? ValueSet{} : parse_base(c.base);
    if (c.pred) {
        Predicate p = Predicate::parse(*c.pred);
        BqctlResult r = check_wks_report(phi, k, p, base);
        out.report["predicate"] = p.str();
        out.report["verdict"] = r.verdict;
        out.report["telemetry"] = json::parse(r.telemetry_json());
        out.status = r.verdict ? 0 : 2;
        write_dot(c, "acceptance_game.dot", parity_dot(r.game), out.report);
    } else {
        auto t0 = std::chrono::steady_clock::now();
        Rat v = bqctl_value(phi, k, base);
        out.report["value"] = v.str();
        out.report["telemetry"] = {{"seconds", since(t0)}};
    }
    write_dot(c, "kripke.dot", k.dot(), out.report);
    return out;
}

}  // namespace

Outcome cmd_mc_bqctl(const std::string& kripke, const std::string& formula, const Common& c) {
    auto model = load_model(kripke);
    Wks k = Wks::from_json(model.doc);
    auto in = load_formula(formula, Dialect::QCTL);
    return run_bqctl(in.formula, k, c, {{"kripke", model.digest}, {"formula", in.digest}});
}

Outcome cmd_mc_sl(const std::string& game, const std::string& formula, const Common& c) {
    auto model = load_model(game);
    Wcgs g = Wcgs::from_json(model.doc);
    auto in = load_formula(formula, Dialect::SL);
    // Propositions the game does not mention weigh 0, as in the other checkers.
    for (const auto& a : atoms_of(in.formula))
        if (!g.ap_index(a)) g = g.with_prop(a, std::vector<Rat>(g.states.size(), Rat(0)));
    Translation tr = translate(in.formula, g);
    Outcome out = run_bqctl(tr.formula, tr.model.kripke, c, {{"game", model.digest}, {"formula", in.digest}});
    out.report["qctl"] = print(tr.formula);
    return out;
}

Outcome cmd_automaton(const std::string& formula, const Common& c) {
    auto in = load_formula(formula, Dialect::LTLF);
    ValueSet base = parse_base(c.base.empty() ? "0,1" : c.base);
    Predicate p = Predicate::parse(c.pred.value_or(">=1"));
    Ngbw a = ltlf_to_ngbw(in.formula, uniform_atom_values(in.formula, base), p);
    Outcome out;
    out.report["input"] = in.digest;
    out.report["predicate"] = p.str();
    out.report["kind"] = c.kind;
    std::string hoa, dot;
    int states = 0;
    if (c.kind == "ngbw") {
        hoa = to_hoa_json(a);
        dot = to_dot(a);
        states = a.num_states;
        out.report["within_envelope"] = within_size_envelope(a, in.formula);
    } else if (c.kind == "nbw") {
        Nbw b = degeneralize(a);
        hoa = to_hoa_json(b);
        dot = to_dot(b);
        states = b.num_states;
    } else if (c.kind == "dpw") {
        Dpw d = determinize(degeneralize(a));
        hoa = to_hoa_json(d);
        dot = to_dot(d);
        states = d.num_states;
    } else {
        throw Error(ErrorCode::Usage, "unknown automaton kind '" + c.kind + "' (ngbw, nbw, dpw)");
    }
    out.report["states"] = states;
    out.report["automaton"] = json::parse(hoa);
    write_dot(c, "automaton.dot", dot, out.report);
    return out;
}

Outcome cmd_solve_pg(const std::string& file, const Common& c) {
    std::string text = read_text(file);
    ParityGame g = ParityGame::from_pgsolver(text);
    g.validate();
    auto t0 = std::chrono::steady_clock::now();
    ParitySolution sol = solve(g);
    double secs = since(t0);
    Outcome out;
    out.report["input"] = {{"path", file}, {"fnv1a64", fnv1a(text)}};
    json win = json::array(), strat = json::array();
    for (int v = 0; v < g.size(); ++v) {
        win.push_back(sol.winner[v] == kEven ? "even" : "odd");
        strat.push_back(sol.strategy[v]);
    }
    out.report["winner"] = win;
    out.report["strategy"] = strat;
    bool certified = true;
    for (int side : {kEven, kOdd})
        certified = certified && check_certificate(g, sol.strategy_of(side, g), side, sol.region(side));
    out.report["certified"] = certified;
    out.report["telemetry"] = {{"vertices", g.size()}, {"seconds", secs}};
    write_dot(c, "parity_game.dot", parity_dot(g, &sol), out.report);
    return out;
}

namespace {

struct Row {
    std::string concept_name;
    std::string fixture;
    std::string what;
    std::string value;
    std::string method;
};

Formula goal_of(const std::string& text) { return parse_formula(text, Dialect::LTLF); }

}  // namespace

Outcome cmd_examples(const std::string& dir, const Common& c) {
    const std::string& want = c.concept_name;
    auto selected = [&](const std::string& name) { return want == "all" || want == name; };
    static const std::vector<std::string> known{"all", "NE", "SE", "wRS", "sRS", "core", "drones"};
    if (std::find(known.begin(), known.end(), want) == known.end())
        throw Error(ErrorCode::Usage, "unknown concept '" + want + "' (NE, SE, wRS, sRS, core, drones, all)");

    std::vector<Row> rows;
    OracleOptions approx;
    approx.mode = OracleMode::MemorylessApprox;
    approx.cap = cap_from_env(approx.cap);

    const std::string ne_name = "ne_game.json";
    Wcgs ne = Wcgs::load((fs::path(dir) / ne_name).string());
    concepts::Profile prof{{"a", "b"}, {"x1", "x2"}, {goal_of("F ga"), goal_of("F gb")}};
    auto existence = [&](const std::string& name, Formula f) {
        rows.push_back({name, ne_name, "exists profile", eval_sl(f, ne, approx).value.str(), "oracle/memoryless"});
    };

    if (selected("NE")) {
        Formula phi = concepts::nash(prof);
        // The other states of the fixture are sinks, so constant strategies cover every profile.
        std::size_t n = ne.states.size();
        for (std::size_t i = 0; i < ne.actions.size(); ++i)
            for (std::size_t j = 0; j < ne.actions.size(); ++j) {
                Strategy sa = Strategy::make_memoryless(std::vector<int>(n, static_cast<int>(i)));
                Strategy sb = Strategy::make_memoryless(std::vector<int>(n, static_cast<int>(j)));
                NeReport r = check_ne_profile(ne, prof, {sa, sb});
                Assignment chi = Assignment()
                                     .set("x1", std::make_shared<Strategy>(sa))
                                     .set("x2", std::make_shared<Strategy>(sb));
                Rat oracle = eval_sl(phi, ne, chi, {ne.initial}, approx).value;
                std::string what = "a=" + ne.actions[i] + " b=" + ne.actions[j];
                rows.push_back({"NE", ne_name, what, r.verdict ? "1" : "0", "profile check"});
                rows.push_back({"NE", ne_name, what, oracle.str(), "oracle/memoryless"});
                rows.push_back({"NE-gap", ne_name, what, r.gap.str(), "profile check"});
            }
        existence("NE", concepts::exists_all(prof.vars, concepts::nash(prof)));
    }
    if (selected("SE")) existence("SE", concepts::exists_all(prof.vars, concepts::secure(prof)));
    if (selected("wRS")) existence("wRS", concepts::exists_all(prof.vars, concepts::weak_rational(prof)));
    if (selected("sRS"))
        rows.push_back({"sRS", ne_name, "controller a",
                        eval_sl(fb::exists_strat(prof.vars[0], concepts::strong_rational(prof)), ne, approx).value.str(),
                        "oracle/memoryless"});
    if (selected("core")) existence("core", concepts::exists_all(prof.vars, concepts::core(prof)));
    if (selected("drones")) {
        const std::string dn = "drones.json";
        Wcgs dr = Wcgs::load((fs::path(dir) / dn).string());
        for (const auto& [name, f] : {std::pair{"rescue", concepts::drone_rescue()}, std::pair{"spy", concepts::drone_spy()}}) {
            rows.push_back({"drones", dn, name, check_sl1g(f, dr).str(), "one-goal checker"});
            rows.push_back({"drones", dn, name, eval_sl(f, dr, approx).value.str(), "oracle/memoryless"});
        }
    }

    Outcome out;
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"concept", r.concept_name}, {"fixture", r.fixture}, {"case", r.what}, {"value", r.value}, {"method", r.method}});
    out.report["concept"] = want;
    out.report["table"] = table;
    std::ostringstream os;
    os << std::left << std::setw(8) << "concept" << std::setw(24) << "case" << std::setw(8) << "value"
       << "method\n";
    for (const auto& r : rows)
        os << std::setw(8) << r.concept_name << std::setw(24) << r.what << std::setw(8) << r.value << r.method << "\n";
    std::cerr << os.str();
    return out;
}

}  // namespace slfmc::cli
