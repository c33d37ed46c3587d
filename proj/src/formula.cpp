#include "slfmc/formula.hpp"

#include "slfmc/error.hpp"

#include <algorithm>
#include <map>

namespace slfmc {

namespace {

int compare_func(const FuncSpec& a, const FuncSpec& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.arity != b.arity) return a.arity < b.arity ? -1 : 1;
    if (a.param != b.param) return a.param < b.param ? -1 : 1;
    if (a.lex_index != b.lex_index) return a.lex_index < b.lex_index ? -1 : 1;
    if (a.kind == FuncKind::Table) {
        if (int c = a.name.compare(b.name); c != 0) return c < 0 ? -1 : 1;
        if (a.table != b.table) return std::less<const TableData*>{}(a.table.get(), b.table.get()) ? -1 : 1;
    }
    return 0;
}

int compare(const Formula& a, const Formula& b) {
    if (a == b) return 0;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
    if (int c = a->var.compare(b->var); c != 0) return c < 0 ? -1 : 1;
    if (a->func.has_value() != b->func.has_value()) return a->func.has_value() ? 1 : -1;
    if (a->func)
        if (int c = compare_func(*a->func, *b->func); c != 0) return c;
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (int c = compare(a->kids[i], b->kids[i]); c != 0) return c;
    return 0;
}

Formula make(Op op, std::string name, std::string var, std::optional<FuncSpec> func, std::vector<Formula> kids) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->name = std::move(name);
    n->var = std::move(var);
    n->func = std::move(func);
    n->kids = std::move(kids);
    return n;
}

}  // namespace

bool structurally_equal(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
bool FormulaLess::operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }

namespace fb {

Formula atom(std::string p) { return make(Op::Atom, std::move(p), "", std::nullopt, {}); }

Formula func(FuncSpec f, std::vector<Formula> args) {
    if (static_cast<int>(args.size()) != f.arity)
        throw Error(ErrorCode::ArityMismatch, "function '" + f.display_name() + "' expects " +
                                                  std::to_string(f.arity) + " arguments, got " +
                                                  std::to_string(args.size()));
    return make(Op::Func, "", "", std::move(f), std::move(args));
}

Formula constant(const Rat& v) { return func(FuncSpec::constant(v), {}); }
Formula top() { return constant(Rat(1)); }
Formula bottom() { return constant(Rat(0)); }
Formula neg(Formula a) { return func(FuncSpec::neg(), {std::move(a)}); }

Formula min(std::vector<Formula> args) {
    if (args.empty()) return top();
    if (args.size() == 1) return args.front();
    int n = static_cast<int>(args.size());
    return func(FuncSpec::min(n), std::move(args));
}

Formula max(std::vector<Formula> args) {
    if (args.empty()) return bottom();
    if (args.size() == 1) return args.front();
    int n = static_cast<int>(args.size());
    return func(FuncSpec::max(n), std::move(args));
}

Formula conj(Formula a, Formula b) { return func(FuncSpec::min(2), {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return func(FuncSpec::max(2), {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return disj(neg(std::move(a)), std::move(b)); }

Formula exists_strat(std::string x, Formula body) {
    return make(Op::ExistsStrat, std::move(x), "", std::nullopt, {std::move(body)});
}
Formula forall_strat(std::string x, Formula body) { return neg(exists_strat(std::move(x), neg(std::move(body)))); }
Formula bind(std::string agent, std::string x, Formula body) {
    return make(Op::Bind, std::move(agent), std::move(x), std::nullopt, {std::move(body)});
}
Formula path_a(Formula psi) { return make(Op::PathA, "", "", std::nullopt, {std::move(psi)}); }
Formula path_e(Formula psi) { return make(Op::PathE, "", "", std::nullopt, {std::move(psi)}); }
Formula exists_prop(std::string p, Formula body) {
    return make(Op::ExistsProp, std::move(p), "", std::nullopt, {std::move(body)});
}
Formula forall_prop(std::string p, Formula body) { return neg(exists_prop(std::move(p), neg(std::move(body)))); }
Formula next(Formula psi) { return make(Op::Next, "", "", std::nullopt, {std::move(psi)}); }
Formula until(Formula a, Formula b) { return make(Op::Until, "", "", std::nullopt, {std::move(a), std::move(b)}); }
Formula eventually(Formula psi) { return until(top(), std::move(psi)); }
Formula always(Formula psi) { return neg(eventually(neg(std::move(psi)))); }
Formula qctl_all(Formula psi) { return neg(path_e(neg(std::move(psi)))); }
Formula sl_exists_path(Formula psi) { return neg(path_a(neg(std::move(psi)))); }

}  // namespace fb

std::size_t formula_size(const Formula& f) {
    std::size_t n = 1;
    for (const auto& k : f->kids) n += formula_size(k);
    return n;
}

int nesting_depth(const Formula& f) {
    int best = 0;
    for (const auto& k : f->kids) best = std::max(best, nesting_depth(k));
    if (f->op == Op::ExistsStrat || f->op == Op::ExistsProp) ++best;
    return best;
}

namespace {

int block_depth(const Formula& f, bool parent_is_prop_quant) {
    int best = 0;
    bool self = f->op == Op::ExistsProp;
    for (const auto& k : f->kids) best = std::max(best, block_depth(k, self));
    if (f->op == Op::ExistsStrat || (self && !parent_is_prop_quant)) ++best;
    return best;
}

}  // namespace

int block_nesting_depth(const Formula& f) { return block_depth(f, false); }

std::optional<int> temporal_depth(const Formula& f) {
    if (f->op == Op::Until) return std::nullopt;
    int best = 0;
    for (const auto& k : f->kids) {
        auto d = temporal_depth(k);
        if (!d) return std::nullopt;
        best = std::max(best, *d);
    }
    return f->op == Op::Next ? best + 1 : best;
}

bool is_state_formula(const Formula& f) {
    switch (f->op) {
        case Op::Next:
        case Op::Until: return false;
        case Op::PathA:
        case Op::PathE: return true;
        default:
            return std::all_of(f->kids.begin(), f->kids.end(), [](const Formula& k) { return is_state_formula(k); });
    }
}

std::set<std::string> atoms_of(const Formula& f) {
    std::set<std::string> out;
    if (f->op == Op::Atom) out.insert(f->name);
    for (const auto& k : f->kids) {
        auto sub = atoms_of(k);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

std::set<std::string> free_props(const Formula& f) {
    if (f->op == Op::Atom) return {f->name};
    std::set<std::string> out;
    for (const auto& k : f->kids) {
        auto sub = free_props(k);
        out.insert(sub.begin(), sub.end());
    }
    if (f->op == Op::ExistsProp) out.erase(f->name);
    return out;
}

std::set<std::string> bound_props(const Formula& f) {
    std::set<std::string> out;
    if (f->op == Op::ExistsProp) out.insert(f->name);
    for (const auto& k : f->kids) {
        auto sub = bound_props(k);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    for (const auto& k : f->kids) {
        auto sub = free_vars(k);
        out.insert(sub.begin(), sub.end());
    }
    if (f->op == Op::Bind) out.insert(f->var);
    if (f->op == Op::ExistsStrat) out.erase(f->name);
    return out;
}

namespace {

void validate_rec(const Formula& f, Dialect d, bool state_ctx) {
    auto reject = [&](const std::string& why) { throw Error(ErrorCode::NotInFragment, why + " in " + print(f)); };
    switch (f->op) {
        case Op::Atom: break;
        case Op::Func:
            if (!f->func) reject("function node without function");
            if (static_cast<int>(f->kids.size()) != f->func->arity) reject("arity mismatch");
            break;
        case Op::ExistsStrat:
        case Op::Bind:
            if (d != Dialect::SL) reject("strategy operator outside SL");
            break;
        case Op::PathA:
            if (d != Dialect::SL) reject("path quantifier A outside SL");
            break;
        case Op::PathE:
            if (d != Dialect::QCTL) reject("path quantifier E outside QCTL");
            break;
        case Op::ExistsProp:
            if (d != Dialect::QCTL) reject("propositional quantifier outside QCTL");
            break;
        case Op::Next:
        case Op::Until:
            if (state_ctx) reject("temporal operator outside a path quantifier");
            break;
    }
    if (f->op == Op::PathA || f->op == Op::PathE) {
        validate_rec(f->kids[0], d, false);
        return;
    }
    if (f->op == Op::Next || f->op == Op::Until) {
        for (const auto& k : f->kids) validate_rec(k, d, false);
        return;
    }
    // Strategy/propositional quantifiers and bindings open a state context.
    bool kid_state = state_ctx || f->op == Op::ExistsStrat || f->op == Op::Bind || f->op == Op::ExistsProp;
    for (const auto& k : f->kids) validate_rec(k, d, kid_state);
}

bool needs_wrap(const Formula& f) { return f->op == Op::ExistsProp; }

}  // namespace

void validate(const Formula& f, Dialect d) { validate_rec(f, d, d != Dialect::LTLF); }

std::string print(const Formula& f) {
    auto wrap = [](const Formula& k) {
        std::string s = print(k);
        return needs_wrap(k) ? "(" + s + ")" : s;
    };
    switch (f->op) {
        case Op::Atom: return f->name;
        case Op::Func: {
            std::string out = f->func->display_name();
            if (f->func->kind == FuncKind::Const && f->kids.empty()) return out;
            out += "(";
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) out += ", ";
                out += print(f->kids[i]);
            }
            return out + ")";
        }
        case Op::ExistsStrat: return "<<" + f->name + ">> " + wrap(f->kids[0]);
        case Op::Bind: return "(" + f->name + "," + f->var + ") " + wrap(f->kids[0]);
        case Op::PathA: return "A " + wrap(f->kids[0]);
        case Op::PathE: return "E " + wrap(f->kids[0]);
        case Op::ExistsProp: return "exists " + f->name + " . " + print(f->kids[0]);
        case Op::Next: return "X " + wrap(f->kids[0]);
        case Op::Until: return "(" + wrap(f->kids[0]) + " U " + wrap(f->kids[1]) + ")";
    }
    return "?";
}

Formula replace_subformula(const Formula& f, const Formula& target, const Formula& replacement) {
    if (structurally_equal(f, target)) return replacement;
    bool changed = false;
    std::vector<Formula> kids;
    kids.reserve(f->kids.size());
    for (const auto& k : f->kids) {
        kids.push_back(replace_subformula(k, target, replacement));
        changed = changed || kids.back() != k;
    }
    if (!changed) return f;
    auto n = std::make_shared<Node>(*f);
    n->kids = std::move(kids);
    return n;
}

std::vector<Formula> subformulas_postorder(const Formula& f) {
    std::vector<Formula> order;
    std::set<Formula, FormulaLess> seen;
    auto rec = [&](auto&& self, const Formula& g) -> void {
        if (seen.count(g)) return;
        for (const auto& k : g->kids) self(self, k);
        if (seen.insert(g).second) order.push_back(g);
    };
    rec(rec, f);
    return order;
}

}  // namespace slfmc
