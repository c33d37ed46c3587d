#include "slfmc/sentence.hpp"

#include "slfmc/error.hpp"

#include <algorithm>
#include <set>

namespace slfmc {

namespace {

bool is_neg(const Formula& f) {
    return f->op == Op::Func && f->func->kind == FuncKind::Neg && f->kids.size() == 1;
}

bool starts_prefix(const Formula& f) {
    Formula cur = f;
    while (is_neg(cur)) cur = cur->kids[0];
    return cur->op == Op::ExistsStrat || cur->op == Op::Bind;
}

}  // namespace

std::optional<Sentence> match_sentence(const Formula& node, const std::vector<std::string>& agents) {
    if (!starts_prefix(node)) return std::nullopt;
    Sentence s;
    int negs = 0;
    Formula cur = node;
    while (true) {
        if (is_neg(cur)) {
            ++negs;
            cur = cur->kids[0];
        } else if (cur->op == Op::ExistsStrat) {
            s.quants.push_back({cur->name, negs % 2 == 0});
            cur = cur->kids[0];
        } else {
            break;
        }
    }
    while (true) {
        if (is_neg(cur)) {
            ++negs;
            cur = cur->kids[0];
        } else if (cur->op == Op::Bind) {
            s.bindings.emplace_back(cur->name, cur->var);
            cur = cur->kids[0];
        } else {
            break;
        }
    }
    if (cur->op != Op::PathA)
        throw Error(ErrorCode::NotInFragment, "one-goal sentence must end with bindings followed by A");
    if (s.bindings.empty()) throw Error(ErrorCode::NotInFragment, "one-goal sentence without bindings");
    s.goal = cur->kids[0];
    s.goal_negated = negs % 2 == 1;

    std::set<std::string> quantified;
    for (const auto& q : s.quants) quantified.insert(q.var);
    std::set<std::string> bound_agents;
    for (const auto& [a, x] : s.bindings) {
        if (!quantified.count(x))
            throw Error(ErrorCode::OpenCombination, "variable '" + x + "' is bound but not quantified");
        if (!bound_agents.insert(a).second)
            throw Error(ErrorCode::OpenCombination, "agent '" + a + "' bound twice");
    }
    if (!agents.empty()) {
        std::set<std::string> all(agents.begin(), agents.end());
        if (all != bound_agents) throw Error(ErrorCode::OpenCombination, "bindings must cover every agent exactly once");
    }
    return s;
}

Formula sentence_formula(const Sentence& s) {
    Formula f = fb::path_a(s.goal);
    if (s.goal_negated) f = fb::path_a(fb::neg(s.goal));
    for (auto it = s.bindings.rbegin(); it != s.bindings.rend(); ++it) f = fb::bind(it->first, it->second, f);
    for (auto it = s.quants.rbegin(); it != s.quants.rend(); ++it)
        f = it->existential ? fb::exists_strat(it->var, f) : fb::forall_strat(it->var, f);
    return f;
}

namespace {

int depth_rec(const Formula& f, const std::vector<std::string>& agents) {
    if (auto s = match_sentence(f, agents)) return depth_rec(s->goal, agents) + 1;
    switch (f->op) {
        case Op::Atom: return 0;
        case Op::Func:
        case Op::Next:
        case Op::Until: {
            int d = 0;
            for (const auto& k : f->kids) d = std::max(d, depth_rec(k, agents));
            return d;
        }
        default: throw Error(ErrorCode::NotInFragment, "operator outside the one-goal fragment");
    }
}

}  // namespace

int sentence_depth(const Formula& f, const std::vector<std::string>& agents) { return depth_rec(f, agents); }

bool is_sl1g(const Formula& f, const std::vector<std::string>& agents) {
    try {
        sentence_depth(f, agents);
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace slfmc
