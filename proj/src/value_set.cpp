#include "slfmc/value_set.hpp"

#include "slfmc/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace slfmc {

ValueSet make_value_set(std::vector<Rat> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

ValueSet unite(const ValueSet& a, const ValueSet& b) {
    ValueSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool contains(const ValueSet& s, const Rat& v) { return std::binary_search(s.begin(), s.end(), v); }

ValueSet parse_base(const std::string& text) {
    std::vector<Rat> vals{Rat(0), Rat(1)};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        if (item.empty()) continue;
        Rat r = Rat::parse(item);
        if (!r.in_unit()) throw Error(ErrorCode::OutOfRange, "base value " + item + " outside [0,1]");
        vals.push_back(r);
    }
    return make_value_set(std::move(vals));
}

namespace {

constexpr std::size_t kMaxCombos = 4'000'000;

ValueSet image(const FuncSpec& f, const std::vector<ValueSet>& args) {
    switch (f.kind) {
        case FuncKind::Const: return {f.param};
        case FuncKind::Neg: {
            std::vector<Rat> out;
            for (const auto& v : args[0]) out.push_back(Rat(1) - v);
            return make_value_set(std::move(out));
        }
        case FuncKind::Min:
        case FuncKind::Max: {
            // v from argument i is attainable iff every other argument can
            // stay on the right side of v.
            const bool is_min = f.kind == FuncKind::Min;
            std::vector<Rat> out;
            for (std::size_t i = 0; i < args.size(); ++i) {
                for (const auto& v : args[i]) {
                    bool ok = true;
                    for (std::size_t j = 0; j < args.size() && ok; ++j) {
                        if (j == i) continue;
                        ok = is_min ? args[j].back() >= v : args[j].front() <= v;
                    }
                    if (ok) out.push_back(v);
                }
            }
            return make_value_set(std::move(out));
        }
        default: break;
    }
    if (f.kind == FuncKind::Table && f.table && f.table->domain) {
        const auto& dom = *f.table->domain;
        for (const auto& a : args)
            for (const auto& v : a)
                if (std::find(dom.begin(), dom.end(), v) == dom.end())
                    throw Error(ErrorCode::TableDomain,
                                "argument value " + v.str() + " of '" + f.name + "' is outside its declared domain");
    }
    std::size_t combos = 1;
    for (const auto& a : args) {
        combos *= std::max<std::size_t>(a.size(), 1);
        if (combos > kMaxCombos) throw Error(ErrorCode::ResourceCap, "value set of '" + f.name + "' too large");
    }
    std::vector<Rat> out;
    std::vector<std::size_t> idx(args.size(), 0);
    std::vector<Rat> cur(args.size());
    while (true) {
        for (std::size_t i = 0; i < args.size(); ++i) cur[i] = args[i][idx[i]];
        out.push_back(apply_func(f, cur));
        std::size_t k = args.size();
        bool carry = true;
        while (carry && k > 0) {
            --k;
            if (++idx[k] < args[k].size()) carry = false;
            else idx[k] = 0;
        }
        if (carry) break;
    }
    return make_value_set(std::move(out));
}

ValueSet compute(const Formula& f, const ValueSet& base, const std::map<std::string, ValueSet>* per_atom,
                 std::map<const Node*, ValueSet>& memo) {
    if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
    ValueSet out;
    switch (f->op) {
        case Op::Atom:
            if (per_atom) {
                auto it = per_atom->find(f->name);
                if (it == per_atom->end() || it->second.empty())
                    throw Error(ErrorCode::EmptyAlphabet, "no values for atom '" + f->name + "'");
                out = make_value_set(it->second);
            } else {
                out = base;
            }
            break;
        case Op::Func: {
            std::vector<ValueSet> args;
            for (const auto& k : f->kids) args.push_back(compute(k, base, per_atom, memo));
            out = image(*f->func, args);
            break;
        }
        case Op::Until: out = unite(compute(f->kids[0], base, per_atom, memo), compute(f->kids[1], base, per_atom, memo)); break;
        default: out = compute(f->kids[0], base, per_atom, memo); break;
    }
    memo.emplace(f.get(), out);
    return out;
}

}  // namespace

ValueSet value_set(const Formula& f, const ValueSet& base) {
    if (!contains(base, Rat(0)) || !contains(base, Rat(1)))
        throw Error(ErrorCode::OutOfRange, "base value set must contain 0 and 1");
    std::map<const Node*, ValueSet> memo;
    return compute(f, base, nullptr, memo);
}

ValueSet value_set(const Formula& f, const std::map<std::string, ValueSet>& atom_values) {
    std::map<const Node*, ValueSet> memo;
    return compute(f, {}, &atom_values, memo);
}

ValueSet func_image(const FuncSpec& f, const std::vector<ValueSet>& args) { return image(f, args); }

SizeBound size_bound_check(const Formula& f, const ValueSet& base) {
    SizeBound r;
    r.computed = value_set(f, base).size();
    boost::multiprecision::cpp_int bound = 1;
    const std::size_t n = formula_size(f);
    for (std::size_t i = 0; i < n; ++i) bound *= base.size();
    r.bound = bound.str();
    r.ok = boost::multiprecision::cpp_int(r.computed) <= bound;
    return r;
}

}  // namespace slfmc
