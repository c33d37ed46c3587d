#include "slfmc/error.hpp"
#include "slfmc/oracle.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

namespace slfmc {

std::string LassoWord::str() const {
    auto row = [&](const std::vector<Rat>& r) {
        std::string s = "{";
        for (std::size_t i = 0; i < aps.size(); ++i) s += (i ? "," : "") + aps[i] + "=" + r[i].str();
        return s + "}";
    };
    std::string out;
    for (const auto& r : prefix) out += row(r);
    out += "(";
    for (const auto& r : loop) out += row(r);
    return out + ")^w";
}

namespace {

class LassoEval {
public:
    explicit LassoEval(const LassoWord& w) : w_(w) {
        if (w.loop.empty()) throw Error(ErrorCode::Schema, "lasso loop must be nonempty");
    }

    const std::vector<Rat>& values(const Formula& f) {
        if (auto it = memo_.find(f.get()); it != memo_.end()) return it->second;
        const std::size_t n = w_.length();
        std::vector<Rat> out(n);
        switch (f->op) {
            case Op::Atom: {
                std::size_t col = w_.aps.size();
                for (std::size_t i = 0; i < w_.aps.size(); ++i)
                    if (w_.aps[i] == f->name) col = i;
                if (col == w_.aps.size()) throw Error(ErrorCode::Schema, "atom '" + f->name + "' is not labelled in the word");
                for (std::size_t i = 0; i < n; ++i) out[i] = w_.at(i)[col];
                break;
            }
            case Op::Func: {
                std::vector<const std::vector<Rat>*> kids;
                for (const auto& k : f->kids) kids.push_back(&values(k));
                std::vector<Rat> args(kids.size());
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t k = 0; k < kids.size(); ++k) args[k] = (*kids[k])[i];
                    out[i] = apply_func(*f->func, args);
                }
                break;
            }
            case Op::Next: {
                const auto& a = values(f->kids[0]);
                for (std::size_t i = 0; i < n; ++i) out[i] = a[w_.next(i)];
                break;
            }
            case Op::Until: {
                const auto a = values(f->kids[0]);
                const auto b = values(f->kids[1]);
                // Least fixpoint of U(i) = max(b(i), min(a(i), U(next i))).
                out = b;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (std::size_t i = n; i-- > 0;) {
                        Rat v = max(b[i], min(a[i], out[w_.next(i)]));
                        if (v != out[i]) {
                            out[i] = v;
                            changed = true;
                        }
                    }
                }
                break;
            }
            default: throw Error(ErrorCode::NotInFragment, "quantifiers are not allowed in an LTL formula");
        }
        return memo_.emplace(f.get(), std::move(out)).first->second;
    }

private:
    const LassoWord& w_;
    std::map<const Node*, std::vector<Rat>> memo_;
};

}  // namespace

std::vector<Rat> eval_ltlf_lasso_all(const Formula& psi, const LassoWord& w) {
    LassoEval ev(w);
    return ev.values(psi);
}

Rat eval_ltlf_lasso(const Formula& psi, const LassoWord& w, std::size_t i) {
    if (i >= w.length()) throw Error(ErrorCode::OutOfRange, "lasso position out of range");
    return eval_ltlf_lasso_all(psi, w)[i];
}

std::uint64_t cap_from_env(std::uint64_t fallback) {
    if (const char* env = std::getenv("SLF_MC_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return fallback;
}

}  // namespace slfmc
