#include "slfmc/parser.hpp"

#include "slfmc/error.hpp"

#include <cctype>
#include <set>

namespace slfmc {

namespace {

enum class Tok {
    Ident, Number, LQuant, RQuant, LForall, RForall, LParen, RParen, LBracket, RBracket,
    Comma, Dot, Bang, Amp, Bar, Arrow, Exists, End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            int l = line_, c = col_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", l, c});
                return out;
            }
            out.push_back(next(l, c));
        }
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char ch = src_[pos_];
            if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
                advance(1);
            } else if (ch == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
            } else {
                break;
            }
        }
    }

    bool starts(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

    Token next(int l, int c) {
        struct Sym {
            std::string_view text;
            Tok kind;
        };
        static const Sym syms[] = {
            {"<<", Tok::LQuant}, {">>", Tok::RQuant}, {"[[", Tok::LForall}, {"]]", Tok::RForall},
            {"->", Tok::Arrow},  {"⟪", Tok::LQuant}, {"⟫", Tok::RQuant}, {"⟦", Tok::LForall},
            {"⟧", Tok::RForall}, {"→", Tok::Arrow}, {"¬", Tok::Bang}, {"∧", Tok::Amp},
            {"∨", Tok::Bar}, {"∃", Tok::Exists}, {"(", Tok::LParen}, {")", Tok::RParen},
            {"[", Tok::LBracket}, {"]", Tok::RBracket}, {",", Tok::Comma}, {"!", Tok::Bang},
            {"&", Tok::Amp}, {"|", Tok::Bar},
        };
        for (const auto& s : syms) {
            if (starts(s.text)) {
                advance(s.text.size());
                return {s.kind, std::string(s.text), l, c};
            }
        }
        char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
            if (pos_ + 1 < src_.size() && (src_[pos_] == '/' || src_[pos_] == '.') &&
                std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                advance(1);
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
            }
            return {Tok::Number, std::string(src_.substr(start, pos_ - start)), l, c};
        }
        if (ch == '.') {
            advance(1);
            return {Tok::Dot, ".", l, c};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_' || src_[pos_] == '\''))
                advance(1);
            std::string word(src_.substr(start, pos_ - start));
            if (word == "exists") return {Tok::Exists, word, l, c};
            return {Tok::Ident, word, l, c};
        }
        throw Error(ErrorCode::Syntax, "unexpected character '" + std::string(1, ch) + "' at line " +
                                           std::to_string(l) + ", column " + std::to_string(c));
    }
};

const std::set<std::string> kKeywords = {"A", "E", "X", "U", "F", "G", "true", "false", "exists"};

class Parser {
public:
    Parser(std::vector<Token> toks, Dialect d, const FuncRegistry& reg) : toks_(std::move(toks)), d_(d), reg_(reg) {}

    Formula parse_all() {
        Formula f = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    Dialect d_;
    const FuncRegistry& reg_;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
    Token take() { return toks_[std::min(i_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw Error(ErrorCode::Syntax,
                    msg + " at line " + std::to_string(t.line) + ", column " + std::to_string(t.col));
    }

    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        take();
    }

    bool is_word(const char* w, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == w; }

    std::string ident(const char* what) {
        if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) fail(std::string("expected ") + what);
        return take().text;
    }

    Formula expr() {
        Formula lhs = disjunction();
        if (peek().kind == Tok::Arrow) {
            take();
            return fb::implies(lhs, expr());
        }
        return lhs;
    }

    Formula disjunction() {
        Formula lhs = conjunction();
        while (peek().kind == Tok::Bar) {
            take();
            lhs = fb::disj(lhs, conjunction());
        }
        return lhs;
    }

    Formula conjunction() {
        Formula lhs = until_expr();
        while (peek().kind == Tok::Amp) {
            take();
            lhs = fb::conj(lhs, until_expr());
        }
        return lhs;
    }

    Formula until_expr() {
        Formula lhs = unary();
        if (is_word("U")) {
            take();
            return fb::until(lhs, until_expr());
        }
        return lhs;
    }

    bool at_binding() const {
        return peek().kind == Tok::LParen && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Comma &&
               peek(3).kind == Tok::Ident && peek(4).kind == Tok::RParen;
    }

    void need_sl(const char* what) {
        if (d_ != Dialect::SL) fail(std::string(what) + " is only available in SL formulas");
    }

    Formula unary() {
        const Token& t = peek();
        if (t.kind == Tok::Bang) {
            take();
            return fb::neg(unary());
        }
        if (t.kind == Tok::LQuant) {
            need_sl("strategy quantifier");
            take();
            std::string x = ident("strategy variable");
            expect(Tok::RQuant, "'>>'");
            return fb::exists_strat(x, unary());
        }
        if (t.kind == Tok::LForall) {
            need_sl("strategy quantifier");
            take();
            std::string x = ident("strategy variable");
            expect(Tok::RForall, "']]'");
            return fb::forall_strat(x, unary());
        }
        if (at_binding()) {
            need_sl("binding");
            take();
            std::string a = ident("agent");
            take();
            std::string x = ident("strategy variable");
            take();
            return fb::bind(a, x, unary());
        }
        if (t.kind == Tok::Exists) {
            if (d_ != Dialect::QCTL) fail("propositional quantifier is only available in QCTL formulas");
            take();
            std::string p = ident("proposition");
            expect(Tok::Dot, "'.'");
            return fb::exists_prop(p, expr());
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "X") {
                take();
                return fb::next(unary());
            }
            if (t.text == "F") {
                take();
                return fb::eventually(unary());
            }
            if (t.text == "G") {
                take();
                return fb::always(unary());
            }
            if (t.text == "A") {
                if (d_ == Dialect::LTLF) fail("path quantifier in an LTL formula");
                take();
                Formula psi = unary();
                return d_ == Dialect::SL ? fb::path_a(psi) : fb::qctl_all(psi);
            }
            if (t.text == "E") {
                if (d_ == Dialect::LTLF) fail("path quantifier in an LTL formula");
                if (d_ == Dialect::SL && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Dot) {
                    take();
                    std::string x = ident("strategy variable");
                    take();
                    return fb::exists_strat(x, expr());
                }
                take();
                Formula psi = unary();
                return d_ == Dialect::SL ? fb::sl_exists_path(psi) : fb::path_e(psi);
            }
        }
        return primary();
    }

    Formula primary() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            take();
            Formula f = expr();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Number) {
            Rat v = Rat::parse(take().text);
            if (!v.in_unit()) fail("constant outside [0,1]");
            return fb::constant(v);
        }
        if (t.kind != Tok::Ident) fail("expected a formula");
        if (t.text == "true") {
            take();
            return fb::top();
        }
        if (t.text == "false") {
            take();
            return fb::bottom();
        }
        if (kKeywords.count(t.text)) fail("unexpected keyword '" + t.text + "'");
        std::string name = take().text;
        if (name == "avg" && peek().kind == Tok::LBracket) {
            take();
            if (peek().kind != Tok::Number) fail("expected weight");
            Rat lambda = Rat::parse(take().text);
            expect(Tok::RBracket, "']'");
            auto args = arguments();
            FuncSpec spec = FuncSpec::wavg(lambda);
            if (args.size() != 2)
                throw Error(ErrorCode::ArityMismatch, "avg expects 2 arguments, got " + std::to_string(args.size()));
            return fb::func(spec, std::move(args));
        }
        if (peek().kind == Tok::LParen) {
            auto args = arguments();
            auto spec = reg_.lookup(name, static_cast<int>(args.size()));
            if (!spec) throw Error(ErrorCode::UnknownFunction, "unknown function '" + name + "'");
            return fb::func(*spec, std::move(args));
        }
        if (reg_.knows(name)) {
            if (auto spec = reg_.lookup(name, 0)) return fb::func(*spec, {});
        }
        return fb::atom(name);
    }

    std::vector<Formula> arguments() {
        expect(Tok::LParen, "'('");
        std::vector<Formula> args;
        if (peek().kind != Tok::RParen) {
            args.push_back(expr());
            while (peek().kind == Tok::Comma) {
                take();
                args.push_back(expr());
            }
        }
        expect(Tok::RParen, "')'");
        return args;
    }
};

}  // namespace

Dialect parse_dialect(std::string_view name) {
    if (name == "SL" || name == "sl" || name == "slf") return Dialect::SL;
    if (name == "QCTL" || name == "qctl" || name == "bqctl") return Dialect::QCTL;
    if (name == "LTLF" || name == "ltlf" || name == "ltl") return Dialect::LTLF;
    throw Error(ErrorCode::Usage, "unknown dialect '" + std::string(name) + "'");
}

Formula parse_formula(std::string_view text, Dialect dialect, const FuncRegistry& registry,
                      const ParseOptions& options) {
    Parser p(Lexer(text).run(), dialect, registry);
    Formula f = p.parse_all();
    validate(f, dialect);
    if (options.require_closed && dialect == Dialect::SL) {
        auto fv = free_vars(f);
        if (!fv.empty()) throw Error(ErrorCode::UnboundVariable, "unbound strategy variable '" + *fv.begin() + "'");
    }
    return f;
}

std::vector<std::pair<std::string, Formula>> parse_formula_file(std::string_view text, Dialect dialect,
                                                                const FuncRegistry& registry,
                                                                const ParseOptions& options) {
    std::vector<std::pair<std::string, std::string>> blocks;
    std::string loose;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        std::string_view trimmed = line;
        while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) trimmed.remove_prefix(1);
        if (trimmed.starts_with("def ")) {
            auto assign = trimmed.find(":=");
            if (assign == std::string_view::npos) throw Error(ErrorCode::Syntax, "definition without ':='");
            std::string name(trimmed.substr(4, assign - 4));
            while (!name.empty() && name.back() == ' ') name.pop_back();
            blocks.emplace_back(name, std::string(trimmed.substr(assign + 2)));
        } else if (!blocks.empty()) {
            blocks.back().second += "\n" + std::string(line);
        } else {
            loose += std::string(line) + "\n";
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    std::vector<std::pair<std::string, Formula>> out;
    bool loose_has_content = false;
    for (std::size_t i = 0; i < loose.size(); ++i) {
        if (loose[i] == '#') {
            while (i < loose.size() && loose[i] != '\n') ++i;
        } else if (!std::isspace(static_cast<unsigned char>(loose[i]))) {
            loose_has_content = true;
        }
    }
    if (loose_has_content) {
        if (!blocks.empty()) throw Error(ErrorCode::Syntax, "text outside of 'def' blocks");
        out.emplace_back("main", parse_formula(loose, dialect, registry, options));
    }
    for (const auto& [name, body] : blocks) out.emplace_back(name, parse_formula(body, dialect, registry, options));
    return out;
}

}  // namespace slfmc
