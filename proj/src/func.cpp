#include "slfmc/func.hpp"

#include "slfmc/error.hpp"

#include <json.hpp>

#include <algorithm>

namespace slfmc {

FuncSpec FuncSpec::constant(const Rat& v) {
    if (!v.in_unit()) throw Error(ErrorCode::OutOfRange, "constant " + v.str() + " outside [0,1]");
    return FuncSpec{v.str(), 0, FuncKind::Const, v, 1, nullptr};
}
FuncSpec FuncSpec::min(int arity) { return FuncSpec{"min", arity, FuncKind::Min, Rat(0), 1, nullptr}; }
FuncSpec FuncSpec::max(int arity) { return FuncSpec{"max", arity, FuncKind::Max, Rat(0), 1, nullptr}; }
FuncSpec FuncSpec::neg() { return FuncSpec{"neg", 1, FuncKind::Neg, Rat(0), 1, nullptr}; }
FuncSpec FuncSpec::wavg(const Rat& lambda) {
    if (!lambda.in_unit()) throw Error(ErrorCode::OutOfRange, "weighted average weight outside [0,1]");
    return FuncSpec{"avg", 2, FuncKind::WAvg, lambda, 1, nullptr};
}
FuncSpec FuncSpec::diff() { return FuncSpec{"diff", 2, FuncKind::Diff, Rat(0), 1, nullptr}; }
FuncSpec FuncSpec::leq() { return FuncSpec{"leq", 2, FuncKind::LeqIndicator, Rat(0), 1, nullptr}; }
FuncSpec FuncSpec::lexleq(int index) {
    if (index != 1 && index != 2) throw Error(ErrorCode::OutOfRange, "lexleq index must be 1 or 2");
    return FuncSpec{"lexleq" + std::to_string(index), 4, FuncKind::LexLeqIndicator, Rat(0), index, nullptr};
}
FuncSpec FuncSpec::table_fn(std::string name, int arity, TableData data) {
    for (const auto& [args, val] : data.entries) {
        if (static_cast<int>(args.size()) != arity)
            throw Error(ErrorCode::ArityMismatch, "table '" + name + "' entry has wrong arity");
        if (!val.in_unit()) throw Error(ErrorCode::OutOfRange, "table '" + name + "' value outside [0,1]");
    }
    if (data.fallback && !data.fallback->in_unit())
        throw Error(ErrorCode::OutOfRange, "table '" + name + "' default outside [0,1]");
    return FuncSpec{std::move(name), arity, FuncKind::Table, Rat(0), 1,
                    std::make_shared<const TableData>(std::move(data))};
}

std::string FuncSpec::display_name() const {
    switch (kind) {
        case FuncKind::Const: return param.str();
        case FuncKind::WAvg: return "avg[" + param.str() + "]";
        default: return name;
    }
}

bool operator==(const FuncSpec& a, const FuncSpec& b) {
    if (a.kind != b.kind || a.arity != b.arity) return false;
    switch (a.kind) {
        case FuncKind::Const:
        case FuncKind::WAvg: return a.param == b.param;
        case FuncKind::LexLeqIndicator: return a.lex_index == b.lex_index;
        case FuncKind::Table: return a.name == b.name && a.table == b.table;
        default: return true;
    }
}

Rat apply_func(const FuncSpec& f, std::span<const Rat> args) {
    if (static_cast<int>(args.size()) != f.arity)
        throw Error(ErrorCode::ArityMismatch, "function '" + f.display_name() + "' expects " +
                                                  std::to_string(f.arity) + " arguments, got " +
                                                  std::to_string(args.size()));
    for (const auto& a : args)
        if (!a.in_unit()) throw Error(ErrorCode::OutOfRange, "argument " + a.str() + " outside [0,1]");
    switch (f.kind) {
        case FuncKind::Const: return f.param;
        case FuncKind::Min: return *std::min_element(args.begin(), args.end());
        case FuncKind::Max: return *std::max_element(args.begin(), args.end());
        case FuncKind::Neg: return Rat(1) - args[0];
        case FuncKind::WAvg: return f.param * args[0] + (Rat(1) - f.param) * args[1];
        case FuncKind::Diff: return args[1] < args[0] ? args[0] - args[1] : Rat(0);
        case FuncKind::LeqIndicator: return args[0] <= args[1] ? Rat(1) : Rat(0);
        case FuncKind::LexLeqIndicator: {
            // (a1,a2) <=_i (b1,b2): the deviation (a) neither improves component i
            // nor keeps it while lowering the other component.
            const Rat& ai = f.lex_index == 1 ? args[0] : args[1];
            const Rat& ao = f.lex_index == 1 ? args[1] : args[0];
            const Rat& bi = f.lex_index == 1 ? args[2] : args[3];
            const Rat& bo = f.lex_index == 1 ? args[3] : args[2];
            bool holds = ai < bi || (ai == bi && ao >= bo);
            return holds ? Rat(1) : Rat(0);
        }
        case FuncKind::Table: {
            std::vector<Rat> key(args.begin(), args.end());
            if (auto it = f.table->entries.find(key); it != f.table->entries.end()) return it->second;
            if (f.table->fallback) return *f.table->fallback;
            std::string shown;
            for (const auto& a : args) shown += (shown.empty() ? "" : ",") + a.str();
            throw Error(ErrorCode::TableMiss, "table '" + f.name + "' has no entry for (" + shown + ")");
        }
    }
    return Rat(0);
}

FuncRegistry::FuncRegistry() = default;

void FuncRegistry::add(FuncSpec spec) {
    std::string name = spec.name;
    user_.insert_or_assign(std::move(name), std::move(spec));
}

bool FuncRegistry::knows(const std::string& name) const {
    static const char* builtins[] = {"min", "max", "neg", "diff", "leq", "lexleq1", "lexleq2", "avg"};
    for (const char* b : builtins)
        if (name == b) return true;
    return user_.count(name) != 0;
}

std::optional<FuncSpec> FuncRegistry::lookup(const std::string& name, int arity) const {
    if (auto it = user_.find(name); it != user_.end()) {
        if (it->second.arity != arity)
            throw Error(ErrorCode::ArityMismatch, "function '" + name + "' expects " +
                                                      std::to_string(it->second.arity) + " arguments, got " +
                                                      std::to_string(arity));
        return it->second;
    }
    auto fixed = [&](FuncSpec spec) -> FuncSpec {
        if (spec.arity != arity)
            throw Error(ErrorCode::ArityMismatch, "function '" + name + "' expects " +
                                                      std::to_string(spec.arity) + " arguments, got " +
                                                      std::to_string(arity));
        return spec;
    };
    if (name == "min" || name == "max") {
        if (arity < 1) throw Error(ErrorCode::ArityMismatch, "function '" + name + "' needs at least one argument");
        return name == "min" ? FuncSpec::min(arity) : FuncSpec::max(arity);
    }
    if (name == "neg") return fixed(FuncSpec::neg());
    if (name == "diff") return fixed(FuncSpec::diff());
    if (name == "leq") return fixed(FuncSpec::leq());
    if (name == "lexleq1") return fixed(FuncSpec::lexleq(1));
    if (name == "lexleq2") return fixed(FuncSpec::lexleq(2));
    return std::nullopt;
}

namespace {

Rat json_rat(const nlohmann::json& j) {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_number()) return Rat::parse(j.dump());
    throw Error(ErrorCode::Schema, "expected a rational, got " + j.dump());
}

}  // namespace

FuncRegistry FuncRegistry::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Schema, std::string("function registry: ") + e.what());
    }
    FuncRegistry reg;
    if (!doc.contains("functions") || !doc["functions"].is_array())
        throw Error(ErrorCode::Schema, "function registry needs a \"functions\" array");
    for (const auto& f : doc["functions"]) {
        std::string name = f.at("name").get<std::string>();
        std::string kind = f.value("kind", "table");
        if (kind == "table") {
            TableData data;
            int arity = f.at("arity").get<int>();
            for (const auto& e : f.value("entries", nlohmann::json::array())) {
                std::vector<Rat> args;
                for (const auto& a : e.at(0)) args.push_back(json_rat(a));
                data.entries[args] = json_rat(e.at(1));
            }
            if (f.contains("default")) data.fallback = json_rat(f["default"]);
            if (f.contains("domain")) {
                std::vector<Rat> dom;
                for (const auto& d : f["domain"]) dom.push_back(json_rat(d));
                std::sort(dom.begin(), dom.end());
                data.domain = dom;
            }
            reg.add(FuncSpec::table_fn(name, arity, std::move(data)));
        } else if (kind == "wavg") {
            FuncSpec spec = FuncSpec::wavg(json_rat(f.at("lambda")));
            spec.name = name;
            reg.add(spec);
        } else if (kind == "const") {
            FuncSpec spec = FuncSpec::constant(json_rat(f.at("value")));
            spec.name = name;
            reg.add(spec);
        } else {
            throw Error(ErrorCode::Schema, "unknown function kind '" + kind + "'");
        }
    }
    return reg;
}

}  // namespace slfmc
