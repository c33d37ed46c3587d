#pragma once

#include "slfmc/rat.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slfmc {

enum class FuncKind { Const, Min, Max, Neg, WAvg, Diff, LeqIndicator, LexLeqIndicator, Table };

/// Finite lookup table. Arguments must come from `domain` when one is
/// declared; combinations missing from `entries` map to `fallback`.
struct TableData {
    std::map<std::vector<Rat>, Rat> entries;
    std::optional<Rat> fallback;
    std::optional<std::vector<Rat>> domain;
};

/// A function over [0,1]^arity. Immutable; shared between formula nodes.
struct FuncSpec {
    std::string name;
    int arity = 0;
    FuncKind kind = FuncKind::Const;
    Rat param;          // Const value, or the WAvg weight
    int lex_index = 1;  // LexLeqIndicator component (1 or 2)
    std::shared_ptr<const TableData> table;

    static FuncSpec constant(const Rat& v);
    static FuncSpec min(int arity);
    static FuncSpec max(int arity);
    static FuncSpec neg();
    static FuncSpec wavg(const Rat& lambda);
    static FuncSpec diff();
    static FuncSpec leq();
    static FuncSpec lexleq(int index);
    static FuncSpec table_fn(std::string name, int arity, TableData data);

    /// Name as written in the concrete syntax (constants print as literals).
    std::string display_name() const;

    friend bool operator==(const FuncSpec& a, const FuncSpec& b);
};

Rat apply_func(const FuncSpec& f, std::span<const Rat> args);

/// Named function lookup for the parser. Built-in names are always present;
/// user tables can be added or loaded from JSON.
class FuncRegistry {
public:
    FuncRegistry();

    void add(FuncSpec spec);
    /// Resolves `name` applied to `arity` arguments; min/max are variadic.
    std::optional<FuncSpec> lookup(const std::string& name, int arity) const;
    bool knows(const std::string& name) const;

    /// `{"functions":[{"name":..,"arity":..,"kind":"table","entries":[[["0","1"],"1/2"],..],
    ///   "default":"0","domain":["0","1/2","1"]}, {"name":..,"kind":"wavg","lambda":"1/3"}, ..]}`
    static FuncRegistry from_json_text(const std::string& text);

private:
    std::map<std::string, FuncSpec> user_;
};

}  // namespace slfmc
