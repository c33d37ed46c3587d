#pragma once

#include "slfmc/formula.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slfmc {

struct ParseOptions {
    /// SL: reject bindings to variables no enclosing quantifier introduces.
    bool require_closed = false;
};

/// Parses one formula of the given dialect. Abbreviations (true, false, !, &,
/// |, ->, F, G, [[x]], and the dual path quantifier) are expanded on the fly.
Formula parse_formula(std::string_view text, Dialect dialect, const FuncRegistry& registry = {},
                      const ParseOptions& options = {});

/// A formula file holds either a single formula or blocks `def name := formula`.
/// Unnamed files yield one entry named "main". Lines starting with '#' are comments.
std::vector<std::pair<std::string, Formula>> parse_formula_file(std::string_view text, Dialect dialect,
                                                                const FuncRegistry& registry = {},
                                                                const ParseOptions& options = {});

Dialect parse_dialect(std::string_view name);

}  // namespace slfmc
