#pragma once

#include "slfmc/formula.hpp"

#include <map>
#include <string>
#include <vector>

namespace slfmc {

/// Sorted, duplicate-free list of values.
using ValueSet = std::vector<Rat>;

ValueSet make_value_set(std::vector<Rat> values);
ValueSet unite(const ValueSet& a, const ValueSet& b);
bool contains(const ValueSet& s, const Rat& v);
/// Parses "0,1/3,1"; always adds 0 and 1.
ValueSet parse_base(const std::string& text);

/// Finite superset of the values `f` can take when every atom takes values
/// in `base` (which must contain 0 and 1).
ValueSet value_set(const Formula& f, const ValueSet& base);

/// As above with a separate value set per atom; throws EmptyAlphabet when an
/// atom has none.
ValueSet value_set(const Formula& f, const std::map<std::string, ValueSet>& atom_values);

/// Exact image of `f` over the product of the argument sets.
ValueSet func_image(const FuncSpec& f, const std::vector<ValueSet>& args);

struct SizeBound {
    std::size_t computed = 0;
    std::string bound;  // |base|^|f| in decimal
    bool ok = true;
};

SizeBound size_bound_check(const Formula& f, const ValueSet& base);

}  // namespace slfmc
