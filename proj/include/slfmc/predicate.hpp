#pragma once

#include "slfmc/rat.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slfmc {

struct Interval {
    Rat lo;
    Rat hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(const Rat& v) const;
    bool empty() const;
};

/// Finite union of rational-endpoint intervals inside [0,1], kept sorted,
/// disjoint and non-adjacent.
class Predicate {
public:
    Predicate() = default;
    explicit Predicate(std::vector<Interval> parts);

    static Predicate all() { return Predicate({Interval{Rat(0), Rat(1), true, true}}); }
    static Predicate none() { return Predicate(); }
    static Predicate point(const Rat& v) { return Predicate({Interval{v, v, true, true}}); }
    static Predicate at_least(const Rat& v) { return Predicate({Interval{v, Rat(1), true, true}}); }
    static Predicate greater(const Rat& v) { return Predicate({Interval{v, Rat(1), false, true}}); }
    static Predicate at_most(const Rat& v) { return Predicate({Interval{Rat(0), v, true, true}}); }
    static Predicate less(const Rat& v) { return Predicate({Interval{Rat(0), v, true, false}}); }

    /// `>=v`, `>v`, `<=v`, `<v`, `=v`, `[a,b]`, `(a,b]`, ... joined with `|`.
    static Predicate parse(std::string_view text);

    bool contains(const Rat& v) const;
    bool empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }

    Predicate intersect(const Predicate& other) const;
    Predicate unite(const Predicate& other) const;
    bool subset_of(const Predicate& other) const;

    std::string str() const;
    friend bool operator==(const Predicate&, const Predicate&) = default;

private:
    std::vector<Interval> parts_;
};

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
}

}  // namespace slfmc
