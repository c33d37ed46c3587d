#include "slfmc/predicate.hpp"

#include "slfmc/error.hpp"

#include <algorithm>

namespace slfmc {

bool Interval::contains(const Rat& v) const {
    bool above = lo_closed ? lo <= v : lo < v;
    bool below = hi_closed ? v <= hi : v < hi;
    return above && below;
}

bool Interval::empty() const {
    if (hi < lo) return true;
    if (lo == hi) return !(lo_closed && hi_closed);
    return false;
}

namespace {

// Lower-endpoint ordering: closed lower bounds come before open ones at equal value.
bool starts_before(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
}

// Whether b starts inside or directly adjacent to a (so the union is one interval).
bool touches(const Interval& a, const Interval& b) {
    if (b.lo < a.hi) return true;
    if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
    return false;
}

}  // namespace

Predicate::Predicate(std::vector<Interval> parts) {
    std::vector<Interval> kept;
    for (auto& iv : parts) {
        if (iv.lo < Rat(0)) {
            iv.lo = Rat(0);
            iv.lo_closed = true;
        }
        if (Rat(1) < iv.hi) {
            iv.hi = Rat(1);
            iv.hi_closed = true;
        }
        if (!iv.empty()) kept.push_back(iv);
    }
    std::sort(kept.begin(), kept.end(), starts_before);
    for (const auto& iv : kept) {
        if (!parts_.empty() && touches(parts_.back(), iv)) {
            auto& last = parts_.back();
            if (last.hi < iv.hi) {
                last.hi = iv.hi;
                last.hi_closed = iv.hi_closed;
            } else if (last.hi == iv.hi) {
                last.hi_closed = last.hi_closed || iv.hi_closed;
            }
        } else {
            parts_.push_back(iv);
        }
    }
}

bool Predicate::contains(const Rat& v) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& iv) { return iv.contains(v); });
}

Predicate Predicate::intersect(const Predicate& other) const {
    std::vector<Interval> out;
    for (const auto& a : parts_) {
        for (const auto& b : other.parts_) {
            Interval c;
            if (a.lo < b.lo || (a.lo == b.lo && !b.lo_closed)) {
                c.lo = b.lo;
                c.lo_closed = b.lo_closed;
            } else {
                c.lo = a.lo;
                c.lo_closed = a.lo_closed;
            }
            if (b.hi < a.hi || (a.hi == b.hi && !b.hi_closed)) {
                c.hi = b.hi;
                c.hi_closed = b.hi_closed;
            } else {
                c.hi = a.hi;
                c.hi_closed = a.hi_closed;
            }
            if (!c.empty()) out.push_back(c);
        }
    }
    return Predicate(std::move(out));
}

Predicate Predicate::unite(const Predicate& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return Predicate(std::move(all));
}

bool Predicate::subset_of(const Predicate& other) const { return intersect(other) == *this; }

std::string Predicate::str() const {
    if (parts_.empty()) return "{}";
    std::string out;
    for (const auto& iv : parts_) {
        if (!out.empty()) out += "|";
        if (iv.lo == iv.hi) {
            out += "=" + iv.lo.str();
            continue;
        }
        out += iv.lo_closed ? "[" : "(";
        out += iv.lo.str() + "," + iv.hi.str();
        out += iv.hi_closed ? "]" : ")";
    }
    return out;
}

namespace {

Interval parse_part(std::string_view s) {
    auto fail = [&] { return Error(ErrorCode::Syntax, "malformed predicate part '" + std::string(s) + "'"); };
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw fail();
    if (s.front() == '[' || s.front() == '(') {
        if (s.back() != ']' && s.back() != ')') throw fail();
        auto comma = s.find(',');
        if (comma == std::string_view::npos) throw fail();
        Interval iv{Rat::parse(s.substr(1, comma - 1)), Rat::parse(s.substr(comma + 1, s.size() - comma - 2)),
                    s.front() == '[', s.back() == ']'};
        return iv;
    }
    if (s.starts_with(">=")) return Interval{Rat::parse(s.substr(2)), Rat(1), true, true};
    if (s.starts_with("<=")) return Interval{Rat(0), Rat::parse(s.substr(2)), true, true};
    if (s.starts_with(">")) return Interval{Rat::parse(s.substr(1)), Rat(1), false, true};
    if (s.starts_with("<")) return Interval{Rat(0), Rat::parse(s.substr(1)), true, false};
    if (s.starts_with("=")) {
        Rat v = Rat::parse(s.substr(1));
        return Interval{v, v, true, true};
    }
    throw fail();
}

}  // namespace

Predicate Predicate::parse(std::string_view text) {
    std::vector<Interval> parts;
    std::size_t start = 0;
    while (true) {
        auto bar = text.find('|', start);
        auto piece = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
        Interval iv = parse_part(piece);
        if (!iv.lo.in_unit() || !iv.hi.in_unit())
            throw Error(ErrorCode::OutOfRange, "predicate endpoint outside [0,1] in '" + std::string(piece) + "'");
        parts.push_back(iv);
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return Predicate(std::move(parts));
}

}  // namespace slfmc
