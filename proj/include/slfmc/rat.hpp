#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace slfmc {

/// Exact rational number kept in lowest terms with a positive denominator.
/// Satisfaction values live in [0,1], but intermediate arithmetic (1 - x,
/// x - y) needs the full signed range, so the type itself is unrestricted;
/// `in_unit()` checks the domain invariant where it matters.
class Rat {
public:
    constexpr Rat() = default;
    Rat(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool in_unit() const noexcept { return num_ >= 0 && num_ <= den_; }
    bool is_boolean() const noexcept { return den_ == 1 && (num_ == 0 || num_ == 1); }

    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }

    /// Accepts "n/d", "n", and decimal literals such as "0.25" (converted exactly).
    static Rat parse(std::string_view text);
    std::string str() const;
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);

    friend bool operator==(const Rat& a, const Rat& b) noexcept = default;
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace slfmc

template <>
struct std::hash<slfmc::Rat> {
    std::size_t operator()(const slfmc::Rat& r) const noexcept {
        return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
    }
};
