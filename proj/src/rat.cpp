#include "slfmc/rat.hpp"

#include "slfmc/error.hpp"

#include <charconv>
#include <numeric>
#include <ostream>

namespace slfmc {

namespace {

using wide = __int128;

std::int64_t narrow(wide v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::OutOfRange, "rational overflow");
    return static_cast<std::int64_t>(v);
}

wide gcd_wide(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat make(wide num, wide den) {
    if (den == 0) throw Error(ErrorCode::OutOfRange, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rat(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::OutOfRange, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rat Rat::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return Rat(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot);
        std::string_view fp = text.substr(dot + 1);
        if (fp.size() > 17) throw Error(ErrorCode::Syntax, "decimal literal too long '" + std::string(text) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        bool neg = !ip.empty() && ip.front() == '-';
        std::int64_t whole = ip.empty() || ip == "-" ? 0 : parse_int(ip, text);
        std::int64_t frac = fp.empty() ? 0 : parse_int(fp, text);
        wide n = static_cast<wide>(whole < 0 ? -whole : whole) * scale + frac;
        return make(neg ? -n : n, scale);
    }
    return Rat(parse_int(text, text));
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat operator+(const Rat& a, const Rat& b) {
    return make(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                static_cast<wide>(a.den_) * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) {
    return make(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
                static_cast<wide>(a.den_) * b.den_);
}

Rat operator*(const Rat& a, const Rat& b) {
    return make(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
    return make(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept {
    return static_cast<wide>(a.num_) * b.den_ <=> static_cast<wide>(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace slfmc
