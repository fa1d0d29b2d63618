#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace voxcta {

/// Exact rational with int64 numerator/denominator, always normalized
/// (den > 0, gcd(|num|, den) == 1). Comparisons go through 128-bit
/// intermediates so thresholds like OM > lambda*|B| never round.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }
    Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT: implicit by design

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational operator+(const Rational& o) const {
        return make128(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                       static_cast<__int128>(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return make128(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                       static_cast<__int128>(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return make128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    }
    Rational operator-() const { return Rational(-num_, den_, nocheck{}); }

    /// Strict test  value > this * scale  with exact integer arithmetic.
    /// Used for superlevel thresholding: OM(t) > lambda * |B|.
    bool scaled_less_than(std::int64_t scale, std::int64_t value) const {
        return static_cast<__int128>(value) * den_ > static_cast<__int128>(num_) * scale;
    }

private:
    struct nocheck {};
    Rational(std::int64_t n, std::int64_t d, nocheck) : num_(n), den_(d) {}

    void normalize() {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    static Rational make128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), nocheck{});
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Parse a decimal string ("0.55", ".25", "1", "3/7") into an exact rational.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = std::stoll(s.substr(0, slash));
        std::int64_t d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    }
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    std::int64_t num = 0, den = 1;
    bool after_point = false, any_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (after_point) throw std::invalid_argument("parse_rational: bad number " + s);
            after_point = true;
            continue;
        }
        if (c < '0' || c > '9') throw std::invalid_argument("parse_rational: bad number " + s);
        if (num > (INT64_MAX - 9) / 10 || (after_point && den > INT64_MAX / 10))
            throw std::overflow_error("parse_rational: too many digits in " + s);
        num = num * 10 + (c - '0');
        if (after_point) den *= 10;
        any_digit = true;
    }
    if (!any_digit) throw std::invalid_argument("parse_rational: bad number " + s);
    return Rational(neg ? -num : num, den);
}

} // namespace voxcta
