#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace addcomb {

using int128 = __int128;

// Exact rational arithmetic on int64 components with 128-bit intermediates.
// Always stored reduced, denominator positive. Thresholds and energy
// densities are compared through this type; no floating point is involved
// in any counting decision.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    static Rational from_int128(int128 n, int128 d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = narrow(n, "numerator");
        r.den_ = narrow(d, "denominator");
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool positive() const { return num_ > 0; }

    Rational operator+(const Rational& o) const {
        return from_int128((int128)num_ * o.den_ + (int128)o.num_ * den_, (int128)den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return from_int128((int128)num_ * o.den_ - (int128)o.num_ * den_, (int128)den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return from_int128((int128)num_ * o.num_, (int128)den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return from_int128((int128)num_ * o.den_, (int128)den_ * o.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return (int128)num_ * o.den_ < (int128)o.num_ * den_; }
    bool operator<=(const Rational& o) const { return (int128)num_ * o.den_ <= (int128)o.num_ * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Canonical text form "p/q", or "p" when the value is integral.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    // Accepts "p" or "p/q" with optional leading sign.
    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(parse_i64(text));
            return Rational(parse_i64(text.substr(0, slash)), parse_i64(text.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: cannot parse '" + text + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("Rational: out of range '" + text + "'");
        }
    }

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const std::int64_t g = std::gcd(n, d);
        num_ = n / (g ? g : 1);
        den_ = d / (g ? g : 1);
    }

    static int128 gcd128(int128 a, int128 b) {
        while (b != 0) { const int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    static std::int64_t narrow(int128 v, const char* what) {
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error(std::string("Rational: ") + what + " exceeds 64 bits after reduction");
        return static_cast<std::int64_t>(v);
    }

    static std::int64_t parse_i64(const std::string& s) {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    }
};

// value >= bound, exactly (cross-multiplied in 128 bits).
inline bool int_ge(std::int64_t value, const Rational& bound) {
    return (int128)value * bound.den() >= (int128)bound.num();
}

inline bool int_lt(std::int64_t value, const Rational& bound) { return !int_ge(value, bound); }

} // namespace addcomb
