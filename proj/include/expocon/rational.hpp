#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "expocon/error.hpp"

namespace expocon {

/// Exact rational number in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den) {
        if (den == 0) throw DomainError("zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DomainError("zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        auto valid_int = [](const std::string& t) {
            if (t.empty()) return false;
            std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        auto strip_plus = [](std::string t) {
            if (!t.empty() && t[0] == '+') t.erase(0, 1);
            return t;
        };
        if (slash == std::string::npos) {
            if (!valid_int(s)) throw ParseError("malformed rational '" + s + "'", 0);
            return Rational(mpz_class(strip_plus(s)), mpz_class(1));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
            throw ParseError("malformed rational '" + s + "'", slash);
        return Rational(mpz_class(strip_plus(num)), mpz_class(den));
    }

    const mpq_class& raw() const noexcept { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const noexcept { return sgn(q_) == 0; }
    bool is_one() const noexcept { return q_ == 1; }
    bool is_integer() const noexcept { return q_.get_den() == 1; }
    int sign() const noexcept { return sgn(q_); }
    double to_double() const { return q_.get_d(); }

    /// Always "p/q", so that zero prints as "0/1".
    std::string to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }
    /// "p" for integers, "p/q" otherwise.
    std::string to_short_string() const {
        return is_integer() ? q_.get_num().get_str() : to_string();
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_short_string();
    }

private:
    mpq_class q_{0};
};

inline bool is_zero(const Rational& r) noexcept { return r.is_zero(); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, unsigned exponent) {
    Rational result(1);
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

inline Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f, mpz_class(1));
}

inline Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b, mpz_class(1));
}

}  // namespace expocon
