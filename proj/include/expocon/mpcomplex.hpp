#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <mpfr.h>

#include "expocon/error.hpp"
#include "expocon/rational.hpp"

namespace expocon {

namespace detail {
inline std::atomic<int>& default_digits_storage() {
    static std::atomic<int> digits{64};
    return digits;
}
}  // namespace detail

/// Working precision (decimal digits) used when a value is created without one.
inline int default_digits() { return detail::default_digits_storage().load(); }
inline void set_default_digits(int digits) {
    if (digits < 1) throw DomainError("precision must be positive");
    detail::default_digits_storage().store(digits);
}

/// Restores the previous default precision on scope exit.
class DigitsGuard {
public:
    explicit DigitsGuard(int digits) : saved_(default_digits()) { set_default_digits(digits); }
    ~DigitsGuard() { set_default_digits(saved_); }
    DigitsGuard(const DigitsGuard&) = delete;
    DigitsGuard& operator=(const DigitsGuard&) = delete;

private:
    int saved_;
};

/// Decimal working precision, kept distinct from integer values.
struct Precision {
    int digits;
};

/// Binary precision carrying at least `digits` decimal digits plus guard bits.
inline mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

/// Arbitrary-precision real backed by MPFR. Results of binary operations carry
/// the larger of the operand precisions.
class MpReal {
public:
    MpReal() : MpReal(Precision{default_digits()}) {}
    explicit MpReal(Precision p) : digits_(p.digits) {
        if (digits_ < 1) throw DomainError("precision must be positive");
        mpfr_init2(x_, bits_for_digits(digits_));
        mpfr_set_zero(x_, 1);
    }
    MpReal(const Rational& q, int digits) : MpReal(Precision{digits}) { mpfr_set_q(x_, q.raw().get_mpq_t(), MPFR_RNDN); }
    explicit MpReal(const Rational& q) : MpReal(q, default_digits()) {}
    static MpReal from_double(double d, int digits) {
        MpReal r(Precision{digits});
        mpfr_set_d(r.x_, d, MPFR_RNDN);
        return r;
    }

    static MpReal parse(std::string_view text, int digits) {
        MpReal r(Precision{digits});
        std::string s(text);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\n')) s.pop_back();
        std::size_t start = s.find_first_not_of(' ');
        if (start == std::string::npos) throw ParseError("empty number", 0);
        s = s.substr(start);
        char* end = nullptr;
        mpfr_strtofr(r.x_, s.c_str(), &end, 10, MPFR_RNDN);
        if (end == s.c_str() || *end != '\0')
            throw ParseError("malformed number '" + s + "'", static_cast<std::size_t>(end - s.c_str()));
        return r;
    }

    MpReal(const MpReal& o) : digits_(o.digits_) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    MpReal(MpReal&& o) noexcept : digits_(o.digits_) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
            digits_ = o.digits_;
        }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        mpfr_swap(x_, o.x_);
        std::swap(digits_, o.digits_);
        return *this;
    }
    ~MpReal() { mpfr_clear(x_); }

    int digits() const noexcept { return digits_; }
    mpfr_srcptr get() const noexcept { return x_; }
    mpfr_ptr get() noexcept { return x_; }

    bool is_zero() const noexcept { return mpfr_zero_p(x_) != 0; }
    int sign() const noexcept { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    /// Scientific notation with `sig` significant digits (default: own precision).
    std::string to_string(int sig = 0) const {
        if (sig <= 0) sig = digits_;
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", sig - 1, x_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    /// Exact rational value of the binary floating-point number.
    Rational to_rational() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), x_);
        return Rational(q);
    }

    MpReal operator-() const {
        MpReal r(*this);
        mpfr_neg(r.x_, r.x_, MPFR_RNDN);
        return r;
    }

#define EXPOCON_MPREAL_BINOP(op, fn)                                      \
    friend MpReal operator op(const MpReal& a, const MpReal& b) {         \
        MpReal r(Precision{std::max(a.digits_, b.digits_)});                         \
        fn(r.x_, a.x_, b.x_, MPFR_RNDN);                                  \
        return r;                                                         \
    }                                                                     \
    MpReal& operator op##=(const MpReal& b) { return *this = *this op b; }
    EXPOCON_MPREAL_BINOP(+, mpfr_add)
    EXPOCON_MPREAL_BINOP(-, mpfr_sub)
    EXPOCON_MPREAL_BINOP(*, mpfr_mul)
    EXPOCON_MPREAL_BINOP(/, mpfr_div)
#undef EXPOCON_MPREAL_BINOP

    friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }
    friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_less_p(a.x_, b.x_) != 0; }
    friend bool operator>(const MpReal& a, const MpReal& b) { return b < a; }
    friend bool operator<=(const MpReal& a, const MpReal& b) { return mpfr_lessequal_p(a.x_, b.x_) != 0; }
    friend bool operator>=(const MpReal& a, const MpReal& b) { return b <= a; }

    friend MpReal abs(const MpReal& a) {
        MpReal r(a);
        mpfr_abs(r.x_, r.x_, MPFR_RNDN);
        return r;
    }
    friend MpReal sqrt(const MpReal& a) {
        MpReal r(Precision{a.digits_});
        mpfr_sqrt(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend MpReal hypot(const MpReal& a, const MpReal& b) {
        MpReal r(Precision{std::max(a.digits_, b.digits_)});
        mpfr_hypot(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend MpReal log10(const MpReal& a) {
        MpReal r(Precision{a.digits_});
        mpfr_log10(r.x_, a.x_, MPFR_RNDN);
        return r;
    }

    /// 10^exponent at the given precision.
    static MpReal pow10(long exponent, int digits) {
        MpReal r(Precision{digits});
        mpfr_ui_pow_ui(r.x_, 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent), MPFR_RNDN);
        if (exponent < 0) mpfr_ui_div(r.x_, 1, r.x_, MPFR_RNDN);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const MpReal& r) { return os << r.to_string(); }

private:
    mpfr_t x_;
    int digits_;
};

/// Arbitrary-precision complex number; both parts share one decimal precision.
class MPComplex {
public:
    MPComplex() : MPComplex(Precision{default_digits()}) {}
    explicit MPComplex(Precision p) : re_(p), im_(p) {}
    explicit MPComplex(const Rational& q) : MPComplex(q, default_digits()) {}
    MPComplex(const Rational& q, int digits) : re_(q, digits), im_(Precision{digits}) {}
    MPComplex(MpReal re, MpReal im) : re_(std::move(re)), im_(std::move(im)) {
        int d = std::max(re_.digits(), im_.digits());
        if (re_.digits() != d) re_ = promote(re_, d);
        if (im_.digits() != d) im_ = promote(im_, d);
    }
    explicit MPComplex(MpReal re) : MPComplex(re, MpReal(Precision{re.digits()})) {}
    MPComplex(std::complex<double> z, int digits)
        : re_(MpReal::from_double(z.real(), digits)), im_(MpReal::from_double(z.imag(), digits)) {}

    static MPComplex parse(std::string_view re, std::string_view im, int digits) {
        return MPComplex(MpReal::parse(re, digits), MpReal::parse(im, digits));
    }

    const MpReal& real() const noexcept { return re_; }
    const MpReal& imag() const noexcept { return im_; }
    int digits() const noexcept { return re_.digits(); }

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }

    std::complex<double> to_complex_double() const { return {re_.to_double(), im_.to_double()}; }

    /// Re-rounds to a new precision (up or down).
    MPComplex with_digits(int digits) const { return MPComplex(promote(re_, digits), promote(im_, digits)); }

    /// "(re, im)@digits"
    std::string to_string(int sig = 0) const {
        return "(" + re_.to_string(sig) + ", " + im_.to_string(sig) + ")@" + std::to_string(digits());
    }

    MPComplex operator-() const { return MPComplex(-re_, -im_); }
    friend MPComplex operator+(const MPComplex& a, const MPComplex& b) {
        return MPComplex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend MPComplex operator-(const MPComplex& a, const MPComplex& b) {
        return MPComplex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend MPComplex operator*(const MPComplex& a, const MPComplex& b) {
        if (a.im_.is_zero() && b.im_.is_zero()) {
            MpReal re = a.re_ * b.re_;
            return MPComplex(re, MpReal(Precision{re.digits()}));
        }
        return MPComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend MPComplex operator/(const MPComplex& a, const MPComplex& b) {
        if (b.is_zero()) throw DomainError("complex division by zero");
        MpReal den = b.re_ * b.re_ + b.im_ * b.im_;
        return MPComplex((a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den);
    }
    MPComplex& operator+=(const MPComplex& b) { return *this = *this + b; }
    MPComplex& operator-=(const MPComplex& b) { return *this = *this - b; }
    MPComplex& operator*=(const MPComplex& b) { return *this = *this * b; }
    MPComplex& operator/=(const MPComplex& b) { return *this = *this / b; }

    friend bool operator==(const MPComplex& a, const MPComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    friend MpReal abs(const MPComplex& z) { return hypot(z.re_, z.im_); }
    friend MPComplex conj(const MPComplex& z) { return MPComplex(z.re_, -z.im_); }

    friend std::ostream& operator<<(std::ostream& os, const MPComplex& z) { return os << z.to_string(); }

private:
    static MpReal promote(const MpReal& x, int digits) {
        MpReal r(Precision{digits});
        mpfr_set(r.get(), x.get(), MPFR_RNDN);
        return r;
    }

    MpReal re_;
    MpReal im_;
};

inline bool is_zero(const MPComplex& z) noexcept { return z.is_zero(); }

/// Reads "(re, im)@digits", "(re, im)", a decimal "1.5e-3" or a rational "p/q".
/// `digits` applies when the text carries no precision suffix.
inline MPComplex parse_mpcomplex(std::string_view text, int digits) {
    std::string s(text);
    auto trim = [](std::string t) {
        t.erase(0, t.find_first_not_of(" \t"));
        t.erase(t.find_last_not_of(" \t") + 1);
        return t;
    };
    s = trim(s);
    if (!s.empty() && s.front() == '(') {
        const auto close = s.find(')');
        const auto comma = s.find(',');
        if (close == std::string::npos || comma == std::string::npos || comma > close)
            throw ParseError("malformed complex number '" + s + "'", 0);
        if (close + 1 < s.size()) {
            if (s[close + 1] != '@') throw ParseError("expected '@digits' after complex number", close + 1);
            digits = std::stoi(s.substr(close + 2));
        }
        return MPComplex::parse(trim(s.substr(1, comma - 1)), trim(s.substr(comma + 1, close - comma - 1)), digits);
    }
    if (s.find('/') != std::string::npos) return MPComplex(Rational::parse(s), digits);
    return MPComplex(MpReal::parse(s, digits));
}

/// Recovers an exact rational from a numeric value by continued fractions.
/// Accepts the first convergent within 10^(-digits/2) whose denominator does
/// not exceed `max_denominator`.
inline Rational rationalize(const MPComplex& x, const mpz_class& max_denominator) {
    const int digits = x.digits();
    const MpReal tol = MpReal::pow10(-(digits / 2), digits);
    if (abs(x.imag()) >= tol)
        throw NotRationalError("value has nonzero imaginary part " + x.imag().to_string(6));
    const MpReal& target = x.real();

    mpz_class p_prev = 1, q_prev = 0;  // convergent k-1
    mpz_class p_prev2 = 0, q_prev2 = 1;  // convergent k-2
    MpReal rest = target;
    for (int iter = 0; iter < 10 * digits; ++iter) {
        MpReal fl(Precision{digits});
        mpfr_floor(fl.get(), rest.get());
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
        mpz_class p = a * p_prev + p_prev2;
        mpz_class q = a * q_prev + q_prev2;
        if (q > max_denominator) break;
        Rational candidate(p, q);
        if (abs(MpReal(candidate, digits) - target) < tol) return candidate;
        p_prev2 = p_prev; q_prev2 = q_prev;
        p_prev = p; q_prev = q;
        MpReal frac = rest - fl;
        if (frac.is_zero()) break;
        rest = MpReal(Rational(1), digits) / frac;
    }
    throw NotRationalError("no rational approximant within tolerance for " + target.to_string(20));
}

inline Rational rationalize(const MPComplex& x, long max_denominator) {
    return rationalize(x, mpz_class(max_denominator));
}

}  // namespace expocon
