#include <random>
#include <string>

#include <gtest/gtest.h>

#include "expocon/expocon.hpp"

using namespace expocon;

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 500);
    return Rational(num(rng), den(rng));
}

PolyRational random_poly(std::mt19937_64& rng) {
    static const std::vector<std::string> names{"a", "b", "c"};
    std::uniform_int_distribution<int> nterms(0, 4), deg(0, 2), pick(0, 2);
    PolyRational p;
    for (int t = nterms(rng); t > 0; --t) {
        PolyRational m(random_rational(rng));
        for (int k = deg(rng); k > 0; --k) m = m * PolyRational::variable(names[static_cast<std::size_t>(pick(rng))]);
        p = p + m;
    }
    return p;
}

MPComplex random_complex(std::mt19937_64& rng, int digits) {
    return MPComplex(MpReal(random_rational(rng), digits), MpReal(random_rational(rng), digits));
}

// Decimal expansion of p/q with n digits after the point, by long division.
std::string decimal_expansion(long p, long q, int n) {
    std::string s = std::to_string(p / q) + ".";
    long r = p % q;
    for (int i = 0; i < n; ++i) {
        r *= 10;
        s += static_cast<char>('0' + r / q);
        r %= q;
    }
    return s;
}

// Last continued-fraction convergent of an exact rational with denominator <= bound.
Rational best_convergent(const Rational& x, long bound) {
    mpz_class num = x.numerator(), den = x.denominator();
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational best(0);
    while (den != 0) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class p = a * p1 + p0, q = a * q1 + q0;
        if (q > bound) break;
        best = Rational(p, q);
        p0 = p1; q0 = q1; p1 = p; q1 = q;
        mpz_class r = num - a * den;
        num = den;
        den = r;
    }
    return best;
}

}  // namespace

TEST(Rational, RingAxiomsRandomized) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE(is_zero(a + (-a)));
        EXPECT_EQ(a * ring_one<Rational>(), a);
        EXPECT_EQ(a + ring_zero<Rational>(), a);
    }
}

TEST(Rational, SumMatchesIntegerRecomputation) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (int i = 0; i < 1000; ++i) {
        const long p = num(rng), q = den(rng), r = num(rng), s = den(rng);
        const mpz_class n = mpz_class(p) * s + mpz_class(r) * q;
        const mpz_class d = mpz_class(q) * s;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        const Rational sum = Rational(p, q) + Rational(r, s);
        if (n == 0) {
            EXPECT_TRUE(sum.is_zero());
        } else {
            EXPECT_EQ(sum.numerator(), n / g);
            EXPECT_EQ(sum.denominator(), d / g);
        }
    }
}

TEST(Rational, CanonicalForm) {
    EXPECT_EQ(Rational(0).to_string(), "0/1");
    EXPECT_EQ(Rational(6, -4).to_string(), "-3/2");
    EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
    EXPECT_THROW(Rational(1, 0), DomainError);
}

TEST(PolyRational, RingAxiomsRandomized) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const PolyRational a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE(is_zero(a - a));
        EXPECT_EQ(a * ring_one<PolyRational>(), a);
    }
}

TEST(PolyRational, SubstituteThenEvaluate) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        const PolyRational p = random_poly(rng);
        const std::map<std::string, Rational> sigma{{"a", random_rational(rng)}};
        const std::map<std::string, Rational> rho{{"b", random_rational(rng)}, {"c", random_rational(rng)}};
        std::map<std::string, Rational> both = sigma;
        both.insert(rho.begin(), rho.end());
        EXPECT_EQ(poly_evaluate(poly_substitute(p, sigma), rho), poly_evaluate(p, both));
    }
}

TEST(PolyRational, EvaluateExamples) {
    const auto p1 = parse_poly("-1+2*a");
    EXPECT_TRUE(poly_evaluate(p1, std::map<std::string, MPComplex>{{"a", MPComplex(Rational(1, 2))}}).is_zero());
    EXPECT_TRUE(poly_evaluate(PolyRational(), std::map<std::string, MPComplex>{{"z", MPComplex(Rational(3))}}).is_zero());
    const auto p3 = parse_poly("-1/6+2*a^2*b+1/2*a^2*c");
    const std::map<std::string, MPComplex> abc{
        {"a", MPComplex(Rational(1, 2))}, {"b", MPComplex(Rational(1, 6))}, {"c", MPComplex(Rational(2, 3))}};
    EXPECT_LT(abs(poly_evaluate(p3, abc)).to_double(), 1e-60);
    EXPECT_THROW(poly_evaluate(p1, std::map<std::string, MPComplex>{}), UnboundVariableError);
}

TEST(PolyRational, SubstituteExamples) {
    EXPECT_EQ(poly_substitute(parse_poly("-1+2*b+c"), {{"b", Rational(1, 6)}}), parse_poly("c - 2/3"));
    EXPECT_EQ(poly_substitute(parse_poly("-1+2*a"), {}), parse_poly("-1+2*a"));
    EXPECT_EQ(poly_substitute(parse_poly("2*a^2*b"), {{"a", Rational(1, 2)}, {"b", Rational(1, 6)}}),
              PolyRational(Rational(1, 12)));
}

TEST(PolyRational, PrintsInGradedLexOrder) {
    EXPECT_EQ(parse_poly("-1/6 + 2*b*a^2").to_string(), "2*a^2*b - 1/6");
    EXPECT_EQ(parse_poly(parse_poly("a*c^2/2 + a*c*b - d").to_string()), parse_poly("a*c^2/2 + a*c*b - d"));
    EXPECT_EQ(PolyRational().to_string(), "0");
}

TEST(PolyRational, Differentiate) {
    EXPECT_EQ(differentiate(parse_poly("2*a^2*b"), "a"), parse_poly("4*a*b"));
    EXPECT_EQ(differentiate(parse_poly("-1+2*b+c"), "c"), PolyRational(1));
}

TEST(MPComplex, RingAxiomsWithinRounding) {
    std::mt19937_64 rng(15);
    const double tol = 1e-55;
    for (int i = 0; i < 1000; ++i) {
        const MPComplex a = random_complex(rng, 64), b = random_complex(rng, 64), c = random_complex(rng, 64);
        EXPECT_LT(abs((a + b) + c - (a + (b + c))).to_double(), tol);
        EXPECT_LT(abs((a * b) * c - a * (b * c)).to_double(), tol * 1e6);
        EXPECT_LT(abs(a * (b + c) - (a * b + a * c)).to_double(), tol * 1e6);
        EXPECT_TRUE((a * b) == (b * a));
        EXPECT_TRUE(is_zero(a - a));
    }
}

TEST(MPComplex, PrecisionMonotonicity) {
    std::mt19937_64 rng(16);
    for (int d : {20, 32, 50}) {
        for (int i = 0; i < 50; ++i) {
            const Rational p = random_rational(rng), q = random_rational(rng);
            auto compute = [&](int digits) {
                MPComplex x(MpReal(p, digits), MpReal(q, digits));
                MPComplex y = x * x + MPComplex(Rational(1, 3), digits);
                if (y.is_zero()) return y;
                return (x / y) * (x - MPComplex(Rational(7, 11), digits));
            };
            const MPComplex lo = compute(d), hi = compute(2 * d);
            const MpReal scale = abs(hi);
            const MpReal err = abs(lo.with_digits(2 * d) - hi);
            EXPECT_LE(err.to_double(), std::pow(10.0, -(d - 2)) * std::max(1.0, scale.to_double()));
        }
    }
}

TEST(MPComplex, NeverDowngradesPrecision) {
    MPComplex a(Rational(1, 3), 30), b(Rational(1, 7), 80);
    EXPECT_EQ((a + b).digits(), 80);
    EXPECT_EQ((a * b).digits(), 80);
    EXPECT_EQ((b - a).digits(), 80);
}

TEST(MPComplex, SerializationRoundTrip) {
    MPComplex z(MpReal::parse("1.25", 30), MpReal::parse("-0.5", 30));
    const std::string s = z.to_string();
    EXPECT_EQ(s.back(), '0');
    EXPECT_NE(s.find("@30"), std::string::npos);
    EXPECT_TRUE(parse_mpcomplex(s, 64) == z);
    EXPECT_EQ(parse_mpcomplex(s, 64).digits(), 30);
}

TEST(Rationalize, Examples) {
    const std::string d72 = decimal_expansion(1, 72, 50);
    const MPComplex x72(MpReal::parse(d72, 50));
    // Oracle: continued fraction of the exact decimal.
    const Rational exact72(mpz_class(d72.substr(0, 1) + d72.substr(2), 10), mpz_class("1" + std::string(50, '0'), 10));
    EXPECT_EQ(best_convergent(exact72, 1000000), Rational(1, 72));
    EXPECT_EQ(rationalize(x72, 1000000), Rational(1, 72));

    EXPECT_EQ(rationalize(MPComplex(MpReal::parse("0.5", 50)), 1000000), Rational(1, 2));

    const std::string d23 = decimal_expansion(2, 3, 50);
    const Rational exact23(mpz_class(d23.substr(2), 10), mpz_class("1" + std::string(50, '0'), 10));
    EXPECT_EQ(best_convergent(exact23, 1000000), Rational(2, 3));
    EXPECT_EQ(rationalize(MPComplex(MpReal::parse(d23, 50)), 1000000), Rational(2, 3));

    EXPECT_THROW(rationalize(MPComplex(MpReal::parse("0.5", 50), MpReal::parse("0.1", 50)), 1000), NotRationalError);
}
