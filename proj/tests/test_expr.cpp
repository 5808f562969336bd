#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "lagsob/expr.hpp"

using namespace lagsob::expr;

namespace {

double ev(const std::string& s, double x = 0.0) { return eval(parse(s), x); }

std::size_t error_position(const std::string& s) {
    try {
        parse(s);
    } catch (const parse_error& e) {
        return e.position();
    }
    ADD_FAILURE() << "expected parse_error for '" << s << "'";
    return std::string::npos;
}

}  // namespace

TEST(Tokenize, Examples) {
    const auto t = tokenize("x");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].kind, TokenKind::identifier);
    EXPECT_EQ(t[0].text, "x");

    const auto u = tokenize("3*cos(x)");
    const std::vector<TokenKind> kinds{TokenKind::number,     TokenKind::op,         TokenKind::identifier,
                                       TokenKind::left_paren, TokenKind::identifier, TokenKind::right_paren};
    ASSERT_EQ(u.size(), kinds.size());
    for (std::size_t i = 0; i < kinds.size(); ++i) EXPECT_EQ(u[i].kind, kinds[i]) << i;
    EXPECT_EQ(u[2].text, "cos");
    EXPECT_EQ(u[2].position, 2u);

    try {
        tokenize("1e\xE2\x88\x92" "3");
        FAIL() << "unicode minus accepted";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.position(), 2u);
        EXPECT_NE(std::string(e.what()).find("0xE2"), std::string::npos);
    }
}

TEST(Tokenize, Numbers) {
    for (const char* s : {"0", "12", "1.5", ".5", "2.", "1e3", "1E-3", "2.5e+10"}) {
        const auto t = tokenize(s);
        ASSERT_EQ(t.size(), 1u) << s;
        EXPECT_EQ(t[0].kind, TokenKind::number);
        EXPECT_EQ(t[0].text, s);
    }
    // 'e' without digits is the constant, not an exponent
    EXPECT_EQ(tokenize("2e").size(), 2u);
    EXPECT_EQ(tokenize("2e+").size(), 3u);
}

TEST(Tokenize, PositionsIncreaseAndSliceInput) {
    const std::string s = "  exp(-x) * (3*cos(x) - 2*(-1+x)*sin(x)) ";
    const auto t = tokenize(s);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) { EXPECT_GT(t[i].position, t[i - 1].position); }
        EXPECT_EQ(s.substr(t[i].position, t[i].text.size()), t[i].text);
        EXPECT_EQ(t[i].text.data(), s.data() + t[i].position);
    }
}

TEST(Parse, Examples) {
    EXPECT_EQ(ev("2+3*4^2"), 50.0);
    EXPECT_EQ(ev("exp(-x)*(3*cos(x) - 2*(-1+x)*sin(x))", 0.0), 3.0);
    EXPECT_NEAR(ev("10*x*cos(x)/(x+1)^3", 1.0), 10.0 * std::cos(1.0) / 8.0, 1e-15);
}

TEST(Parse, Precedence) {
    EXPECT_EQ(ev("-x^2", 3.0), -9.0);
    EXPECT_EQ(ev("(-x)^2", 3.0), 9.0);
    EXPECT_EQ(ev("2^3^2"), 512.0);
    EXPECT_EQ(ev("2^-1"), 0.5);
    EXPECT_EQ(ev("-2^-2"), -0.25);
    EXPECT_EQ(ev("8/4/2"), 1.0);
    EXPECT_EQ(ev("8-4-2"), 2.0);
    EXPECT_EQ(ev("2*-3"), -6.0);
    EXPECT_EQ(ev("1 - -1"), 2.0);
    EXPECT_EQ(ev("--x", 4.0), 4.0);
    EXPECT_NEAR(ev("pi"), M_PI, 0.0);
    EXPECT_NEAR(ev("e"), M_E, 0.0);
    EXPECT_EQ(parse("-x^2"), parse("-(x^2)"));
}

TEST(Parse, Errors) {
    EXPECT_EQ(error_position("2x"), 1u);     // implicit multiplication
    EXPECT_EQ(error_position("2 (x)"), 2u);  // likewise
    EXPECT_EQ(error_position(""), 0u);
    EXPECT_EQ(error_position("   "), 0u);
    EXPECT_EQ(error_position("1 +"), 3u);
    EXPECT_EQ(error_position("(1 + 2"), 6u);
    EXPECT_EQ(error_position("1 + 2)"), 5u);
    EXPECT_EQ(error_position("sin x"), 4u);
    EXPECT_EQ(error_position("foo(x)"), 0u);
    EXPECT_EQ(error_position("y + 1"), 0u);
    EXPECT_EQ(error_position("1,2"), 1u);
    EXPECT_EQ(error_position("*2"), 0u);
    EXPECT_EQ(error_position("sin()"), 4u);
}

TEST(Parse, DepthAndLengthLimits) {
    EXPECT_NO_THROW(parse(std::string(30, '(') + "x" + std::string(30, ')')));
    EXPECT_THROW(parse(std::string(5000, '(') + "x" + std::string(5000, ')')), parse_error);
    EXPECT_THROW(parse(std::string(100000, '-') + "x"), parse_error);
    std::string chain = "x";
    for (int i = 0; i < 6000; ++i) chain += "+1";
    EXPECT_THROW(parse(chain), parse_error);
    std::string ok = "x";
    for (int i = 0; i < 4000; ++i) ok += "+1";
    EXPECT_EQ(eval(parse(ok), 0.5), 4000.5);
}

TEST(Eval, Examples) {
    EXPECT_EQ(ev("x^2", 3.0), 9.0);
    EXPECT_NEAR(ev("sin(pi)", 17.0), 0.0, 1e-15);
    EXPECT_THROW(ev("1/x", 0.0), eval_error);
}

TEST(Eval, DomainErrorsCarryContext) {
    try {
        ev("1 + ln(x - 2)", 1.5);
        FAIL();
    } catch (const eval_error& e) {
        EXPECT_EQ(e.x(), 1.5);
        EXPECT_EQ(e.subexpression(), "ln(x - 2)");
    }
    EXPECT_THROW(ev("sqrt(x)", -1.0), eval_error);
    EXPECT_THROW(ev("ln(0)"), eval_error);
    EXPECT_THROW(ev("(-8)^(1/3)"), eval_error);
    EXPECT_THROW(ev("exp(1000)"), eval_error);
    EXPECT_EQ(ev("sqrt(x)", 0.0), 0.0);
    EXPECT_EQ(ev("abs(x)", -2.5), 2.5);
    EXPECT_NEAR(ev("tan(x)", 0.3), std::tan(0.3), 0.0);
}

TEST(RoundTrip, Corpus) {
    const char* corpus[] = {
        "x",
        "1",
        "0.1",
        "1e-300",
        "1e999",
        "pi",
        "e",
        "-x",
        "--x",
        "-x^2",
        "(-x)^2",
        "x^2^3",
        "(x^2)^3",
        "x^-2",
        "x^(-2)",
        "x^(1/2)",
        "2^-x^2",
        "1-2-3",
        "1-(2-3)",
        "1/2/3",
        "1/(2/3)",
        "1/(2*3)",
        "1*(2/3)",
        "(1+2)*3",
        "1+2*3",
        "-(1+2)",
        "-(x*2)",
        "2*-x",
        "x - -x",
        "sin(x)",
        "cos(x)^2 + sin(x)^2",
        "exp(-x)*(3*cos(x) - 2*(-1+x)*sin(x))",
        "10*x*cos(x)/(x+1)^3",
        "10*((7 + x*(-3 + x*(3 + x)))*cos(x) - 2*(-1 + x + 2*x^2)*sin(x))/(x + 1)^5",
        "x*cos(x)*exp(-x)",
        "sqrt(abs(x))",
        "ln(1 + x^2)",
        "tan(x/2)",
        "exp(exp(exp(x)))",
        "abs(-x)",
        "-sin(-x)",
        "(x+1)*(x-1)*(x+2)",
        "x/(1+x/(1+x/(1+x)))",
        "2^(x+1)",
        "(2^x)^(x+1)",
        "-(-(-x))",
        "0.30000000000000004*x",
        "123456789.123456789",
        "e^x - pi^-x",
        "x*e*pi",
        "((((x))))",
    };
    int n = 0;
    for (const char* s : corpus) {
        const Expr a = parse(s);
        const std::string printed = to_string(a);
        const Expr b = parse(printed);
        EXPECT_TRUE(a == b) << s << " -> " << printed;
        EXPECT_EQ(to_string(b), printed);
        ++n;
    }
    EXPECT_GE(n, 50);
}

// Both printed right-hand sides and the rational solution against direct C++.
TEST(Eval, MatchesHandCodedFormulas) {
    const Expr f1 = parse("exp(-x)*(3*cos(x) - 2*(-1+x)*sin(x))");
    const Expr f2 = parse("10*((7 + x*(-3 + x*(3 + x)))*cos(x) - 2*(-1 + x + 2*x^2)*sin(x))/(x + 1)^5");
    const Expr u2 = parse("10*x*cos(x)/(x+1)^3");
    const Expr u1 = parse("x*cos(x)*exp(-x)");
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> pick(0.0, 40.0);
    for (int i = 0; i < 100; ++i) {
        double x = pick(rng);
        if (x == 0.0) x = 1e-3;
        const double r1 = std::exp(-x) * (3.0 * std::cos(x) - 2.0 * (-1.0 + x) * std::sin(x));
        const double r2 = 10.0 * ((7.0 + x * (-3.0 + x * (3.0 + x))) * std::cos(x) -
                                  2.0 * (-1.0 + x + 2.0 * x * x) * std::sin(x)) /
                          std::pow(x + 1.0, 5);
        const double r3 = 10.0 * x * std::cos(x) / std::pow(x + 1.0, 3);
        const double r4 = x * std::cos(x) * std::exp(-x);
        EXPECT_NEAR(eval(f1, x), r1, 1e-14 * std::abs(r1)) << x;
        EXPECT_NEAR(eval(f2, x), r2, 1e-14 * std::abs(r2)) << x;
        EXPECT_NEAR(eval(u2, x), r3, 1e-14 * std::abs(r3)) << x;
        EXPECT_NEAR(eval(u1, x), r4, 1e-14 * std::abs(r4)) << x;
    }
}

// Random byte strings and random token soup: every input either parses (and then
// round-trips and evaluates or raises eval_error) or raises a positioned parse_error.
TEST(Fuzz, NeverCrashes) {
    std::mt19937_64 rng(1234567);
    const char* pieces[] = {"x", "1", "2.5", "1e3", "pi", "e", "+", "-", "*", "/", "^", "(", ")", ",", " ",
                            "sin", "cos", "tan", "exp", "ln", "sqrt", "abs", "(x)", "0", ".", "E", "foo"};
    constexpr int n_pieces = sizeof pieces / sizeof pieces[0];
    std::uniform_int_distribution<int> len(0, 24);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> piece(0, n_pieces - 1);
    int parsed = 0, rejected = 0;
    for (int i = 0; i < 100000; ++i) {
        std::string s;
        const int l = len(rng);
        if (i % 2) {
            for (int k = 0; k < l; ++k) s += static_cast<char>(byte(rng));
        } else {
            for (int k = 0; k < l; ++k) s += pieces[piece(rng)];
        }
        try {
            const Expr e = parse(s);
            ++parsed;
            const Expr again = parse(to_string(e));
            ASSERT_TRUE(e == again) << s;
            try {
                const double v = eval(e, 0.75);
                ASSERT_TRUE(std::isfinite(v));
            } catch (const eval_error&) {
            }
        } catch (const parse_error& err) {
            ++rejected;
            ASSERT_LE(err.position(), s.size()) << s;
        }
    }
    EXPECT_EQ(parsed + rejected, 100000);
    EXPECT_GT(parsed, 500);
}
