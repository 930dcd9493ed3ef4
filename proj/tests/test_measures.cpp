#include <catch2/catch.hpp>

#include "mop/measures.hpp"
#include "mop/series.hpp"
#include "support/quadrature.hpp"

using namespace mop;

TEST_CASE("lebesgue moments", "[measures]") {
    auto mu = MeasureSpec::lebesgue_unit();
    CHECK(moment(mu, 0) == 1);
    CHECK(moment(mu, 4) == Rational(1, 5));
    for (std::size_t k = 0; k <= 100; ++k)
        CHECK(moment(mu, k) * Rational(Integer(k + 1)) == 1);
}

TEST_CASE("log weight moments", "[measures]") {
    auto m1 = MeasureSpec::log_weight(1);
    auto m2 = MeasureSpec::log_weight(2);
    for (std::size_t k = 0; k <= 24; ++k) {
        Integer kp1(k + 1);
        CHECK(moment(m1, k) == Rational(1, kp1 * kp1));
        CHECK(moment(m2, k) == Rational(1, kp1 * kp1 * kp1));
    }
    CHECK_THROWS_AS(MeasureSpec::log_weight(3), DomainError);
}

TEST_CASE("hermite external moments", "[measures]") {
    auto mu = MeasureSpec::hermite_external(Rational(0), Rational(1));
    CHECK(moment(mu, 0) == 1);
    CHECK(moment(mu, 2) == Rational(1, 2));
    for (std::size_t k = 1; k <= 21; k += 2)
        CHECK(moment(mu, k).is_zero()); // odd moments vanish when a = 0

    // a = 1: mu_1 = 1/2, mu_2 = 1/2*1/2 + 1/2 = 3/4
    auto mu1 = MeasureSpec::hermite_external(Rational(1), Rational(1));
    CHECK(moment(mu1, 1) == Rational(1, 2));
    CHECK(moment(mu1, 2) == Rational(3, 4));
    CHECK_THROWS_AS(MeasureSpec::hermite_external(Rational(1), Rational(0)),
                    DomainError);
}

TEST_CASE("moment table", "[measures]") {
    auto mu = MeasureSpec::moment_table(
        {Rational(1), Rational(1, 3), Rational(1, 7)});
    CHECK(moment(mu, 2) == Rational(1, 7));
    CHECK_THROWS_AS(moment(mu, 3), TableExhausted);
}

TEST_CASE("quadrature cross-check of closed-form moments",
          "[measures][quadrature]") {
    const unsigned bits = 96; // checked to 2^-48, integrated at 2x
    const unsigned qbits = 2 * bits;
    const BigFloat tol = pow2(-static_cast<long>(bits) / 2);

    SECTION("families on (0,1)") {
        struct Fam {
            MeasureSpec spec;
            int log_power; // 0 = lebesgue
        };
        std::vector<Fam> fams{{MeasureSpec::lebesgue_unit(), 0},
                              {MeasureSpec::log_weight(1), 1},
                              {MeasureSpec::log_weight(2), 2}};
        for (const auto &fam : fams) {
            for (std::size_t k = 0; k <= 20; k += (k < 4 ? 1 : 4)) {
                BigFloat approx = mop::tests::tanh_sinh_01(
                    [&](const BigFloat &x) {
                        BigFloat w(1);
                        if (fam.log_power == 1)
                            w = -boost::multiprecision::log(x);
                        else if (fam.log_power == 2) {
                            BigFloat lg = boost::multiprecision::log(x);
                            w = lg * lg / 2;
                        }
                        return mop::tests::pow_int(x, k) * w;
                    },
                    qbits);
                BigFloat exact(moment(fam.spec, k));
                CHECK(boost::multiprecision::abs(approx - exact) < tol);
            }
        }
    }

    SECTION("hermite external, normalized by m0") {
        Rational a(1), s(1);
        auto mu = MeasureSpec::hermite_external(a, s);
        PrecisionScope scope(qbits + 16);
        BigFloat af(a), sf(s);
        auto weight = [&](const BigFloat &x) {
            return boost::multiprecision::exp(-sf * (x * x - af * x));
        };
        BigFloat m0 = mop::tests::trapezoid_real_line(weight, af / 2, sf, qbits);
        for (std::size_t k = 0; k <= 20; k += (k < 4 ? 1 : 4)) {
            BigFloat mk = mop::tests::trapezoid_real_line(
                [&](const BigFloat &x) {
                    return mop::tests::pow_int(x, k) * weight(x);
                },
                af / 2, sf, qbits);
            BigFloat exact(moment(mu, k));
            CHECK(boost::multiprecision::abs(mk / m0 - exact) < tol);
        }
        // the hidden normalization constant itself
        BigFloat nc = normalization_constant(mu, qbits);
        CHECK(boost::multiprecision::abs(nc - m0) < tol * m0);
    }
}

TEST_CASE("cauchy series", "[measures][series]") {
    auto leb = cauchy_series(MeasureSpec::lebesgue_unit(), 3);
    CHECK(leb.poly_part.is_zero());
    REQUIRE(leb.tail.size() == 3);
    CHECK(leb.tail[0] == 1);
    CHECK(leb.tail[1] == Rational(1, 2));
    CHECK(leb.tail[2] == Rational(1, 3));

    auto lg = cauchy_series(MeasureSpec::log_weight(1), 3);
    CHECK(lg.tail == std::vector<Rational>{Rational(1), Rational(1, 4),
                                           Rational(1, 9)});

    auto table = MeasureSpec::moment_table({Rational(5), Rational(7, 2)});
    auto ts = cauchy_series(table, 2);
    CHECK(ts.tail == std::vector<Rational>{Rational(5), Rational(7, 2)});
    CHECK_THROWS_AS(cauchy_series(table, 3), TableExhausted);
    CHECK_THROWS_AS(cauchy_series(table, 0), DomainError);

    // definitional consistency, index by index
    for (const auto &spec :
         {MeasureSpec::lebesgue_unit(), MeasureSpec::log_weight(2),
          MeasureSpec::hermite_external(Rational(-1), Rational(2))}) {
        auto f = cauchy_series(spec, 12);
        for (std::size_t k = 0; k < 12; ++k)
            CHECK(f.tail_at(k) == moment(spec, k));
    }
    CHECK_THROWS_AS(leb.tail_at(3), InsufficientTerms);
}

TEST_CASE("weight values", "[measures]") {
    const unsigned bits = 128;
    auto leb = MeasureSpec::lebesgue_unit();
    CHECK(weight_value(leb, BigFloat(1) / 2, bits) == 1);
    CHECK_THROWS_AS(weight_value(leb, BigFloat(-1), bits), DomainError);

    PrecisionScope scope(bits + 16);
    auto lg = MeasureSpec::log_weight(1);
    BigFloat inv_e = boost::multiprecision::exp(BigFloat(-1));
    CHECK(boost::multiprecision::abs(weight_value(lg, inv_e, bits) - 1) <
          pow2(-100));
    auto lg2 = MeasureSpec::log_weight(2);
    CHECK(boost::multiprecision::abs(weight_value(lg2, inv_e, bits) -
                                     BigFloat(1) / 2) < pow2(-100));
    CHECK_THROWS_AS(weight_value(lg, BigFloat(1), bits), DomainError);

    auto he = MeasureSpec::hermite_external(Rational(0), Rational(1));
    CHECK(weight_value(he, BigFloat(0), bits) == 1);

    auto table = MeasureSpec::moment_table({Rational(1)});
    CHECK_THROWS_AS(weight_value(table, BigFloat(1) / 2, bits),
                    UnsupportedForTable);
}

TEST_CASE("presets", "[measures]") {
    CHECK(preset_lebesgue().size() == 1);
    auto pair = preset_apery_pair();
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].kind_name() == "lebesgue_unit");
    CHECK(pair[1].kind_name() == "log_weight");
    auto triple = preset_apery_triple();
    REQUIRE(triple.size() == 3);
    CHECK(moment(triple[2], 1) == Rational(1, 8));
    auto he = preset_hermite_external({Rational(1), Rational(-1)}, Rational(1));
    REQUIRE(he.size() == 2);
    CHECK(moment(he[0], 1) == Rational(1, 2));
    CHECK(moment(he[1], 1) == Rational(-1, 2));
}
