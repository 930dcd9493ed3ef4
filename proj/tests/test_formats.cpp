#include <catch2/catch.hpp>

#include "mop/json_io.hpp"

using namespace mop;

TEST_CASE("rational parsing", "[formats]") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("4/6") == Rational(2, 3)); // canonicalized
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("7") == 7);
    CHECK(rational_to_string(Rational(-5, 9)) == "-5/9");
    CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
    CHECK_THROWS_AS(parse_rational("x"), FormatError);
    CHECK_THROWS_AS(parse_rational(""), FormatError);
    CHECK_THROWS_AS(parse_rational("1/"), FormatError);
}

TEST_CASE("decimal round trip at recorded precision", "[formats][property]") {
    PrecisionScope scope(192);
    BigFloat x = boost::multiprecision::sqrt(BigFloat(2)) / 7;
    std::string s = to_decimal_string(x);
    BigFloat y = bigfloat_from_string(s);
    CHECK(x == y);

    BigFloat tiny = pow2(-190) * 3;
    CHECK(bigfloat_from_string(to_decimal_string(tiny)) == tiny);
}

TEST_CASE("measure json round trip", "[formats]") {
    std::vector<MeasureSpec> all{
        MeasureSpec::lebesgue_unit(), MeasureSpec::log_weight(2),
        MeasureSpec::hermite_external(Rational(-1, 2), Rational(3)),
        MeasureSpec::moment_table({Rational(1), Rational(2, 7)})};
    for (const auto &m : all) {
        MeasureSpec back = measure_from_json(measure_to_json(m));
        CHECK(back.kind_name() == m.kind_name());
        if (!m.is_table())
            for (std::size_t k = 0; k < 6; ++k)
                CHECK(moment(back, k) == moment(m, k));
        else
            CHECK(moment(back, 1) == moment(m, 1));
    }
    CHECK_THROWS_AS(measure_from_json(json{{"kind", "nope"}}), FormatError);
    CHECK_THROWS_AS(measure_from_json(json::array()), FormatError);

    json arr = json::array(
        {measure_to_json(all[0]), measure_to_json(all[1])});
    CHECK(measures_from_json(arr).size() == 2);
}

TEST_CASE("polynomial json round trip", "[formats]") {
    Polynomial<Rational> p({Rational(1, 6), Rational(-1), Rational(1)});
    json j = poly_to_json(p);
    CHECK(j["domain"] == "rational");
    CHECK(poly_from_json<Rational>(j) == p);
    CHECK_THROWS_AS(poly_from_json<BigFloat>(j), FormatError); // domain guard

    PrecisionScope scope(128);
    Polynomial<BigComplex> pc(std::vector<BigComplex>{
        BigComplex(BigFloat(1) / 3, BigFloat(-2)), BigComplex(BigFloat(1))});
    json jc = poly_to_json(pc);
    Polynomial<BigComplex> back = poly_from_json<BigComplex>(jc);
    CHECK(back.coeff(0) == pc.coeff(0));
    CHECK(back.coeff(1) == pc.coeff(1));
}

TEST_CASE("series json round trip", "[formats]") {
    auto f = cauchy_series(MeasureSpec::log_weight(1), 5);
    json j = series_to_json(f);
    auto back = series_from_json<Rational>(j);
    CHECK(back.tail == f.tail);
    CHECK(back.poly_part == f.poly_part);

    PrecisionScope scope(96);
    LaurentSeries<BigComplex> g;
    g.poly_part = Polynomial<BigComplex>(std::vector<BigComplex>{
        BigComplex(BigFloat(0), BigFloat(1)), BigComplex(BigFloat(2))});
    g.tail = {BigComplex(BigFloat(1) / 7, BigFloat(-1) / 9)};
    auto gb = series_from_json<BigComplex>(series_to_json(g));
    CHECK(gb.poly_part.coeff(0) == g.poly_part.coeff(0));
    CHECK(gb.tail[0] == g.tail[0]);
}

TEST_CASE("mixed spec from json", "[formats]") {
    json j;
    j["degree_caps"] = {1, 1};
    j["forms"] = json::array(
        {json{{"order", 1},
              {"terms", json::array({json{{"coeff", "1"},
                                          {"measure", 0},
                                          {"unknown", 0}},
                                     json{{"coeff", "-1"},
                                          {"measure", 1},
                                          {"unknown", 1}}})}},
         json{{"order", 1},
              {"terms", json::array({json{{"coeff", "1"},
                                          {"measure", 1},
                                          {"unknown", 0}},
                                     json{{"coeff", "-2"},
                                          {"measure", 2},
                                          {"unknown", 1}}})}}});
    j["point_constraints"] = json::array(
        {json{{"unknown", 0}, {"point", "1"}, {"value", "0"}}});
    j["solution_space"] = "one_dimensional";
    MixedSystemSpec spec = mixed_spec_from_json(j);
    auto polys = mixed_solve(spec, preset_apery_triple());
    CHECK(polys[0] ==
          Polynomial<Rational>(std::vector<Rational>{Rational(-4),
                                                     Rational(4)}));
    CHECK_THROWS_AS(mixed_spec_from_json(json{{"degree_caps", {1}}}),
                    FormatError);
}

TEST_CASE("type solutions serialize with metadata", "[formats]") {
    auto mu = preset_apery_pair();
    auto sol = type_ii(mu, MultiIndex({1, 1}));
    json j = type_ii_to_json(sol);
    CHECK(j["index"] == json::array({1, 1}));
    CHECK(j["poly"]["domain"] == "rational");
    CHECK(j["moments_normalized"] == false);

    auto he = preset_hermite_external({Rational(1), Rational(-1)}, Rational(1));
    auto sol_i = type_i(he, MultiIndex({1, 1}));
    json ji = type_i_to_json(sol_i);
    CHECK(ji["moments_normalized"] == true);
    CHECK(ji["normalization_value"] == "1");
}

TEST_CASE("curve from json", "[formats]") {
    json j;
    j["coeffs"] = json::array(
        {json::array({json::array({"1", "0"}), json::array({"0", "0"}),
                      json::array({"-1", "0"})}),
         json::array(),
         json::array({json::array({"1", "0"})})});
    j["branch"] = json{{"exponent", 1}, {"re", "1"}, {"im", "0"}};
    AlgebraicCurveSpec curve = curve_from_json(j, 128);
    auto res = algebraic_series(curve, 6, 128);
    CHECK(abs_value(res.series.poly_part.coeff(1) - BigComplex(BigFloat(1))) <
          pow2(-60));
}
