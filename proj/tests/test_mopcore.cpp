#include <catch2/catch.hpp>

#include "mop/mopcore.hpp"
#include "support/oracles.hpp"

using namespace mop;
using mop::tests::Rng;

namespace {

Polynomial<Rational> poly(std::initializer_list<Rational> lowToHigh) {
    return Polynomial<Rational>(std::vector<Rational>(lowToHigh));
}

MixedSystemSpec apery_like_spec(std::size_t n) {
    MixedSystemSpec spec;
    spec.degree_caps = {n, n};
    spec.forms.push_back({{{Rational(1), 0, 0}, {Rational(-1), 1, 1}}, n});
    spec.forms.push_back({{{Rational(1), 1, 0}, {Rational(-2), 2, 1}}, n});
    spec.point_constraints.push_back({0, Rational(1), Rational(0)});
    spec.solution_space = MixedSystemSpec::Space::OneDimensional;
    return spec;
}

} // namespace

TEST_CASE("assemble_systems on lebesgue", "[mopcore]") {
    auto mu = preset_lebesgue();
    auto sys = assemble_systems(mu, MultiIndex({2}));
    CHECK(sys.m_type_ii.at(0, 0) == 1);
    CHECK(sys.m_type_ii.at(0, 1) == Rational(1, 2));
    CHECK(sys.m_type_ii.at(1, 0) == Rational(1, 2));
    CHECK(sys.m_type_ii.at(1, 1) == Rational(1, 3));
    CHECK(sys.rhs_type_ii ==
          std::vector<Rational>{Rational(-1, 3), Rational(-1, 4)});
    CHECK(sys.m_type_i == sys.m_type_ii.transpose());

    auto sys1 = assemble_systems(mu, MultiIndex({1}));
    CHECK(sys1.m_type_ii.at(0, 0) == 1);
    CHECK(sys1.rhs_type_ii == std::vector<Rational>{Rational(-1, 2)});
}

TEST_CASE("transpose identity on randomized instances", "[mopcore][property]") {
    Rng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + static_cast<std::size_t>(rng.next_in(0, 2));
        std::vector<unsigned> parts(r);
        for (auto &p : parts)
            p = static_cast<unsigned>(rng.next_in(0, 3));
        if (std::accumulate(parts.begin(), parts.end(), 0u) == 0)
            parts[0] = 1;
        MultiIndex n(parts);
        std::vector<MeasureSpec> mu;
        for (std::size_t j = 0; j < r; ++j) {
            std::vector<Rational> values;
            for (std::size_t k = 0; k < 2 * n.size() + 2; ++k)
                values.push_back(rng.next_rational(12, 12));
            mu.push_back(MeasureSpec::moment_table(std::move(values)));
        }
        auto sys = assemble_systems(mu, n);
        CHECK(sys.m_type_i == sys.m_type_ii.transpose());
    }
}

TEST_CASE("type_ii basic solutions", "[mopcore]") {
    auto mu = preset_lebesgue();
    CHECK(type_ii(mu, MultiIndex({1})).poly ==
          poly({Rational(-1, 2), Rational(1)}));
    auto sol2 = type_ii(mu, MultiIndex({2}));
    CHECK(sol2.poly == poly({Rational(1, 6), Rational(-1), Rational(1)}));
    for (const auto &res : sol2.residuals)
        CHECK(res.is_zero());

    // |n| = 0 returns the constant 1
    CHECK(type_ii(mu, MultiIndex({0})).poly == poly({Rational(1)}));

    // duplicated measures are singular at (1,1)
    std::vector<MeasureSpec> dup{MeasureSpec::lebesgue_unit(),
                                 MeasureSpec::lebesgue_unit()};
    CHECK_THROWS_AS(type_ii(dup, MultiIndex({1, 1})), NonNormalIndex);
}

TEST_CASE("type_i basic solutions", "[mopcore]") {
    auto mu = preset_lebesgue();
    auto sol1 = type_i(mu, MultiIndex({1}));
    REQUIRE(sol1.polys.size() == 1);
    CHECK(sol1.polys[0] == poly({Rational(1)}));
    CHECK(sol1.normalization_value == 1);

    auto sol2 = type_i(mu, MultiIndex({2}));
    CHECK(sol2.polys[0] == poly({Rational(-6), Rational(12)}));

    auto pair = preset_apery_pair();
    auto sol11 = type_i(pair, MultiIndex({1, 1}));
    REQUIRE(sol11.polys.size() == 2);
    CHECK(sol11.polys[0] == poly({Rational(4)}));
    CHECK(sol11.polys[1] == poly({Rational(-4)}));
    CHECK(sol11.normalization_value == 1);

    CHECK_THROWS_AS(type_i(mu, MultiIndex({0})), NoSolution);
    std::vector<MeasureSpec> dup{MeasureSpec::lebesgue_unit(),
                                 MeasureSpec::lebesgue_unit()};
    CHECK_THROWS_AS(type_i(dup, MultiIndex({1, 1})), NonNormalIndex);
}

TEST_CASE("exactness of type I and type II across presets",
          "[mopcore][property]") {
    std::vector<std::vector<MeasureSpec>> systems{
        preset_lebesgue(), preset_apery_pair(), preset_apery_triple(),
        preset_hermite_external({Rational(1), Rational(-1)}, Rational(1))};
    for (const auto &mu : systems) {
        for (const auto &n : indices_up_to(mu.size(), 4, 1)) {
            auto p = type_ii(mu, n);
            CHECK(p.poly.degree() == static_cast<int>(n.size()));
            CHECK(p.poly.leading() == 1);
            for (const auto &res : p.residuals)
                CHECK(res.is_zero());
            auto a = type_i(mu, n);
            CHECK(a.normalization_value == 1);
            for (const auto &res : a.residuals)
                CHECK(res.is_zero());
            for (std::size_t j = 0; j < mu.size(); ++j)
                CHECK(a.polys[j].degree() < static_cast<int>(n.parts[j]));
        }
    }
}

TEST_CASE("normality and perfectness", "[mopcore]") {
    auto leb = preset_lebesgue();
    for (unsigned k = 1; k <= 6; ++k)
        CHECK(is_normal(leb, MultiIndex({k})));
    CHECK(perfectness_scan(leb, 6).empty());

    std::vector<MeasureSpec> dup{MeasureSpec::lebesgue_unit(),
                                 MeasureSpec::lebesgue_unit()};
    CHECK_FALSE(is_normal(dup, MultiIndex({1, 1})));
    auto failures = perfectness_scan(dup, 2);
    CHECK(std::find(failures.begin(), failures.end(), MultiIndex({1, 1})) !=
          failures.end());

    CHECK(perfectness_scan(preset_apery_pair(), 5).empty());
    for (const auto &n : indices_up_to(3, 4))
        CHECK(is_normal(preset_apery_triple(), n));

    CHECK_THROWS_AS(perfectness_scan(leb, 0), DomainError);
}

TEST_CASE("normality matches solver success", "[mopcore][property]") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rational> values;
        for (int k = 0; k < 10; ++k)
            values.push_back(rng.next_rational(3, 2));
        std::vector<MeasureSpec> mu{MeasureSpec::moment_table(values)};
        MultiIndex n({static_cast<unsigned>(1 + rng.next_in(0, 2))});
        bool normal = is_normal(mu, n);
        bool ii_ok = true, i_ok = true;
        try {
            type_ii(mu, n);
        } catch (const NonNormalIndex &) {
            ii_ok = false;
        }
        try {
            type_i(mu, n);
        } catch (const NonNormalIndex &) {
            i_ok = false;
        }
        CHECK(ii_ok == normal);
        CHECK(i_ok == normal);
    }
}

TEST_CASE("classical reduction to shifted Legendre", "[mopcore][oracle]") {
    auto mu = preset_lebesgue();
    auto gs = mop::tests::gram_schmidt_monic(mu[0], 8);
    for (unsigned k = 0; k <= 8; ++k) {
        auto sol = type_ii(mu, MultiIndex({k}));
        CHECK(sol.poly == gs[k]);
        CHECK(sol.poly == mop::tests::shifted_legendre_monic(k));
    }
}

TEST_CASE("float-domain type II matches exact", "[mopcore]") {
    auto mu = preset_apery_pair();
    MultiIndex n({2, 2});
    auto exact = type_ii(mu, n);
    auto fl = type_ii<BigFloat>(mu, n, 128);
    REQUIRE(fl.poly.degree() == exact.poly.degree());
    for (int i = 0; i <= exact.poly.degree(); ++i) {
        BigFloat diff = boost::multiprecision::abs(
            fl.poly.coeff(i) - BigFloat(exact.poly.coeff(i)));
        CHECK(diff < pow2(-64));
    }
    auto fi = type_i<BigFloat>(mu, n, 128);
    BigFloat nv = boost::multiprecision::abs(fi.normalization_value - 1);
    CHECK(nv < pow2(-64));

    std::vector<MeasureSpec> dup{MeasureSpec::lebesgue_unit(),
                                 MeasureSpec::lebesgue_unit()};
    CHECK_THROWS_AS(type_ii<BigFloat>(dup, MultiIndex({1, 1}), 128),
                    NonNormalIndex);
}

TEST_CASE("mixed solve reproduces the hand-derived degree-1 system",
          "[mopcore][mixed]") {
    // Null-space oracle, worked out by hand for the 3x4 homogeneous system:
    // rows ( (A,1)-(B,2) moments k=0 ), ( (A,2)-2(B,3) moments k=0 ), A(1)=0
    // give A = 4x - 4, B = -4x - 1 after content-1 scaling.
    auto polys = mixed_solve(apery_like_spec(1), preset_apery_triple());
    REQUIRE(polys.size() == 2);
    CHECK(polys[0] == poly({Rational(-4), Rational(4)}));
    CHECK(polys[1] == poly({Rational(-1), Rational(-4)}));
}

TEST_CASE("mixed solve degenerate and error paths", "[mopcore][mixed]") {
    CHECK_THROWS_AS(mixed_solve(apery_like_spec(0), preset_apery_triple()),
                    NoSolution);

    // declared unique but actually a one-dimensional space
    MixedSystemSpec bad = apery_like_spec(1);
    bad.solution_space = MixedSystemSpec::Space::Unique;
    CHECK_THROWS_AS(mixed_solve(bad, preset_apery_triple()), DomainError);

    // inhomogeneous one-dimensional declarations are rejected
    MixedSystemSpec inhom = apery_like_spec(1);
    inhom.point_constraints[0].value = Rational(1);
    CHECK_THROWS_AS(mixed_solve(inhom, preset_apery_triple()), DomainError);

    // solution space of dimension 2: no conditions at all on two unknowns
    MixedSystemSpec wide;
    wide.degree_caps = {0, 0};
    wide.point_constraints.push_back({0, Rational(1), Rational(0)});
    wide.solution_space = MixedSystemSpec::Space::OneDimensional;
    // A must vanish; B free -> dimension 1 but A identically zero
    CHECK_THROWS_AS(mixed_solve(wide, preset_lebesgue()), NoSolution);
}

TEST_CASE("mixed solve covers pure type II conditions", "[mopcore][mixed]") {
    auto mu = preset_lebesgue();
    MixedSystemSpec spec;
    spec.degree_caps = {2};
    spec.forms.push_back({{{Rational(1), 0, 0}}, 2});
    spec.solution_space = MixedSystemSpec::Space::OneDimensional;
    auto polys = mixed_solve(spec, mu);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0] == poly({Rational(1), Rational(-6), Rational(6)}));
    CHECK(polys[0].monic() == type_ii(mu, MultiIndex({2})).poly);
}

TEST_CASE("mixed solve normalization is integer content one",
          "[mopcore][mixed][property]") {
    for (std::size_t n = 1; n <= 15; ++n) {
        auto polys = mixed_solve(apery_like_spec(n), preset_apery_triple());
        Integer g(0);
        for (const auto &p : polys)
            for (const auto &c : p.coeffs()) {
                CHECK(denominator(c) == 1);
                g = boost::multiprecision::gcd(g, Integer(numerator(c)));
            }
        CHECK(g == 1);
        CHECK(polys[0].leading() > 0);
        CHECK(polys[0].evaluate(Rational(1)).is_zero());
    }
}

TEST_CASE("biorthogonality table", "[mopcore]") {
    auto mu = preset_lebesgue();
    CHECK(biortho_table(mu, MultiIndex({2}), MultiIndex({1})) == 1);
    CHECK(biortho_table(mu, MultiIndex({2}), MultiIndex({2})).is_zero());
    CHECK(biortho_table(mu, MultiIndex({1}), MultiIndex({1})).is_zero());
}

TEST_CASE("biorthogonality pattern on presets", "[mopcore][property]") {
    std::vector<std::vector<MeasureSpec>> systems{preset_lebesgue(),
                                                  preset_apery_pair()};
    for (const auto &mu : systems) {
        auto idx = indices_up_to(mu.size(), 5, 1);
        for (const auto &m : idx)
            for (const auto &n : idx) {
                Rational v = biortho_table(mu, m, n);
                bool all_le = true;
                for (std::size_t j = 0; j < mu.size(); ++j)
                    if (m.parts[j] > n.parts[j])
                        all_le = false;
                if (all_le)
                    CHECK(v.is_zero());
                if (m.size() == n.size() + 1) {
                    bool neighbor = false;
                    for (std::size_t j = 0; j < mu.size(); ++j)
                        if (m == n.incremented(j))
                            neighbor = true;
                    if (neighbor)
                        CHECK(v == 1);
                }
            }
    }
}

TEST_CASE("nearest-neighbor recurrence on lebesgue", "[mopcore][nnrec]") {
    auto mu = preset_lebesgue();
    auto rec1 = nn_recurrence(mu, MultiIndex({1}));
    CHECK(rec1.b == std::vector<Rational>{Rational(1, 2)});
    CHECK(rec1.a == std::vector<Rational>{Rational(1, 12)});
    CHECK(rec1.residual_poly.is_zero());

    auto rec0 = nn_recurrence(mu, MultiIndex({0}));
    CHECK(rec0.b == std::vector<Rational>{Rational(1, 2)});
    CHECK(rec0.a == std::vector<Rational>{Rational(0)});
    CHECK(rec0.residual_poly.is_zero());
}

TEST_CASE("nearest-neighbor recurrence on the apery pair",
          "[mopcore][nnrec][property]") {
    auto mu = preset_apery_pair();
    for (const auto &n : indices_up_to(2, 4)) {
        auto rec = nn_recurrence(mu, n);
        CHECK(rec.residual_poly.is_zero());
        // re-verify the identity for every direction from scratch
        auto pn = type_ii(mu, n).poly;
        for (std::size_t j = 0; j < 2; ++j) {
            auto lhs = pn.shift_up(1);
            auto rhs = type_ii(mu, n.incremented(j)).poly + rec.b[j] * pn;
            for (std::size_t i = 0; i < 2; ++i)
                if (n.parts[i] >= 1)
                    rhs = rhs + rec.a[i] * type_ii(mu, n.decremented(i)).poly;
            CHECK(lhs == rhs);
        }
    }
}
