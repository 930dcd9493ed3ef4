#include <catch2/catch.hpp>

#include "mop/kernel.hpp"

using namespace mop;

TEST_CASE("lattice paths", "[kernel]") {
    MultiIndex n({2, 1});
    auto paths = all_paths(n);
    CHECK(paths.size() == 3); // C(3,1)
    for (const auto &p : paths) {
        CHECK(p.steps.size() == n.size() + 1);
        CHECK(p.target() == n);
    }
    auto canon = LatticePath::canonical(n);
    CHECK(canon.steps.size() == 4);
    CHECK(canon.steps[1] == MultiIndex({1, 0}));
    CHECK(canon.steps[2] == MultiIndex({2, 0}));

    CHECK_THROWS_AS(LatticePath::validated({MultiIndex({1, 0})}), DomainError);
    CHECK(all_paths(MultiIndex({3})).size() == 1); // r=1 path is unique
}

TEST_CASE("orthonormalize on lebesgue", "[kernel]") {
    auto basis = orthonormalize(MeasureSpec::lebesgue_unit(), 2);
    REQUIRE(basis.monic.size() == 3);
    CHECK(basis.monic[0] == Polynomial<Rational>::constant(Rational(1)));
    CHECK(basis.norm_sq[0] == 1);
    CHECK(basis.monic[1] ==
          Polynomial<Rational>(std::vector<Rational>{Rational(-1, 2),
                                                     Rational(1)}));
    CHECK(basis.norm_sq[1] == Rational(1, 12));
    // reconstructed integral of p_2^2 dmu equals 1 exactly in the
    // (monic, norm^2) representation
    auto mu = MeasureSpec::lebesgue_unit();
    Rational h2 = integrate_poly_xk(mu, basis.monic[2] * basis.monic[2], 0);
    CHECK(h2 == basis.norm_sq[2]);
}

TEST_CASE("christoffel-darboux kernel r=1", "[kernel]") {
    auto mu = MeasureSpec::lebesgue_unit();
    // K_2(x,y) = 1 + 12 (x - 1/2)(y - 1/2)
    Rational x(1, 3), y(2, 5);
    Rational expected =
        1 + 12 * (x - Rational(1, 2)) * (y - Rational(1, 2));
    CHECK(cd_kernel_r1(mu, 2, x, y) == expected);
    CHECK(cd_kernel_r1(mu, 1, x, y) == 1);

    // reproducing property: exact integration of K_n(x,.) against any
    // polynomial of degree < n returns that polynomial at x
    for (std::size_t n = 1; n <= 4; ++n) {
        DenseMatrix<Rational> b = cd_kernel_coefficients(mu, n);
        for (std::size_t d = 0; d < n; ++d) {
            Polynomial<Rational> target =
                Polynomial<Rational>::monomial(d, Rational(3)) +
                Polynomial<Rational>::constant(Rational(-1, 7));
            if (target.degree() >= static_cast<int>(n))
                continue;
            // integral K_n(x,y) target(y) dmu(y), coefficient-wise in x
            std::vector<Rational> out_coeffs(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l)
                    out_coeffs[i] += b.at(i, l) *
                                     integrate_poly_xk(
                                         mu, target.shift_up(l), 0);
            CHECK(Polynomial<Rational>(std::move(out_coeffs)) == target);
        }
    }
}

TEST_CASE("mop kernel trivial case", "[kernel]") {
    auto mu = preset_lebesgue();
    auto path = LatticePath::canonical(MultiIndex({1}));
    auto kv = mop_kernel(mu, path, BigFloat(1) / 3, BigFloat(1) / 2, 128);
    // K(x,y) = P_0(x) Q_1(y) = 1 * 1 * w(y) = 1
    PrecisionScope scope(128);
    CHECK(boost::multiprecision::abs(kv.value - 1) < pow2(-100));
    CHECK_FALSE(kv.weights_normalized);
}

TEST_CASE("mop kernel reduces to CD kernel for r=1", "[kernel]") {
    auto mu = preset_lebesgue();
    // structural identity: sum_k P_k(x) A_{k+1}(y) coefficients equal the CD
    // coefficient matrix, because A_{m} = monic_{m-1}/norm_sq_{m-1} and the
    // lebesgue weight is 1
    for (std::size_t n = 1; n <= 4; ++n) {
        auto path = LatticePath::canonical(MultiIndex({static_cast<unsigned>(n)}));
        KernelTensor t = kernel_tensor(mu, path);
        DenseMatrix<Rational> cd = cd_kernel_coefficients(mu[0], n);
        REQUIRE(t.per_weight.size() == 1);
        const auto &tw = t.per_weight[0];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                CHECK(tw.at(i, l) == cd.at(i, l));
    }
}

TEST_CASE("path independence, exact and numeric", "[kernel]") {
    std::vector<std::pair<BigFloat, BigFloat>> samples{
        {BigFloat(1) / 3, BigFloat(1) / 2}, {BigFloat(2) / 3, BigFloat(1) / 5}};

    auto pair = preset_apery_pair();
    auto rep = path_independence_check(pair, MultiIndex({1, 1}), samples, 160);
    CHECK(rep.path_count == 2);
    CHECK(rep.structural_deviation.is_zero());
    CHECK(rep.numeric_deviation < pow2(-100));

    auto rep2 = path_independence_check(pair, MultiIndex({2, 2}), samples, 160);
    CHECK(rep2.path_count == 6);
    CHECK(rep2.structural_deviation.is_zero());

    // r = 1: single path, zero by uniqueness
    auto rep1 = path_independence_check(preset_lebesgue(), MultiIndex({3}),
                                        samples, 128);
    CHECK(rep1.path_count == 1);
    CHECK(rep1.structural_deviation.is_zero());
}

TEST_CASE("path independence for multiple hermite", "[kernel]") {
    auto he = preset_hermite_external({Rational(1), Rational(-1)}, Rational(1));
    auto rep = path_independence_check(he, MultiIndex({2, 1}), {}, 128);
    CHECK(rep.path_count == 3);
    CHECK(rep.structural_deviation.is_zero());

    // numeric check on the real line, weights normalized by m_0
    std::vector<std::pair<BigFloat, BigFloat>> samples{
        {BigFloat(1) / 2, BigFloat(-1) / 3}};
    auto rep2 = path_independence_check(he, MultiIndex({1, 1}), samples, 160);
    CHECK(rep2.structural_deviation.is_zero());
    CHECK(rep2.numeric_deviation < pow2(-100));
    auto kv = mop_kernel(he, LatticePath::canonical(MultiIndex({1, 1})),
                         BigFloat(1) / 2, BigFloat(-1) / 3, 160);
    CHECK(kv.weights_normalized);
}

TEST_CASE("kernel over moment tables has no density", "[kernel]") {
    auto table = MeasureSpec::moment_table(moment_prefix(
        MeasureSpec::lebesgue_unit(), 12));
    std::vector<MeasureSpec> mu{table};
    auto path = LatticePath::canonical(MultiIndex({1}));
    CHECK_THROWS_AS(mop_kernel(mu, path, BigFloat(1) / 3, BigFloat(1) / 2, 64),
                    UnsupportedForTable);
    // structural check still fine without densities
    auto rep = path_independence_check(mu, MultiIndex({2}), {}, 64);
    CHECK(rep.structural_deviation.is_zero());
}
