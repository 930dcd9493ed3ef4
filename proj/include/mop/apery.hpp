#ifndef MOP_APERY_HPP
#define MOP_APERY_HPP

#include <vector>

#include "mop/hermite_pade.hpp"
#include "mop/mopcore.hpp"

namespace mop {

// zeta(3) by the accelerated series (5/2) sum (-1)^{k-1} / (k^3 C(2k,k));
// successive terms shrink by more than 4x, so the tail is bounded by a third
// of the first omitted term.
inline BigFloat zeta3(unsigned precision_bits) {
    PrecisionScope scope(precision_bits + 32);
    BigFloat acc(0);
    Integer binom(2); // C(2k,k) at k = 1
    Integer k(1);
    const Rational cutoff(Integer(1),
                          Integer(1) << (precision_bits + 16));
    while (true) {
        Rational term(Integer(5), 2 * k * k * k * binom);
        if (k % 2 == 0)
            term = -term;
        acc += bigfloat_from_rational(term);
        if (boost::multiprecision::abs(term) < cutoff)
            break;
        binom = binom * 2 * (2 * k + 1) / (k + 1);
        ++k;
    }
    return acc;
}

// One step of the zeta(3) construction: (A, B) solve the two order-(n+1)
// conditions against (f1, f2, f3) plus A(1) = 0; C and D are the polynomial
// parts of A f1 - B f2 and A f2 - 2 B f3; the approximant evaluates the
// second relation at z = 1 where f3(1) = zeta(3).
struct AperyStep {
    unsigned n = 0;
    Polynomial<Rational> A, B, C, D;
    Rational approximant; // -D(1) / (2 B(1))
    BigFloat abs_error;
    long order_first = 0, order_second = 0; // both >= n+1
};

inline MixedSystemSpec apery_mixed_spec(unsigned n) {
    MixedSystemSpec spec;
    spec.degree_caps = {n, n};
    // integral x^k (A dmu1 - B dmu2) = 0, k = 0..n-1
    spec.forms.push_back({{{Rational(1), 0, 0}, {Rational(-1), 1, 1}}, n});
    // integral x^k (A dmu2 - 2 B dmu3) = 0, k = 0..n-1
    spec.forms.push_back({{{Rational(1), 1, 0}, {Rational(-2), 2, 1}}, n});
    spec.point_constraints.push_back({0, Rational(1), Rational(0)});
    spec.solution_space = MixedSystemSpec::Space::OneDimensional;
    return spec;
}

inline AperyStep apery_step(unsigned n, unsigned precision_bits) {
    auto mu = preset_apery_triple();
    std::vector<Polynomial<Rational>> ab =
        mixed_solve(apery_mixed_spec(n), mu);

    AperyStep step;
    step.n = n;
    step.A = ab[0];
    step.B = ab[1];

    const std::size_t terms = 2 * static_cast<std::size_t>(n) + 8;
    std::vector<LaurentSeries<Rational>> f{cauchy_series(mu[0], terms),
                                           cauchy_series(mu[1], terms),
                                           cauchy_series(mu[2], terms)};
    const Polynomial<Rational> minus_b = -step.B;
    const Polynomial<Rational> minus_2b = Rational(-2) * step.B;

    std::vector<LaurentSeries<Rational>> first{f[0], f[1]};
    std::vector<Polynomial<Rational>> first_coef{step.A, minus_b};
    step.C = detail::form_poly_part(first, first_coef);
    step.order_first = order_of_contact(first, first_coef, step.C);

    std::vector<LaurentSeries<Rational>> second{f[1], f[2]};
    std::vector<Polynomial<Rational>> second_coef{step.A, minus_2b};
    step.D = detail::form_poly_part(second, second_coef);
    step.order_second = order_of_contact(second, second_coef, step.D);

    Rational b1 = step.B.evaluate(Rational(1));
    if (b1.is_zero())
        throw NoSolution("apery_step: B(1) vanished");
    step.approximant = -step.D.evaluate(Rational(1)) / (2 * b1);

    PrecisionScope scope(2 * precision_bits);
    BigFloat z3 = zeta3(2 * precision_bits);
    BigFloat err =
        boost::multiprecision::abs(z3 - bigfloat_from_rational(step.approximant));
    err.precision(bits_to_digits10(precision_bits));
    step.abs_error = err;
    return step;
}

struct AperySequence {
    std::vector<AperyStep> steps;
    std::vector<BigFloat> error_ratios; // abs_error(n+1) / abs_error(n)
};

inline AperySequence apery_sequence(unsigned n_max, unsigned precision_bits) {
    if (n_max < 2)
        throw DomainError("apery_sequence: n_max must be >= 2");
    AperySequence out;
    for (unsigned n = 1; n <= n_max; ++n)
        out.steps.push_back(apery_step(n, precision_bits));
    PrecisionScope scope(precision_bits);
    for (std::size_t i = 0; i + 1 < out.steps.size(); ++i)
        out.error_ratios.push_back(out.steps[i + 1].abs_error /
                                   out.steps[i].abs_error);
    return out;
}

} // namespace mop

#endif // MOP_APERY_HPP
