#ifndef MOP_HERMITE_PADE_HPP
#define MOP_HERMITE_PADE_HPP

#include <climits>
#include <vector>

#include "mop/matrix.hpp"
#include "mop/mopcore.hpp"
#include "mop/roots.hpp"
#include "mop/series.hpp"

namespace mop {

// Type I Hermite-Pade data: sum_j A_j f_j - B = O(z^{-achieved_order}).
template <class S> struct HPTypeIResult {
    std::vector<Polynomial<S>> A;
    Polynomial<S> B;
    long achieved_order = 0;
    // true when every tail coefficient available for inspection vanished,
    // so achieved_order is only the truncation bound
    bool order_is_truncation_bound = false;
};

// Type II Hermite-Pade data: P f_j - Q_j = O(z^{-achieved_orders[j]}).
template <class S> struct HPTypeIIResult {
    Polynomial<S> P; // monic, degree |n|
    std::vector<Polynomial<S>> Q;
    std::vector<long> achieved_orders;
    std::vector<bool> order_is_truncation_bound;
};

namespace detail {

template <class S>
bool negligible(const S &value,
                const typename scalar_traits<S>::magnitude_type &scale) {
    if constexpr (scalar_traits<S>::is_exact) {
        (void)scale;
        return scalar_traits<S>::is_zero(value);
    } else {
        BigFloat tol = pow2(-static_cast<long>(current_precision_bits()) / 2);
        BigFloat floor = scale;
        if (floor < 1)
            floor = 1;
        return scalar_traits<S>::magnitude(value) <= tol * floor;
    }
}

// Tail of sum_j A_j f_j together with the cancellation scale per
// coefficient (the sum of absolute contributions, against which "zero" is
// judged in float domains).
template <class S> struct FormTail {
    std::vector<S> coeff;
    std::vector<typename scalar_traits<S>::magnitude_type> scale;
};

template <class S>
FormTail<S> form_tail(const std::vector<LaurentSeries<S>> &f,
                      const std::vector<Polynomial<S>> &a) {
    std::size_t limit = SIZE_MAX;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (a[j].is_zero())
            continue;
        std::size_t dj = static_cast<std::size_t>(a[j].degree());
        if (f[j].tail.size() < dj)
            throw InsufficientTerms("form_tail: series shorter than A degree");
        limit = std::min(limit, f[j].tail.size() - dj);
    }
    FormTail<S> out;
    if (limit == SIZE_MAX)
        return out; // all A_j zero
    out.coeff.assign(limit, S(0));
    out.scale.assign(limit, typename scalar_traits<S>::magnitude_type(0));
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (a[j].is_zero())
            continue;
        std::size_t dj = static_cast<std::size_t>(a[j].degree());
        for (std::size_t s = 0; s < limit; ++s)
            for (std::size_t i = 0; i <= dj; ++i) {
                out.coeff[s] += a[j].coeff(i) * f[j].tail[s + i];
                out.scale[s] += scalar_traits<S>::magnitude(a[j].coeff(i)) *
                                scalar_traits<S>::magnitude(f[j].tail[s + i]);
            }
    }
    return out;
}

// polynomial part of sum_j A_j f_j
template <class S>
Polynomial<S> form_poly_part(const std::vector<LaurentSeries<S>> &f,
                             const std::vector<Polynomial<S>> &a) {
    Polynomial<S> b;
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (a[j].is_zero())
            continue;
        b = b + poly_times_series(a[j], f[j]).poly_part;
    }
    return b;
}

template <class S>
std::vector<S> solve_hp_system(const DenseMatrix<S> &m,
                               const std::vector<S> &rhs,
                               const std::string &who) {
    try {
        return lin_solve(m, rhs).x;
    } catch (const SingularSystem &) {
        throw NonNormalIndex(who + ": coefficient system is singular");
    }
}

} // namespace detail

// Largest m with sum_j A_j f_j - B = O(z^{-m}), observed within the series
// truncation. Float domains treat a coefficient as zero when it is below
// 2^{-prec/2} relative to its cancellation scale at the ambient precision.
template <class S>
long order_of_contact(const std::vector<LaurentSeries<S>> &f,
                      const std::vector<Polynomial<S>> &a,
                      const Polynomial<S> &b) {
    if (f.size() != a.size())
        throw DomainError("order_of_contact: shape mismatch");
    detail::FormTail<S> tail = detail::form_tail(f, a);

    // a surviving polynomial-part mismatch means no decay at all
    Polynomial<S> mismatch = detail::form_poly_part(f, a) - b;
    for (const auto &c : mismatch.coeffs()) {
        typename scalar_traits<S>::magnitude_type scale(0);
        for (std::size_t s = 0; s < tail.scale.size(); ++s)
            if (tail.scale[s] > scale)
                scale = tail.scale[s];
        if (!detail::negligible(c, scale))
            return 0;
    }

    for (std::size_t s = 0; s < tail.coeff.size(); ++s)
        if (!detail::negligible(tail.coeff[s], tail.scale[s]))
            return static_cast<long>(s) + 1;
    throw InsufficientTerms(
        "order_of_contact: all available tail coefficients vanish");
}

// Type I Hermite-Pade approximation on series data. Functions with a nonzero
// polynomial part at infinity are handled by imposing the order conditions on
// their tails; B absorbs the polynomial parts back.
template <class S>
HPTypeIResult<S> hp_type_i(const std::vector<LaurentSeries<S>> &f,
                           const MultiIndex &n) {
    if (f.size() != n.dimension())
        throw DomainError("hp_type_i: series/index dimension mismatch");
    const std::size_t total = n.size();
    if (total == 0)
        throw NoSolution("hp_type_i: |n| = 0 cannot satisfy the normalization");
    for (std::size_t j = 0; j < f.size(); ++j)
        if (n.parts[j] > 0 && f[j].tail.size() < total + n.parts[j] - 1)
            throw InsufficientTerms("hp_type_i: series " + std::to_string(j) +
                                    " truncated before z^-" +
                                    std::to_string(total + n.parts[j] - 1));

    DenseMatrix<S> m(total, total);
    std::vector<S> rhs(total, S(0));
    rhs[total - 1] = S(1);
    std::size_t col = 0;
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t i = 0; i < n.parts[j]; ++i, ++col)
            for (std::size_t s = 0; s < total; ++s)
                m.at(s, col) = f[j].tail[s + i];
    std::vector<S> x = detail::solve_hp_system(m, rhs, "hp_type_i");

    HPTypeIResult<S> out;
    std::size_t off = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        std::vector<S> c(x.begin() + off, x.begin() + off + n.parts[j]);
        out.A.emplace_back(std::move(c));
        off += n.parts[j];
    }
    out.B = detail::form_poly_part(f, out.A);
    try {
        out.achieved_order = order_of_contact(f, out.A, out.B);
    } catch (const InsufficientTerms &) {
        detail::FormTail<S> tail = detail::form_tail(f, out.A);
        out.achieved_order = static_cast<long>(tail.coeff.size()) + 1;
        out.order_is_truncation_bound = true;
    }
    return out;
}

// Type II Hermite-Pade approximation: common monic denominator P, numerators
// Q_j = polynomial part of P f_j.
template <class S>
HPTypeIIResult<S> hp_type_ii(const std::vector<LaurentSeries<S>> &f,
                             const MultiIndex &n) {
    if (f.size() != n.dimension())
        throw DomainError("hp_type_ii: series/index dimension mismatch");
    const std::size_t total = n.size();
    HPTypeIIResult<S> out;
    for (std::size_t j = 0; j < f.size(); ++j)
        if (f[j].tail.size() < total + n.parts[j])
            throw InsufficientTerms("hp_type_ii: series " + std::to_string(j) +
                                    " truncated before z^-" +
                                    std::to_string(total + n.parts[j]));

    if (total == 0) {
        out.P = Polynomial<S>::constant(S(1));
    } else {
        DenseMatrix<S> m(total, total);
        std::vector<S> rhs(total, S(0));
        std::size_t row = 0;
        for (std::size_t j = 0; j < f.size(); ++j)
            for (std::size_t k = 0; k < n.parts[j]; ++k, ++row) {
                for (std::size_t c = 0; c < total; ++c)
                    m.at(row, c) = f[j].tail[k + c];
                rhs[row] = -f[j].tail[k + total];
            }
        std::vector<S> x = detail::solve_hp_system(m, rhs, "hp_type_ii");
        x.push_back(S(1));
        out.P = Polynomial<S>(std::move(x));
    }

    for (std::size_t j = 0; j < f.size(); ++j) {
        LaurentSeries<S> pf = poly_times_series(out.P, f[j]);
        out.Q.push_back(pf.poly_part);
        std::vector<LaurentSeries<S>> single{f[j]};
        std::vector<Polynomial<S>> aj{out.P};
        try {
            out.achieved_orders.push_back(
                order_of_contact(single, aj, pf.poly_part));
            out.order_is_truncation_bound.push_back(false);
        } catch (const InsufficientTerms &) {
            out.achieved_orders.push_back(
                static_cast<long>(f[j].tail.size()) -
                static_cast<long>(total) + 1);
            out.order_is_truncation_bound.push_back(true);
        }
    }
    return out;
}

// classical Pade approximant at infinity: the r = 1 case
template <class S>
HPTypeIIResult<S> pade(const LaurentSeries<S> &f, unsigned n) {
    return hp_type_ii(std::vector<LaurentSeries<S>>{f}, MultiIndex({n}));
}

// ------------------------------------------------------ algebraic expansion

// Curve sum_m coeffs[m](z) w^m = 0 together with the leading behavior
// w ~ coefficient * z^exponent of the branch to expand.
struct AlgebraicCurveSpec {
    std::vector<Polynomial<BigComplex>> coeffs; // index = power of w
    long branch_exponent = 1;
    BigComplex branch_coefficient;
};

struct AlgebraicSeriesResult {
    LaurentSeries<BigComplex> series;
    BigComplex branch_coefficient; // refined leading coefficient
    BigFloat residual_max;         // relative, over the checked coefficients
};

namespace detail {

inline void trim_effective_leading(InfSeries<BigComplex> &s) {
    BigFloat scale(0);
    for (const auto &c : s.c) {
        BigFloat m = abs_value(c);
        if (m > scale)
            scale = m;
    }
    BigFloat tol = scale * pow2(-static_cast<long>(current_precision_bits()) / 2);
    std::size_t drop = 0;
    while (drop + 1 < s.c.size() && abs_value(s.c[drop]) <= tol)
        ++drop;
    if (drop > 0) {
        s.c.erase(s.c.begin(), s.c.begin() + drop);
        s.lead -= static_cast<long>(drop);
    }
}

inline InfSeries<BigComplex>
eval_curve(const std::vector<InfSeries<BigComplex>> &cs,
           const InfSeries<BigComplex> &w) {
    InfSeries<BigComplex> acc = cs.back();
    for (std::size_t m = cs.size() - 1; m-- > 0;)
        acc = add(mul(acc, w), cs[m]);
    return acc;
}

inline InfSeries<BigComplex>
eval_curve_derivative(const std::vector<InfSeries<BigComplex>> &cs,
                      const InfSeries<BigComplex> &w) {
    // d/dw of sum c_m w^m, Horner form
    std::size_t top = cs.size() - 1;
    InfSeries<BigComplex> acc =
        scale(cs[top], BigComplex(BigFloat(static_cast<long>(top))));
    for (std::size_t m = top; m-- > 1;)
        acc = add(mul(acc, w),
                  scale(cs[m], BigComplex(BigFloat(static_cast<long>(m)))));
    return acc;
}

} // namespace detail

// Expand the chosen branch of an algebraic function at infinity by Newton
// iteration on truncated series, doubling the order each step.
inline AlgebraicSeriesResult algebraic_series(const AlgebraicCurveSpec &curve,
                                              std::size_t terms,
                                              unsigned precision_bits) {
    if (curve.coeffs.size() < 2)
        throw DomainError("algebraic_series: curve must involve w");
    if (curve.coeffs.back().is_zero())
        throw DomainError("algebraic_series: leading coefficient vanishes");
    if (terms < 1)
        throw DomainError("algebraic_series: need at least one term");
    const unsigned wbits = precision_bits + 64;
    PrecisionScope scope(wbits);
    const long K = curve.branch_exponent;

    // dominant balance at w ~ c z^K
    long top_deg = LONG_MIN;
    for (std::size_t m = 0; m < curve.coeffs.size(); ++m) {
        if (curve.coeffs[m].is_zero())
            continue;
        long d = curve.coeffs[m].degree() + static_cast<long>(m) * K;
        top_deg = std::max(top_deg, d);
    }
    std::vector<BigComplex> balance(curve.coeffs.size(), BigComplex(BigFloat(0)));
    for (std::size_t m = 0; m < curve.coeffs.size(); ++m) {
        if (curve.coeffs[m].is_zero())
            continue;
        if (curve.coeffs[m].degree() + static_cast<long>(m) * K == top_deg)
            balance[m] = scalar_cast<BigComplex>(curve.coeffs[m].leading());
    }
    Polynomial<BigComplex> balance_poly(std::move(balance));
    if (balance_poly.degree() < 1)
        throw NewtonDivergence(
            "algebraic_series: branch exponent inconsistent with the curve");

    RootSet balance_roots = poly_roots(balance_poly, wbits);
    std::size_t nearest = 0;
    BigFloat d1(-1), d2(-1);
    for (std::size_t i = 0; i < balance_roots.points.size(); ++i) {
        BigFloat d = abs_value(balance_roots.points[i] -
                               curve.branch_coefficient);
        if (d1 < 0 || d < d1) {
            d2 = d1;
            d1 = d;
            nearest = i;
        } else if (d2 < 0 || d < d2) {
            d2 = d;
        }
    }
    const BigFloat ambiguity_tol =
        pow2(-static_cast<long>(precision_bits) / 4);
    if (balance_roots.multiplicity[nearest] > 1)
        throw BranchAmbiguity(
            "algebraic_series: branches collide at leading order");
    if (d2 >= 0 && d2 - d1 <= ambiguity_tol * (1 + d1))
        throw BranchAmbiguity(
            "algebraic_series: seed does not separate two branches");
    const BigComplex c0 = balance_roots.points[nearest];

    const long lowest_exp = -static_cast<long>(terms);
    if (K < lowest_exp)
        throw DomainError("algebraic_series: truncation shorter than the "
                          "leading exponent");
    const std::size_t target_len = static_cast<std::size_t>(K - lowest_exp) + 1;

    detail::InfSeries<BigComplex> w;
    w.lead = K;
    w.c = {c0};
    std::vector<detail::InfSeries<BigComplex>> cs;
    for (const auto &p : curve.coeffs)
        cs.push_back(
            detail::InfSeries<BigComplex>::from_poly(p, target_len + 1));

    std::size_t len = 1;
    while (len < target_len) {
        len = std::min(2 * len, target_len);
        w.c.resize(len, BigComplex(BigFloat(0)));
        detail::InfSeries<BigComplex> fw = detail::eval_curve(cs, w);
        detail::InfSeries<BigComplex> dfw = detail::eval_curve_derivative(cs, w);
        detail::trim_effective_leading(dfw);
        if (dfw.len() == 0 || scalar_traits<BigComplex>::is_zero(dfw.c[0]))
            throw NewtonDivergence("algebraic_series: derivative vanished");
        detail::InfSeries<BigComplex> step =
            detail::mul(fw, detail::inverse(dfw));
        step.truncate(len);
        w = detail::add(w, detail::negate(step));
        w.truncate(len);
        if (w.lead != K) {
            // leading exponent must stay put; anything else means the
            // iteration left the branch
            throw NewtonDivergence("algebraic_series: leading exponent drifted");
        }
    }

    // residual check of the first `terms` coefficients, relative to the
    // largest term magnitude appearing in the curve evaluation
    detail::InfSeries<BigComplex> fw = detail::eval_curve(cs, w);
    BigFloat scale(0);
    {
        detail::InfSeries<BigComplex> pw = w; // running power of w
        for (std::size_t m = 0; m < cs.size(); ++m) {
            const detail::InfSeries<BigComplex> term =
                (m == 0) ? cs[0] : detail::mul(cs[m], pw);
            for (const auto &c : term.c) {
                BigFloat mag = abs_value(c);
                if (mag > scale)
                    scale = mag;
            }
            if (m + 1 < cs.size() && m > 0)
                pw = detail::mul(pw, w);
        }
        if (scale < 1)
            scale = 1;
    }
    BigFloat resid(0);
    std::size_t checked = std::min(fw.len(), terms);
    for (std::size_t t = 0; t < checked; ++t) {
        BigFloat mag = abs_value(fw.c[t]) / scale;
        if (mag > resid)
            resid = mag;
    }
    if (resid > pow2(-static_cast<long>(precision_bits) / 2))
        throw NewtonDivergence(
            "algebraic_series: residual failed the precision target");

    AlgebraicSeriesResult out;
    out.branch_coefficient = c0;
    out.residual_max = resid;
    LaurentSeries<BigComplex> lau = w.to_laurent();
    // round coefficients to the requested precision
    const unsigned digits = bits_to_digits10(precision_bits);
    for (auto &c : lau.tail) {
        c.re.precision(digits);
        c.im.precision(digits);
    }
    std::vector<BigComplex> pc = lau.poly_part.coeffs();
    for (auto &c : pc) {
        c.re.precision(digits);
        c.im.precision(digits);
    }
    lau.poly_part = Polynomial<BigComplex>(std::move(pc));
    out.series = std::move(lau);
    return out;
}

} // namespace mop

#endif // MOP_HERMITE_PADE_HPP
