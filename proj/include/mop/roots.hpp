#ifndef MOP_ROOTS_HPP
#define MOP_ROOTS_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "mop/polynomial.hpp"
#include "mop/scalars.hpp"

namespace mop {

// All complex roots of a polynomial, with multiplicity. Tight clusters are
// collapsed to their centroid and reported with multiplicity > 1; exact
// multiplicity detection is out of scope.
struct RootSet {
    std::vector<BigComplex> points;     // length == degree
    std::vector<BigFloat> residuals;    // |p(point)| on the monic polynomial
    std::vector<int> multiplicity;      // cluster size per point
};

namespace detail {

inline void eval_poly_and_deriv(const std::vector<BigComplex> &c,
                                const BigComplex &z, BigComplex &p,
                                BigComplex &dp) {
    p = BigComplex(BigFloat(0));
    dp = BigComplex(BigFloat(0));
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
}

// Adams-style stopping scale: sum of |c_i| |z|^i, the natural roundoff level
// of Horner evaluation at z.
inline BigFloat eval_abs_bound(const std::vector<BigFloat> &absc,
                               const BigFloat &az) {
    BigFloat b(0);
    for (std::size_t i = absc.size(); i-- > 0;)
        b = b * az + absc[i];
    return b;
}

} // namespace detail

// Simultaneous (Aberth) iteration on the monic normalization, initialized on
// a circle of radius 1 + max|coefficient|, with a final per-root Newton
// polish for well-separated roots.
template <class S>
RootSet poly_roots(const Polynomial<S> &p, unsigned precision_bits) {
    if (p.degree() < 1)
        throw DomainError("poly_roots: degree must be >= 1");
    const unsigned wbits = 2 * precision_bits + 32;
    PrecisionScope scope(wbits);

    // monic complex coefficients at working precision
    Polynomial<BigComplex> pc = convert_poly<S, BigComplex>(p);
    std::vector<BigComplex> c = pc.coeffs();
    const BigComplex lead = c.back();
    if (scalar_traits<BigComplex>::is_zero(lead))
        throw DomainError("poly_roots: leading coefficient is zero");
    for (auto &ci : c)
        ci /= lead;

    // exact zero roots split off up front
    std::size_t zero_roots = 0;
    while (zero_roots + 1 < c.size() &&
           scalar_traits<BigComplex>::is_zero(c[zero_roots]))
        ++zero_roots;
    std::vector<BigComplex> cw(c.begin() + zero_roots, c.end());
    const std::size_t d = cw.size() - 1;

    std::vector<BigFloat> absc(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i)
        absc[i] = abs_value(cw[i]);

    std::vector<BigComplex> z(d);
    if (d > 0) {
        BigFloat radius(1);
        for (std::size_t i = 0; i < d; ++i)
            if (absc[i] > radius - 1)
                radius = 1 + absc[i];
        const BigFloat two_pi = 2 * const_pi();
        for (std::size_t k = 0; k < d; ++k) {
            BigFloat theta =
                two_pi * (BigFloat(static_cast<unsigned long>(k)) + BigFloat(1) / 8) /
                BigFloat(static_cast<unsigned long>(d));
            z[k] = BigComplex(radius * boost::multiprecision::cos(theta),
                              radius * boost::multiprecision::sin(theta));
        }
    }

    const BigFloat stop_eps = pow2(-static_cast<long>(wbits) + 4);
    std::vector<bool> done(d, false);
    const std::size_t max_iters = 400 + 20 * d;
    std::size_t it = 0;
    for (; it < max_iters && d > 0; ++it) {
        bool all_done = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i])
                continue;
            BigComplex pv, dv;
            detail::eval_poly_and_deriv(cw, z[i], pv, dv);
            BigFloat bound =
                detail::eval_abs_bound(absc, abs_value(z[i])) * stop_eps;
            if (abs_value(pv) <= bound) {
                done[i] = true;
                continue;
            }
            all_done = false;
            if (scalar_traits<BigComplex>::is_zero(dv)) {
                // nudge off the stationary point, deterministically
                z[i] += BigComplex(pow2(-8), pow2(-9));
                continue;
            }
            BigComplex newton = pv / dv;
            BigComplex sum(BigFloat(0));
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i)
                    continue;
                BigComplex diff = z[i] - z[j];
                if (scalar_traits<BigComplex>::is_zero(diff))
                    diff = BigComplex(pow2(-static_cast<long>(wbits)));
                sum += BigComplex(BigFloat(1)) / diff;
            }
            BigComplex denom = BigComplex(BigFloat(1)) - newton * sum;
            if (scalar_traits<BigComplex>::is_zero(denom)) {
                z[i] -= newton;
                continue;
            }
            z[i] -= newton / denom;
        }
        if (all_done)
            break;
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!done[i]) {
            BigComplex pv, dv;
            detail::eval_poly_and_deriv(cw, z[i], pv, dv);
            BigFloat bound =
                detail::eval_abs_bound(absc, abs_value(z[i])) * stop_eps * 64;
            if (abs_value(pv) > bound)
                throw NonConvergence(
                    "poly_roots: iteration budget exhausted at requested precision");
        }
    }

    // cluster detection at the requested precision's tolerance
    const BigFloat cluster_tol = pow2(-static_cast<long>(precision_bits) / 4);
    std::vector<int> cluster(d);
    for (std::size_t i = 0; i < d; ++i)
        cluster[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int i) {
        while (cluster[i] != i)
            i = cluster[i] = cluster[cluster[i]];
        return i;
    };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            BigFloat scale = 1 + abs_value(z[i]);
            if (abs_value(z[i] - z[j]) < cluster_tol * scale)
                cluster[find(static_cast<int>(i))] = find(static_cast<int>(j));
        }
    std::vector<int> csize(d, 0);
    for (std::size_t i = 0; i < d; ++i)
        ++csize[find(static_cast<int>(i))];

    // polish simple roots; replace clustered ones by their centroid
    for (std::size_t i = 0; i < d; ++i) {
        if (csize[find(static_cast<int>(i))] != 1)
            continue;
        for (int step = 0; step < 3; ++step) {
            BigComplex pv, dv;
            detail::eval_poly_and_deriv(cw, z[i], pv, dv);
            if (scalar_traits<BigComplex>::is_zero(dv))
                break;
            z[i] -= pv / dv;
        }
    }
    std::vector<BigComplex> centroid(d, BigComplex(BigFloat(0)));
    for (std::size_t i = 0; i < d; ++i) {
        int r = find(static_cast<int>(i));
        centroid[r] += z[i];
    }
    for (std::size_t i = 0; i < d; ++i) {
        int r = find(static_cast<int>(i));
        if (csize[r] > 1)
            z[i] = centroid[r] / BigComplex(BigFloat(csize[r]));
    }

    RootSet out;
    const unsigned report_digits = bits_to_digits10(precision_bits);
    const unsigned work_digits = bits_to_digits10(wbits);
    auto report = [&](const BigComplex &root, int mult) {
        BigComplex rounded(root);
        rounded.re.precision(report_digits);
        rounded.im.precision(report_digits);
        // residual of the point actually reported, not the internal iterate
        BigComplex wide(rounded);
        wide.re.precision(work_digits);
        wide.im.precision(work_digits);
        BigComplex pv, dv;
        detail::eval_poly_and_deriv(cw, wide, pv, dv);
        out.points.push_back(rounded);
        BigFloat resid = abs_value(pv);
        resid.precision(report_digits);
        out.residuals.push_back(resid);
        out.multiplicity.push_back(mult);
    };
    for (std::size_t i = 0; i < zero_roots; ++i)
        report(BigComplex(BigFloat(0)), static_cast<int>(zero_roots));
    for (std::size_t i = 0; i < d; ++i)
        report(z[i], csize[find(static_cast<int>(i))]);
    return out;
}

} // namespace mop

#endif // MOP_ROOTS_HPP
