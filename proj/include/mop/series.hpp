#ifndef MOP_SERIES_HPP
#define MOP_SERIES_HPP

#include <vector>

#include "mop/measures.hpp"
#include "mop/polynomial.hpp"

namespace mop {

// Truncated expansion at infinity: poly_part(z) + sum_k tail[k] z^{-k-1}.
// Only coefficients that are actually known are stored; tail_at refuses to
// read past the truncation instead of returning silent zeros.
template <class S> struct LaurentSeries {
    Polynomial<S> poly_part;
    std::vector<S> tail;

    std::size_t valid_terms() const { return tail.size(); }

    const S &tail_at(std::size_t k) const {
        if (k >= tail.size())
            throw InsufficientTerms("series truncated before z^-" +
                                    std::to_string(k + 1));
        return tail[k];
    }
};

// Markov-function series of a measure: f(z) = sum moment_k z^{-k-1}.
inline LaurentSeries<Rational> cauchy_series(const MeasureSpec &spec,
                                             std::size_t terms) {
    if (terms < 1)
        throw DomainError("cauchy_series: need at least one term");
    LaurentSeries<Rational> f;
    f.tail = moment_prefix(spec, terms);
    return f;
}

template <class From, class To>
LaurentSeries<To> convert_series(const LaurentSeries<From> &f) {
    LaurentSeries<To> g;
    g.poly_part = convert_poly<From, To>(f.poly_part);
    g.tail.reserve(f.tail.size());
    for (const auto &c : f.tail)
        g.tail.push_back(scalar_cast<To>(c));
    return g;
}

// p(z) * f(z), tracking how many product tail terms stay exact.
template <class S>
LaurentSeries<S> poly_times_series(const Polynomial<S> &p,
                                   const LaurentSeries<S> &f) {
    LaurentSeries<S> out;
    if (p.is_zero())
        return out;
    const std::size_t dp = static_cast<std::size_t>(p.degree());
    if (f.tail.size() < dp)
        throw InsufficientTerms("poly_times_series: series shorter than "
                                "polynomial degree");
    // polynomial part: p * poly_part plus the spill-over of p * tail
    Polynomial<S> spill;
    {
        std::vector<S> c(dp, S(0));
        for (std::size_t s = 0; s < dp; ++s) {
            S acc(0);
            for (std::size_t i = s + 1; i <= dp; ++i)
                acc += p.coeff(i) * f.tail[i - 1 - s];
            c[s] = acc;
        }
        spill = Polynomial<S>(std::move(c));
    }
    out.poly_part = p * f.poly_part + spill;
    const std::size_t valid = f.tail.size() - dp;
    out.tail.assign(valid, S(0));
    for (std::size_t s = 0; s < valid; ++s) {
        S acc(0);
        for (std::size_t i = 0; i <= dp; ++i)
            acc += p.coeff(i) * f.tail[s + i];
        out.tail[s] = acc;
    }
    return out;
}

template <class S>
LaurentSeries<S> series_add(const LaurentSeries<S> &a,
                            const LaurentSeries<S> &b) {
    LaurentSeries<S> out;
    out.poly_part = a.poly_part + b.poly_part;
    out.tail.assign(std::min(a.tail.size(), b.tail.size()), S(0));
    for (std::size_t k = 0; k < out.tail.size(); ++k)
        out.tail[k] = a.tail[k] + b.tail[k];
    return out;
}

template <class S>
LaurentSeries<S> series_sub_poly(LaurentSeries<S> f, const Polynomial<S> &p) {
    f.poly_part = f.poly_part - p;
    return f;
}

namespace detail {

// Dense truncated expansion around z = infinity in descending powers:
// sum_{t < len} c[t] z^{lead - t}, valid through exponent lead - len + 1.
// Workhorse for Newton iteration on algebraic branches.
template <class S> struct InfSeries {
    long lead = 0;
    std::vector<S> c; // c[0] multiplies z^lead

    std::size_t len() const { return c.size(); }
    long low_exp() const { return lead - static_cast<long>(c.size()) + 1; }

    S at_exp(long e) const {
        long t = lead - e;
        if (t < 0)
            return S(0);
        if (t >= static_cast<long>(c.size()))
            throw InsufficientTerms("InfSeries: exponent below truncation");
        return c[static_cast<std::size_t>(t)];
    }

    void truncate(std::size_t n) {
        if (c.size() > n)
            c.resize(n);
    }

    static InfSeries from_poly(const Polynomial<S> &p, std::size_t min_len) {
        InfSeries s;
        s.lead = p.degree() >= 0 ? p.degree() : 0;
        std::size_t n = std::max<std::size_t>(
            min_len, static_cast<std::size_t>(s.lead) + 1);
        s.c.assign(n, S(0));
        for (long t = 0; t <= s.lead; ++t)
            s.c[static_cast<std::size_t>(t)] = p.coeff(
                static_cast<std::size_t>(s.lead - t));
        return s;
    }

    static InfSeries from_laurent(const LaurentSeries<S> &f) {
        InfSeries s;
        long top = f.poly_part.degree() >= 0 ? f.poly_part.degree() : -1;
        s.lead = top >= 0 ? top : -1;
        long low = -static_cast<long>(f.tail.size());
        if (s.lead < low)
            s.lead = low;
        s.c.assign(static_cast<std::size_t>(s.lead - low + 1), S(0));
        for (long e = s.lead; e >= low; --e) {
            S v = e >= 0 ? f.poly_part.coeff(static_cast<std::size_t>(e))
                         : f.tail[static_cast<std::size_t>(-e - 1)];
            s.c[static_cast<std::size_t>(s.lead - e)] = v;
        }
        return s;
    }

    LaurentSeries<S> to_laurent() const {
        LaurentSeries<S> f;
        std::vector<S> poly(lead >= 0 ? static_cast<std::size_t>(lead) + 1 : 0,
                            S(0));
        long low = low_exp();
        for (long e = lead; e >= low; --e) {
            const S &v = c[static_cast<std::size_t>(lead - e)];
            if (e >= 0)
                poly[static_cast<std::size_t>(e)] = v;
            else {
                std::size_t k = static_cast<std::size_t>(-e - 1);
                if (f.tail.size() <= k)
                    f.tail.resize(k + 1, S(0));
                f.tail[k] = v;
            }
        }
        f.poly_part = Polynomial<S>(std::move(poly));
        return f;
    }
};

template <class S>
InfSeries<S> add(const InfSeries<S> &a, const InfSeries<S> &b) {
    InfSeries<S> out;
    out.lead = std::max(a.lead, b.lead);
    long low = std::max(a.low_exp(), b.low_exp());
    if (low > out.lead)
        low = out.lead; // degenerate; keep one term
    out.c.assign(static_cast<std::size_t>(out.lead - low + 1), S(0));
    for (long e = out.lead; e >= low; --e) {
        S v(0);
        if (e <= a.lead && e >= a.low_exp())
            v += a.c[static_cast<std::size_t>(a.lead - e)];
        if (e <= b.lead && e >= b.low_exp())
            v += b.c[static_cast<std::size_t>(b.lead - e)];
        out.c[static_cast<std::size_t>(out.lead - e)] = v;
    }
    return out;
}

template <class S> InfSeries<S> negate(InfSeries<S> a) {
    for (auto &x : a.c)
        x = -x;
    return a;
}

template <class S>
InfSeries<S> mul(const InfSeries<S> &a, const InfSeries<S> &b) {
    InfSeries<S> out;
    out.lead = a.lead + b.lead;
    std::size_t n = std::min(a.len(), b.len());
    out.c.assign(n, S(0));
    for (std::size_t i = 0; i < a.len() && i < n; ++i) {
        if (scalar_traits<S>::is_zero(a.c[i]))
            continue;
        for (std::size_t j = 0; j < b.len() && i + j < n; ++j)
            out.c[i + j] += a.c[i] * b.c[j];
    }
    return out;
}

template <class S> InfSeries<S> scale(InfSeries<S> a, const S &s) {
    for (auto &x : a.c)
        x = x * s;
    return a;
}

// Multiplicative inverse; requires a nonzero leading coefficient.
template <class S> InfSeries<S> inverse(const InfSeries<S> &a) {
    if (a.len() == 0 || scalar_traits<S>::is_zero(a.c[0]))
        throw DomainError("InfSeries inverse: zero leading coefficient");
    InfSeries<S> out;
    out.lead = -a.lead;
    out.c.assign(a.len(), S(0));
    out.c[0] = S(1) / a.c[0];
    for (std::size_t t = 1; t < a.len(); ++t) {
        S acc(0);
        for (std::size_t u = 1; u <= t && u < a.len(); ++u)
            acc += a.c[u] * out.c[t - u];
        out.c[t] = -acc / a.c[0];
    }
    return out;
}

} // namespace detail

} // namespace mop

#endif // MOP_SERIES_HPP
