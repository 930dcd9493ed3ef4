#ifndef MOP_POLYNOMIAL_HPP
#define MOP_POLYNOMIAL_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "mop/scalars.hpp"

namespace mop {

// Dense univariate polynomial, coefficients stored low-to-high. The zero
// polynomial has an empty coefficient vector and degree -1. Exact zeros are
// trimmed from the top on construction; float coefficients are never trimmed
// by magnitude here.
template <class S> class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) {
        trim();
    }
    static Polynomial constant(const S &v) {
        return Polynomial(std::vector<S>{v});
    }
    // x^k with coefficient c
    static Polynomial monomial(std::size_t k, const S &c) {
        std::vector<S> v(k + 1, S(0));
        v[k] = c;
        return Polynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<S> &coeffs() const { return c_; }

    // Coefficient of x^k; zero beyond the stored range.
    S coeff(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }

    S leading() const { return c_.empty() ? S(0) : c_.back(); }

    template <class X> X evaluate(const X &x) const {
        X acc(0);
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + scalar_cast<X>(c_[i]);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1)
            return {};
        std::vector<S> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * S(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    // multiply by x^k
    Polynomial shift_up(std::size_t k) const {
        if (is_zero())
            return {};
        std::vector<S> v(c_.size() + k, S(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            v[i + k] = c_[i];
        return Polynomial(std::move(v));
    }

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b) {
        std::vector<S> v(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial &a, const Polynomial &b) {
        std::vector<S> v(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial &a) {
        std::vector<S> v = a.c_;
        for (auto &x : v)
            x = -x;
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<S> v(a.c_.size() + b.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial &a, const S &s) {
        std::vector<S> v = a.c_;
        for (auto &x : v)
            x = x * s;
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const S &s, const Polynomial &a) {
        return a * s;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Polynomial &a, const Polynomial &b) {
        return !(a == b);
    }

    Polynomial monic() const {
        if (is_zero())
            return {};
        S inv = S(1) / c_.back();
        return *this * inv;
    }

    std::string pretty(const std::string &var = "x") const;

  private:
    void trim() {
        while (!c_.empty() && scalar_traits<S>::is_zero(c_.back()))
            c_.pop_back();
    }
    std::vector<S> c_;
};

namespace detail {
inline std::string coeff_str(const Rational &q) { return q.str(); }
inline std::string coeff_str(const BigFloat &x) {
    return x.str(8, std::ios_base::fmtflags(0));
}
inline std::string coeff_str(const BigComplex &z) {
    std::ostringstream os;
    os << "(" << z.re.str(8, std::ios_base::fmtflags(0)) << (z.im < 0 ? "" : "+")
       << z.im.str(8, std::ios_base::fmtflags(0)) << "i)";
    return os.str();
}
} // namespace detail

template <class S>
std::string Polynomial<S>::pretty(const std::string &var) const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (scalar_traits<S>::is_zero(c_[i]))
            continue;
        std::string cs = detail::coeff_str(c_[i]);
        if (!first) {
            if (!cs.empty() && cs[0] == '-') {
                os << " - ";
                cs = cs.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        if (i == 0) {
            os << cs;
        } else {
            if (cs != "1") {
                if (cs == "-1")
                    os << "-";
                else
                    os << cs << "*";
            }
            os << var;
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

template <class S>
std::ostream &operator<<(std::ostream &os, const Polynomial<S> &p) {
    return os << p.pretty();
}

// Scale a rational polynomial so that all coefficients are integers with
// content 1. The sign is left untouched.
inline Polynomial<Rational> integer_content_one(const Polynomial<Rational> &p) {
    if (p.is_zero())
        return p;
    Integer l(1);
    for (const auto &q : p.coeffs())
        l = boost::multiprecision::lcm(l, Integer(denominator(q)));
    Integer g(0);
    for (const auto &q : p.coeffs())
        g = boost::multiprecision::gcd(g, Integer(numerator(q) * l /
                                                  denominator(q)));
    Rational scale(l, g);
    return p * scale;
}

template <class From, class To>
Polynomial<To> convert_poly(const Polynomial<From> &p) {
    std::vector<To> v;
    v.reserve(p.coeffs().size());
    for (const auto &c : p.coeffs())
        v.push_back(scalar_cast<To>(c));
    return Polynomial<To>(std::move(v));
}

} // namespace mop

#endif // MOP_POLYNOMIAL_HPP
