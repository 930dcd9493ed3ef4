#ifndef MOP_SCALARS_HPP
#define MOP_SCALARS_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "mop/errors.hpp"

namespace mop {

// Exact rational scalar (GMP-backed). All moment data and every exact-domain
// computation lives here; arithmetic is error-free.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Arbitrary-precision binary float (MPFR-backed, runtime precision).
using BigFloat = boost::multiprecision::mpfr_float;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 3;
}

// Scoped working precision for BigFloat/BigComplex computations. New values
// pick up the scope's precision; existing values keep theirs.
class PrecisionScope {
  public:
    explicit PrecisionScope(unsigned bits)
        : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionScope() { BigFloat::default_precision(saved_); }
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

  private:
    unsigned saved_;
};

// pow(2, -e) at current working precision.
inline BigFloat pow2(long e) {
    BigFloat one(1);
    return boost::multiprecision::ldexp(one, static_cast<int>(e));
}

inline BigFloat const_pi() {
    BigFloat pi(0);
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    return pi;
}

// Minimal complex scalar over an arbitrary real type. std::complex is not
// specified for user-defined types, and we only need field operations plus
// magnitudes.
template <class T> struct Complex {
    T re{}, im{};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(T(0)) {}
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Complex &operator+=(const Complex &o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex &operator-=(const Complex &o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex &operator*=(const Complex &o) {
        T r = re * o.re - im * o.im;
        T i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex &operator/=(const Complex &o) {
        T d = o.re * o.re + o.im * o.im;
        T r = (re * o.re + im * o.im) / d;
        T i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex &b) { return a += b; }
    friend Complex operator-(Complex a, const Complex &b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex &b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex &b) { return a /= b; }
    friend Complex operator-(Complex a) {
        a.re = -a.re;
        a.im = -a.im;
        return a;
    }
    friend bool operator==(const Complex &a, const Complex &b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Complex &a, const Complex &b) {
        return !(a == b);
    }

    Complex conj() const { return Complex(re, -im); }
    T norm_sq() const { return re * re + im * im; }

    friend std::ostream &operator<<(std::ostream &os, const Complex &z) {
        return os << "(" << z.re << (z.im < 0 ? "" : "+") << z.im << "i)";
    }
};

using BigComplex = Complex<BigFloat>;

// mpq -> mpfr at the current working precision. Deliberately routed through
// mpfr_set_q: boost's generic conversion is orders of magnitude slower, and
// catastrophically so when handed an expression template.
inline BigFloat bigfloat_from_rational(const Rational &q) {
    BigFloat x(0);
    mpfr_set_q(x.backend().data(), q.backend().data(), MPFR_RNDN);
    return x;
}

inline BigFloat abs_value(const Rational &q) {
    BigFloat x = bigfloat_from_rational(q);
    return boost::multiprecision::abs(x);
}
inline BigFloat abs_value(const BigFloat &x) {
    return boost::multiprecision::abs(x);
}
inline BigFloat abs_value(const BigComplex &z) {
    return boost::multiprecision::hypot(z.re, z.im);
}

// Runtime descriptor of a scalar domain; mirrors the compile-time choice of
// Rational / BigFloat / BigComplex for CLI dispatch and file formats.
struct ScalarDomain {
    enum class Kind { ExactRational, BigReal, BigComplex };
    Kind kind = Kind::ExactRational;
    unsigned precision_bits = 0; // >= 64 for the float kinds

    static ScalarDomain exact() { return {Kind::ExactRational, 0}; }
    static ScalarDomain real(unsigned bits) {
        require_bits(bits);
        return {Kind::BigReal, bits};
    }
    static ScalarDomain complex_(unsigned bits) {
        require_bits(bits);
        return {Kind::BigComplex, bits};
    }

    bool is_exact() const { return kind == Kind::ExactRational; }
    std::string name() const {
        switch (kind) {
        case Kind::ExactRational:
            return "rational";
        case Kind::BigReal:
            return "real";
        default:
            return "complex";
        }
    }

  private:
    static void require_bits(unsigned bits) {
        if (bits < 64)
            throw DomainError("float domains require precision >= 64 bits");
    }
};

template <class S> struct scalar_traits;

template <> struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    using magnitude_type = Rational;
    static Rational magnitude(const Rational &q) {
        return boost::multiprecision::abs(q);
    }
    static Rational from_rational(const Rational &q) { return q; }
    static bool is_zero(const Rational &q) { return q.is_zero(); }
    static std::string name() { return "rational"; }
};

template <> struct scalar_traits<BigFloat> {
    static constexpr bool is_exact = false;
    using magnitude_type = BigFloat;
    static BigFloat magnitude(const BigFloat &x) {
        return boost::multiprecision::abs(x);
    }
    static BigFloat from_rational(const Rational &q) {
        return bigfloat_from_rational(q);
    }
    static bool is_zero(const BigFloat &x) { return x.is_zero(); }
    static std::string name() { return "real"; }
};

template <> struct scalar_traits<BigComplex> {
    static constexpr bool is_exact = false;
    using magnitude_type = BigFloat;
    static BigFloat magnitude(const BigComplex &z) { return abs_value(z); }
    static BigComplex from_rational(const Rational &q) {
        return BigComplex(bigfloat_from_rational(q));
    }
    static bool is_zero(const BigComplex &z) {
        return z.re.is_zero() && z.im.is_zero();
    }
    static std::string name() { return "complex"; }
};

template <class S> S scalar_from_rational(const Rational &q) {
    return scalar_traits<S>::from_rational(q);
}

template <class To, class From> To scalar_cast(const From &x) {
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else if constexpr (std::is_same_v<From, Rational>) {
        return scalar_traits<To>::from_rational(x);
    } else if constexpr (std::is_same_v<From, BigFloat> &&
                         std::is_same_v<To, BigComplex>) {
        return BigComplex(x);
    } else {
        static_assert(std::is_same_v<To, From>, "unsupported scalar_cast");
    }
}

// "p/q" (or plain integer) parsing with explicit canonicalization; GMP's
// string constructor keeps 4/6 un-reduced and aborts on zero denominators.
inline Rational parse_rational(const std::string &text) {
    auto bad = [&] { throw FormatError("invalid rational: '" + text + "'"); };
    if (text.empty())
        bad();
    std::string num = text, den = "1";
    if (auto pos = text.find('/'); pos != std::string::npos) {
        num = text.substr(0, pos);
        den = text.substr(pos + 1);
    }
    auto check_int = [&](const std::string &s) {
        if (s.empty())
            bad();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            bad();
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                bad();
    };
    check_int(num);
    check_int(den);
    Integer n(num), d(den);
    if (d.is_zero())
        throw FormatError("zero denominator in rational: '" + text + "'");
    Rational q(n, d); // boost canonicalizes on (num, den) construction
    return q;
}

inline std::string rational_to_string(const Rational &q) { return q.str(); }

// Decimal serialization with enough digits to round-trip bit-exactly when
// re-parsed at the same precision.
inline std::string to_decimal_string(const BigFloat &x) {
    unsigned digits = static_cast<unsigned>(x.precision()) + 3;
    return x.str(digits, std::ios_base::scientific);
}

inline BigFloat bigfloat_from_string(const std::string &s) {
    try {
        return BigFloat(s);
    } catch (const std::exception &) {
        throw FormatError("invalid decimal number: '" + s + "'");
    }
}

} // namespace mop

#endif // MOP_SCALARS_HPP
