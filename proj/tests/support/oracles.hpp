#ifndef MOP_TESTS_ORACLES_HPP
#define MOP_TESTS_ORACLES_HPP

// Test-only reference implementations, deliberately independent of the
// library's production code paths.

#include <cstdint>
#include <vector>

#include "mop/matrix.hpp"
#include "mop/measures.hpp"
#include "mop/polynomial.hpp"

namespace mop::tests {

// Determinant by recursive cofactor expansion.
inline Rational cofactor_det(const DenseMatrix<Rational> &m) {
    const std::size_t n = m.rows();
    if (n == 0)
        return Rational(1);
    if (n == 1)
        return m.at(0, 0);
    Rational acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero())
            continue;
        DenseMatrix<Rational> minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j)
                    continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Rational term = m.at(0, j) * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// Cramer's rule on top of the cofactor determinant.
inline std::vector<Rational> cramer_solve(const DenseMatrix<Rational> &a,
                                          const std::vector<Rational> &b) {
    Rational d = cofactor_det(a);
    std::vector<Rational> x(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        DenseMatrix<Rational> aj = a;
        for (std::size_t i = 0; i < a.rows(); ++i)
            aj.at(i, j) = b[i];
        x[j] = cofactor_det(aj) / d;
    }
    return x;
}

// Deterministic 64-bit LCG for property tests.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed * 2862933555777941757ULL + 1) {}
    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_ >> 16;
    }
    long next_in(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rational next_rational(long max_abs_num = 9, long max_den = 9) {
        long num = next_in(-max_abs_num, max_abs_num);
        long den = next_in(1, max_den);
        return Rational(num, den);
    }

  private:
    std::uint64_t state_;
};

// Monic orthogonal polynomials by Gram-Schmidt on the monomial basis, using
// only the moment sequence. Independent of the linear-system solver path.
inline std::vector<Polynomial<Rational>>
gram_schmidt_monic(const MeasureSpec &mu, std::size_t max_degree) {
    auto inner = [&](const Polynomial<Rational> &f,
                     const Polynomial<Rational> &g) {
        return integrate_poly_xk(mu, f * g, 0);
    };
    std::vector<Polynomial<Rational>> q;
    for (std::size_t k = 0; k <= max_degree; ++k) {
        Polynomial<Rational> xk = Polynomial<Rational>::monomial(k, Rational(1));
        Polynomial<Rational> p = xk;
        for (std::size_t j = 0; j < k; ++j)
            p = p - (inner(xk, q[j]) / inner(q[j], q[j])) * q[j];
        q.push_back(p);
    }
    return q;
}

// Monic shifted Legendre on [0,1] from the classical closed form
//   P_k(x) = sum_j C(k,j) C(k+j,j) (-1)^{k-j} x^j,  monic scale (k!)^2/(2k)!.
inline Polynomial<Rational> shifted_legendre_monic(std::size_t k) {
    auto binom = [](std::size_t n, std::size_t r) {
        Integer acc(1);
        for (std::size_t i = 0; i < r; ++i) {
            acc *= Integer(n - i);
            acc /= Integer(i + 1);
        }
        return acc;
    };
    std::vector<Rational> c(k + 1, Rational(0));
    for (std::size_t j = 0; j <= k; ++j) {
        Rational term(binom(k, j) * binom(k + j, j));
        if ((k - j) % 2 == 1)
            term = -term;
        c[j] = term;
    }
    Polynomial<Rational> p{std::vector<Rational>(c)};
    Integer num(1), den(1);
    for (std::size_t i = 1; i <= k; ++i)
        num *= Integer(i);
    num *= num;
    for (std::size_t i = 1; i <= 2 * k; ++i)
        den *= Integer(i);
    return p * Rational(num, den);
}

} // namespace mop::tests

#endif // MOP_TESTS_ORACLES_HPP
