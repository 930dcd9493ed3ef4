#ifndef MOP_MATRIX_HPP
#define MOP_MATRIX_HPP

#include <optional>
#include <vector>

#include "mop/scalars.hpp"

namespace mop {

// Dense row-major matrix over one scalar domain.
template <class S> class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, S(0)) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S &at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S &at(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<S> apply(const std::vector<S> &x) const {
        std::vector<S> y(rows_, S(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                y[i] += at(i, j) * x[j];
        return y;
    }

    friend bool operator==(const DenseMatrix &a, const DenseMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> e_;
};

template <class S> struct LinSolveResult {
    std::vector<S> x;
    typename scalar_traits<S>::magnitude_type residual_inf;
};

template <class S> struct DetResult {
    S value;
    typename scalar_traits<S>::magnitude_type error_bound;
};

inline unsigned current_precision_bits() {
    return static_cast<unsigned>(BigFloat::default_precision() * 3.3219);
}

namespace detail {

// Clear denominators row by row so fraction-free elimination runs on
// integers; returns the per-row scale factors.
inline std::vector<Integer> scale_rows_integral(DenseMatrix<Rational> &m) {
    std::vector<Integer> scales(m.rows(), Integer(1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l(1);
        for (std::size_t j = 0; j < m.cols(); ++j)
            l = boost::multiprecision::lcm(l, Integer(denominator(m.at(i, j))));
        for (std::size_t j = 0; j < m.cols(); ++j)
            m.at(i, j) *= Rational(l);
        scales[i] = l;
    }
    return scales;
}

// Fraction-free (Bareiss) forward elimination on an integral matrix with
// first-nonzero pivoting. Returns false when a column has no pivot. sign
// accumulates row-swap parity; after success m is upper triangular on the
// leading square block and m(k,k) holds the k-th leading principal minor of
// the scaled matrix.
inline bool bareiss_forward(DenseMatrix<Rational> &m, std::size_t n, int &sign) {
    Rational div_prev(1);
    sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m.at(piv, k).is_zero())
            ++piv;
        if (piv == n)
            return false;
        if (piv != k) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        const Rational pivot = m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < m.cols(); ++j)
                m.at(i, j) =
                    (m.at(i, j) * pivot - m.at(i, k) * m.at(k, j)) / div_prev;
            m.at(i, k) = Rational(0);
        }
        div_prev = pivot;
    }
    return !m.at(n - 1, n - 1).is_zero();
}

} // namespace detail

// Exact solve via fraction-free elimination. Deterministic: identical inputs
// give bit-identical outputs.
inline LinSolveResult<Rational> lin_solve(const DenseMatrix<Rational> &a,
                                          const std::vector<Rational> &b) {
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw DomainError("lin_solve: shape mismatch");
    const std::size_t n = a.rows();
    if (n == 0)
        return {{}, Rational(0)};
    DenseMatrix<Rational> m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = a.at(i, j);
        m.at(i, n) = b[i];
    }
    detail::scale_rows_integral(m);
    int sign = 0;
    if (!detail::bareiss_forward(m, n, sign))
        throw SingularSystem("lin_solve: exact elimination found no pivot");
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational sum = m.at(i, n);
        for (std::size_t j = i + 1; j < n; ++j)
            sum -= m.at(i, j) * x[j];
        x[i] = sum / m.at(i, i);
    }
    return {std::move(x), Rational(0)};
}

inline DetResult<Rational> det(const DenseMatrix<Rational> &a) {
    if (a.rows() != a.cols())
        throw DomainError("det: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0)
        return {Rational(1), Rational(0)};
    DenseMatrix<Rational> m = a;
    auto scales = detail::scale_rows_integral(m);
    int sign = 0;
    if (!detail::bareiss_forward(m, n, sign))
        return {Rational(0), Rational(0)};
    Rational d = m.at(n - 1, n - 1) * sign;
    for (const auto &s : scales)
        d /= Rational(s);
    return {d, Rational(0)};
}

namespace detail {

template <class S> BigFloat widened(const S &x, unsigned digits10);
template <> inline BigFloat widened<BigFloat>(const BigFloat &x,
                                              unsigned digits10) {
    BigFloat y = x;
    y.precision(digits10);
    return y;
}

inline BigComplex widened_c(const BigComplex &z, unsigned digits10) {
    return BigComplex(widened<BigFloat>(z.re, digits10),
                      widened<BigFloat>(z.im, digits10));
}

template <class S> S widen_any(const S &x, unsigned digits10) {
    if constexpr (std::is_same_v<S, BigFloat>)
        return widened<BigFloat>(x, digits10);
    else
        return widened_c(x, digits10);
}

// LU with partial pivoting; shared by the BigFloat and BigComplex domains.
// A pivot below 2^{-prec+8} relative to the largest initial entry is treated
// as structural singularity.
template <class S>
LinSolveResult<S> lu_solve_float(const DenseMatrix<S> &a,
                                 const std::vector<S> &b) {
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw DomainError("lin_solve: shape mismatch");
    const std::size_t n = a.rows();
    if (n == 0)
        return {{}, BigFloat(0)};
    const unsigned bits = current_precision_bits();
    DenseMatrix<S> m(n, n + 1);
    BigFloat max_entry(0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m.at(i, j) = a.at(i, j);
            BigFloat mag = abs_value(a.at(i, j));
            if (mag > max_entry)
                max_entry = mag;
        }
        m.at(i, n) = b[i];
    }
    if (max_entry.is_zero())
        max_entry = BigFloat(1);
    BigFloat pivot_floor = max_entry * pow2(-static_cast<long>(bits) + 8);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        BigFloat best = abs_value(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            BigFloat mag = abs_value(m.at(i, k));
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (best <= pivot_floor)
            throw SingularSystem("lin_solve: pivot below threshold");
        if (piv != k)
            for (std::size_t j = 0; j <= n; ++j)
                std::swap(m.at(k, j), m.at(piv, j));
        for (std::size_t i = k + 1; i < n; ++i) {
            S factor = m.at(i, k) / m.at(k, k);
            for (std::size_t j = k; j <= n; ++j)
                m.at(i, j) -= factor * m.at(k, j);
        }
    }
    std::vector<S> x(n);
    for (std::size_t i = n; i-- > 0;) {
        S sum = m.at(i, n);
        for (std::size_t j = i + 1; j < n; ++j)
            sum -= m.at(i, j) * x[j];
        x[i] = sum / m.at(i, i);
    }

    // residual at doubled precision
    unsigned d2 = bits_to_digits10(2 * bits);
    BigFloat resid(0);
    for (std::size_t i = 0; i < n; ++i) {
        S acc = widen_any(b[i], d2) * S(-1);
        for (std::size_t j = 0; j < n; ++j)
            acc += widen_any(a.at(i, j), d2) * widen_any(x[j], d2);
        BigFloat mag = abs_value(acc);
        if (mag > resid)
            resid = mag;
    }
    return {std::move(x), resid};
}

} // namespace detail

inline LinSolveResult<BigFloat> lin_solve(const DenseMatrix<BigFloat> &a,
                                          const std::vector<BigFloat> &b) {
    return detail::lu_solve_float(a, b);
}
inline LinSolveResult<BigComplex> lin_solve(const DenseMatrix<BigComplex> &a,
                                            const std::vector<BigComplex> &b) {
    return detail::lu_solve_float(a, b);
}

namespace detail {
template <class S> DetResult<S> det_float(const DenseMatrix<S> &a) {
    if (a.rows() != a.cols())
        throw DomainError("det: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0)
        return {S(1), BigFloat(0)};
    const unsigned bits = current_precision_bits();
    DenseMatrix<S> m = a;
    S d(1);
    BigFloat growth(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        BigFloat best = abs_value(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            BigFloat mag = abs_value(m.at(i, k));
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (best.is_zero())
            return {S(0), BigFloat(0)};
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m.at(k, j), m.at(piv, j));
            d = -d;
        }
        d *= m.at(k, k);
        growth *= best;
        for (std::size_t i = k + 1; i < n; ++i) {
            S factor = m.at(i, k) / m.at(k, k);
            for (std::size_t j = k; j < n; ++j)
                m.at(i, j) -= factor * m.at(k, j);
        }
    }
    BigFloat bound = growth * BigFloat(n * n) * pow2(-static_cast<long>(bits));
    return {d, bound};
}
} // namespace detail

inline DetResult<BigFloat> det(const DenseMatrix<BigFloat> &a) {
    return detail::det_float(a);
}
inline DetResult<BigComplex> det(const DenseMatrix<BigComplex> &a) {
    return detail::det_float(a);
}

// ---- exact reduced row echelon machinery (mixed systems, recurrence fits) --

struct RrefResult {
    DenseMatrix<Rational> reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

inline RrefResult rref(DenseMatrix<Rational> m) {
    RrefResult out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m.at(piv, c).is_zero())
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m.at(r, j), m.at(piv, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (std::size_t j = c; j < cols; ++j)
            m.at(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero())
                continue;
            Rational f = m.at(i, c);
            for (std::size_t j = c; j < cols; ++j)
                m.at(i, j) -= f * m.at(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = std::move(m);
    return out;
}

// Full solution structure of A x = b over the rationals.
struct AffineSolution {
    enum class Kind { Unique, Inconsistent, Underdetermined } kind;
    std::vector<Rational> particular;               // free variables set to 0
    std::vector<std::vector<Rational>> null_basis;  // one vector per free var
};

inline AffineSolution affine_solve(const DenseMatrix<Rational> &a,
                                   const std::vector<Rational> &b) {
    if (b.size() != a.rows())
        throw DomainError("affine_solve: shape mismatch");
    const std::size_t rows = a.rows(), n = a.cols();
    DenseMatrix<Rational> aug(rows, n + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug.at(i, j) = a.at(i, j);
        aug.at(i, n) = b[i];
    }
    RrefResult rr = rref(std::move(aug));
    AffineSolution out;
    for (std::size_t c : rr.pivot_cols)
        if (c == n) {
            out.kind = AffineSolution::Kind::Inconsistent;
            return out;
        }
    std::vector<bool> is_pivot(n, false);
    std::vector<std::size_t> pivot_row(n, 0);
    for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k) {
        is_pivot[rr.pivot_cols[k]] = true;
        pivot_row[rr.pivot_cols[k]] = k;
    }
    out.particular.assign(n, Rational(0));
    for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k)
        out.particular[rr.pivot_cols[k]] = rr.reduced.at(k, n);
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c])
            continue;
        std::vector<Rational> v(n, Rational(0));
        v[c] = Rational(1);
        for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k)
            v[rr.pivot_cols[k]] = -rr.reduced.at(k, c);
        out.null_basis.push_back(std::move(v));
    }
    out.kind = out.null_basis.empty() ? AffineSolution::Kind::Unique
                                      : AffineSolution::Kind::Underdetermined;
    return out;
}

} // namespace mop

#endif // MOP_MATRIX_HPP
