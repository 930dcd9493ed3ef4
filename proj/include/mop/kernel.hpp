#ifndef MOP_KERNEL_HPP
#define MOP_KERNEL_HPP

#include <map>
#include <vector>

#include "mop/mopcore.hpp"

namespace mop {

// Monotone lattice path from the zero index to a target, one unit step per
// entry.
struct LatticePath {
    std::vector<MultiIndex> steps; // length |n| + 1

    static LatticePath validated(std::vector<MultiIndex> s) {
        if (s.empty())
            throw DomainError("LatticePath: empty");
        const std::size_t r = s.front().dimension();
        if (s.front().size() != 0)
            throw DomainError("LatticePath: must start at the zero index");
        for (std::size_t k = 0; k + 1 < s.size(); ++k) {
            if (s[k + 1].dimension() != r)
                throw DomainError("LatticePath: dimension changes");
            if (s[k + 1].size() != s[k].size() + 1)
                throw DomainError("LatticePath: step size must be 1");
            bool ok = false;
            for (std::size_t j = 0; j < r; ++j)
                if (s[k].incremented(j) == s[k + 1])
                    ok = true;
            if (!ok)
                throw DomainError("LatticePath: non-monotone step");
        }
        LatticePath p;
        p.steps = std::move(s);
        return p;
    }

    // component 1 first, then component 2, ...
    static LatticePath canonical(const MultiIndex &n) {
        std::vector<MultiIndex> s;
        MultiIndex cur = n;
        for (auto &p : cur.parts)
            p = 0;
        s.push_back(cur);
        for (std::size_t j = 0; j < n.dimension(); ++j)
            for (unsigned i = 0; i < n.parts[j]; ++i) {
                cur = cur.incremented(j);
                s.push_back(cur);
            }
        return validated(std::move(s));
    }

    const MultiIndex &target() const { return steps.back(); }
};

// every monotone path from 0 to n, in a deterministic order
inline std::vector<LatticePath> all_paths(const MultiIndex &n) {
    std::vector<LatticePath> out;
    std::vector<MultiIndex> cur;
    MultiIndex zero = n;
    for (auto &p : zero.parts)
        p = 0;
    cur.push_back(zero);
    auto rec = [&](auto &&self) -> void {
        const MultiIndex last = cur.back(); // copy: cur reallocates below
        if (last == n) {
            out.push_back(LatticePath::validated(cur));
            return;
        }
        for (std::size_t j = 0; j < n.dimension(); ++j) {
            if (last.parts[j] >= n.parts[j])
                continue;
            cur.push_back(last.incremented(j));
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

// ----------------------------------------------------------- classical r = 1

// Orthonormal polynomials stored with one square root kept symbolic:
// p_k = monic_k / sqrt(norm_sq_k), with monic_k and norm_sq_k exact.
struct OrthonormalBasis {
    std::vector<Polynomial<Rational>> monic;
    std::vector<Rational> norm_sq;
};

inline OrthonormalBasis orthonormalize(const MeasureSpec &mu,
                                       std::size_t degree) {
    OrthonormalBasis out;
    std::vector<MeasureSpec> single{mu};
    for (std::size_t k = 0; k <= degree; ++k) {
        Polynomial<Rational> q =
            type_ii(single, MultiIndex({static_cast<unsigned>(k)})).poly;
        Rational h = integrate_poly_xk(mu, q * q, 0);
        if (h <= 0)
            throw NonNormalIndex(
                "orthonormalize: moment matrix is not positive definite");
        out.monic.push_back(std::move(q));
        out.norm_sq.push_back(std::move(h));
    }
    return out;
}

// K_n(x,y) = sum_{k<n} p_k(x) p_k(y) as an exact coefficient matrix
// B[i][l] = sum_k monic_k[i] monic_k[l] / norm_sq_k. The weight prefactor of
// the GUE kernel is left to callers.
inline DenseMatrix<Rational> cd_kernel_coefficients(const MeasureSpec &mu,
                                                    std::size_t n) {
    if (n == 0)
        throw DomainError("cd_kernel: need n >= 1");
    OrthonormalBasis basis = orthonormalize(mu, n - 1);
    DenseMatrix<Rational> b(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto &q = basis.monic[k];
        for (std::size_t i = 0; i <= static_cast<std::size_t>(q.degree()); ++i)
            for (std::size_t l = 0; l <= static_cast<std::size_t>(q.degree());
                 ++l)
                b.at(i, l) += q.coeff(i) * q.coeff(l) / basis.norm_sq[k];
    }
    return b;
}

template <class X>
X cd_kernel_r1(const MeasureSpec &mu, std::size_t n, const X &x, const X &y) {
    DenseMatrix<Rational> b = cd_kernel_coefficients(mu, n);
    X acc(0);
    X xi(1);
    for (std::size_t i = 0; i < b.rows(); ++i) {
        X yl(1);
        for (std::size_t l = 0; l < b.cols(); ++l) {
            acc += scalar_cast<X>(b.at(i, l)) * xi * yl;
            yl = yl * y;
        }
        xi = xi * x;
    }
    return acc;
}

// ------------------------------------------------------------- MOP path sum

// K(x,y) = sum_{k<|n|} P_{n_k}(x) Q_{n_{k+1}}(y) with Q_m(y) =
// sum_j A_{m,j}(y) w_j(y). In the exact mixed basis {x^i, y^l w_j(y)} the
// kernel is the rational tensor T_j[i][l]; path independence is checked on
// that tensor, not on samples.
struct KernelTensor {
    std::vector<DenseMatrix<Rational>> per_weight; // T_j, j over measures
};

inline KernelTensor kernel_tensor(const std::vector<MeasureSpec> &mu,
                                  const LatticePath &path) {
    const MultiIndex &n = path.target();
    const std::size_t total = n.size();
    KernelTensor t;
    for (std::size_t j = 0; j < mu.size(); ++j)
        t.per_weight.emplace_back(total == 0 ? 1 : total,
                                  std::max<std::size_t>(n.parts[j], 1));
    for (std::size_t k = 0; k < total; ++k) {
        Polynomial<Rational> p = type_ii(mu, path.steps[k]).poly;
        TypeISolution<Rational> a = type_i(mu, path.steps[k + 1]);
        for (std::size_t j = 0; j < mu.size(); ++j) {
            const auto &aj = a.polys[j];
            if (aj.is_zero())
                continue;
            for (std::size_t i = 0;
                 i <= static_cast<std::size_t>(p.degree()); ++i)
                for (std::size_t l = 0;
                     l <= static_cast<std::size_t>(aj.degree()); ++l)
                    t.per_weight[j].at(i, l) += p.coeff(i) * aj.coeff(l);
        }
    }
    return t;
}

struct KernelValue {
    BigFloat value;
    BigFloat x, y;
    LatticePath path;
    bool weights_normalized = false; // hermite weights divided by m_0
};

// Numeric kernel value; weights are evaluated at twice the requested
// precision and divided by m_0 for the normalized-moment families, matching
// the measures actually used by the polynomial solves.
inline KernelValue mop_kernel(const std::vector<MeasureSpec> &mu,
                              const LatticePath &path, const BigFloat &x,
                              const BigFloat &y, unsigned precision_bits) {
    KernelTensor t = kernel_tensor(mu, path);
    const unsigned wbits = 2 * precision_bits;
    PrecisionScope scope(wbits);
    BigFloat acc(0);
    bool normalized = false;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        BigFloat w = weight_value(mu[j], y, wbits);
        if (mu[j].is_normalized_family()) {
            w /= normalization_constant(mu[j], wbits);
            normalized = true;
        }
        const auto &tj = t.per_weight[j];
        BigFloat inner(0);
        BigFloat xi(1);
        for (std::size_t i = 0; i < tj.rows(); ++i) {
            BigFloat yl(1);
            for (std::size_t l = 0; l < tj.cols(); ++l) {
                inner += bigfloat_from_rational(tj.at(i, l)) * xi * yl;
                yl *= y;
            }
            xi *= x;
        }
        acc += inner * w;
    }
    KernelValue out;
    acc.precision(bits_to_digits10(precision_bits));
    out.value = acc;
    out.x = x;
    out.y = y;
    out.path = path;
    out.weights_normalized = normalized;
    return out;
}

struct PathIndependenceReport {
    std::size_t path_count = 0;
    Rational structural_deviation;  // max |tensor difference|, exact
    BigFloat numeric_deviation;     // max |K_p1 - K_p2| over sample points
};

// Exact, coefficient-level comparison of the path-sum kernel across all
// monotone paths, plus a float spot check at the sample points.
inline PathIndependenceReport
path_independence_check(const std::vector<MeasureSpec> &mu, const MultiIndex &n,
                        const std::vector<std::pair<BigFloat, BigFloat>> &samples,
                        unsigned precision_bits) {
    std::vector<LatticePath> paths = all_paths(n);
    PathIndependenceReport report;
    report.path_count = paths.size();
    report.structural_deviation = Rational(0);
    report.numeric_deviation = BigFloat(0);

    std::vector<KernelTensor> tensors;
    tensors.reserve(paths.size());
    for (const auto &p : paths)
        tensors.push_back(kernel_tensor(mu, p));
    for (std::size_t a = 0; a + 1 < tensors.size(); ++a)
        for (std::size_t j = 0; j < mu.size(); ++j) {
            const auto &ta = tensors[a].per_weight[j];
            const auto &tb = tensors[a + 1].per_weight[j];
            for (std::size_t i = 0; i < ta.rows(); ++i)
                for (std::size_t l = 0; l < ta.cols(); ++l) {
                    Rational d = boost::multiprecision::abs(
                        ta.at(i, l) - tb.at(i, l));
                    if (d > report.structural_deviation)
                        report.structural_deviation = d;
                }
        }

    if (!samples.empty() && !mu.front().is_table()) {
        PrecisionScope scope(precision_bits);
        for (const auto &[x, y] : samples) {
            BigFloat lo(0), hi(0);
            bool first = true;
            for (const auto &p : paths) {
                BigFloat v = mop_kernel(mu, p, x, y, precision_bits).value;
                if (first) {
                    lo = hi = v;
                    first = false;
                } else {
                    if (v < lo)
                        lo = v;
                    if (v > hi)
                        hi = v;
                }
            }
            BigFloat spread = hi - lo;
            if (spread > report.numeric_deviation)
                report.numeric_deviation = spread;
        }
    }
    return report;
}

} // namespace mop

#endif // MOP_KERNEL_HPP
