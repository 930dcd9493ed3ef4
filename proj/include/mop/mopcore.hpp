#ifndef MOP_MOPCORE_HPP
#define MOP_MOPCORE_HPP

#include <numeric>
#include <string>
#include <vector>

#include "mop/matrix.hpp"
#include "mop/measures.hpp"
#include "mop/polynomial.hpp"

namespace mop {

// Multi-index n = (n_1, ..., n_r) of non-negative integers.
struct MultiIndex {
    std::vector<unsigned> parts;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> p) : parts(std::move(p)) {
        if (parts.empty())
            throw DomainError("MultiIndex: r must be >= 1");
    }

    std::size_t dimension() const { return parts.size(); }
    std::size_t size() const {
        return std::accumulate(parts.begin(), parts.end(), std::size_t{0});
    }

    MultiIndex incremented(std::size_t j) const {
        MultiIndex m = *this;
        ++m.parts.at(j);
        return m;
    }
    MultiIndex decremented(std::size_t j) const {
        MultiIndex m = *this;
        if (m.parts.at(j) == 0)
            throw DomainError("MultiIndex: component already zero");
        --m.parts[j];
        return m;
    }

    friend bool operator==(const MultiIndex &a, const MultiIndex &b) {
        return a.parts == b.parts;
    }
    friend bool operator<(const MultiIndex &a, const MultiIndex &b) {
        return a.parts < b.parts;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i)
            s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }
};

// All multi-indices of the given dimension with |n| <= max_size, ordered by
// size then lexicographically.
inline std::vector<MultiIndex> indices_up_to(std::size_t dimension,
                                             std::size_t max_size,
                                             std::size_t min_size = 0) {
    std::vector<MultiIndex> all;
    std::vector<unsigned> cur(dimension, 0);
    auto rec = [&](auto &&self, std::size_t pos, std::size_t remaining) -> void {
        if (pos + 1 == dimension) {
            cur[pos] = static_cast<unsigned>(remaining);
            all.emplace_back(cur);
            return;
        }
        for (std::size_t v = 0; v <= remaining; ++v) {
            cur[pos] = static_cast<unsigned>(v);
            self(self, pos + 1, remaining - v);
        }
    };
    for (std::size_t total = min_size; total <= max_size; ++total)
        rec(rec, 0, total);
    return all;
}

// The two defining linear systems for one multi-index, in the canonical
// ordering that realizes the transpose identity:
//   type II unknowns: coefficients of x^0..x^{|n|-1} of the monic P_n;
//            rows: measure-by-measure, then k = 0..n_j-1.
//   type I unknowns: coefficients of A_{n,1} low-to-high, then A_{n,2}, ...;
//            rows: k = 0..|n|-1, the normalization row (k = |n|-1) last.
struct AssembledSystems {
    DenseMatrix<Rational> m_type_i;
    DenseMatrix<Rational> m_type_ii;
    std::vector<Rational> rhs_type_ii;
};

inline AssembledSystems assemble_systems(const std::vector<MeasureSpec> &mu,
                                         const MultiIndex &n) {
    if (mu.size() != n.dimension())
        throw DomainError("assemble_systems: measures/index dimension mismatch");
    const std::size_t total = n.size();
    AssembledSystems out;
    out.m_type_i = DenseMatrix<Rational>(total, total);
    out.m_type_ii = DenseMatrix<Rational>(total, total);
    out.rhs_type_ii.assign(total, Rational(0));
    if (total == 0)
        return out;

    std::vector<std::vector<Rational>> mom(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j)
        mom[j] = moment_prefix(mu[j], total + n.parts[j]);

    std::size_t row = 0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        for (std::size_t k = 0; k < n.parts[j]; ++k, ++row) {
            for (std::size_t m = 0; m < total; ++m)
                out.m_type_ii.at(row, m) = mom[j][k + m];
            out.rhs_type_ii[row] = -mom[j][k + total];
        }
    }

    std::size_t col = 0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        for (std::size_t i = 0; i < n.parts[j]; ++i, ++col) {
            for (std::size_t k = 0; k < total; ++k)
                out.m_type_i.at(k, col) = mom[j][k + i];
        }
    }
    return out;
}

// true iff the defining |n| x |n| system is uniquely solvable (exact test)
inline bool is_normal(const std::vector<MeasureSpec> &mu, const MultiIndex &n) {
    AssembledSystems sys = assemble_systems(mu, n);
    return !det(sys.m_type_ii).value.is_zero();
}

inline std::vector<MultiIndex>
perfectness_scan(const std::vector<MeasureSpec> &mu, std::size_t max_size) {
    if (max_size < 1)
        throw DomainError("perfectness_scan: max_size must be >= 1");
    std::vector<MultiIndex> failures;
    for (const MultiIndex &n : indices_up_to(mu.size(), max_size))
        if (!is_normal(mu, n))
            failures.push_back(n);
    return failures;
}

template <class S> struct TypeIISolution {
    MultiIndex index;
    Polynomial<S> poly; // monic, degree |n|
    std::vector<S> residuals;
    bool moments_normalized = false; // measures stored as m_k / m_0
};

template <class S> struct TypeISolution {
    MultiIndex index;
    std::vector<Polynomial<S>> polys; // deg A_j <= n_j - 1
    S normalization_value;
    std::vector<S> residuals; // the |n|-1 homogeneous conditions
    bool moments_normalized = false;
};

namespace detail {

inline Rational bigfloat_to_rational(const BigFloat &x) {
    Rational q;
    mpfr_get_q(q.backend().data(), x.backend().data());
    return q;
}
inline Rational to_rational_part(const BigFloat &x) {
    return bigfloat_to_rational(x);
}
inline Rational to_rational_part(const BigComplex &z) {
    return bigfloat_to_rational(z.re);
}
inline Rational stray_imag_part(const BigFloat &) { return Rational(0); }
inline Rational stray_imag_part(const BigComplex &z) {
    return boost::multiprecision::abs(bigfloat_to_rational(z.im));
}

inline bool any_normalized(const std::vector<MeasureSpec> &mu) {
    for (const auto &m : mu)
        if (m.is_normalized_family())
            return true;
    return false;
}

template <class S> struct SquareSolve {
    std::vector<S> x;
    // exact signed residual rows of the float solution; empty in the exact
    // domain where the residual is identically zero
    std::vector<Rational> row_residuals;
};

// Solve an exactly-known square system in a float domain: convert at working
// precision, factorize, then verify the residual *exactly* against the
// rational data; double the precision (up to 4 retries) until the residual
// clears 2^{-bits/2}. Moment matrices are exponentially ill-conditioned in
// |n|, hence the escalation.
template <class S>
SquareSolve<S> solve_exact_system_float(const DenseMatrix<Rational> &a,
                                        const std::vector<Rational> &b,
                                        std::size_t total, unsigned bits) {
    unsigned working = std::max<unsigned>(bits, 64 + 16 * static_cast<unsigned>(total));
    Rational rhs_scale(1);
    for (const auto &q : b)
        if (boost::multiprecision::abs(q) > rhs_scale)
            rhs_scale = boost::multiprecision::abs(q);
    Rational target = rhs_scale;
    {
        Integer den(1);
        den <<= bits / 2;
        target /= Rational(den);
    }
    for (int attempt = 0; attempt <= 4; ++attempt, working *= 2) {
        PrecisionScope scope(working);
        DenseMatrix<S> af(a.rows(), a.cols());
        std::vector<S> bf(b.size());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                af.at(i, j) = scalar_from_rational<S>(a.at(i, j));
        for (std::size_t i = 0; i < b.size(); ++i)
            bf[i] = scalar_from_rational<S>(b[i]);
        LinSolveResult<S> sol;
        try {
            sol = lin_solve(af, bf);
        } catch (const SingularSystem &) {
            continue; // structural singularity was excluded; retry wider
        }
        // exact residual of the rounded solution
        std::vector<Rational> rows(a.rows());
        Rational resid(0);
        std::vector<Rational> xq(sol.x.size());
        for (std::size_t i = 0; i < sol.x.size(); ++i) {
            xq[i] = to_rational_part(sol.x[i]);
            // real data: any imaginary leakage counts against the residual
            Rational leak = stray_imag_part(sol.x[i]);
            if (leak > resid)
                resid = leak;
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Rational acc = -b[i];
            for (std::size_t j = 0; j < a.cols(); ++j)
                acc += a.at(i, j) * xq[j];
            rows[i] = acc;
            acc = boost::multiprecision::abs(acc);
            if (acc > resid)
                resid = acc;
        }
        if (resid <= target)
            return {std::move(sol.x), std::move(rows)};
    }
    throw IllConditioned("float solve failed residual check after 4 retries");
}

template <class S>
SquareSolve<S> solve_square(const DenseMatrix<Rational> &a,
                            const std::vector<Rational> &b, std::size_t total,
                            unsigned bits, const std::string &who) {
    if constexpr (scalar_traits<S>::is_exact) {
        (void)bits;
        try {
            return {lin_solve(a, b).x, {}};
        } catch (const SingularSystem &) {
            throw NonNormalIndex(who + ": defining system is singular");
        }
    } else {
        DetResult<Rational> d = det(a);
        if (d.value.is_zero())
            throw NonNormalIndex(who + ": defining system is singular");
        return solve_exact_system_float<S>(a, b, total, bits);
    }
}

} // namespace detail

// Monic type II multiple orthogonal polynomial P_n.
template <class S = Rational>
TypeIISolution<S> type_ii(const std::vector<MeasureSpec> &mu,
                          const MultiIndex &n, unsigned precision_bits = 0) {
    const std::size_t total = n.size();
    TypeIISolution<S> out;
    out.index = n;
    out.moments_normalized = detail::any_normalized(mu);
    if (total == 0) {
        out.poly = Polynomial<S>::constant(S(1));
        return out;
    }
    AssembledSystems sys = assemble_systems(mu, n);
    detail::SquareSolve<S> sol = detail::solve_square<S>(
        sys.m_type_ii, sys.rhs_type_ii, total, precision_bits, "type_ii");
    std::vector<S> coeffs = std::move(sol.x);
    coeffs.push_back(S(1));
    out.poly = Polynomial<S>(std::move(coeffs));

    // orthogonality residuals, row by row
    out.residuals.reserve(total);
    if (!sol.row_residuals.empty()) {
        for (const auto &r : sol.row_residuals)
            out.residuals.push_back(scalar_from_rational<S>(r));
    } else {
        std::size_t row = 0;
        for (std::size_t j = 0; j < mu.size(); ++j) {
            for (std::size_t k = 0; k < n.parts[j]; ++k, ++row) {
                S acc(0);
                for (std::size_t m = 0; m <= total; ++m)
                    acc += out.poly.coeff(m) *
                           scalar_from_rational<S>(moment(mu[j], k + m));
                out.residuals.push_back(acc);
            }
        }
    }
    return out;
}

// Type I vector (A_{n,1}, ..., A_{n,r}) with the unit normalization.
template <class S = Rational>
TypeISolution<S> type_i(const std::vector<MeasureSpec> &mu, const MultiIndex &n,
                        unsigned precision_bits = 0) {
    const std::size_t total = n.size();
    if (total == 0)
        throw NoSolution("type_i: |n| = 0 cannot satisfy the normalization");
    AssembledSystems sys = assemble_systems(mu, n);
    std::vector<Rational> rhs(total, Rational(0));
    rhs[total - 1] = Rational(1);
    detail::SquareSolve<S> sol = detail::solve_square<S>(
        sys.m_type_i, rhs, total, precision_bits, "type_i");
    TypeISolution<S> out;
    out.index = n;
    out.moments_normalized = detail::any_normalized(mu);
    std::size_t off = 0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        std::vector<S> c(sol.x.begin() + off, sol.x.begin() + off + n.parts[j]);
        out.polys.emplace_back(std::move(c));
        off += n.parts[j];
    }
    // residuals of the |n|-1 homogeneous conditions plus the normalization
    if (!sol.row_residuals.empty()) {
        for (std::size_t k = 0; k + 1 < total; ++k)
            out.residuals.push_back(
                scalar_from_rational<S>(sol.row_residuals[k]));
        out.normalization_value =
            scalar_from_rational<S>(Rational(1) + sol.row_residuals[total - 1]);
        return out;
    }
    auto form_value = [&](std::size_t k) {
        S acc(0);
        for (std::size_t j = 0; j < mu.size(); ++j) {
            const auto &a = out.polys[j];
            for (std::size_t i = 0; i < static_cast<std::size_t>(a.degree()) + 1;
                 ++i)
                acc += a.coeff(i) *
                       scalar_from_rational<S>(moment(mu[j], k + i));
        }
        return acc;
    };
    for (std::size_t k = 0; k + 1 < total; ++k)
        out.residuals.push_back(form_value(k));
    out.normalization_value = form_value(total - 1);
    return out;
}

// sum_j integral of P_n * A_{m,j} dmu_j, the biorthogonality pairing
inline Rational biortho_table(const std::vector<MeasureSpec> &mu,
                              const MultiIndex &m, const MultiIndex &n) {
    TypeISolution<Rational> a = type_i(mu, m);
    TypeIISolution<Rational> p = type_ii(mu, n);
    Rational acc(0);
    for (std::size_t j = 0; j < mu.size(); ++j) {
        if (a.polys[j].is_zero())
            continue;
        acc += integrate_poly_xk(mu[j], p.poly * a.polys[j], 0);
    }
    return acc;
}

// ---------------------------------------------------------------- mixed type

struct MixedTerm {
    Rational coeff;
    std::size_t measure;
    std::size_t unknown;
};

// One linear form sum coeff * poly_unknown d(measure) with moment conditions
// for k = 0..order-1.
struct MixedForm {
    std::vector<MixedTerm> terms;
    std::size_t order;
};

struct PointConstraint {
    std::size_t unknown;
    Rational point;
    Rational value;
};

struct MixedSystemSpec {
    std::vector<std::size_t> degree_caps; // per unknown
    std::vector<MixedForm> forms;
    std::vector<PointConstraint> point_constraints;
    enum class Space { Unique, OneDimensional } solution_space =
        Space::OneDimensional;

    std::size_t unknown_count() const { return degree_caps.size(); }
    std::size_t coefficient_count() const {
        std::size_t u = 0;
        for (std::size_t cap : degree_caps)
            u += cap + 1;
        return u;
    }
    std::size_t constraint_count() const {
        std::size_t c = point_constraints.size();
        for (const auto &f : forms)
            c += f.order;
        return c;
    }

    void validate(std::size_t measure_count) const {
        if (degree_caps.empty())
            throw DomainError("mixed spec: no unknowns");
        for (const auto &f : forms)
            for (const auto &t : f.terms) {
                if (t.measure >= measure_count)
                    throw DomainError("mixed spec: measure id out of range");
                if (t.unknown >= degree_caps.size())
                    throw DomainError("mixed spec: unknown id out of range");
            }
        for (const auto &pc : point_constraints)
            if (pc.unknown >= degree_caps.size())
                throw DomainError("mixed spec: unknown id out of range");
        const std::size_t u = coefficient_count(), c = constraint_count();
        if (solution_space == Space::Unique ? (c != u) : (c + 1 != u))
            throw DomainError(
                "mixed spec: constraint count does not match declared "
                "solution space");
    }
};

namespace detail {

// Scale to integer coefficients with content 1; flip signs so the leading
// nonzero coefficient of the first nonzero unknown is positive. This is what
// reproduces the classical integer Apery data.
inline void normalize_null_vector(std::vector<Rational> &v,
                                  const std::vector<std::size_t> &offsets,
                                  const std::vector<std::size_t> &caps) {
    Integer l(1);
    for (const auto &q : v)
        l = boost::multiprecision::lcm(l, Integer(denominator(q)));
    Integer g(0);
    for (const auto &q : v)
        g = boost::multiprecision::gcd(g, Integer(numerator(q) * l /
                                                  denominator(q)));
    if (g.is_zero())
        return;
    Rational scale(l, g);
    for (auto &q : v)
        q *= scale;
    for (std::size_t u = 0; u < caps.size(); ++u) {
        for (std::size_t i = caps[u] + 1; i-- > 0;) {
            const Rational &lead = v[offsets[u] + i];
            if (lead.is_zero())
                continue;
            if (lead < 0)
                for (auto &q : v)
                    q = -q;
            return;
        }
    }
}

} // namespace detail

// Solve a mixed type I / type II system. All arithmetic is exact; the result
// is converted to S at the end.
template <class S = Rational>
std::vector<Polynomial<S>> mixed_solve(const MixedSystemSpec &spec,
                                       const std::vector<MeasureSpec> &mu,
                                       unsigned precision_bits = 0) {
    spec.validate(mu.size());
    const std::size_t ucount = spec.unknown_count();
    std::vector<std::size_t> offsets(ucount, 0);
    for (std::size_t u = 1; u < ucount; ++u)
        offsets[u] = offsets[u - 1] + spec.degree_caps[u - 1] + 1;
    const std::size_t ncols = spec.coefficient_count();
    const std::size_t nrows = spec.constraint_count();

    DenseMatrix<Rational> m(nrows, ncols);
    std::vector<Rational> rhs(nrows, Rational(0));
    std::size_t row = 0;
    for (const auto &f : spec.forms) {
        for (std::size_t k = 0; k < f.order; ++k, ++row)
            for (const auto &t : f.terms)
                for (std::size_t i = 0; i <= spec.degree_caps[t.unknown]; ++i)
                    m.at(row, offsets[t.unknown] + i) +=
                        t.coeff * moment(mu[t.measure], k + i);
    }
    for (const auto &pc : spec.point_constraints) {
        Rational pw(1);
        for (std::size_t i = 0; i <= spec.degree_caps[pc.unknown]; ++i) {
            m.at(row, offsets[pc.unknown] + i) = pw;
            pw *= pc.point;
        }
        rhs[row] = pc.value;
        ++row;
    }

    std::vector<Rational> solution;
    if (spec.solution_space == MixedSystemSpec::Space::Unique) {
        AffineSolution sol = affine_solve(m, rhs);
        if (sol.kind == AffineSolution::Kind::Inconsistent)
            throw NoSolution("mixed_solve: inconsistent conditions");
        if (sol.kind == AffineSolution::Kind::Underdetermined)
            throw NonUnique("mixed_solve: solution space has dimension > 0");
        solution = std::move(sol.particular);
    } else {
        for (const auto &q : rhs)
            if (!q.is_zero())
                throw DomainError("mixed_solve: one-dimensional spec must be "
                                  "homogeneous");
        AffineSolution sol = affine_solve(m, rhs);
        if (sol.kind == AffineSolution::Kind::Inconsistent)
            throw NoSolution("mixed_solve: inconsistent conditions");
        if (sol.null_basis.empty())
            throw NoSolution("mixed_solve: only the trivial solution exists");
        if (sol.null_basis.size() > 1)
            throw NonUnique("mixed_solve: solution space has dimension > 1");
        solution = sol.null_basis.front();
        for (std::size_t u = 0; u < ucount; ++u) {
            bool all_zero = true;
            for (std::size_t i = 0; i <= spec.degree_caps[u]; ++i)
                if (!solution[offsets[u] + i].is_zero())
                    all_zero = false;
            if (all_zero)
                throw NoSolution("mixed_solve: degenerate solution, unknown " +
                                 std::to_string(u) + " vanishes identically");
        }
        detail::normalize_null_vector(solution, offsets, spec.degree_caps);
    }

    // exact verification of every condition
    {
        std::vector<Rational> check = m.apply(solution);
        for (std::size_t i = 0; i < nrows; ++i)
            if (check[i] != rhs[i])
                throw NumericFailure("mixed_solve: internal verification failed");
    }

    (void)precision_bits;
    std::vector<Polynomial<S>> out;
    out.reserve(ucount);
    for (std::size_t u = 0; u < ucount; ++u) {
        std::vector<S> c;
        c.reserve(spec.degree_caps[u] + 1);
        for (std::size_t i = 0; i <= spec.degree_caps[u]; ++i)
            c.push_back(scalar_from_rational<S>(solution[offsets[u] + i]));
        out.emplace_back(std::move(c));
    }
    return out;
}

// ------------------------------------------------- nearest-neighbor relation

// Coefficients of x P_n = P_{n+e_j} + b_j P_n + sum_i a_i P_{n-e_i}. The a_i
// do not depend on the direction j; the fit solves each direction separately
// and insists the shared part agrees, instead of assuming it.
struct NNRecurrenceData {
    MultiIndex index;
    std::vector<Rational> b;          // one per direction j
    std::vector<Rational> a;          // one per i with n_i >= 1, else 0
    Polynomial<Rational> residual_poly; // identically zero when the fit holds
};

inline NNRecurrenceData nn_recurrence(const std::vector<MeasureSpec> &mu,
                                      const MultiIndex &n) {
    const std::size_t r = mu.size();
    TypeIISolution<Rational> pn = type_ii(mu, n);
    std::vector<Polynomial<Rational>> up(r);
    for (std::size_t j = 0; j < r; ++j)
        up[j] = type_ii(mu, n.incremented(j)).poly;
    std::vector<std::size_t> active;
    std::vector<Polynomial<Rational>> down;
    for (std::size_t i = 0; i < r; ++i)
        if (n.parts[i] >= 1) {
            active.push_back(i);
            down.push_back(type_ii(mu, n.decremented(i)).poly);
        }

    const std::size_t total = n.size();
    const std::size_t ncols = 1 + active.size();
    NNRecurrenceData out;
    out.index = n;
    out.b.assign(r, Rational(0));
    out.a.assign(r, Rational(0));

    std::vector<Rational> shared_a;
    for (std::size_t j = 0; j < r; ++j) {
        Polynomial<Rational> rhs_poly = pn.poly.shift_up(1) - up[j];
        DenseMatrix<Rational> m(total + 1, ncols);
        std::vector<Rational> rhs(total + 1, Rational(0));
        for (std::size_t row = 0; row <= total; ++row) {
            m.at(row, 0) = pn.poly.coeff(row);
            for (std::size_t c = 0; c < active.size(); ++c)
                m.at(row, 1 + c) = down[c].coeff(row);
            rhs[row] = rhs_poly.coeff(row);
        }
        AffineSolution sol = affine_solve(m, rhs);
        if (sol.kind == AffineSolution::Kind::Inconsistent)
            throw NoSolution("nn_recurrence: ansatz does not fit at " +
                             n.str());
        if (sol.kind == AffineSolution::Kind::Underdetermined)
            throw NonUnique("nn_recurrence: fit not unique at " + n.str());
        out.b[j] = sol.particular[0];
        std::vector<Rational> aj(sol.particular.begin() + 1,
                                 sol.particular.end());
        if (j == 0)
            shared_a = aj;
        else if (aj != shared_a)
            throw NoSolution(
                "nn_recurrence: lower coefficients depend on direction at " +
                n.str());

        Polynomial<Rational> resid = rhs_poly - out.b[j] * pn.poly;
        for (std::size_t c = 0; c < active.size(); ++c)
            resid = resid - aj[c] * down[c];
        out.residual_poly = resid; // zero whenever the solve verified
    }
    for (std::size_t c = 0; c < active.size(); ++c)
        out.a[active[c]] = shared_a[c];
    return out;
}

} // namespace mop

#endif // MOP_MOPCORE_HPP
