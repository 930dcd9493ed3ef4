#ifndef MOP_ZEROS_HPP
#define MOP_ZEROS_HPP

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mop/hermite_pade.hpp"
#include "mop/roots.hpp"

namespace mop {

struct IoError : Error {
    using Error::Error;
};

enum class CloudLabel { A1, A2, B, P };

inline std::string to_string(CloudLabel label) {
    switch (label) {
    case CloudLabel::A1:
        return "A1";
    case CloudLabel::A2:
        return "A2";
    case CloudLabel::B:
        return "B";
    default:
        return "P";
    }
}

inline CloudLabel cloud_label_from(const std::string &s) {
    if (s == "A1")
        return CloudLabel::A1;
    if (s == "A2")
        return CloudLabel::A2;
    if (s == "B")
        return CloudLabel::B;
    if (s == "P")
        return CloudLabel::P;
    throw FormatError("unknown cloud label: '" + s + "'");
}

struct ZeroCloud {
    CloudLabel label = CloudLabel::P;
    std::vector<BigComplex> points;
    MultiIndex index{std::vector<unsigned>{0}};
    BigFloat residual_max;
};

namespace detail {

// Numerically negligible leading coefficients produce spurious far-away
// roots; strip them (relative 2^{-prec/2}) before root extraction. Exact
// polynomials are already trimmed.
template <class S>
Polynomial<S> trim_leading_for_roots(const Polynomial<S> &p, unsigned bits) {
    if constexpr (scalar_traits<S>::is_exact) {
        (void)bits;
        return p;
    } else {
        std::vector<S> c = p.coeffs();
        BigFloat scale(0);
        for (const auto &x : c) {
            BigFloat m = scalar_traits<S>::magnitude(x);
            if (m > scale)
                scale = m;
        }
        BigFloat tol = scale * pow2(-static_cast<long>(bits) / 2);
        while (!c.empty() &&
               scalar_traits<S>::magnitude(c.back()) <= tol)
            c.pop_back();
        return Polynomial<S>(std::move(c));
    }
}

} // namespace detail

template <class S>
ZeroCloud zero_cloud(const Polynomial<S> &p, CloudLabel label,
                     unsigned precision_bits) {
    if (p.is_zero())
        throw DomainError("zero_cloud: polynomial is identically zero");
    ZeroCloud out;
    out.label = label;
    out.residual_max = BigFloat(0);
    Polynomial<S> trimmed = detail::trim_leading_for_roots(p, precision_bits);
    if (trimmed.degree() < 1)
        return out; // constant: empty cloud
    RootSet rs = poly_roots(trimmed, precision_bits);
    out.points = std::move(rs.points);
    for (const auto &r : rs.residuals)
        if (r > out.residual_max)
            out.residual_max = r;
    return out;
}

// ---------------------------------------------------------------- Figure 1

// w^3 + 3 (z-3)^2 w - 2 i (3z-1)^3 = 0
inline AlgebraicCurveSpec fig1_curve() {
    AlgebraicCurveSpec curve;
    PrecisionScope scope(96);
    auto re = [](long v) { return BigComplex(BigFloat(v)); };
    auto im = [](long v) { return BigComplex(BigFloat(0), BigFloat(v)); };
    curve.coeffs.resize(4);
    // -2i (3z-1)^3 = -54i z^3 + 54i z^2 - 18i z + 2i
    curve.coeffs[0] = Polynomial<BigComplex>(
        std::vector<BigComplex>{im(2), im(-18), im(54), im(-54)});
    // 3 (z-3)^2 = 3z^2 - 18z + 27
    curve.coeffs[1] = Polynomial<BigComplex>(
        std::vector<BigComplex>{re(27), re(-18), re(3)});
    curve.coeffs[3] = Polynomial<BigComplex>::constant(re(1));
    curve.branch_exponent = 1;
    return curve;
}

// Default branch: among the dominant-balance roots of c^3 + 3c = 54i, the one
// with the largest imaginary part, ties broken by the largest real part.
// (The figure's source does not say which branch was used; the choice is
// recorded in the result.)
inline BigComplex fig1_default_branch(unsigned precision_bits) {
    PrecisionScope scope(precision_bits);
    Polynomial<BigComplex> balance(std::vector<BigComplex>{
        BigComplex(BigFloat(0), BigFloat(-54)), BigComplex(BigFloat(3)),
        BigComplex(BigFloat(0)), BigComplex(BigFloat(1))});
    RootSet rs = poly_roots(balance, precision_bits);
    std::size_t best = 0;
    for (std::size_t i = 1; i < rs.points.size(); ++i) {
        const BigFloat &bi = rs.points[best].im, &ci = rs.points[i].im;
        if (ci > bi || (ci == bi && rs.points[i].re > rs.points[best].re))
            best = i;
    }
    return rs.points[best];
}

struct Fig1Result {
    ZeroCloud a1, a2, b;
    long achieved_order = 0;
    BigComplex branch;
    BigFloat series_residual;
};

// Type I Hermite-Pade approximation to f1 = w, f2 = w^2 at the multi-index
// (N, N), followed by zero extraction of A_1, A_2 and B.
inline Fig1Result fig1_pipeline(const MultiIndex &n, std::size_t terms,
                                unsigned precision_bits,
                                const BigComplex *branch_seed = nullptr) {
    if (n.dimension() != 2 || n.parts[0] != n.parts[1])
        throw DomainError("fig1_pipeline: index must be (N, N)");
    if (n.parts[0] < 1 || n.parts[0] > 100)
        throw DomainError("fig1_pipeline: desk scale is 1 <= N <= 100");
    if (terms < 2 * n.size() + 16)
        throw DomainError("fig1_pipeline: need terms >= 2|n| + 16");

    AlgebraicCurveSpec curve = fig1_curve();
    curve.branch_coefficient =
        branch_seed ? *branch_seed : fig1_default_branch(precision_bits);

    AlgebraicSeriesResult ws = algebraic_series(curve, terms, precision_bits);

    PrecisionScope scope(precision_bits);
    LaurentSeries<BigComplex> w = ws.series;
    LaurentSeries<BigComplex> w2;
    {
        auto iw = detail::InfSeries<BigComplex>::from_laurent(w);
        w2 = detail::mul(iw, iw).to_laurent();
    }

    std::vector<LaurentSeries<BigComplex>> f{w, w2};
    HPTypeIResult<BigComplex> hp = hp_type_i(f, n);

    Fig1Result out;
    out.branch = ws.branch_coefficient;
    out.series_residual = ws.residual_max;
    out.achieved_order = hp.achieved_order;
    out.a1 = zero_cloud(hp.A[0], CloudLabel::A1, precision_bits);
    out.a2 = zero_cloud(hp.A[1], CloudLabel::A2, precision_bits);
    out.b = zero_cloud(hp.B, CloudLabel::B, precision_bits);
    out.a1.index = n;
    out.a2.index = n;
    out.b.index = n;
    return out;
}

// ------------------------------------------------------------ file emission

inline void emit_csv(const std::vector<ZeroCloud> &clouds, std::ostream &os) {
    os << "label,re,im\n";
    for (const auto &c : clouds)
        for (const auto &z : c.points)
            os << to_string(c.label) << "," << to_decimal_string(z.re) << ","
               << to_decimal_string(z.im) << "\n";
}

inline void emit_svg(const std::vector<ZeroCloud> &clouds, std::ostream &os) {
    BigFloat min_re(0), max_re(0), min_im(0), max_im(0);
    bool first = true;
    for (const auto &c : clouds)
        for (const auto &z : c.points) {
            if (first) {
                min_re = max_re = z.re;
                min_im = max_im = z.im;
                first = false;
            } else {
                if (z.re < min_re)
                    min_re = z.re;
                if (z.re > max_re)
                    max_re = z.re;
                if (z.im < min_im)
                    min_im = z.im;
                if (z.im > max_im)
                    max_im = z.im;
            }
        }
    double x0 = first ? -1.0 : static_cast<double>(min_re);
    double x1 = first ? 1.0 : static_cast<double>(max_re);
    double y0 = first ? -1.0 : static_cast<double>(min_im);
    double y1 = first ? 1.0 : static_cast<double>(max_im);
    double span = std::max({x1 - x0, y1 - y0, 1e-12});
    double margin = 0.05 * span;
    x0 -= margin;
    y0 -= margin;
    double scale = 600.0 / (span + 2 * margin);

    auto px = [&](double x) { return (x - x0) * scale + 20.0; };
    auto py = [&](double y) { return 640.0 - ((y - y0) * scale + 20.0); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
          "height=\"640\" viewBox=\"0 0 640 640\">\n";
    os << "  <style>.A1{fill:#1f77b4;}.A2{fill:#d62728;}.B{fill:#2ca02c;}"
          ".P{fill:#7a52a1;}.axis{stroke:#999;stroke-width:1;}</style>\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\" "
          "stroke=\"#333\"/>\n";
    os << std::fixed << std::setprecision(2);
    if (x0 < 0 && px(0) < 640)
        os << "  <line class=\"axis\" x1=\"" << px(0) << "\" y1=\"0\" x2=\""
           << px(0) << "\" y2=\"640\"/>\n";
    if (y0 < 0 && py(0) > 0 && py(0) < 640)
        os << "  <line class=\"axis\" x1=\"0\" y1=\"" << py(0)
           << "\" x2=\"640\" y2=\"" << py(0) << "\"/>\n";
    for (const auto &c : clouds) {
        os << "  <g class=\"" << to_string(c.label) << "\">\n";
        for (const auto &z : c.points)
            os << "    <circle class=\"" << to_string(c.label) << "\" cx=\""
               << px(static_cast<double>(z.re)) << "\" cy=\""
               << py(static_cast<double>(z.im)) << "\" r=\"2\"/>\n";
        os << "  </g>\n";
    }
    os << "</svg>\n";
}

enum class EmitFormat { Csv, Svg };

inline void emit(const std::vector<ZeroCloud> &clouds, EmitFormat format,
                 const std::string &path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("emit: cannot open '" + path + "'");
    if (format == EmitFormat::Csv)
        emit_csv(clouds, os);
    else
        emit_svg(clouds, os);
    os.flush();
    if (!os)
        throw IoError("emit: write failed for '" + path + "'");
}

// Parse an emitted CSV back into clouds (grouped by label, first-appearance
// order). Points are read at the given precision; re-parsing at the emission
// precision reproduces the values bit-exactly.
inline std::vector<ZeroCloud> parse_zero_csv(std::istream &is,
                                             unsigned precision_bits) {
    PrecisionScope scope(precision_bits);
    std::string line;
    if (!std::getline(is, line))
        throw FormatError("zero csv: empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "label,re,im")
        throw FormatError("zero csv: bad header '" + line + "'");
    std::vector<ZeroCloud> clouds;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::size_t c1 = line.find(',');
        std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw FormatError("zero csv: bad row '" + line + "'");
        CloudLabel label = cloud_label_from(line.substr(0, c1));
        BigComplex z(bigfloat_from_string(line.substr(c1 + 1, c2 - c1 - 1)),
                     bigfloat_from_string(line.substr(c2 + 1)));
        auto it = std::find_if(clouds.begin(), clouds.end(),
                               [&](const ZeroCloud &c) {
                                   return c.label == label;
                               });
        if (it == clouds.end()) {
            ZeroCloud c;
            c.label = label;
            clouds.push_back(std::move(c));
            it = clouds.end() - 1;
        }
        it->points.push_back(std::move(z));
    }
    return clouds;
}

} // namespace mop

#endif // MOP_ZEROS_HPP
