#ifndef MOP_MEASURES_HPP
#define MOP_MEASURES_HPP

#include <string>
#include <variant>
#include <vector>

#include "mop/polynomial.hpp"
#include "mop/scalars.hpp"

namespace mop {

// One measure, described by a closed-form moment rule or an explicit moment
// table. Every family here has exact rational moments, which keeps all the
// orthogonality systems in error-free arithmetic.
//
// Families:
//   LebesgueUnit            dx on [0,1],               m_k = 1/(k+1)
//   LogWeight(p=1)          -log(x) dx on [0,1],       m_k = 1/(k+1)^2
//   LogWeight(p=2)          (1/2) log^2(x) dx on [0,1], m_k = 1/(k+1)^3
//   HermiteExternal(a, s)   exp(-s(x^2 - a x)) dx on R, moments stored
//                           normalized by m_0 (see note below)
//   MomentTable             explicit exact moments
//
// HermiteExternal normalization: the raw m_0 contains sqrt(pi/s)*e^{s a^2/4},
// so raw moments are not rational. The normalized sequence m_k/m_0 satisfies
//   mu_0 = 1,  mu_k = (a/2) mu_{k-1} + ((k-1)/(2s)) mu_{k-2},
// which is rational in a and 1/s. Orthogonality conditions and monicity are
// scale-invariant; consumers that need the density must divide the raw
// weight by m_0 (see normalization_constant / is_normalized_family).
class MeasureSpec {
  public:
    struct LebesgueUnit {};
    struct LogWeight {
        int power; // 1 or 2
    };
    struct HermiteExternal {
        Rational a;
        Rational s; // > 0
    };
    struct MomentTable {
        std::vector<Rational> values;
    };

    using Variant =
        std::variant<LebesgueUnit, LogWeight, HermiteExternal, MomentTable>;

    static MeasureSpec lebesgue_unit() { return MeasureSpec(LebesgueUnit{}); }
    static MeasureSpec log_weight(int power) {
        if (power != 1 && power != 2)
            throw DomainError("log_weight: power must be 1 or 2");
        return MeasureSpec(LogWeight{power});
    }
    static MeasureSpec hermite_external(Rational a, Rational s) {
        if (s <= 0)
            throw DomainError("hermite_external: s must be positive");
        return MeasureSpec(HermiteExternal{std::move(a), std::move(s)});
    }
    static MeasureSpec moment_table(std::vector<Rational> values) {
        return MeasureSpec(MomentTable{std::move(values)});
    }

    const Variant &data() const { return v_; }

    bool is_table() const { return std::holds_alternative<MomentTable>(v_); }
    bool is_normalized_family() const {
        return std::holds_alternative<HermiteExternal>(v_);
    }

    std::string kind_name() const {
        if (std::holds_alternative<LebesgueUnit>(v_))
            return "lebesgue_unit";
        if (std::holds_alternative<LogWeight>(v_))
            return "log_weight";
        if (std::holds_alternative<HermiteExternal>(v_))
            return "hermite_external";
        return "moment_table";
    }

  private:
    explicit MeasureSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// k-th moment (normalized by m_0 for HermiteExternal).
inline Rational moment(const MeasureSpec &spec, std::size_t k) {
    const auto &v = spec.data();
    if (std::holds_alternative<MeasureSpec::LebesgueUnit>(v))
        return Rational(1, Integer(k + 1));
    if (const auto *lw = std::get_if<MeasureSpec::LogWeight>(&v)) {
        Integer kp1(k + 1);
        Integer d = kp1 * kp1;
        if (lw->power == 2)
            d *= kp1;
        return Rational(1, d);
    }
    if (const auto *he = std::get_if<MeasureSpec::HermiteExternal>(&v)) {
        // mu_k = (a/2) mu_{k-1} + ((k-1)/(2s)) mu_{k-2}, mu_0 = 1
        Rational prev2(1), prev1 = he->a / 2;
        if (k == 0)
            return prev2;
        for (std::size_t i = 2; i <= k; ++i) {
            Rational cur = (he->a / 2) * prev1 +
                           Rational(Integer(i - 1)) / (2 * he->s) * prev2;
            prev2 = prev1;
            prev1 = cur;
        }
        return prev1;
    }
    const auto &table = std::get<MeasureSpec::MomentTable>(v);
    if (k >= table.values.size())
        throw TableExhausted("moment table exhausted at index " +
                             std::to_string(k));
    return table.values[k];
}

// moments 0..count-1 in one go
inline std::vector<Rational> moment_prefix(const MeasureSpec &spec,
                                           std::size_t count) {
    std::vector<Rational> m;
    m.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        m.push_back(moment(spec, k));
    return m;
}

// integral of a rational polynomial against x^k dmu, expanded in moments
inline Rational integrate_poly_xk(const MeasureSpec &spec,
                                  const Polynomial<Rational> &p,
                                  std::size_t k) {
    Rational acc(0);
    const auto &c = p.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        acc += c[i] * moment(spec, i + k);
    return acc;
}

// Raw weight density w(x) at a point inside the support. For HermiteExternal
// this is *not* divided by m_0; combine with normalization_constant when the
// polynomials came from the normalized moment sequence.
inline BigFloat weight_value(const MeasureSpec &spec, const BigFloat &x,
                             unsigned precision_bits) {
    PrecisionScope scope(precision_bits);
    const auto &v = spec.data();
    if (spec.is_table())
        throw UnsupportedForTable(
            "weight_value: moment tables carry no density");
    if (std::holds_alternative<MeasureSpec::LebesgueUnit>(v)) {
        if (x <= 0 || x >= 1)
            throw DomainError("weight_value: x outside (0,1)");
        return BigFloat(1);
    }
    if (const auto *lw = std::get_if<MeasureSpec::LogWeight>(&v)) {
        if (x <= 0 || x >= 1)
            throw DomainError("weight_value: x outside (0,1)");
        BigFloat xx = x;
        xx.precision(bits_to_digits10(precision_bits));
        BigFloat lg = boost::multiprecision::log(xx);
        if (lw->power == 1)
            return -lg;
        return lg * lg / 2;
    }
    const auto &he = std::get<MeasureSpec::HermiteExternal>(v);
    BigFloat xx = x;
    xx.precision(bits_to_digits10(precision_bits));
    BigFloat a = bigfloat_from_rational(he.a), s = bigfloat_from_rational(he.s);
    return boost::multiprecision::exp(-s * (xx * xx - a * xx));
}

// m_0 of the raw weight; the factor hidden by the normalized moment storage.
inline BigFloat normalization_constant(const MeasureSpec &spec,
                                       unsigned precision_bits) {
    PrecisionScope scope(precision_bits);
    if (!spec.is_normalized_family())
        return BigFloat(1);
    const auto &he = std::get<MeasureSpec::HermiteExternal>(spec.data());
    BigFloat a = bigfloat_from_rational(he.a), s = bigfloat_from_rational(he.s);
    return boost::multiprecision::sqrt(const_pi() / s) *
           boost::multiprecision::exp(s * a * a / 4);
}

// Named presets; the Apery triple (dx, -log x dx, (1/2)log^2 x dx) recurs
// across the whole artifact.
inline std::vector<MeasureSpec> preset_lebesgue() {
    return {MeasureSpec::lebesgue_unit()};
}
inline std::vector<MeasureSpec> preset_apery_pair() {
    return {MeasureSpec::lebesgue_unit(), MeasureSpec::log_weight(1)};
}
inline std::vector<MeasureSpec> preset_apery_triple() {
    return {MeasureSpec::lebesgue_unit(), MeasureSpec::log_weight(1),
            MeasureSpec::log_weight(2)};
}
inline std::vector<MeasureSpec> preset_hermite_external(
    const std::vector<Rational> &a_values, const Rational &s) {
    std::vector<MeasureSpec> out;
    out.reserve(a_values.size());
    for (const auto &a : a_values)
        out.push_back(MeasureSpec::hermite_external(a, s));
    return out;
}

} // namespace mop

#endif // MOP_MEASURES_HPP
