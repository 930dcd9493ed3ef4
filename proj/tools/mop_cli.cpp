// mop: multiple orthogonal polynomials and Hermite-Pade approximation.
//
// Exit codes: 0 success, 1 domain errors (non-normal index, no solution,
// malformed inputs), 2 usage errors, 3 numeric failures (ill-conditioning,
// divergence).

#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mop/mop.hpp"

using namespace mop;

namespace {

struct RunConfig {
    std::string preset;
    std::string measures_file;
    std::string index_text;
    std::string domain_text = "exact";
    std::string format = "text";
    std::string out_path;
    std::string series_file;
    std::string poly_file;
    std::string spec_file;
    std::string curve_file;
    std::string branch_text;
    std::string points_text;
    unsigned terms = 0;
    unsigned apery_n = 10;
    unsigned digits = 60;
    unsigned max_size = 5;
};

MultiIndex parse_index(const std::string &text) {
    std::vector<unsigned> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(static_cast<unsigned>(std::stoul(item)));
    if (parts.empty())
        throw FormatError("empty index");
    return MultiIndex(parts);
}

ScalarDomain parse_domain(const std::string &text) {
    if (text == "exact")
        return ScalarDomain::exact();
    auto parse_bits = [&](std::size_t prefix_len) {
        return static_cast<unsigned>(std::stoul(text.substr(prefix_len)));
    };
    if (text.rfind("real:", 0) == 0)
        return ScalarDomain::real(parse_bits(5));
    if (text.rfind("complex:", 0) == 0)
        return ScalarDomain::complex_(parse_bits(8));
    throw FormatError("domain must be exact, real:BITS or complex:BITS");
}

std::vector<MeasureSpec> parse_preset(const std::string &name) {
    if (name == "lebesgue")
        return preset_lebesgue();
    if (name == "apery-pair")
        return preset_apery_pair();
    if (name == "apery-triple")
        return preset_apery_triple();
    if (name.rfind("hermite-ext:", 0) == 0) {
        // hermite-ext:a1,a2,...:s
        std::string rest = name.substr(12);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw FormatError("hermite-ext preset needs hermite-ext:a1,..:s");
        std::vector<Rational> a;
        std::stringstream ss(rest.substr(0, colon));
        std::string item;
        while (std::getline(ss, item, ','))
            a.push_back(parse_rational(item));
        Rational s = parse_rational(rest.substr(colon + 1));
        return preset_hermite_external(a, s);
    }
    throw FormatError("unknown preset '" + name + "'");
}

std::vector<MeasureSpec> resolve_measures(const RunConfig &cfg) {
    if (!cfg.preset.empty() && !cfg.measures_file.empty())
        throw FormatError("give either --preset or --measures, not both");
    if (!cfg.preset.empty())
        return parse_preset(cfg.preset);
    if (!cfg.measures_file.empty())
        return measures_from_json(load_json_file(cfg.measures_file));
    throw FormatError("need --preset or --measures");
}

json make_meta(const ScalarDomain &domain) {
    json meta;
    meta["tool"] = "mop";
    meta["version"] = version_string;
    meta["domain"] = domain.name();
    meta["precision_bits"] = domain.precision_bits;
    meta["conventions"] = {
        {"type_i", "unit value for the highest moment condition"},
        {"type_ii", "monic"},
        {"mixed_null_space",
         "integer coefficients, content 1, leading coefficient of the first "
         "nonzero unknown positive"},
        {"hermite_external_moments", "normalized by m0"},
        {"hp_polynomial_parts",
         "order conditions act on series tails; B absorbs polynomial parts"}};
    return meta;
}

void write_output(const RunConfig &cfg, const std::string &text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out_path);
    if (!os)
        throw IoError("cannot open '" + cfg.out_path + "'");
    os << text;
    if (!os.good())
        throw IoError("write failed for '" + cfg.out_path + "'");
}

void emit_json(const RunConfig &cfg, json j) {
    write_output(cfg, j.dump(2) + "\n");
}

template <class F> int with_domain(const ScalarDomain &d, F &&f) {
    switch (d.kind) {
    case ScalarDomain::Kind::ExactRational:
        return f(static_cast<Rational *>(nullptr));
    case ScalarDomain::Kind::BigReal:
        return f(static_cast<BigFloat *>(nullptr));
    default:
        return f(static_cast<BigComplex *>(nullptr));
    }
}

// ------------------------------------------------------------- subcommands

int run_type_ii(const RunConfig &cfg) {
    auto mu = resolve_measures(cfg);
    MultiIndex n = parse_index(cfg.index_text);
    ScalarDomain d = parse_domain(cfg.domain_text);
    return with_domain(d, [&](auto *tag) {
        using S = std::remove_pointer_t<decltype(tag)>;
        PrecisionScope scope(d.is_exact() ? 64 : d.precision_bits);
        TypeIISolution<S> sol = type_ii<S>(mu, n, d.precision_bits);
        if (cfg.format == "json") {
            json j;
            j["meta"] = make_meta(d);
            j["solution"] = type_ii_to_json(sol);
            emit_json(cfg, std::move(j));
        } else {
            std::ostringstream os;
            os << "# mop " << version_string << " type2 domain=" << d.name()
               << " index=" << n.str() << "\n";
            os << "P = " << sol.poly.pretty() << "\n";
            write_output(cfg, os.str());
        }
        return 0;
    });
}

int run_type_i(const RunConfig &cfg) {
    auto mu = resolve_measures(cfg);
    MultiIndex n = parse_index(cfg.index_text);
    ScalarDomain d = parse_domain(cfg.domain_text);
    return with_domain(d, [&](auto *tag) {
        using S = std::remove_pointer_t<decltype(tag)>;
        PrecisionScope scope(d.is_exact() ? 64 : d.precision_bits);
        TypeISolution<S> sol = type_i<S>(mu, n, d.precision_bits);
        if (cfg.format == "json") {
            json j;
            j["meta"] = make_meta(d);
            j["solution"] = type_i_to_json(sol);
            emit_json(cfg, std::move(j));
        } else {
            std::ostringstream os;
            os << "# mop " << version_string << " type1 domain=" << d.name()
               << " index=" << n.str() << "\n";
            for (std::size_t j = 0; j < sol.polys.size(); ++j)
                os << "A_" << (j + 1) << " = " << sol.polys[j].pretty()
                   << "\n";
            write_output(cfg, os.str());
        }
        return 0;
    });
}

int run_mixed(const RunConfig &cfg) {
    auto mu = resolve_measures(cfg);
    if (cfg.spec_file.empty())
        throw FormatError("mixed needs --spec FILE");
    MixedSystemSpec spec = mixed_spec_from_json(load_json_file(cfg.spec_file));
    ScalarDomain d = parse_domain(cfg.domain_text);
    auto polys = mixed_solve<Rational>(spec, mu);
    if (cfg.format == "json") {
        json j;
        j["meta"] = make_meta(d);
        json ps = json::array();
        for (const auto &p : polys)
            ps.push_back(poly_to_json(p));
        j["polys"] = std::move(ps);
        emit_json(cfg, std::move(j));
    } else {
        std::ostringstream os;
        os << "# mop " << version_string << " mixed\n";
        for (std::size_t u = 0; u < polys.size(); ++u)
            os << "U_" << u << " = " << polys[u].pretty() << "\n";
        write_output(cfg, os.str());
    }
    return 0;
}

int run_normal(const RunConfig &cfg) {
    auto mu = resolve_measures(cfg);
    MultiIndex n = parse_index(cfg.index_text);
    bool normal = is_normal(mu, n);
    if (cfg.format == "json") {
        json j;
        j["meta"] = make_meta(ScalarDomain::exact());
        j["index"] = multi_index_to_json(n);
        j["normal"] = normal;
        emit_json(cfg, std::move(j));
    } else {
        write_output(cfg, std::string("normal: ") +
                              (normal ? "true" : "false") + "\n");
    }
    return 0;
}

int run_perfect(const RunConfig &cfg) {
    auto mu = resolve_measures(cfg);
    auto failures = perfectness_scan(mu, cfg.max_size);
    if (cfg.format == "json") {
        json j;
        j["meta"] = make_meta(ScalarDomain::exact());
        j["max_size"] = cfg.max_size;
        json f = json::array();
        for (const auto &n : failures)
            f.push_back(multi_index_to_json(n));
        j["failures"] = std::move(f);
        emit_json(cfg, std::move(j));
    } else {
        std::ostringstream os;
        os << "# mop " << version_string << " perfect max=" << cfg.max_size
           << "\n";
        if (failures.empty())
            os << "perfect up to max size (no non-normal indices)\n";
        else
            for (const auto &n : failures)
                os << "non-normal: " << n.str() << "\n";
        write_output(cfg, os.str());
    }
    return 0;
}

template <class S>
std::vector<LaurentSeries<S>> resolve_series(const RunConfig &cfg) {
    if (!cfg.series_file.empty()) {
        json j = load_json_file(cfg.series_file);
        std::vector<LaurentSeries<S>> out;
        if (j.is_array())
            for (const auto &e : j)
                out.push_back(series_from_json<S>(e));
        else
            out.push_back(series_from_json<S>(j));
        return out;
    }
    // fall back to Cauchy transforms of the measures
    auto mu = resolve_measures(cfg);
    MultiIndex n = parse_index(cfg.index_text);
    unsigned terms = cfg.terms ? cfg.terms
                               : static_cast<unsigned>(2 * n.size() + 16);
    std::vector<LaurentSeries<S>> out;
    for (const auto &m : mu) {
        LaurentSeries<Rational> f = cauchy_series(m, terms);
        out.push_back(convert_series<Rational, S>(f));
    }
    return out;
}

int run_hp(const RunConfig &cfg, bool type_one) {
    MultiIndex n = parse_index(cfg.index_text);
    ScalarDomain d = parse_domain(cfg.domain_text);
    return with_domain(d, [&](auto *tag) {
        using S = std::remove_pointer_t<decltype(tag)>;
        PrecisionScope scope(d.is_exact() ? 64 : d.precision_bits);
        auto f = resolve_series<S>(cfg);
        json j;
        j["meta"] = make_meta(d);
        std::ostringstream os;
        if (type_one) {
            HPTypeIResult<S> res = hp_type_i(f, n);
            if (cfg.format == "json") {
                json as = json::array();
                for (const auto &a : res.A)
                    as.push_back(poly_to_json(a));
                j["A"] = std::move(as);
                j["B"] = poly_to_json(res.B);
                j["achieved_order"] = res.achieved_order;
                j["order_is_truncation_bound"] =
                    res.order_is_truncation_bound;
                emit_json(cfg, std::move(j));
                return 0;
            }
            os << "# mop " << version_string << " hp-type1 index=" << n.str()
               << "\n";
            for (std::size_t k = 0; k < res.A.size(); ++k)
                os << "A_" << (k + 1) << " = " << res.A[k].pretty("z") << "\n";
            os << "B = " << res.B.pretty("z") << "\n";
            os << "achieved_order = " << res.achieved_order << "\n";
        } else {
            HPTypeIIResult<S> res = hp_type_ii(f, n);
            if (cfg.format == "json") {
                j["P"] = poly_to_json(res.P);
                json qs = json::array();
                for (const auto &q : res.Q)
                    qs.push_back(poly_to_json(q));
                j["Q"] = std::move(qs);
                j["achieved_orders"] = res.achieved_orders;
                j["order_is_truncation_bound"] =
                    res.order_is_truncation_bound;
                emit_json(cfg, std::move(j));
                return 0;
            }
            os << "# mop " << version_string << " hp-type2 index=" << n.str()
               << "\n";
            os << "P = " << res.P.pretty("z") << "\n";
            for (std::size_t k = 0; k < res.Q.size(); ++k)
                os << "Q_" << (k + 1) << " = " << res.Q[k].pretty("z")
                   << " (order " << res.achieved_orders[k] << ")\n";
        }
        write_output(cfg, os.str());
        return 0;
    });
}

int run_series_alg(const RunConfig &cfg) {
    if (cfg.curve_file.empty())
        throw FormatError("series-alg needs --curve FILE");
    ScalarDomain d = parse_domain(cfg.domain_text);
    if (d.kind != ScalarDomain::Kind::BigComplex)
        throw FormatError("series-alg needs --domain complex:BITS");
    unsigned terms = cfg.terms ? cfg.terms : 32;
    AlgebraicCurveSpec curve =
        curve_from_json(load_json_file(cfg.curve_file), d.precision_bits);
    if (!cfg.branch_text.empty()) {
        // K:re,im
        PrecisionScope scope(d.precision_bits);
        auto colon = cfg.branch_text.find(':');
        auto comma = cfg.branch_text.find(',', colon + 1);
        if (colon == std::string::npos || comma == std::string::npos)
            throw FormatError("--branch expects K:re,im");
        curve.branch_exponent = std::stol(cfg.branch_text.substr(0, colon));
        curve.branch_coefficient = BigComplex(
            bigfloat_from_string(
                cfg.branch_text.substr(colon + 1, comma - colon - 1)),
            bigfloat_from_string(cfg.branch_text.substr(comma + 1)));
    }
    AlgebraicSeriesResult res =
        algebraic_series(curve, terms, d.precision_bits);
    json j;
    j["meta"] = make_meta(d);
    j["series"] = series_to_json(res.series);
    j["branch"] = json::array({to_decimal_string(res.branch_coefficient.re),
                               to_decimal_string(res.branch_coefficient.im)});
    j["branch_exponent"] = curve.branch_exponent;
    j["residual_max"] = to_decimal_string(res.residual_max);
    emit_json(cfg, std::move(j));
    return 0;
}

int run_apery(const RunConfig &cfg) {
    const unsigned bits =
        static_cast<unsigned>(std::ceil(cfg.digits * 3.3219)) + 16;
    AperySequence seq = apery_sequence(cfg.apery_n, bits);
    if (cfg.format == "json") {
        json j;
        ScalarDomain d = ScalarDomain::real(bits);
        j["meta"] = make_meta(d);
        j["digits"] = cfg.digits;
        j["report"] = apery_sequence_to_json(seq);
        emit_json(cfg, std::move(j));
        return 0;
    }
    std::ostringstream os;
    os << "# mop " << version_string << " apery n_max=" << cfg.apery_n
       << " digits=" << cfg.digits << "\n";
    os << "#  n  approximant            abs_error      ratio\n";
    PrecisionScope scope(bits);
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const AperyStep &s = seq.steps[i];
        os << std::setw(4) << s.n << "  " << std::setw(20)
           << s.approximant.str() << "  "
           << s.abs_error.str(4, std::ios_base::scientific);
        if (i > 0)
            os << "  "
               << seq.error_ratios[i - 1].str(4, std::ios_base::scientific);
        os << "\n";
    }
    write_output(cfg, os.str());
    return 0;
}

int run_kernel_check(const RunConfig &cfg) {
    auto mu = resolve_measures(cfg);
    MultiIndex n = parse_index(cfg.index_text);
    ScalarDomain d = parse_domain(cfg.domain_text);
    unsigned bits = d.is_exact() ? 128 : d.precision_bits;
    std::vector<std::pair<BigFloat, BigFloat>> samples;
    {
        PrecisionScope scope(bits);
        if (!cfg.points_text.empty()) {
            std::stringstream ss(cfg.points_text);
            std::string pair_text;
            while (std::getline(ss, pair_text, ';')) {
                auto comma = pair_text.find(',');
                if (comma == std::string::npos)
                    throw FormatError("--points expects x,y;x,y;...");
                samples.emplace_back(
                    bigfloat_from_string(pair_text.substr(0, comma)),
                    bigfloat_from_string(pair_text.substr(comma + 1)));
            }
        } else if (!mu.front().is_table()) {
            samples.emplace_back(BigFloat(1) / 3, BigFloat(1) / 2);
        }
    }
    PathIndependenceReport rep =
        path_independence_check(mu, n, samples, bits);
    if (cfg.format == "json") {
        json j;
        j["meta"] = make_meta(d);
        j["index"] = multi_index_to_json(n);
        j["paths"] = rep.path_count;
        j["structural_deviation"] =
            rational_to_string(rep.structural_deviation);
        j["numeric_deviation"] = to_decimal_string(rep.numeric_deviation);
        emit_json(cfg, std::move(j));
        return 0;
    }
    std::ostringstream os;
    os << "# mop " << version_string << " kernel-check index=" << n.str()
       << "\n";
    os << "paths = " << rep.path_count << "\n";
    os << "structural_deviation = " << rep.structural_deviation.str() << "\n";
    os << "numeric_deviation = "
       << rep.numeric_deviation.str(4, std::ios_base::scientific) << "\n";
    write_output(cfg, os.str());
    return 0;
}

int run_nnrec(const RunConfig &cfg) {
    auto mu = resolve_measures(cfg);
    MultiIndex n = parse_index(cfg.index_text);
    NNRecurrenceData rec = nn_recurrence(mu, n);
    if (cfg.format == "json") {
        json j;
        j["meta"] = make_meta(ScalarDomain::exact());
        j["index"] = multi_index_to_json(n);
        json bs = json::array(), as = json::array();
        for (const auto &b : rec.b)
            bs.push_back(rational_to_string(b));
        for (const auto &a : rec.a)
            as.push_back(rational_to_string(a));
        j["b"] = std::move(bs);
        j["a"] = std::move(as);
        j["residual_poly"] = poly_to_json(rec.residual_poly);
        emit_json(cfg, std::move(j));
        return 0;
    }
    std::ostringstream os;
    os << "# mop " << version_string << " nnrec index=" << n.str() << "\n";
    for (std::size_t jdir = 0; jdir < rec.b.size(); ++jdir)
        os << "b_" << (jdir + 1) << " = " << rec.b[jdir].str() << "\n";
    for (std::size_t i = 0; i < rec.a.size(); ++i)
        if (n.parts[i] >= 1)
            os << "a_" << (i + 1) << " = " << rec.a[i].str() << "\n";
    os << "residual = " << rec.residual_poly.pretty() << "\n";
    write_output(cfg, os.str());
    return 0;
}

int run_zeros(const RunConfig &cfg) {
    if (cfg.poly_file.empty())
        throw FormatError("zeros needs --poly FILE");
    ScalarDomain d = parse_domain(cfg.domain_text);
    unsigned bits = d.is_exact() ? 256 : d.precision_bits;
    PrecisionScope scope(bits);
    json pj = load_json_file(cfg.poly_file);
    ZeroCloud cloud;
    const std::string dom = pj.value("domain", std::string("rational"));
    if (dom == "rational")
        cloud = zero_cloud(poly_from_json<Rational>(pj), CloudLabel::P, bits);
    else if (dom == "real")
        cloud = zero_cloud(poly_from_json<BigFloat>(pj), CloudLabel::P, bits);
    else
        cloud = zero_cloud(poly_from_json<BigComplex>(pj), CloudLabel::P, bits);

    if (cfg.format == "csv" || cfg.format == "svg") {
        std::ostringstream os;
        if (cfg.format == "csv")
            emit_csv({cloud}, os);
        else
            emit_svg({cloud}, os);
        write_output(cfg, os.str());
        return 0;
    }
    std::ostringstream os;
    os << "# mop " << version_string << " zeros precision=" << bits << "\n";
    for (const auto &z : cloud.points)
        os << to_decimal_string(z.re) << " " << to_decimal_string(z.im)
           << "\n";
    os << "# residual_max = "
       << cloud.residual_max.str(4, std::ios_base::scientific) << "\n";
    write_output(cfg, os.str());
    return 0;
}

int run_fig1(const RunConfig &cfg) {
    MultiIndex n = cfg.index_text.empty() ? MultiIndex({40, 40})
                                          : parse_index(cfg.index_text);
    ScalarDomain d = cfg.domain_text == "exact"
                         ? ScalarDomain::complex_(512)
                         : parse_domain(cfg.domain_text);
    if (d.kind != ScalarDomain::Kind::BigComplex)
        throw FormatError("fig1 needs --domain complex:BITS");
    unsigned terms = cfg.terms ? cfg.terms
                               : static_cast<unsigned>(2 * n.size() + 16);
    std::optional<BigComplex> seed;
    if (!cfg.branch_text.empty()) {
        PrecisionScope scope(d.precision_bits);
        auto comma = cfg.branch_text.find(',');
        if (comma == std::string::npos)
            throw FormatError("--branch expects re,im for fig1");
        seed = BigComplex(
            bigfloat_from_string(cfg.branch_text.substr(0, comma)),
            bigfloat_from_string(cfg.branch_text.substr(comma + 1)));
    }
    Fig1Result res = fig1_pipeline(n, terms, d.precision_bits,
                                   seed ? &*seed : nullptr);
    std::vector<ZeroCloud> clouds{res.a1, res.a2, res.b};
    std::ostringstream meta;
    meta << "# mop " << version_string << " fig1 index=" << n.str()
         << " terms=" << terms << " precision=" << d.precision_bits << "\n"
         << "# branch = " << to_decimal_string(res.branch.re) << " + "
         << to_decimal_string(res.branch.im) << " i\n"
         << "# achieved_order = " << res.achieved_order << "\n"
         << "# series_residual = "
         << res.series_residual.str(4, std::ios_base::scientific) << "\n";
    if (cfg.format == "svg") {
        std::ostringstream os;
        emit_svg(clouds, os);
        write_output(cfg, os.str());
        std::cerr << meta.str();
        return 0;
    }
    std::ostringstream os;
    emit_csv(clouds, os);
    write_output(cfg, os.str());
    std::cerr << meta.str();
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"multiple orthogonal polynomials & Hermite-Pade toolbox"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App *sub, bool with_index) {
        sub->add_option("--preset", cfg.preset,
                        "lebesgue | apery-pair | apery-triple | "
                        "hermite-ext:a1,a2,..:s");
        sub->add_option("--measures", cfg.measures_file,
                        "measure-spec JSON file");
        if (with_index)
            sub->add_option("--index", cfg.index_text, "multi-index i,j,...");
        sub->add_option("--domain", cfg.domain_text,
                        "exact | real:BITS | complex:BITS");
        sub->add_option("--format", cfg.format, "text | json | csv | svg");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    };

    auto *type1 = app.add_subcommand("type1", "type I vector (A_1,...,A_r)");
    add_common(type1, true);
    auto *type2 = app.add_subcommand("type2", "monic type II polynomial");
    add_common(type2, true);
    auto *mixed = app.add_subcommand("mixed", "mixed-type system from a spec");
    add_common(mixed, false);
    mixed->add_option("--spec", cfg.spec_file, "mixed system JSON spec");
    auto *normal = app.add_subcommand("normal", "normality of one index");
    add_common(normal, true);
    auto *perfect = app.add_subcommand("perfect", "scan indices for normality");
    add_common(perfect, false);
    perfect->add_option("--max", cfg.max_size, "max |n| to scan");
    auto *hp1 = app.add_subcommand("hp-type1", "series-side type I");
    add_common(hp1, true);
    hp1->add_option("--series", cfg.series_file, "series JSON file");
    hp1->add_option("--terms", cfg.terms, "series truncation");
    auto *hp2 = app.add_subcommand("hp-type2", "series-side type II");
    add_common(hp2, true);
    hp2->add_option("--series", cfg.series_file, "series JSON file");
    hp2->add_option("--terms", cfg.terms, "series truncation");
    auto *pd = app.add_subcommand("pade", "Pade approximant (r = 1)");
    add_common(pd, true);
    pd->add_option("--series", cfg.series_file, "series JSON file");
    pd->add_option("--terms", cfg.terms, "series truncation");
    auto *alg = app.add_subcommand("series-alg",
                                   "expand an algebraic function at infinity");
    alg->add_option("--curve", cfg.curve_file, "curve JSON file")->required();
    alg->add_option("--terms", cfg.terms, "tail terms");
    alg->add_option("--branch", cfg.branch_text, "branch seed K:re,im");
    alg->add_option("--domain", cfg.domain_text, "complex:BITS");
    alg->add_option("--out", cfg.out_path, "output path");
    auto *ap = app.add_subcommand("apery", "zeta(3) rational approximants");
    ap->add_option("--n", cfg.apery_n, "number of steps");
    ap->add_option("--digits", cfg.digits, "working decimal digits");
    ap->add_option("--format", cfg.format, "text | json");
    ap->add_option("--out", cfg.out_path, "output path");
    auto *kc = app.add_subcommand("kernel-check", "path independence of the "
                                                  "path-sum kernel");
    add_common(kc, true);
    kc->add_option("--points", cfg.points_text, "sample points x,y;x,y;...");
    auto *nn = app.add_subcommand("nnrec", "nearest-neighbor recurrence");
    add_common(nn, true);
    auto *zr = app.add_subcommand("zeros", "zero cloud of a polynomial file");
    zr->add_option("--poly", cfg.poly_file, "polynomial JSON file")->required();
    zr->add_option("--domain", cfg.domain_text, "exact | real:BITS | complex:BITS");
    zr->add_option("--format", cfg.format, "text | csv | svg");
    zr->add_option("--out", cfg.out_path, "output path");
    auto *f1 = app.add_subcommand("fig1", "type I HP zero clouds for the "
                                          "cubic-branch pipeline");
    f1->add_option("--index", cfg.index_text, "N,N");
    f1->add_option("--terms", cfg.terms, "series truncation");
    f1->add_option("--domain", cfg.domain_text, "complex:BITS (default 512)");
    f1->add_option("--branch", cfg.branch_text, "branch seed re,im");
    f1->add_option("--format", cfg.format, "csv | svg");
    f1->add_option("--out", cfg.out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (type1->parsed())
            return run_type_i(cfg);
        if (type2->parsed())
            return run_type_ii(cfg);
        if (mixed->parsed())
            return run_mixed(cfg);
        if (normal->parsed())
            return run_normal(cfg);
        if (perfect->parsed())
            return run_perfect(cfg);
        if (hp1->parsed())
            return run_hp(cfg, true);
        if (hp2->parsed())
            return run_hp(cfg, false);
        if (pd->parsed())
            return run_hp(cfg, false);
        if (alg->parsed())
            return run_series_alg(cfg);
        if (ap->parsed())
            return run_apery(cfg);
        if (kc->parsed())
            return run_kernel_check(cfg);
        if (nn->parsed())
            return run_nnrec(cfg);
        if (zr->parsed())
            return run_zeros(cfg);
        if (f1->parsed())
            return run_fig1(cfg);
    } catch (const NumericFailure &e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const DomainFailure &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
