// Acceptance suite: one check per golden criterion, each printed as a single
// PASS/FAIL line. Run with no arguments for the full suite or with an index
// (1..9) for one criterion. Exit code = number of failed criteria.
//
// Two checks are kept at their original strict bounds even though the exact
// computation demonstrates the bounds themselves are wrong; they fail with a
// diagnostic stating the measured value (see the notes printed on failure).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "mop/mop.hpp"
#include "support/oracles.hpp"

using namespace mop;

namespace {

struct CheckResult {
    std::vector<std::string> failures;
    void require(bool ok, const std::string &what) {
        if (!ok)
            failures.push_back(what);
    }
};

std::vector<std::vector<MeasureSpec>> acceptance_presets() {
    return {preset_lebesgue(), preset_apery_pair(), preset_apery_triple(),
            preset_hermite_external({Rational(1), Rational(-1)}, Rational(1))};
}

const char *preset_name(std::size_t i) {
    static const char *names[] = {"lebesgue", "apery-pair", "apery-triple",
                                  "hermite-ext"};
    return names[i];
}

// 1: exact orthogonality residuals for every preset and every |n| <= 6
void crit_exactness(CheckResult &r) {
    auto systems = acceptance_presets();
    for (std::size_t s = 0; s < systems.size(); ++s) {
        const auto &mu = systems[s];
        for (const auto &n : indices_up_to(mu.size(), 6, 1)) {
            auto p = type_ii(mu, n);
            for (const auto &res : p.residuals)
                r.require(res.is_zero(), std::string(preset_name(s)) + " " +
                                             n.str() +
                                             ": type II residual nonzero");
            auto a = type_i(mu, n);
            for (const auto &res : a.residuals)
                r.require(res.is_zero(), std::string(preset_name(s)) + " " +
                                             n.str() +
                                             ": type I residual nonzero");
            r.require(a.normalization_value == 1,
                      std::string(preset_name(s)) + " " + n.str() +
                          ": type I normalization != 1");
        }
    }
}

// 2: M_I = transpose(M_II) on 50 randomized instances
void crit_transpose(CheckResult &r) {
    mop::tests::Rng rng(20250810);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t dim = 1 + static_cast<std::size_t>(rng.next_in(0, 2));
        std::vector<unsigned> parts(dim);
        for (auto &p : parts)
            p = static_cast<unsigned>(rng.next_in(0, 3));
        if (std::accumulate(parts.begin(), parts.end(), 0u) == 0)
            parts[0] = 1 + static_cast<unsigned>(rng.next_in(0, 2));
        MultiIndex n(parts);
        std::vector<MeasureSpec> mu;
        for (std::size_t j = 0; j < dim; ++j) {
            std::vector<Rational> vals;
            for (std::size_t k = 0; k < 2 * n.size() + 2; ++k)
                vals.push_back(rng.next_rational(15, 15));
            mu.push_back(MeasureSpec::moment_table(std::move(vals)));
        }
        auto sys = assemble_systems(mu, n);
        r.require(sys.m_type_i == sys.m_type_ii.transpose(),
                  "transpose identity failed at trial " +
                      std::to_string(trial) + ", index " + n.str());
    }
}

// 3: classical reduction to monic shifted Legendre, zeros real simple in (0,1)
void crit_classical(CheckResult &r) {
    auto mu = preset_lebesgue();
    auto gs = mop::tests::gram_schmidt_monic(mu[0], 8);
    const unsigned bits = 256;
    PrecisionScope scope(bits + 32);
    const BigFloat imag_tol = pow2(-200);
    const BigFloat resid_tol = BigFloat("1e-30");
    for (unsigned k = 1; k <= 8; ++k) {
        auto sol = type_ii(mu, MultiIndex({k}));
        r.require(sol.poly == gs[k],
                  "k=" + std::to_string(k) + ": Gram-Schmidt oracle mismatch");
        RootSet roots = poly_roots(sol.poly, bits);
        for (std::size_t i = 0; i < roots.points.size(); ++i) {
            const auto &z = roots.points[i];
            r.require(boost::multiprecision::abs(z.im) < imag_tol,
                      "k=" + std::to_string(k) + ": zero not real");
            r.require(z.re > 0 && z.re < 1,
                      "k=" + std::to_string(k) + ": zero outside (0,1)");
            r.require(roots.multiplicity[i] == 1,
                      "k=" + std::to_string(k) + ": zero not simple");
            r.require(roots.residuals[i] < resid_tol,
                      "k=" + std::to_string(k) + ": root residual too large");
        }
    }
}

// 4: hp over cauchy series equals the moment-side solutions exactly
void crit_duality(CheckResult &r) {
    auto systems = acceptance_presets();
    for (std::size_t s = 0; s < systems.size(); ++s) {
        const auto &mu = systems[s];
        for (const auto &n : indices_up_to(mu.size(), 6, 1)) {
            std::vector<LaurentSeries<Rational>> f;
            for (const auto &m : mu)
                f.push_back(cauchy_series(m, 2 * n.size() + 4));
            auto hp2 = hp_type_ii(f, n);
            auto t2 = type_ii(mu, n);
            r.require(hp2.P == t2.poly, std::string(preset_name(s)) + " " +
                                            n.str() + ": type II mismatch");
            auto hp1 = hp_type_i(f, n);
            auto t1 = type_i(mu, n);
            bool same = true;
            for (std::size_t j = 0; j < mu.size(); ++j)
                same = same && hp1.A[j] == t1.polys[j];
            r.require(same, std::string(preset_name(s)) + " " + n.str() +
                                ": type I mismatch");
        }
    }
}

// 5: the zeta(3) pipeline
void crit_apery(CheckResult &r) {
    const unsigned digits = 60;
    const unsigned bits = static_cast<unsigned>(std::ceil(digits * 3.3219)) + 16;
    AperySequence seq = apery_sequence(10, bits);
    PrecisionScope scope(bits);

    const AperyStep &s1 = seq.steps.front();
    r.require(s1.approximant == Rational(6, 5),
              "step 1 approximant is not 6/5");
    r.require(boost::multiprecision::abs(s1.abs_error - BigFloat("2.06e-3")) <
                  BigFloat("1e-5"),
              "step 1 |zeta3 - 6/5| outside 2.06e-3 +- 1e-5");

    for (std::size_t i = 0; i + 1 < seq.steps.size(); ++i)
        r.require(seq.steps[i + 1].abs_error < seq.steps[i].abs_error,
                  "abs_error not strictly decreasing at n=" +
                      std::to_string(i + 2));
    r.require(seq.steps[9].abs_error < BigFloat("1e-12"),
              "abs_error(10) >= 1e-12");

    for (const auto &s : seq.steps) {
        r.require(s.A.evaluate(Rational(1)).is_zero(),
                  "A(1) != 0 at n=" + std::to_string(s.n));
        r.require(s.order_first >= static_cast<long>(s.n) + 1 &&
                      s.order_second >= static_cast<long>(s.n) + 1,
                  "order condition failed at n=" + std::to_string(s.n));
    }

    // ratio band as originally stated; the computed sequence reproduces the
    // classical convergents (6/5, 351/292, ...) whose error ratios converge
    // to (1+sqrt2)^-8 ~ 8.66e-4, far below this band
    for (std::size_t n = 6; n <= 9; ++n) {
        const BigFloat &ratio = seq.error_ratios[n - 1]; // error(n+1)/error(n)
        std::ostringstream os;
        os << "ratio abs_error(" << n + 1 << ")/abs_error(" << n << ") = "
           << ratio.str(4, std::ios_base::scientific)
           << " outside [0.025, 0.035]";
        r.require(ratio >= BigFloat("0.025") && ratio <= BigFloat("0.035"),
                  os.str());
    }
}

// 6: structural path independence for the r = 2 presets, |n| <= 5
void crit_kernel(CheckResult &r) {
    std::vector<std::vector<MeasureSpec>> systems{
        preset_apery_pair(),
        preset_hermite_external({Rational(1), Rational(-1)}, Rational(1))};
    const char *names[] = {"apery-pair", "hermite-ext"};
    for (std::size_t s = 0; s < systems.size(); ++s) {
        for (const auto &n : indices_up_to(2, 5, 1)) {
            auto rep = path_independence_check(systems[s], n, {}, 128);
            r.require(rep.structural_deviation.is_zero(),
                      std::string(names[s]) + " " + n.str() +
                          ": structural deviation nonzero");
        }
    }
}

// 7: nearest-neighbor recurrence residuals vanish exactly
void crit_nnrec(CheckResult &r) {
    auto leb = preset_lebesgue();
    auto rec = nn_recurrence(leb, MultiIndex({1}));
    r.require(rec.b == std::vector<Rational>{Rational(1, 2)},
              "lebesgue n=(1): b != 1/2");
    r.require(rec.a == std::vector<Rational>{Rational(1, 12)},
              "lebesgue n=(1): a != 1/12");
    r.require(rec.residual_poly.is_zero(), "lebesgue n=(1): residual nonzero");
    for (unsigned k = 0; k <= 6; ++k)
        r.require(nn_recurrence(leb, MultiIndex({k})).residual_poly.is_zero(),
                  "lebesgue n=(" + std::to_string(k) + "): residual nonzero");
    auto pair = preset_apery_pair();
    for (const auto &n : indices_up_to(2, 6))
        r.require(nn_recurrence(pair, n).residual_poly.is_zero(),
                  "apery-pair " + n.str() + ": residual nonzero");
}

// 8: desk-scale Figure 1 pipeline
void crit_fig1(CheckResult &r) {
    const MultiIndex n({40, 40});
    const unsigned bits = 512;
    Fig1Result res = fig1_pipeline(n, 176, bits);
    r.require(res.achieved_order >= 80,
              "order_of_contact " + std::to_string(res.achieved_order) +
                  " < 80");
    r.require(res.a1.points.size() == 39 && res.a2.points.size() == 39,
              "A cloud sizes wrong");

    // zero radius as originally stated; the exact solution carries one
    // escaping zero in A2 and B (leading-coefficient collapse ~2.6e-7), a
    // known effect for these approximants, so the bound fails there
    PrecisionScope scope(bits);
    for (const auto *cloud : {&res.a1, &res.a2, &res.b}) {
        BigFloat maxmod(0);
        for (const auto &z : cloud->points) {
            BigFloat m = abs_value(z);
            if (m > maxmod)
                maxmod = m;
        }
        std::ostringstream os;
        os << to_string(cloud->label)
           << ": max |z| = " << maxmod.str(5, std::ios_base::fmtflags(0))
           << " exceeds 10";
        r.require(maxmod <= 10, os.str());
    }

    // CSV round trip, bit-exact at the recorded precision
    std::vector<ZeroCloud> clouds{res.a1, res.a2, res.b};
    std::string csv_path = "acceptance_fig1.csv";
    std::string svg_path = "acceptance_fig1.svg";
    emit(clouds, EmitFormat::Csv, csv_path);
    emit(clouds, EmitFormat::Svg, svg_path);
    {
        std::ifstream is(csv_path);
        auto back = parse_zero_csv(is, bits);
        bool ok = back.size() == 3;
        if (ok)
            for (std::size_t c = 0; c < 3; ++c) {
                ok = ok && back[c].points.size() == clouds[c].points.size();
                if (!ok)
                    break;
                for (std::size_t i = 0; i < back[c].points.size(); ++i)
                    ok = ok && back[c].points[i] == clouds[c].points[i];
            }
        r.require(ok, "CSV round trip not bit-exact");
    }
    {
        std::ifstream is(svg_path);
        std::stringstream buf;
        buf << is.rdbuf();
        std::string svg = buf.str();
        r.require(svg.rfind("<svg", 0) == 0 &&
                      svg.find("</svg>") != std::string::npos &&
                      svg.find("class=\"A1\"") != std::string::npos &&
                      svg.find("class=\"A2\"") != std::string::npos &&
                      svg.find("class=\"B\"") != std::string::npos,
                  "SVG structure invalid");
    }
    std::remove(csv_path.c_str());
    std::remove(svg_path.c_str());
}

// 9: perfectness scans
void crit_perfectness(CheckResult &r) {
    r.require(perfectness_scan(preset_lebesgue(), 6).empty(),
              "lebesgue: non-normal index below 6");
    r.require(perfectness_scan(preset_apery_pair(), 5).empty(),
              "apery-pair: non-normal index below 5");
    r.require(perfectness_scan(preset_apery_triple(), 5).empty(),
              "apery-triple: non-normal index below 5");
    std::vector<MeasureSpec> dup{MeasureSpec::lebesgue_unit(),
                                 MeasureSpec::lebesgue_unit()};
    auto failures = perfectness_scan(dup, 2);
    r.require(std::find(failures.begin(), failures.end(),
                        MultiIndex({1, 1})) != failures.end(),
              "duplicated pair: (1,1) not flagged");
}

struct Criterion {
    int id;
    const char *label;
    double budget_seconds; // 0 = no stated budget
    std::function<void(CheckResult &)> run;
};

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {1, "exactness of type I/II solutions, all presets, |n| <= 6", 60,
         crit_exactness},
        {2, "transpose identity on 50 randomized systems", 5, crit_transpose},
        {3, "classical reduction to shifted Legendre, zeros in (0,1)", 0,
         crit_classical},
        {4, "moment/series duality, all presets, |n| <= 6", 0, crit_duality},
        {5, "apery zeta(3) pipeline through n = 10", 120, crit_apery},
        {6, "kernel path independence, |n| <= 5", 60, crit_kernel},
        {7, "nearest-neighbor recurrences, residual exactly zero", 0,
         crit_nnrec},
        {8, "figure-1 smoke at (40,40), 512 bits", 600, crit_fig1},
        {9, "normality / perfectness scans", 0, crit_perfectness}};
    return all;
}

bool run_criterion(const Criterion &c) {
    CheckResult result;
    auto t0 = std::chrono::steady_clock::now();
    try {
        c.run(result);
    } catch (const std::exception &e) {
        result.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
        std::ostringstream os;
        os << "runtime " << secs << " s exceeds budget " << c.budget_seconds
           << " s";
        result.failures.push_back(os.str());
    }
    bool pass = result.failures.empty();
    std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL",
                c.id, c.label, secs);
    for (const auto &f : result.failures)
        std::printf("       - %s\n", f.c_str());
    return pass;
}

} // namespace

int main(int argc, char **argv) {
    int only = 0;
    if (argc > 1)
        only = std::atoi(argv[1]);
    int failed = 0;
    for (const auto &c : criteria()) {
        if (only != 0 && c.id != only)
            continue;
        if (!run_criterion(c))
            ++failed;
    }
    return failed;
}
