// Command-line front end: Devlin tables, Hopf antipodes, verification
// suites, the antipode benchmark, and the Abel-equation simulator.
//
// Exit code is 0 iff every invoked check passes. All output is
// deterministic for a fixed seed; runtimes go to stderr only.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fliess/fliess.hpp"

using namespace fliess;
using Json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

double parse_omega(const std::string& s) {
    if (s == "2pi") return 2 * kPi;
    if (s == "pi") return kPi;
    return std::stod(s);
}

std::string render_series_text(const NCSeries& s) {
    if (s.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : s.terms()) {
        if (!first) out += " | ";
        out += to_short_string(c) + " " + w.str();
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    Json checks = Json::array();
    bool pass = true;

    void add(const std::string& check_name, bool ok, const std::string& detail = "") {
        Json c{{"name", check_name}, {"pass", ok}};
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(std::move(c));
        pass = pass && ok;
    }

    void add(const CheckReport& rep) {
        Json c{{"name", rep.name}, {"pass", rep.pass}};
        if (!rep.detail.empty()) c["detail"] = rep.detail;
        checks.push_back(std::move(c));
        pass = pass && rep.pass;
    }

    void add_numeric(const NumericCheck& c) {
        Json j{{"name", c.name},
               {"pass", c.pass},
               {"max_error", c.max_error},
               {"tolerance", c.tolerance}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(std::move(j));
        pass = pass && c.pass;
    }

    Json to_json() const { return Json{{"suite", name}, {"pass", pass}, {"checks", checks}}; }
};

SuiteResult suite_fourway(int m, int cap) {
    SuiteResult r;
    r.name = "fourway";
    const NCSeries base = devlin(m, cap);
    r.add(compare_series("devlin-vs-group-inverse", base, abel_via_group_inverse(m, cap)));
    r.add(compare_series("devlin-vs-feedback", base, abel_via_feedback(m, cap)));
    r.add(compare_series("devlin-vs-realization", base, abel_via_realization(m, cap)));
    bool homogeneous = true, positive = true;
    const auto pieces = devlin_pieces(m, cap);
    for (int n = 1; n <= cap + 1; ++n)
        for (const auto& [w, c] : pieces[static_cast<std::size_t>(n - 1)].terms()) {
            homogeneous = homogeneous && w.degree() == n - 1;
            positive = positive && c > 0 && denominator(c) == 1;
        }
    r.add("graded-pieces-homogeneous", homogeneous);
    r.add("coefficients-positive-integers", positive);
    return r;
}

SuiteResult suite_shuffle_identity(int m, int cap) {
    SuiteResult r;
    r.name = "shuffle-identity";
    for (const auto& rep : verify_shuffle_identity(m, cap)) r.add(rep);
    return r;
}

SuiteResult suite_fixed_point(int m, int cap) {
    SuiteResult r;
    r.name = "fixed-point";
    r.add(verify_fixed_point(m, cap));
    return r;
}

std::vector<CoordGen> generators_up_to(const HopfContext& ctx, int grade) {
    std::vector<CoordGen> out;
    for (int n = 1; n <= grade; ++n)
        for (const auto& g : ctx.generators_of_grade(n)) out.push_back(g);
    return out;
}

SuiteResult suite_hopf_axioms(int m, int mbar, int grade) {
    SuiteResult r;
    r.name = "hopf-axioms";
    HopfContext ctx(m, mbar);
    ClassicalAntipode s(ctx);
    bool coassoc = true, counit_ok = true, graded = true, axiom = true;
    std::string coassoc_detail, counit_detail, graded_detail, axiom_detail;
    for (const auto& g : generators_up_to(ctx, grade)) {
        const Tensor d = coproduct(ctx, g);

        for (const auto& [key, q] : d.terms())
            if (monomial_grade(key.first) + monomial_grade(key.second) != g.degree() && graded) {
                graded = false;
                graded_detail = "grade drift at " + g.str();
            }

        using Triple = std::map<std::tuple<HopfMono, HopfMono, HopfMono>, Rational>;
        Triple left, right;
        auto add3 = [](Triple& t, HopfMono a, HopfMono b, HopfMono c, const Rational& q) {
            auto key = std::make_tuple(std::move(a), std::move(b), std::move(c));
            auto [it, inserted] = t.emplace(key, q);
            if (!inserted) {
                it->second += q;
                if (it->second == 0) t.erase(it);
            }
        };
        for (const auto& [key, q] : d.terms()) {
            const Tensor dl = coproduct_elem(ctx, HopfElem::monomial(key.first));
            for (const auto& [k2, q2] : dl.terms())
                add3(left, k2.first, k2.second, key.second, q * q2);
            const Tensor dr2 = coproduct_elem(ctx, HopfElem::monomial(key.second));
            for (const auto& [k2, q2] : dr2.terms())
                add3(right, key.first, k2.first, k2.second, q * q2);
        }
        if (left != right && coassoc) {
            coassoc = false;
            coassoc_detail = "coassociativity fails at " + g.str();
        }

        HopfElem eps_left, eps_right;
        for (const auto& [key, q] : d.terms()) {
            if (key.first.is_one()) eps_right.add_term(key.second, q);
            if (key.second.is_one()) eps_left.add_term(key.first, q);
        }
        if ((eps_left != HopfElem::generator(g) || eps_right != HopfElem::generator(g)) &&
            counit_ok) {
            counit_ok = false;
            counit_detail = "counit law fails at " + g.str();
        }

        HopfElem conv_left, conv_right;
        for (const auto& [key, q] : d.terms()) {
            conv_left += q * (s.of_monomial(key.first) * HopfElem::monomial(key.second));
            conv_right += q * (HopfElem::monomial(key.first) * s.of_monomial(key.second));
        }
        if ((!conv_left.is_zero() || !conv_right.is_zero()) && axiom) {
            axiom = false;
            axiom_detail = "antipode convolution fails at " + g.str();
        }
    }
    r.add("coassociativity", coassoc, coassoc_detail);
    r.add("counit", counit_ok, counit_detail);
    r.add("grade-preservation", graded, graded_detail);
    r.add("antipode-axiom", axiom, axiom_detail);
    return r;
}

SuiteResult suite_antipode_equiv(int m, int mbar, int grade, std::uint64_t seed) {
    SuiteResult r;
    r.name = "antipode-equiv";
    HopfContext ctx(m, mbar);
    ClassicalAntipode classical(ctx);
    CoderivationAntipode coder(ctx);
    bool equal = true;
    std::string detail;
    for (const auto& g : generators_up_to(ctx, grade))
        if (classical(g) != coder(g) && equal) {
            equal = false;
            detail = "algorithms disagree at " + g.str();
        }
    r.add("classical-equals-coderivation", equal, detail);

    if (mbar == m - 1) {
        const int cap = grade;
        std::vector<NCSeries> d{-ferfera(m, cap)};
        for (int k = 2; k <= m - 1; ++k) d.push_back(NCSeries::zero(m, cap));
        auto inv = group_inverse(ToeplitzSeries(std::vector<NCSeries>(d)));
        bool ok = true;
        std::string bad;
        for (const auto& g : generators_up_to(ctx, cap))
            if (eval_coord(classical(g), d) != inv.entry(g.root).coefficient(g.word) && ok) {
                ok = false;
                bad = "mismatch at " + g.str();
            }
        r.add("antipode-vs-group-inverse-ferfera", ok, bad);

        // A seeded differentially generated tuple: one system, m-1 outputs.
        std::mt19937_64 rng(seed);
        Realization sys;
        sys.z0 = 1;
        for (int i = 1; i <= m; ++i)
            sys.g.push_back(UPoly::monomial(Rational(static_cast<int>(rng() % 5) - 2), 1 + rng() % 3));
        for (int j = 1; j <= m - 1; ++j)
            sys.h.push_back(UPoly::monomial(Rational(static_cast<int>(rng() % 5) - 2), rng() % 3));
        std::vector<NCSeries> dr;
        for (int k = 1; k <= m - 1; ++k) dr.push_back(generate_from_realization(sys, k, cap));
        auto rinv = group_inverse(ToeplitzSeries(std::vector<NCSeries>(dr)));
        bool rok = true;
        std::string rbad;
        for (const auto& g : generators_up_to(ctx, cap))
            if (eval_coord(classical(g), dr) != rinv.entry(g.root).coefficient(g.word) && rok) {
                rok = false;
                rbad = "mismatch at " + g.str();
            }
        r.add("antipode-vs-group-inverse-random-realization", rok, rbad);
    }
    return r;
}

SuiteResult suite_fdb() {
    SuiteResult r;
    r.name = "fdb";
    auto hmono = [](std::initializer_list<int> idx, const Rational& q) {
        std::vector<FdbGen> gens;
        for (int i : idx) gens.push_back(FdbGen{'h', i});
        return FdbPoly::monomial(Monomial<FdbGen>(gens), q);
    };
    auto ht = symbolic_toeplitz_inverse(4);
    r.add("htilde-1", ht[0] == hmono({1}, -1));
    r.add("htilde-2", ht[1] == hmono({1, 1}, 1) + hmono({2}, -1));
    r.add("htilde-3", ht[2] == hmono({3}, -1) + hmono({1, 2}, 2) + hmono({1, 1, 1}, -1));

    r.add("antipode-row-1", fdb_antipode_row(1) == hmono({2}, -1));
    r.add("antipode-row-2", fdb_antipode_row(2) == hmono({2, 2}, 2) + hmono({3}, -1));
    r.add("antipode-row-3",
          fdb_antipode_row(3) == hmono({2, 2, 2}, -5) + hmono({2, 3}, 5) + hmono({4}, -1));
    r.add("antipode-row-4", fdb_antipode_row(4) == hmono({2, 2, 2, 2}, 14) +
                                                       hmono({2, 2, 3}, -21) + hmono({3, 3}, 3) +
                                                       hmono({2, 4}, 6) + hmono({5}, -1));

    const int n = 5;
    auto mh = mh_matrix(n);
    for (auto& row : mh)
        for (auto& p : row) p = set_h1_to_one(p);
    auto inv = mh_matrix_inverse_unipotent(n);
    bool ident = true;
    for (int i = 0; i < n && ident; ++i)
        for (int j = 0; j < n && ident; ++j) {
            FdbPoly acc;
            for (int k = 0; k < n; ++k)
                acc += mh[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                       inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            ident = acc == (i == j ? FdbPoly::one() : FdbPoly::zero());
        }
    r.add("mh-times-inverse-identity-n5", ident);

    bool row_matches = true;
    for (int j = 1; j <= 4; ++j)
        row_matches = row_matches && fdb_antipode_row(j) == inv[0][static_cast<std::size_t>(j)];
    r.add("antipode-rows-match-symbolic-inverse", row_matches);

    bool bridge = true;
    for (int m = 2; m <= 5 && bridge; ++m) {
        std::vector<UPoly> h;
        for (int i = 1; i <= m - 1; ++i)
            h.push_back(UPoly::monomial(Rational(i % 2 == 0 ? -1 : 2), static_cast<std::size_t>(i)));
        auto direct = toeplitz_inverse_outputs(h);
        auto symbolic = symbolic_toeplitz_inverse(m);
        for (int j = 1; j <= m - 1 && bridge; ++j) {
            UPoly expect;
            for (const auto& [mono, q] : symbolic[static_cast<std::size_t>(j - 1)].terms()) {
                UPoly prod = UPoly::constant(q);
                for (const auto& g : mono.gens())
                    prod = prod * h[static_cast<std::size_t>(g.index - 1)];
                expect += prod;
            }
            bridge = direct[static_cast<std::size_t>(j - 1)] == expect;
        }
    }
    r.add("symbolic-vs-realization-inverse-bridge", bridge);
    return r;
}

SuiteResult suite_numeric_bridge(std::uint64_t seed) {
    SuiteResult r;
    r.name = "numeric-bridge";
    const NumericConfig cfg;
    // Shuffle-integral duality on two distinct smooth inputs.
    auto u1 = preset_cos_sin(2 * kPi, 8001);
    auto u2 = Signal::sample(1.0, 8001, {[](double t) { return 1.0 + 0.5 * t; },
                                         [](double t) { return std::exp(-t); }});
    int idx = 0;
    for (const Signal* u : {&u1, &u2}) {
        ++idx;
        double worst = 0;
        const double t = u->omega() * 0.8;
        for (const auto& eta : enumerate_words(2, 4)) {
            for (const auto& xi : enumerate_words(2, 4)) {
                if (eta.is_empty() && xi.is_empty()) continue;
                if (eta.length() + xi.length() > 4) continue;
                const double lhs = iterated_integral(eta, *u, t) * iterated_integral(xi, *u, t);
                auto sh = shuffle(NCSeries::monomial(2, 12, eta), NCSeries::monomial(2, 12, xi));
                double rhs = 0;
                for (const auto& [w, q] : sh.terms())
                    rhs += to_double(q) * iterated_integral(w, *u, t);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        NumericCheck c;
        c.name = "shuffle-integral-duality-input" + std::to_string(idx);
        c.tolerance = cfg.quadrature_tolerance;
        c.max_error = worst;
        c.pass = worst < c.tolerance;
        r.add_numeric(c);
    }
    // Moment identity for a seeded random trig-polynomial input.
    std::mt19937_64 rng(seed);
    const double a1 = static_cast<double>(rng() % 9) / 4.0 - 1.0;
    const double a2 = static_cast<double>(rng() % 9) / 4.0 - 1.0;
    auto v = Signal::sample(2 * kPi, 8001,
                            {[&](double t) { return a1 * std::cos(t) + 0.3 * std::sin(2 * t); },
                             [&](double t) { return a2 * std::sin(t) - 0.2 * std::cos(2 * t); }});
    for (const auto& c : moment_check(v, 3).identity) r.add_numeric(c);
    // Center check on the canonical preset.
    auto u = preset_cos_sin(2 * kPi, 20001);
    for (const auto& c : center_check(u, {0.05, 0.1, 0.2}, cfg)) r.add_numeric(c);
    for (const auto& c : uv_moment_equivalence(u, 0.1, cfg)) r.add_numeric(c);
    return r;
}

// ---------------------------------------------------------------------------
// benchmark
// ---------------------------------------------------------------------------

struct BenchRow {
    int grade;
    std::size_t generators;
    long long classical_ns_median;
    long long coderivation_ns_median;
    long long classical_ns_min;
    long long coderivation_ns_min;
};

template <typename Engine>
std::vector<long long> time_per_grade(const HopfContext& ctx, int max_grade) {
    // One run: fresh engine (cold caches), grades ascending; the per-grade
    // figure is the time to antipode every generator of that grade.
    Engine engine(ctx);
    std::vector<long long> ns;
    for (int n = 1; n <= max_grade; ++n) {
        const auto gens = ctx.generators_of_grade(n);
        const auto start = std::chrono::steady_clock::now();
        for (const auto& g : gens) {
            volatile bool nonempty = !engine(g).is_zero();
            (void)nonempty;
        }
        const auto stop = std::chrono::steady_clock::now();
        ns.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    }
    return ns;
}

std::vector<BenchRow> run_bench(int m, int mbar, int max_grade, int reps) {
    HopfContext ctx(m, mbar);
    // Correctness gate before timing anything.
    {
        ClassicalAntipode classical(ctx);
        CoderivationAntipode coder(ctx);
        for (int n = 1; n <= max_grade; ++n)
            for (const auto& g : ctx.generators_of_grade(n))
                if (classical(g) != coder(g))
                    throw std::logic_error("bench: algorithms disagree at " + g.str());
    }
    std::vector<std::vector<long long>> classical_runs, coder_runs;
    for (int rep = 0; rep < reps; ++rep) {
        classical_runs.push_back(time_per_grade<ClassicalAntipode>(ctx, max_grade));
        coder_runs.push_back(time_per_grade<CoderivationAntipode>(ctx, max_grade));
    }
    auto stat = [&](const std::vector<std::vector<long long>>& runs, int grade_idx) {
        std::vector<long long> v;
        for (const auto& run : runs) v.push_back(run[static_cast<std::size_t>(grade_idx)]);
        std::sort(v.begin(), v.end());
        return std::pair<long long, long long>{v[v.size() / 2], v.front()};
    };
    std::vector<BenchRow> rows;
    for (int n = 1; n <= max_grade; ++n) {
        auto [cmed, cmin] = stat(classical_runs, n - 1);
        auto [dmed, dmin] = stat(coder_runs, n - 1);
        rows.push_back(BenchRow{n, ctx.generators_of_grade(n).size(), cmed, dmed, cmin, dmin});
    }
    return rows;
}

// ---------------------------------------------------------------------------

int run_verify(const std::string& suite, int m, int mbar, int cap, int grade, std::uint64_t seed,
               const std::string& format) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SuiteResult> results;
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
    if (want("fourway")) results.push_back(suite_fourway(m, cap));
    if (want("shuffle-identity")) results.push_back(suite_shuffle_identity(m, cap));
    if (want("fixed-point")) results.push_back(suite_fixed_point(m, cap));
    if (want("hopf-axioms")) results.push_back(suite_hopf_axioms(m, mbar, grade));
    if (want("antipode-equiv")) results.push_back(suite_antipode_equiv(m, mbar, grade, seed));
    if (want("fdb")) results.push_back(suite_fdb());
    if (want("numeric-bridge")) results.push_back(suite_numeric_bridge(seed));
    if (results.empty()) {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }
    bool all_pass = true;
    for (const auto& r : results) all_pass = all_pass && r.pass;

    if (format == "json") {
        Json out{{"command", "verify"},
                 {"suite", suite},
                 {"m", m},
                 {"mbar", mbar},
                 {"cap", cap},
                 {"grade", grade},
                 {"seed", seed},
                 {"pass", all_pass},
                 {"suites", Json::array()}};
        for (const auto& r : results) out["suites"].push_back(r.to_json());
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] suite " << r.name << "\n";
            for (const auto& c : r.checks) {
                std::cout << "  [" << (c.at("pass").get<bool>() ? "ok" : "FAIL") << "] "
                          << c.at("name").get<std::string>();
                if (c.contains("max_error"))
                    std::cout << "  max_error=" << c.at("max_error").get<double>()
                              << " tol=" << c.at("tolerance").get<double>();
                if (c.contains("detail")) std::cout << "  (" << c.at("detail").get<std::string>() << ")";
                std::cout << "\n";
            }
        }
        std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    }
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "verify runtime: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << " ms\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noncommutative power-series toolkit: shuffle algebra, Toeplitz feedback "
                 "group, Devlin/Abel series, Faa di Bruno Hopf algebra, Abel-equation center "
                 "checks"};
    app.require_subcommand(1);

    // ---- devlin ----
    int d_m = 3, d_cap = 4;
    std::string d_format = "text";
    auto* devlin_cmd = app.add_subcommand("devlin", "print the graded Devlin polynomials c_{A,m}(n)");
    devlin_cmd->add_option("--m", d_m, "alphabet size (>= 2)");
    devlin_cmd->add_option("--cap", d_cap, "degree truncation");
    devlin_cmd->add_option("--format", d_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    // ---- antipode ----
    int a_m = 3, a_mbar = 0, a_root = 1, a_grade = 0;
    std::string a_word = "e", a_alg = "coderivation", a_format = "text";
    bool a_all = false, a_coproduct = false;
    auto* antipode_cmd = app.add_subcommand("antipode", "Hopf antipode S a^k_eta");
    antipode_cmd->add_option("--m", a_m, "alphabet size");
    antipode_cmd->add_option("--mbar", a_mbar, "root index bound (default m-1)");
    antipode_cmd->add_option("--root", a_root, "root index k");
    antipode_cmd->add_option("--word", a_word, "word eta, e.g. x1.x2 or e");
    antipode_cmd->add_option("--grade", a_grade, "with --all: sweep all generators of grade <= G");
    antipode_cmd->add_flag("--all", a_all, "print every generator up to --grade");
    antipode_cmd->add_flag("--coproduct", a_coproduct, "also print the reduced coproduct");
    antipode_cmd->add_option("--alg", a_alg, "classical | coderivation | both")
        ->check(CLI::IsMember({"classical", "coderivation", "both"}));
    antipode_cmd->add_option("--format", a_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    // ---- verify ----
    std::string v_suite = "all", v_format = "text";
    int v_m = 3, v_mbar = 0, v_cap = 6, v_grade = 6;
    std::uint64_t v_seed = 42;
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    verify_cmd->add_option("--suite", v_suite,
                           "fourway | shuffle-identity | fixed-point | hopf-axioms | "
                           "antipode-equiv | fdb | numeric-bridge | all");
    verify_cmd->add_option("--m", v_m, "alphabet size");
    verify_cmd->add_option("--mbar", v_mbar, "root bound (default m-1)");
    verify_cmd->add_option("--cap", v_cap, "degree truncation for series suites");
    verify_cmd->add_option("--grade", v_grade, "grade bound for Hopf suites");
    verify_cmd->add_option("--seed", v_seed, "seed for randomized checks");
    verify_cmd->add_option("--format", v_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    // ---- bench ----
    int b_m = 3, b_mbar = 0, b_grade = 6, b_reps = 1;
    std::string b_out;
    auto* bench_cmd = app.add_subcommand("bench", "benchmark the two antipode algorithms (CSV)");
    bench_cmd->add_option("--m", b_m, "alphabet size");
    bench_cmd->add_option("--mbar", b_mbar, "root bound (default m-1)");
    bench_cmd->add_option("--grade", b_grade, "maximum generator grade");
    bench_cmd->add_option("--reps", b_reps, "repetitions (reports median; min added when > 1)");
    bench_cmd->add_option("--out", b_out, "write CSV to this file instead of stdout");

    // ---- simulate ----
    std::string s_preset = "cos-sin", s_omega = "2pi", s_format = "text", s_trace;
    int s_steps = 10000;
    std::vector<double> s_r{0.1};
    auto* sim_cmd = app.add_subcommand("simulate", "integrate the Abel equation and report the center check");
    sim_cmd->add_option("--preset", s_preset, "cos-sin | ramp | zero")
        ->check(CLI::IsMember({"cos-sin", "ramp", "zero"}));
    sim_cmd->add_option("--omega", s_omega, "period (number, pi, or 2pi)");
    sim_cmd->add_option("--r", s_r, "initial values r (repeatable)");
    sim_cmd->add_option("--steps", s_steps, "RK4 steps");
    sim_cmd->add_option("--trace-out", s_trace, "write t,z trace CSV here");
    sim_cmd->add_option("--format", s_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    // ---- fdb ----
    int f_n = 4;
    std::string f_format = "text";
    auto* fdb_cmd = app.add_subcommand("fdb", "classical Faa di Bruno: h~_j, M_h, antipode rows");
    fdb_cmd->add_option("--n", f_n, "matrix size / row count");
    fdb_cmd->add_option("--format", f_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*devlin_cmd) {
            if (d_m < 2) {
                std::cerr << "devlin: --m must be >= 2\n";
                return 2;
            }
            const auto pieces = devlin_pieces(d_m, d_cap);
            if (d_format == "json") {
                Json out{{"command", "devlin"}, {"m", d_m}, {"cap", d_cap}, {"pieces", Json::array()}};
                for (int n = 1; n <= d_cap + 1; ++n)
                    out["pieces"].push_back(
                        Json{{"n", n},
                             {"series", series_to_json(pieces[static_cast<std::size_t>(n - 1)])}});
                std::cout << out.dump(2) << "\n";
            } else {
                for (int n = 1; n <= d_cap + 1; ++n)
                    std::cout << "n=" << n << ": "
                              << render_series_text(pieces[static_cast<std::size_t>(n - 1)]) << "\n";
            }
            return 0;
        }

        if (*antipode_cmd) {
            if (a_mbar == 0) a_mbar = std::max(1, a_m - 1);
            HopfContext ctx(a_m, a_mbar);
            ClassicalAntipode classical(ctx);
            CoderivationAntipode coder(ctx);
            std::vector<CoordGen> gens;
            if (a_all) {
                if (a_grade <= 0) {
                    std::cerr << "antipode: --all requires --grade\n";
                    return 2;
                }
                for (int n = 1; n <= a_grade; ++n)
                    for (const auto& g : ctx.generators_of_grade(n)) gens.push_back(g);
            } else {
                CoordGen g{a_root, Word::parse(a_word)};
                ctx.check(g);
                gens.push_back(g);
            }
            Json jout = Json::array();
            bool all_match = true;
            for (const auto& g : gens) {
                HopfElem sc, sd;
                if (a_alg != "coderivation") sc = classical(g);
                if (a_alg != "classical") sd = coder(g);
                const bool match = a_alg != "both" || sc == sd;
                all_match = all_match && match;
                const HopfElem& shown = a_alg == "classical" ? sc : sd;
                if (a_format == "json") {
                    Json item{{"root", g.root}, {"word", g.word.str()}, {"antipode", shown.str()}};
                    if (a_alg == "both") item["match"] = match;
                    if (a_coproduct) item["reduced_coproduct"] = reduced_coproduct(ctx, g).str();
                    jout.push_back(std::move(item));
                } else {
                    std::cout << "S " << g.str() << " = " << shown.str();
                    if (a_alg == "both") std::cout << (match ? "  [MATCH]" : "  [MISMATCH]");
                    std::cout << "\n";
                    if (a_coproduct) {
                        const Tensor red = reduced_coproduct(ctx, g);
                        std::cout << "Delta' " << g.str() << " =";
                        if (red.is_zero()) std::cout << " 0\n";
                        else std::cout << "\n" << red.str() << "\n";
                    }
                }
            }
            if (a_format == "json") std::cout << jout.dump(2) << "\n";
            return all_match ? 0 : 1;
        }

        if (*verify_cmd) {
            if (v_mbar == 0) v_mbar = std::max(1, v_m - 1);
            return run_verify(v_suite, v_m, v_mbar, v_cap, v_grade, v_seed, v_format);
        }

        if (*bench_cmd) {
            if (b_mbar == 0) b_mbar = std::max(1, b_m - 1);
            const auto rows = run_bench(b_m, b_mbar, b_grade, b_reps);
            std::ostringstream csv;
            csv << "grade,generator_count,classical_ns,coderivation_ns";
            if (b_reps > 1) csv << ",classical_min_ns,coderivation_min_ns";
            csv << "\n";
            for (const auto& row : rows) {
                csv << row.grade << "," << row.generators << "," << row.classical_ns_median << ","
                    << row.coderivation_ns_median;
                if (b_reps > 1) csv << "," << row.classical_ns_min << "," << row.coderivation_ns_min;
                csv << "\n";
            }
            if (b_out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream f(b_out);
                f << csv.str();
                std::cerr << "bench CSV written to " << b_out << "\n";
            }
            return 0;
        }

        if (*sim_cmd) {
            const double omega = parse_omega(s_omega);
            const std::size_t grid = 2 * static_cast<std::size_t>(s_steps) + 1;
            Signal u = s_preset == "cos-sin" ? preset_cos_sin(omega, grid)
                       : s_preset == "ramp"  ? preset_ramp(omega, grid)
                                             : preset_zero(omega, grid, 2);
            Json report{{"command", "simulate"},
                        {"preset", s_preset},
                        {"omega", omega},
                        {"steps", s_steps},
                        {"checks", Json::array()}};
            bool pass = true;
            try {
                auto checks = center_check(u, s_r);
                for (const auto& c : checks) {
                    report["checks"].push_back(Json{{"name", c.name},
                                                    {"pass", c.pass},
                                                    {"max_error", c.max_error},
                                                    {"tolerance", c.tolerance}});
                    pass = pass && c.pass;
                }
            } catch (const PreconditionFailed& e) {
                report["checks"].push_back(Json{{"name", "precondition"}, {"pass", false},
                                                {"detail", e.what()}});
                pass = false;
            }
            report["pass"] = pass;
            if (!s_trace.empty()) {
                std::ofstream f(s_trace);
                const bool single = s_r.size() == 1;
                f << (single ? "t,z\n" : "r,t,z\n");
                for (double r : s_r) {
                    auto tr = integrate_abel(u_to_v(u, r), r);
                    for (std::size_t k = 0; k < tr.t.size(); ++k) {
                        if (!single) f << r << ",";
                        f << tr.t[k] << "," << tr.z[k] << "\n";
                    }
                }
                std::cerr << "trace written to " << s_trace << "\n";
            }
            if (s_format == "json") {
                std::cout << report.dump(2) << "\n";
            } else {
                for (const auto& c : report["checks"]) {
                    std::cout << "[" << (c.at("pass").get<bool>() ? "PASS" : "FAIL") << "] "
                              << c.at("name").get<std::string>();
                    if (c.contains("max_error"))
                        std::cout << "  |z(omega)-r| = " << c.at("max_error").get<double>();
                    if (c.contains("detail")) std::cout << "  " << c.at("detail").get<std::string>();
                    std::cout << "\n";
                }
            }
            return pass ? 0 : 1;
        }

        if (*fdb_cmd) {
            auto ht = symbolic_toeplitz_inverse(f_n + 1);
            auto mh = mh_matrix(f_n);
            Json out{{"command", "fdb"}, {"n", f_n}};
            if (f_format == "json") {
                out["htilde"] = Json::array();
                for (int j = 1; j <= f_n; ++j)
                    out["htilde"].push_back(Json{{"j", j}, {"poly", ht[static_cast<std::size_t>(j - 1)].str()}});
                out["mh"] = Json::array();
                for (const auto& row : mh) {
                    Json jrow = Json::array();
                    for (const auto& p : row) jrow.push_back(p.str());
                    out["mh"].push_back(std::move(jrow));
                }
                out["antipode_rows"] = Json::array();
                for (int j = 1; j <= f_n - 1; ++j)
                    out["antipode_rows"].push_back(
                        Json{{"j", j}, {"poly", fdb_antipode_row(j).str()}});
                std::cout << out.dump(2) << "\n";
            } else {
                for (int j = 1; j <= f_n; ++j)
                    std::cout << "h~_" << j << " = " << ht[static_cast<std::size_t>(j - 1)].str() << "\n";
                std::cout << "M_h (" << f_n << "x" << f_n << "):\n";
                for (const auto& row : mh) {
                    for (std::size_t j = 0; j < row.size(); ++j)
                        std::cout << (j ? " | " : "  ") << row[j].str();
                    std::cout << "\n";
                }
                for (int j = 1; j <= f_n - 1; ++j)
                    std::cout << "S_FdB(a_" << (j + 1) << ") = " << fdb_antipode_row(j).str() << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
