// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "slcap/slcap.hpp"

using namespace slcap;
using std::numbers::pi;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StepFunction random_step(std::mt19937_64& rng, int max_pieces = 20) {
    std::uniform_int_distribution<int> count(1, max_pieces);
    std::uniform_real_distribution<double> logv(-2.0, 2.0);
    std::vector<Piece> raw;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
        raw.push_back(Piece{std::pow(10.0, logv(rng)), std::pow(10.0, logv(rng))});
    }
    return StepFunction::from_pieces(std::move(raw));
}

RadialProfile random_admissible_profile(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(2, 30);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int M = count(rng);
    std::vector<double> knots(static_cast<std::size_t>(M) + 1);
    std::vector<double> values(static_cast<std::size_t>(M) + 1);
    for (int j = 0; j <= M; ++j) knots[static_cast<std::size_t>(j)] = static_cast<double>(j) / M;
    knots.back() = 1.0;
    values.front() = 1.0;
    values.back() = 0.0;
    for (int j = 1; j < M; ++j) values[static_cast<std::size_t>(j)] = u(rng);
    return RadialProfile(knots, values);
}

void criterion_1_point_capacity() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res2 = point_relative_capacity(2, 2000, {}, 5e-3);
    const double elapsed = seconds_since(t0);
    const auto res3 = point_relative_capacity(3, 2000, {}, 5e-3);
    const bool ok = res2.ok && res3.ok && elapsed < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "n=2: %.6f vs 4pi (rel %.2e, %.2fs); n=3 rel %.2e", res2.estimate.value,
                  res2.rel_error, elapsed, res3.rel_error);
    report(1, ok, "point relative capacity = n^n Omega_n within 0.5% at M=2000", buf);
}

void criterion_2_sandwich() {
    SolverOptions opts;
    opts.max_iterations = 4000;
    bool ok = true;
    std::string detail;
    for (int k = 0; k <= 9; ++k) {
        const double r = 0.1 * k;
        const Condenser c(2, r, LorentzExponents(2.0, 1.0));
        const auto est = solve_condenser(c, 256, opts);
        const bool row_ok = est.lower <= est.value && est.value <= est.upper;
        if (!row_ok) {
            ok = false;
            detail = "violated at r = " + std::to_string(r);
        }
    }
    if (ok) detail = "10 radii, exact bound check";
    report(2, ok, "condenser values sit inside the certified (2,1) sandwich", detail);
}

void criterion_3_classical_oracle() {
    const Condenser c(2, 0.5, LorentzExponents(2.0, 2.0));
    const auto est = solve_condenser(c, 1024, {});
    const double oracle = 2.0 * pi / std::log(2.0);
    const double rel = std::fabs(est.value - oracle) / oracle;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "value %.6f vs 2pi/ln2 = %.6f, rel %.2e", est.value,
                  oracle, rel);
    report(3, rel < 1e-2, "radial solver matches the harmonic-profile 2-capacity within 1%",
           buf);
}

void criterion_4_global_point() {
    const std::vector<double> rs = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const auto res = global_point_capacity(2, rs);
    const double r = 1e-6;
    const double closed_form = pi * (2.0 + r) * (2.0 + r);
    const double rel_cf = std::fabs(res.estimate - closed_form) / closed_form;
    const double rel_4pi = std::fabs(res.estimate - 4.0 * pi) / (4.0 * pi);
    const bool ok = rel_cf < 1e-6 && rel_4pi < 1e-5 && res.monotone_decreasing;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "estimate %.8f, |.-pi(2+r)^2| rel %.1e, |.-4pi| rel %.1e",
                  res.estimate, rel_cf, rel_4pi);
    report(4, ok, "cone-family global point capacity descends to 4pi", buf);
}

void criterion_5_embedding() {
    bool cones_ok = true;
    for (double rho : {1.0, 0.7, 0.3, 0.05, 1e-4}) {
        const auto [sup, bound] = embedding_check(RadialProfile::scaled_cone(rho), 2);
        if (sup != 1.0 || std::fabs(bound - 1.0) > 1e-10) cones_ok = false;
    }
    std::mt19937_64 rng(606060);
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
        const auto f = random_admissible_profile(rng);
        const auto [sup, bound] = embedding_check(f, 2);
        // monotone profiles at n = 2 are exact equality cases, so compare up
        // to floating rounding of the two sides
        if (sup > bound * (1.0 + 1e-12)) ++violations;
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "cone equality to 1e-10: %s; violations 0 of 200 -> %d",
                  cones_ok ? "yes" : "no", violations);
    report(5, cones_ok && violations == 0,
           "sup-norm bound via the (n,1) gradient norm, equality on cones", buf);
}

void criterion_6_norm_sandwich() {
    std::mt19937_64 rng(123321);
    const std::vector<LorentzExponents> exps = {{2.0, 1.0},
                                                {2.0, 2.0},
                                                LorentzExponents::with_infinite_q(2.0),
                                                {3.0, 1.5},
                                                {1.5, 4.0}};
    long checked = 0;
    long violations = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto f = random_step(rng);
        for (const auto& e : exps) {
            ++checked;
            if (!equivalence_check(f, e)) ++violations;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%ld checks, %ld violations", checked, violations);
    report(6, violations == 0, "quasinorm <= norm <= p' quasinorm on the random suite", buf);
}

void criterion_7_lp_consistency() {
    std::mt19937_64 rng(456654);
    std::uniform_real_distribution<double> pd(1.1, 5.0);
    int bad = 0;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const auto f = random_step(rng);
        const double p = pd(rng);
        const double got = lorentz_quasinorm(f, {p, p}).value;
        double acc = 0.0;
        for (const auto& piece : f.pieces()) acc += std::pow(piece.value, p) * piece.measure;
        const double oracle = std::pow(acc, 1.0 / p);
        const double rel = std::fabs(got - oracle) / oracle;
        worst = std::max(worst, rel);
        if (rel > 1e-12) ++bad;
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst rel %.2e over 100 instances", worst);
    report(7, bad == 0, "q = p quasinorm equals the direct L^p sum to 1e-12", buf);
}

void criterion_8_cone_norm() {
    const auto res =
        radial_function_quasinorm(RadialProfile::cone(0.0), 2, LorentzExponents(2.0, 1.0));
    const double rel = std::fabs(res.value - std::sqrt(pi)) / std::sqrt(pi);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "value %.10f vs sqrt(pi), rel %.2e", res.value, rel);
    report(8, rel < 1e-6, "unit cone (2,1) norm equals sqrt(pi) within 1e-6", buf);
}

void criterion_9_axiom_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    long failures = 0;
    int trials_total = 0;
    for (auto [p, q] : {std::pair{2.0, 1.0}, {2.0, 2.0}}) {
        const GridDomain D = GridDomain::box(2, {12, 12}, 1.0 / 12.0);
        const auto report_pq =
            axiom_suite(D, {p, q}, 100, 9000 + static_cast<unsigned long long>(10 * q), 1e-4);
        failures += static_cast<long>(report_pq.failures.size());
        trials_total += report_pq.trials;
    }
    const double elapsed = seconds_since(t0);
    char buf[140];
    std::snprintf(buf, sizeof(buf), "%d instances, %ld failures, %.1fs", trials_total,
                  failures, elapsed);
    report(9, failures == 0 && elapsed < 300.0,
           "capacity axioms hold on the randomized grid suite at 1e-4", buf);
}

void criterion_10_mct() {
    const GridDomain D = GridDomain::box(2, {14, 14}, 1.0 / 14.0);
    const LorentzExponents e(3.0, 1.0);
    std::mt19937_64 rng(777777);
    std::uniform_int_distribution<int> pickc(3, 10);
    int failures = 0;
    for (int t = 0; t < 50; ++t) {
        const int ci = pickc(rng), cj = pickc(rng);
        std::vector<CellSet> chain;
        for (int k = 1; k <= 4; ++k) {
            chain.push_back(CellSet::rectangle(D, std::max(1, ci - k),
                                               std::min(12, ci + k), std::max(1, cj - k),
                                               std::min(12, cj + k)));
        }
        chain.push_back(chain.back());
        const auto res = mct_check(chain, D, e, 1e-4);
        if (!res.ok()) ++failures;
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "50 chains at (3,1), %d failures", failures);
    report(10, failures == 0, "monotone convergence analog along increasing chains", buf);
}

void criterion_11_cross_validation() {
    const auto res = cross_validate_radial(0.5, 2, LorentzExponents(2.0, 2.0), 0.02, 512);
    char buf[140];
    std::snprintf(buf, sizeof(buf), "grid %.5f vs radial %.5f, gap %.2e", res.grid_value,
                  res.radial_value, res.relative_gap);
    report(11, res.relative_gap < 0.05, "grid and radial solvers agree at (2,2,2,0.5)", buf);
}

} // namespace

int main() {
    criterion_1_point_capacity();
    criterion_2_sandwich();
    criterion_3_classical_oracle();
    criterion_4_global_point();
    criterion_5_embedding();
    criterion_6_norm_sandwich();
    criterion_7_lp_consistency();
    criterion_8_cone_norm();
    criterion_9_axiom_suite();
    criterion_10_mct();
    criterion_11_cross_validation();
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
