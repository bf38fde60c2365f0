// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nongibbs/badness.hpp"
#include "nongibbs/exact.hpp"
#include "nongibbs/kac.hpp"
#include "nongibbs/mc.hpp"
#include "nongibbs/meanfield.hpp"
#include "nongibbs/quenched.hpp"
#include "nongibbs/rng.hpp"
#include "nongibbs/transform.hpp"

using namespace nongibbs;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void check(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// 1. mean-field decimation threshold on the beta grid [1.0, 2.0] step 0.01
void criterion_threshold(Outcome& out) {
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(1.0 + 0.01 * k);
    auto scan = meanfield::cw_jump_scan(grid, 0.75, 0.0);
    for (const auto& pt : scan.points) {
        if (pt.beta <= 1.32 + 1e-12)
            out.check(pt.jump <= 1e-6,
                      "jump above the detection cut at beta = " + fmt(pt.beta) +
                          " (jump = " + fmt(pt.jump) + ")");
        if (pt.beta >= 1.35 - 1e-12)
            out.check(pt.jump > 1e-6, "no jump at beta = " + fmt(pt.beta));
    }
    out.check(scan.threshold.has_value(), "no threshold detected");
    if (scan.threshold) {
        out.check(std::abs(*scan.threshold - 4.0 / 3.0) < 0.02,
                  "threshold " + fmt(*scan.threshold) + " not within 0.02 of 4/3");
        out.note("threshold estimate " + fmt(*scan.threshold) + " (target 4/3)");
    }
}

// 2. mean-field limit vs the Richardson-extrapolated finite-N oracle
void criterion_oracle(Outcome& out) {
    double worst = 0.0;
    for (double beta : {1.1, 1.2, 1.5, 1.8, 2.0}) {
        for (double alpha : {-0.4, -0.048, 0.048, 0.4}) {
            meanfield::CwParams q{beta, 0.0, 0.75, alpha};
            const double limit = meanfield::cw_decimated_conditional(q);
            const double rich =
                2.0 * meanfield::cw_finite_n_oracle(2000, q) - meanfield::cw_finite_n_oracle(1000, q);
            worst = std::max(worst, std::abs(rich - limit));
        }
    }
    out.check(worst < 5e-3, "worst oracle-vs-limit difference " + fmt(worst) + " exceeds 5e-3");
    out.note("20-point grid, worst difference " + fmt(worst));
}

// 3. diluted-Ising ln 2 nonlocality and the 4-vs-2 degeneracy counts
void criterion_ln2(Outcome& out) {
    quenched::JointModel jm;
    jm.disorder = quenched::DisorderField::dilution(0.5);
    jm.coupling_j = 1.0;
    jm.beta = 20.0;
    jm.lattice = Lattice(2, Box::rectangle(0, 4, 0, 2));

    Configuration disconnected;
    for (const Site& x : jm.lattice.sites()) disconnected.set(x, 0);
    for (int x = 0; x < 4; ++x) {
        disconnected.set(site(x, 0), 1);
        disconnected.set(site(x, 2), 1);
    }
    Configuration far_connected = disconnected;
    far_connected.set(site(4, 0), 1);
    far_connected.set(site(4, 1), 1);
    far_connected.set(site(4, 2), 1);
    Configuration bridged = disconnected;
    bridged.set(site(0, 1), 1);

    const auto bc = BoundaryCondition::free_bc();
    const double d0 = quenched::free_energy_increment(jm, disconnected, site(0, 1), bc);
    const double d1 = quenched::free_energy_increment(jm, far_connected, site(0, 1), bc);
    out.check(std::abs((d1 - d0) - std::log(2.0)) < 1e-3,
              "increment difference " + fmt(d1 - d0) + " not ln 2 within 1e-3");
    out.note("increment difference " + fmt(d1 - d0) + " vs ln 2 = " + fmt(std::log(2.0)));

    const auto deg_open =
        exact::ground_state_degeneracy(quenched::occupied_subgraph_model(jm, disconnected), bc);
    const auto deg_bridged =
        exact::ground_state_degeneracy(quenched::occupied_subgraph_model(jm, bridged), bc);
    out.check(deg_open == 4, "disconnected degeneracy = " + std::to_string(deg_open));
    out.check(deg_bridged == 2, "bridged degeneracy = " + std::to_string(deg_bridged));
}

// 4. conditioning identities on 50 randomized instances, both transforms
void criterion_conditioning(Outcome& out) {
    SplitMix64 seeds{20260808};
    Rng rng(seeds.next());
    double worst_glauber = 0.0, worst_decimation = 0.0;

    for (int trial = 0; trial < 50; ++trial) {
        SpinModel m;
        if (trial % 2 == 0) {
            const int len = 6 + static_cast<int>(rng.below(11)); // up to 16 sites
            m = SpinModel::ising_chain(len, 2.0 * rng.uniform() - 1.0, rng.uniform() - 0.5,
                                       0.2 + rng.uniform());
        } else {
            const int lx = 3 + static_cast<int>(rng.below(2));
            const int ly = 3 + static_cast<int>(rng.below(2));
            m = SpinModel::ising_square(lx, ly, 2.0 * rng.uniform() - 1.0, rng.uniform() - 0.5,
                                        0.2 + rng.uniform());
        }
        const auto sites = m.lattice.sites();
        const auto bc = trial % 3 == 0 ? BoundaryCondition::all_plus() : BoundaryCondition::free_bc();

        { // glauber route
            const double t = 0.2 + 1.6 * rng.uniform();
            Configuration eta;
            for (const Site& x : sites) eta.set(x, rng.spin());
            auto constrained = transform::evolution_constrained_model(m, t, eta);
            auto dist = exact::enumerate_distribution(constrained.model, bc);
            auto base = exact::enumerate_distribution(m, bc);
            auto kernel = transform::glauber_kernel(t);
            const std::uint64_t total = 1ull << sites.size();
            std::vector<double> joint(total);
            double z = 0.0;
            for (std::uint64_t s = 0; s < total; ++s) {
                double w = std::exp(base.log_prob_bits(s));
                for (std::size_t k = 0; k < sites.size(); ++k)
                    w *= kernel.p((s >> k) & 1 ? 1 : -1, eta.at(sites[k]));
                joint[s] = w;
                z += w;
            }
            for (std::uint64_t s = 0; s < total; ++s)
                worst_glauber = std::max(
                    worst_glauber, std::abs(joint[s] / z - std::exp(dist.log_prob_bits(s))));
        }

        { // decimation route
            const auto mask = SublatticeMask::even_sites(2);
            Configuration omega;
            std::vector<int> live_pos;
            std::uint64_t clamp = 0;
            for (std::size_t k = 0; k < sites.size(); ++k) {
                if (mask.contains(sites[k], m.lattice.dim())) {
                    const int v = rng.spin();
                    omega.set(sites[k], v);
                    if (v > 0) clamp |= 1ull << k;
                } else {
                    live_pos.push_back(static_cast<int>(k));
                }
            }
            auto constrained = transform::decimation_constrained_model(m, mask, omega);
            auto dist = exact::enumerate_distribution(constrained.model, bc);
            auto base_cm = compile_model(m, bc);
            const std::uint64_t n_live = live_pos.size();
            std::vector<double> cond(1ull << n_live);
            double z = 0.0;
            for (std::uint64_t sub = 0; sub < (1ull << n_live); ++sub) {
                std::uint64_t full = clamp;
                for (std::uint64_t k = 0; k < n_live; ++k)
                    if ((sub >> k) & 1) full |= 1ull << live_pos[k];
                cond[sub] = std::exp(-m.beta * base_cm.energy_bits(full));
                z += cond[sub];
            }
            for (std::uint64_t sub = 0; sub < (1ull << n_live); ++sub)
                worst_decimation = std::max(
                    worst_decimation, std::abs(cond[sub] / z - std::exp(dist.log_prob_bits(sub))));
        }
    }
    out.check(worst_glauber < 1e-12,
              "glauber conditioning mismatch " + fmt(worst_glauber) + " exceeds 1e-12");
    out.check(worst_decimation < 1e-12,
              "decimation conditioning mismatch " + fmt(worst_decimation) + " exceeds 1e-12");
    out.note("worst glauber " + fmt(worst_glauber) + ", worst decimation " + fmt(worst_decimation));
}

// 5. variation observable: flat controls, decaying Gibbs control, and the
// checkerboard-decimation floor on the largest exact window
void criterion_variation(Outcome& out) {
    badness::VariationParams margin1;
    margin1.margin = 1;

    { // (a) product / high-temperature controls
        SpinModel hot1 = SpinModel::ising_chain(2, 1.0, 0.0, 1e-14);
        hot1.lattice = Lattice(1, Box::interval(-12, 12));
        auto dec = transform::TransformSpec::decimation(SublatticeMask::even_sites(2));
        auto curve = badness_profile(hot1, dec, badness::ConfigGenerator::checkerboard(2), {1, 2, 3},
                                     badness::VariationParams{});
        for (const auto& p : curve.points)
            out.check(p.variation <= 1e-12,
                      "decimation control variation " + fmt(p.variation) + " at radius " +
                          std::to_string(p.radius));

        SpinModel hot2 = SpinModel::ising_square(2, 2, 1.0, 0.0, 1e-14);
        hot2.lattice = Lattice(2, Box::centered(2, 4));
        auto glauber = transform::TransformSpec::glauber(0.7);
        auto gcurve = badness_profile(hot2, glauber, badness::ConfigGenerator::checkerboard(1),
                                      {0, 1}, margin1);
        for (const auto& p : gcurve.points)
            out.check(p.variation <= 1e-12, "glauber control variation " + fmt(p.variation));
    }

    { // (b) Gibbs control: glauber t = 50 on the beta = 0.8 2D model
        SpinModel m = SpinModel::ising_square(2, 2, 1.0, 0.0, 0.8);
        m.lattice = Lattice(2, Box::centered(2, 4));
        auto glauber = transform::TransformSpec::glauber(50.0);
        auto curve = badness_profile(m, glauber, badness::ConfigGenerator::checkerboard(1), {0, 1},
                                     margin1);
        for (std::size_t k = 1; k < curve.points.size(); ++k)
            out.check(curve.points[k].variation <= curve.points[k - 1].variation + 1e-12,
                      "Gibbs-control curve not decreasing: V(" +
                          std::to_string(curve.points[k].radius) + ") = " +
                          fmt(curve.points[k].variation));
        out.note("Gibbs control curve: V(0) = " + fmt(curve.points[0].variation) + ", V(1) = " +
                 fmt(curve.points[1].variation));
    }

    { // (c) checkerboard decimation floor at beta = 0.8
        SpinModel m = SpinModel::ising_square(2, 2, 1.0, 0.0, 0.8);
        m.lattice = Lattice(2, Box::centered(2, 4));
        auto dec = transform::TransformSpec::decimation(SublatticeMask::even_sites(2));
        // Lambda radius 1, margin 1: box radius 2, 17 live spins -- the
        // largest centered 2D window under the enumeration cap
        auto curve = badness_profile(m, dec, badness::ConfigGenerator::checkerboard(2), {1}, margin1);
        const double floor = curve.points[0].variation;
        out.check(floor > 0.1, "checkerboard decimation variation " + fmt(floor) + " below 0.1");
        out.check(std::abs(floor - 0.995943921830636) < 1e-9,
                  "variation " + fmt(floor) + " drifted from the recorded golden");
        out.note("decimation floor V = " + fmt(floor) + " (golden 0.995943921830636)");
    }
}

// 6. Lebowitz-Penrose cascade at beta = 2, h = 0
void criterion_lp(Outcome& out) {
    std::vector<double> gaps;
    for (double g : {1.0, 0.5, 0.25, 0.125})
        gaps.push_back(kac::lp_free_energy_gap(kac::KacProfile::top_hat(g, 1), 2.0, 0.0).gap);
    for (std::size_t k = 1; k < gaps.size(); ++k)
        out.check(gaps[k] < gaps[k - 1], "gap not strictly decreasing at step " + std::to_string(k));
    out.check(gaps.back() < 0.5 * gaps.front(),
              "gap(1/8) = " + fmt(gaps.back()) + " not below half of gap(1) = " + fmt(gaps.front()));
    out.note("gaps: " + fmt(gaps[0]) + " > " + fmt(gaps[1]) + " > " + fmt(gaps[2]) + " > " +
             fmt(gaps[3]));
}

// 7. kernel-sum deviations and the checkerboard field
void criterion_kernel(Outcome& out) {
    const double grid[] = {0.5, 0.3, 0.25, 0.2, 0.125, 0.1, 0.0625};
    for (auto shape : {kac::KacProfile::Shape::top_hat, kac::KacProfile::Shape::triangle}) {
        for (int d = 1; d <= 2; ++d) {
            for (double g : grid) {
                kac::KacProfile p{shape, g, d};
                const double dev = std::abs(kac::kernel_sum(p) - 1.0);
                out.check(dev <= kac::kernel_sum_bound_c(p) * g + 1e-12,
                          p.describe() + ": kernel-sum deviation " + fmt(dev) + " above C*gamma");
            }
        }
    }

    // exact support sums: identically zero (reflection pairing), hence
    // within the 4*gamma bound; the monotone decrease lives in the
    // window-truncated field, the one the finite-volume model carries
    const Box window = Box::rectangle(0, 39, 0, 39);
    double prev = 1e9;
    std::string exact_seq, windowed_seq;
    for (double g : {0.5, 0.25, 0.125, 0.0625}) {
        auto p = kac::KacProfile::triangle(g, 2);
        const double exact_max = kac::checkerboard_max_field(p);
        out.check(exact_max <= 4.0 * g, "exact checkerboard field above 4*gamma");
        const double windowed = kac::checkerboard_max_field_windowed(p, 2, window);
        out.check(windowed < prev,
                  "windowed checkerboard field not strictly decreasing at gamma = " + fmt(g));
        prev = windowed;
        exact_seq += (exact_seq.empty() ? "" : ", ") + fmt(exact_max);
        windowed_seq += (windowed_seq.empty() ? "" : ", ") + fmt(windowed);
    }
    out.note("exact support sums: " + exact_seq + " (identically zero by reflection pairing)");
    out.note("window-truncated maxima: " + windowed_seq);
}

// 8. MC moments against enumeration; synthetic Binder limits
void criterion_mc(Outcome& out) {
    struct Case {
        std::string label;
        SpinModel model;
        BoundaryCondition bc;
    };
    std::vector<Case> cases;
    cases.push_back({"2d 4x4 beta=0.4 periodic", SpinModel::ising_square(4, 4, 1.0, 0.0, 0.4),
                     BoundaryCondition::periodic()});
    cases.push_back({"2d 4x4 beta=0.4407 periodic", SpinModel::ising_square(4, 4, 1.0, 0.0, 0.4407),
                     BoundaryCondition::periodic()});
    cases.push_back({"1d L=8 beta=0.7 h=0.2 free", SpinModel::ising_chain(8, 1.0, 0.2, 0.7),
                     BoundaryCondition::free_bc()});
    {
        quenched::JointModel rf;
        rf.disorder = quenched::DisorderField::random_field(0.5);
        rf.coupling_j = 1.0;
        rf.beta = 1.0;
        rf.lattice = Lattice(2, Box::centered(2, 1));
        const Configuration n = quenched::sample_disorder(rf, 5);
        cases.push_back({"rfim 3x3 beta=1 h=0.5 free", quenched::induced_model(rf, n),
                         BoundaryCondition::free_bc()});
    }

    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& c = cases[k];
        auto cm = compile_model(c.model, c.bc);
        auto exact_mom = exact::magnetization_moments(cm);
        // long chains keep the jackknife blocks well above the well-hopping
        // time of the near-critical case
        auto series = mc::run_chain(c.model, c.bc,
                                    mc::default_protocol(400'000, mc::UpdateKind::heatbath), 808 + k);
        std::vector<double> m2(series.m.size());
        for (std::size_t i = 0; i < series.m.size(); ++i) m2[i] = series.m[i] * series.m[i];
        auto est_m = mc::blocked_mean(series.m);
        auto est_m2 = mc::blocked_mean(m2);
        auto est_e = mc::blocked_mean(series.e);
        out.check(std::abs(est_m.mean - exact_mom.m1) < 3.0 * std::max(est_m.err, 1e-4),
                  c.label + ": <m> off by " + fmt(std::abs(est_m.mean - exact_mom.m1)) +
                      " (3 s.e. = " + fmt(3.0 * est_m.err) + ")");
        out.check(std::abs(est_m2.mean - exact_mom.m2) < 3.0 * std::max(est_m2.err, 1e-4),
                  c.label + ": <m^2> off");
        out.check(std::abs(est_e.mean - exact_mom.e_per_site) < 3.0 * std::max(est_e.err, 1e-4),
                  c.label + ": <e> off");
    }

    Rng rng(2024);
    std::vector<double> two_point(10'000);
    for (auto& x : two_point) x = rng.spin() * 0.7;
    const double u2 = mc::binder_cumulant(two_point).u;
    out.check(std::abs(u2 - 2.0 / 3.0) < 1e-2, "two-point Binder limit " + fmt(u2));

    std::vector<double> gauss(1'000'000);
    for (auto& x : gauss) x = 0.4 * rng.gaussian();
    const double ug = mc::binder_cumulant(gauss).u;
    out.check(std::abs(ug) < 1e-2, "gaussian Binder limit " + fmt(ug));
    out.note("synthetic Binder: two-point " + fmt(u2) + ", gaussian " + fmt(ug));
}

// 9. beta_c pipeline smoke test at gamma = 1
void criterion_pipeline(Outcome& out) {
    kac::BetacConfig config;
    config.profile = kac::KacProfile::top_hat(1.0, 2);
    config.sizes = {8, 12};
    config.betas = {0.5, 0.7, 0.9, 1.1, 1.3};
    config.seed = 7;
    config.sweeps = 20'000;
    auto report = kac::betac_pipeline(config);
    out.check(report.table.size() == config.sizes.size() * config.betas.size(),
              "binder table incomplete");
    for (const auto& pt : report.table) {
        out.check(std::isfinite(pt.u) && pt.u_err >= 0.0, "malformed binder entry");
        out.check(pt.u < 2.0 / 3.0 + 0.05, "binder value out of range");
    }
    out.check(report.pair_l1 == 8 && report.pair_l2 == 12, "crossing pair not recorded");
    if (report.crossing_found) {
        out.check(std::isfinite(report.beta_c) && report.beta_c_err >= 0.0,
                  "crossing estimate malformed");
        out.note("crossing estimate beta_c = " + fmt(report.beta_c) + " +- " +
                 fmt(report.beta_c_err) + " (no value asserted)");
    } else {
        out.check(!report.note.empty(), "no-crossing case must say so");
        out.note("reported: " + report.note);
    }
}

struct Criterion {
    int id;
    std::string label;
    double budget_seconds;
    std::function<void(Outcome&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "mean-field decimation threshold (jump scan, p = 3/4)", 10.0, criterion_threshold},
        {2, "mean-field oracle closure (Richardson in 1/N, 5e-3)", 60.0, criterion_oracle},
        {3, "diluted-Ising ln 2 nonlocality and 4-vs-2 degeneracy", 5.0, criterion_ln2},
        {4, "transform conditioning identity (50 instances, 1e-12)", 60.0, criterion_conditioning},
        {5, "variation curves: flat controls, Gibbs decay, decimation floor", 600.0,
         criterion_variation},
        {6, "Lebowitz-Penrose 1D gap cascade at beta = 2", 120.0, criterion_lp},
        {7, "Kac kernel sums and checkerboard fields", 10.0, criterion_kernel},
        {8, "MC validity against enumeration; synthetic Binder limits", 300.0, criterion_mc},
        {9, "beta_c pipeline smoke test (gamma = 1, L = 8, 12)", 900.0, criterion_pipeline},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.ok = false;
            out.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= c.budget_seconds) {
            out.ok = false;
            out.notes.push_back("runtime " + fmt(secs) + "s exceeds the stated budget");
        }
        std::printf("[criterion %d] %s: %s (%.2fs)\n", c.id, c.label.c_str(),
                    out.ok ? "PASS" : "FAIL", secs);
        for (const auto& n : out.notes) std::printf("    %s\n", n.c_str());
        if (!out.ok) ++failed;
    }
    if (failed) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed;
}
