#include "nongibbs/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "nongibbs/badness.hpp"
#include "nongibbs/io.hpp"
#include "nongibbs/kac.hpp"
#include "nongibbs/meanfield.hpp"
#include "nongibbs/parallel.hpp"
#include "nongibbs/quenched.hpp"
#include "nongibbs/transfer_matrix.hpp"

namespace nongibbs::scenario {

using json = nlohmann::ordered_json;

const std::vector<std::string>& scenario_kinds() {
    static const std::vector<std::string> kinds = {
        "badness_profile", "quenched_probe", "cw_scan",    "lp_check",
        "betac_pipeline",  "degeneracy",     "oracle_crosscheck",
    };
    return kinds;
}

std::string ValidationReport::describe() const {
    std::ostringstream os;
    if (ok) {
        os << "valid: " << name << " (" << kind << ")";
    } else {
        os << "invalid configuration";
        if (!name.empty()) os << " '" << name << "'";
        os << ":";
        for (const auto& e : errors) os << "\n  - " << e;
    }
    return os.str();
}

namespace {

struct Fields {
    const json& j;
    std::vector<std::string>& errors;
    std::string prefix;

    bool has(const std::string& key) const { return j.contains(key); }

    void fail(const std::string& key, const std::string& what) const {
        errors.push_back(prefix + key + ": " + what);
    }

    double number(const std::string& key, double lo, double hi, double fallback,
                  bool required = false, bool lo_open = false, bool hi_open = false) const {
        if (!j.contains(key)) {
            if (required) fail(key, "missing");
            return fallback;
        }
        if (!j[key].is_number()) {
            fail(key, "must be a number");
            return fallback;
        }
        const double v = j[key].get<double>();
        const bool below = lo_open ? v <= lo : v < lo;
        const bool above = hi_open ? v >= hi : v > hi;
        if (below || above) {
            std::ostringstream os;
            os << "must lie in " << (lo_open ? "(" : "[") << io::g17(lo) << ", " << io::g17(hi)
               << (hi_open ? ")" : "]") << ", got " << io::g17(v);
            fail(key, os.str());
            return fallback;
        }
        return v;
    }

    std::int64_t integer(const std::string& key, std::int64_t lo, std::int64_t hi,
                         std::int64_t fallback, bool required = false) const {
        if (!j.contains(key)) {
            if (required) fail(key, "missing");
            return fallback;
        }
        if (!j[key].is_number_integer()) {
            fail(key, "must be an integer");
            return fallback;
        }
        const std::int64_t v = j[key].get<std::int64_t>();
        if (v < lo || v > hi) {
            fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                          std::to_string(v));
            return fallback;
        }
        return v;
    }

    std::string text(const std::string& key, const std::vector<std::string>& allowed,
                     const std::string& fallback, bool required = false) const {
        if (!j.contains(key)) {
            if (required) fail(key, "missing");
            return fallback;
        }
        if (!j[key].is_string()) {
            fail(key, "must be a string");
            return fallback;
        }
        const std::string v = j[key].get<std::string>();
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            std::string opts;
            for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
            fail(key, "must be one of {" + opts + "}, got '" + v + "'");
            return fallback;
        }
        return v;
    }

    std::vector<double> number_array(const std::string& key, bool required = true) const {
        std::vector<double> out;
        if (!j.contains(key)) {
            if (required) fail(key, "missing");
            return out;
        }
        if (!j[key].is_array() || j[key].empty()) {
            fail(key, "must be a non-empty array");
            return out;
        }
        for (const auto& v : j[key]) {
            if (!v.is_number()) {
                fail(key, "must contain numbers only");
                return {};
            }
            out.push_back(v.get<double>());
        }
        return out;
    }
};

BoundaryCondition bc_from_name(const std::string& name) {
    if (name == "free") return BoundaryCondition::free_bc();
    if (name == "all-plus") return BoundaryCondition::all_plus();
    if (name == "all-minus") return BoundaryCondition::all_minus();
    if (name == "periodic") return BoundaryCondition::periodic();
    throw std::invalid_argument("unknown boundary condition '" + name + "'");
}

badness::ConfigGenerator generator_from_json(const json& g, std::vector<std::string>& errors) {
    Fields f{g, errors, "generator."};
    const std::string kind =
        f.text("kind", {"checkerboard", "bernoulli", "constant", "perturbation"}, "checkerboard",
               true);
    if (kind == "bernoulli") {
        const double q = f.number("q", 0.0, 1.0, 0.5, true);
        const auto seed = static_cast<std::uint64_t>(f.integer("seed", 0, INT64_MAX, 0));
        return badness::ConfigGenerator::bernoulli(q, seed);
    }
    if (kind == "constant") {
        const auto v = f.integer("value", -1, 1, 1, true);
        if (v == 0) f.fail("value", "must be +1 or -1");
        return badness::ConfigGenerator::constant(v >= 0 ? 1 : -1);
    }
    if (kind == "perturbation") {
        if (!g.contains("base") || !g["base"].is_object()) {
            f.fail("base", "perturbation needs a base generator object");
            return badness::ConfigGenerator::constant(1);
        }
        auto base = generator_from_json(g["base"], errors);
        std::vector<Site> flips;
        if (g.contains("flips") && g["flips"].is_array()) {
            for (const auto& fl : g["flips"]) {
                Site s{};
                for (std::size_t k = 0; k < fl.size() && k < 4; ++k) s[k] = fl[k].get<int>();
                flips.push_back(s);
            }
        }
        return badness::ConfigGenerator::perturbation(std::move(base), std::move(flips));
    }
    const auto pitch = static_cast<int>(f.integer("pitch", 1, 16, 1));
    const auto phase = static_cast<int>(f.integer("phase", 0, 1, 0));
    return badness::ConfigGenerator::checkerboard(pitch, phase);
}

kac::KacProfile profile_from_json(const json& p, int dim, std::vector<std::string>& errors) {
    Fields f{p, errors, "profile."};
    const std::string shape = f.text("shape", {"top-hat", "triangle"}, "top-hat", true);
    const double gamma = f.number("gamma", 0.0, 1.0, 0.25, true, /*lo_open=*/true);
    if (!errors.empty()) return kac::KacProfile::top_hat(0.25, dim);
    return shape == "top-hat" ? kac::KacProfile::top_hat(gamma, dim)
                              : kac::KacProfile::triangle(gamma, dim);
}

// ---- per-kind validation ----------------------------------------------

void validate_cw_scan(const json& j, std::vector<std::string>& errors) {
    Fields f{j, errors, ""};
    f.number("p", 0.0, 1.0, 0.75, true, true, true);
    f.number("h", -100.0, 100.0, 0.0);
    const double lo = f.number("beta_min", 1e-9, 100.0, 1.0, true);
    const double hi = f.number("beta_max", 1e-9, 100.0, 2.0, true);
    const double step = f.number("beta_step", 1e-6, 10.0, 0.01, true);
    if (lo >= hi) errors.push_back("beta_min: must be below beta_max");
    if ((hi - lo) / step > 100000) errors.push_back("beta_step: grid would exceed 1e5 points");
}

void validate_lp_check(const json& j, std::vector<std::string>& errors) {
    Fields f{j, errors, ""};
    if (j.contains("profile") && j["profile"].is_object())
        profile_from_json(j["profile"], 1, errors);
    else
        errors.push_back("profile: missing object");
    f.number("beta", 1e-9, 100.0, 2.0, true);
    f.number("h", -100.0, 100.0, 0.0);
    for (double g : f.number_array("gammas"))
        if (g <= 0.0 || g > 1.0 || std::floor(1.0 / g + 1e-12) > exact::max_transfer_range)
            errors.push_back("gammas: " + io::g17(g) + " outside (1/14, 1] (transfer-matrix cap)");
}

struct BadnessSetup {
    SpinModel model;
    transform::TransformSpec spec = transform::TransformSpec::glauber(1.0);
    badness::ConfigGenerator gen = badness::ConfigGenerator::checkerboard(1);
    badness::VariationParams params;
    std::vector<int> radii;
};

BadnessSetup badness_from_json(const json& j, std::vector<std::string>& errors) {
    BadnessSetup setup;
    Fields f{j, errors, ""};
    if (!j.contains("model") || !j["model"].is_object()) {
        errors.push_back("model: missing object");
        return setup;
    }
    Fields fm{j["model"], errors, "model."};
    const int dim = static_cast<int>(fm.integer("dim", 1, 2, 1, true));
    const double coupling = fm.number("j", -100.0, 100.0, 1.0, true);
    const double field = fm.number("h", -100.0, 100.0, 0.0);
    const double beta = fm.number("beta", 0.0, 100.0, 1.0, true);
    setup.model.lattice = Lattice(dim, Box::centered(dim, 1));
    setup.model.interaction = Interaction::nearest_neighbor(dim, coupling, field);
    setup.model.beta = beta;

    if (!j.contains("transform") || !j["transform"].is_object()) {
        errors.push_back("transform: missing object");
        return setup;
    }
    Fields ft{j["transform"], errors, "transform."};
    const std::string tkind = ft.text("kind", {"decimation", "glauber"}, "glauber", true);
    if (tkind == "decimation") {
        const auto pitch = static_cast<int>(ft.integer("pitch", 2, 16, 2));
        setup.spec = transform::TransformSpec::decimation(SublatticeMask::even_sites(pitch));
    } else {
        const double t = ft.number("t", 0.0, 1000.0, 1.0, true, /*lo_open=*/true);
        setup.spec = transform::TransformSpec::glauber(t);
        if (beta <= 0.0) errors.push_back("model.beta: glauber conditioning needs beta > 0");
    }

    if (!j.contains("generator") || !j["generator"].is_object())
        errors.push_back("generator: missing object");
    else
        setup.gen = generator_from_json(j["generator"], errors);

    for (double r : f.number_array("radii")) {
        if (r < 0 || r != std::floor(r)) {
            errors.push_back("radii: must be non-negative integers");
            break;
        }
        setup.radii.push_back(static_cast<int>(r));
    }
    std::sort(setup.radii.begin(), setup.radii.end());
    if (std::adjacent_find(setup.radii.begin(), setup.radii.end()) != setup.radii.end())
        errors.push_back("radii: must be distinct");

    setup.params.margin = static_cast<int>(f.integer("margin", 1, 100, -1));
    setup.params.cap = static_cast<int>(f.integer("cap", 1, 40, exact::default_enumeration_cap));
    setup.params.bc =
        bc_from_name(f.text("bc", {"free", "all-plus", "all-minus"}, "all-plus"));
    if (f.has("mc_fallback") && j["mc_fallback"].is_boolean())
        setup.params.mc_fallback = j["mc_fallback"].get<bool>();
    setup.params.mc_sweeps = f.integer("mc_sweeps", 100, 100'000'000, setup.params.mc_sweeps);
    setup.params.mc_seed = static_cast<std::uint64_t>(f.integer("mc_seed", 0, INT64_MAX, 1));

    // resource precondition: the largest window must fit the cap unless the
    // MC fallback is enabled
    if (errors.empty() && !setup.radii.empty() && !setup.params.mc_fallback) {
        const int margin =
            setup.params.margin >= 0 ? setup.params.margin : setup.model.interaction.range() + 2;
        const Box box = Box::centered(dim, setup.radii.back() + margin);
        std::int64_t live = box.volume();
        if (setup.spec.kind == transform::TransformSpec::Kind::decimation) {
            for (const Site& x : box.sites())
                if (setup.spec.sublattice.contains(x, dim) && !(x == Site{})) --live;
        }
        if (live > setup.params.cap) {
            errors.push_back("radii: largest window needs 2^" + std::to_string(live) +
                             " states (cap " + std::to_string(setup.params.cap) +
                             " sites); shrink radii/margin, raise cap, or enable mc_fallback");
        }
    }
    return setup;
}

struct QuenchedSetup {
    quenched::JointModel jm;
    std::uint64_t disorder_seed = 0;
    std::vector<int> lambda_radii;
    BoundaryCondition bc = BoundaryCondition::free_bc();
};

QuenchedSetup quenched_from_json(const json& j, std::vector<std::string>& errors) {
    QuenchedSetup setup;
    Fields f{j, errors, ""};
    const double h = f.number("h", -100.0, 100.0, 1.0, true);
    const double q = f.number("bias_q", 0.0, 1.0, 0.5);
    setup.jm.disorder = quenched::DisorderField::random_field(h, q);
    setup.jm.coupling_j = f.number("j", -100.0, 100.0, 1.0);
    setup.jm.beta = f.number("beta", 0.0, 100.0, 1.0, true);
    const auto lx = f.integer("window_x", 1, 31, 3);
    const auto ly = f.integer("window_y", 1, 31, 3);
    if (lx * ly > exact::default_enumeration_cap)
        errors.push_back("window_x: " + std::to_string(lx) + "x" + std::to_string(ly) +
                         " window needs 2^" + std::to_string(lx * ly) + " states (cap " +
                         std::to_string(exact::default_enumeration_cap) + " sites)");
    const int rx = static_cast<int>(lx) / 2, ry = static_cast<int>(ly) / 2;
    setup.jm.lattice = Lattice(
        2, Box::rectangle(-rx, static_cast<int>(lx) - 1 - rx, -ry, static_cast<int>(ly) - 1 - ry));
    setup.disorder_seed = static_cast<std::uint64_t>(f.integer("disorder_seed", 0, INT64_MAX, 1));
    for (double r : f.number_array("lambda_radii"))
        setup.lambda_radii.push_back(static_cast<int>(r));
    setup.bc = bc_from_name(f.text("bc", {"free", "all-plus", "all-minus"}, "free"));
    return setup;
}

void validate_degeneracy(const json& j, std::vector<std::string>& errors) {
    Fields f{j, errors, ""};
    const auto len = f.integer("chain_length", 2, 7, 4);
    f.number("beta", 1e-9, 100.0, 20.0);
    if ((len + 1) * 3 > exact::default_enumeration_cap)
        errors.push_back("chain_length: geometry window exceeds the enumeration cap");
}

void validate_oracle_crosscheck(const json& j, std::vector<std::string>& errors) {
    Fields f{j, errors, ""};
    const double p = f.number("p", 0.0, 1.0, 0.75, true, true, true);
    f.number("h", -100.0, 100.0, 0.0);
    f.number_array("betas");
    const auto alphas = f.number_array("alphas");
    std::vector<double> ns = f.number_array("n_values");
    for (double n : ns) {
        if (n < 8 || n > 10'000 || n != std::floor(n)) {
            errors.push_back("n_values: must be integers in [8, 10000]");
            return;
        }
        const double c = (1.0 - p) * n;
        if (std::abs(c - std::lround(c)) > 1e-9) {
            errors.push_back("n_values: (1-p)N must be integral, violated at N = " + io::g17(n));
            return;
        }
        for (double a : alphas) {
            const double k = std::lround(c) * (1.0 + a) / 2.0;
            if (std::abs(k - std::lround(k)) > 1e-9)
                errors.push_back("alphas: sector count (1-p)N(1+alpha)/2 not integral at N = " +
                                 io::g17(n) + ", alpha = " + io::g17(a));
        }
    }
}

struct BetacSetup {
    kac::BetacConfig config;
};

BetacSetup betac_from_json(const json& j, std::vector<std::string>& errors) {
    BetacSetup setup;
    Fields f{j, errors, ""};
    if (j.contains("profile") && j["profile"].is_object())
        setup.config.profile = profile_from_json(j["profile"], 2, errors);
    else
        errors.push_back("profile: missing object");
    if (j.contains("generator") && j["generator"].is_object())
        setup.config.omega_gen = generator_from_json(j["generator"], errors);
    for (double v : f.number_array("sizes")) {
        if (v < 4 || v != std::floor(v) || static_cast<int>(v) % 4 != 0) {
            errors.push_back("sizes: must be multiples of 4 (periodic checkerboard seam)");
            break;
        }
        setup.config.sizes.push_back(static_cast<int>(v));
    }
    if (setup.config.sizes.size() < 2) errors.push_back("sizes: need at least two sizes");
    setup.config.betas = f.number_array("betas");
    if (!std::is_sorted(setup.config.betas.begin(), setup.config.betas.end()))
        errors.push_back("betas: must be sorted");
    setup.config.seed = static_cast<std::uint64_t>(f.integer("seed", 0, INT64_MAX, 1, true));
    setup.config.sweeps = f.integer("sweeps", 200, 10'000'000, 20'000);
    setup.config.kind =
        mc::update_kind_from_string(f.text("update", {"metropolis", "heatbath"}, "heatbath"));
    return setup;
}

json parse_config(const std::string& path, std::vector<std::string>& errors) {
    std::string raw;
    try {
        raw = io::read_file(path);
    } catch (const std::exception& e) {
        errors.emplace_back(e.what());
        return json{};
    }
    try {
        return json::parse(raw);
    } catch (const json::parse_error& e) {
        errors.push_back(std::string("parse error: ") + e.what());
        return json{};
    }
}

ValidationReport validate_json(const json& j) {
    ValidationReport report;
    if (!j.is_object()) {
        report.errors.push_back("top level: must be a JSON object");
        return report;
    }
    Fields f{j, report.errors, ""};
    const auto version = f.integer("version", 1, 1, 1, true);
    (void)version;
    report.name = f.text("name", {}, "", true);
    for (char c : report.name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
            f.fail("name", "must be alphanumeric with '-' or '_'");
            break;
        }
    report.kind = f.text("kind", scenario_kinds(), "", true);
    if (report.kind.empty()) return report;

    if (report.kind == "cw_scan") validate_cw_scan(j, report.errors);
    else if (report.kind == "lp_check") validate_lp_check(j, report.errors);
    else if (report.kind == "badness_profile") badness_from_json(j, report.errors);
    else if (report.kind == "quenched_probe") quenched_from_json(j, report.errors);
    else if (report.kind == "degeneracy") validate_degeneracy(j, report.errors);
    else if (report.kind == "oracle_crosscheck") validate_oracle_crosscheck(j, report.errors);
    else if (report.kind == "betac_pipeline") betac_from_json(j, report.errors);

    report.ok = report.errors.empty();
    return report;
}

// ---- per-kind execution ------------------------------------------------

struct Artifacts {
    std::vector<std::pair<std::string, std::string>> files; // name -> content
    json summary_seeds = json::object();
    std::vector<std::string> cell_failures;
};

// run `n` independent cells, recording per-cell failures by index
template <typename Fn>
std::vector<std::string> run_cells(std::size_t n, int jobs, Fn&& fn) {
    std::vector<std::string> failures(n);
    parallel_for(n, jobs, [&](std::size_t k) {
        try {
            fn(k);
        } catch (const std::exception& e) {
            failures[k] = e.what();
        }
    });
    std::vector<std::string> compact;
    for (std::size_t k = 0; k < n; ++k)
        if (!failures[k].empty()) compact.push_back("cell " + std::to_string(k) + ": " + failures[k]);
    return compact;
}

Artifacts run_cw_scan(const json& j, int jobs) {
    const double p = j["p"].get<double>();
    const double h = j.value("h", 0.0);
    const double lo = j["beta_min"].get<double>();
    const double hi = j["beta_max"].get<double>();
    const double step = j["beta_step"].get<double>();
    std::vector<double> betas;
    for (double b = lo; b <= hi + 1e-12; b += step) betas.push_back(b);

    std::vector<double> jumps(betas.size(), std::nan(""));
    auto failures = run_cells(betas.size(), jobs, [&](std::size_t k) {
        meanfield::CwParams plus{betas[k], h, p, +1e-8};
        meanfield::CwParams minus{betas[k], h, p, -1e-8};
        jumps[k] = std::abs(meanfield::cw_decimated_conditional(plus) -
                            meanfield::cw_decimated_conditional(minus));
    });

    std::ostringstream csv;
    csv << "beta,jump\n";
    std::optional<double> threshold;
    for (std::size_t k = 0; k < betas.size(); ++k) {
        csv << io::g17(betas[k]) << "," << io::g17(jumps[k]) << "\n";
        if (!threshold && jumps[k] > 1e-6) threshold = betas[k];
    }

    json summary;
    summary["kind"] = "cw_scan";
    summary["p"] = p;
    summary["h"] = h;
    summary["beta_grid"] = {lo, hi, step};
    summary["jump_detection_cut"] = 1e-6;
    if (threshold)
        summary["threshold"] = *threshold;
    else
        summary["threshold"] = nullptr;
    summary["one_over_p"] = 1.0 / p;

    Artifacts out;
    out.cell_failures = std::move(failures);
    const std::string name = j["name"].get<std::string>();
    out.files.emplace_back(name + "_jump.csv", csv.str());
    out.files.emplace_back(name + "_threshold.json", summary.dump(2) + "\n");
    return out;
}

Artifacts run_lp_check(const json& j, int jobs) {
    std::vector<std::string> sink;
    const auto profile_template = profile_from_json(j["profile"], 1, sink);
    const double beta = j["beta"].get<double>();
    const double h = j.value("h", 0.0);
    std::vector<double> gammas;
    for (const auto& g : j["gammas"]) gammas.push_back(g.get<double>());

    std::vector<kac::LpGap> gaps(gammas.size());
    auto failures = run_cells(gammas.size(), jobs, [&](std::size_t k) {
        kac::KacProfile p = profile_template;
        p.gamma = gammas[k];
        gaps[k] = kac::lp_free_energy_gap(p, beta, h);
    });

    std::ostringstream csv;
    csv << "gamma,f_gamma,f_envelope,gap\n";
    bool monotone = true;
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        csv << io::g17(gammas[k]) << "," << io::g17(gaps[k].f_gamma) << ","
            << io::g17(gaps[k].f_envelope) << "," << io::g17(gaps[k].gap) << "\n";
        if (k > 0 && gammas[k] < gammas[k - 1] && gaps[k].gap >= gaps[k - 1].gap) monotone = false;
    }

    json summary;
    summary["kind"] = "lp_check";
    summary["beta"] = beta;
    summary["h"] = h;
    summary["profile"] = profile_template.describe();
    summary["gap_monotone_decreasing"] = monotone;
    summary["first_gap"] = gaps.front().gap;
    summary["last_gap"] = gaps.back().gap;

    Artifacts out;
    out.cell_failures = std::move(failures);
    const std::string name = j["name"].get<std::string>();
    out.files.emplace_back(name + "_lp.csv", csv.str());
    out.files.emplace_back(name + "_lp.json", summary.dump(2) + "\n");
    return out;
}

Artifacts run_badness(const json& j, int jobs) {
    std::vector<std::string> sink;
    BadnessSetup setup = badness_from_json(j, sink);
    (void)jobs; // radii enumerations already parallelize over state blocks

    auto curve = badness::badness_profile(setup.model, setup.spec, setup.gen, setup.radii,
                                          setup.params);
    std::ostringstream csv;
    csv << "radius,variation,eta1,eta2\n";
    for (const auto& pt : curve.points)
        csv << pt.radius << "," << io::g17(pt.variation) << "," << pt.eta_high << "," << pt.eta_low
            << "\n";

    json summary;
    summary["kind"] = "badness_profile";
    summary["model"] = curve.model_note;
    summary["transform"] = curve.transform_note;
    summary["generator"] = curve.generator_note;
    summary["bc"] = curve.bc_note;
    summary["margin"] = curve.margin;
    summary["min_variation"] = curve.min_variation;
    summary["fit_slope"] = curve.fit_slope;
    summary["exact"] = std::all_of(curve.points.begin(), curve.points.end(),
                                   [](const auto& p) { return p.exact; });

    Artifacts out;
    const std::string name = j["name"].get<std::string>();
    out.files.emplace_back(name + "_variation.csv", csv.str());
    out.files.emplace_back(name + "_variation.json", summary.dump(2) + "\n");
    out.summary_seeds["generator_seed"] = setup.gen.seed;
    out.summary_seeds["mc_seed"] = setup.params.mc_seed;
    return out;
}

Artifacts run_quenched(const json& j, int jobs) {
    std::vector<std::string> sink;
    QuenchedSetup setup = quenched_from_json(j, sink);
    const Configuration n = quenched::sample_disorder(setup.jm, setup.disorder_seed);

    std::vector<double> probes(setup.lambda_radii.size(), std::nan(""));
    auto failures = run_cells(setup.lambda_radii.size(), jobs, [&](std::size_t k) {
        probes[k] = quenched::bad_disorder_probe(setup.jm, n, Box::centered(2, setup.lambda_radii[k]),
                                                 setup.bc);
    });

    std::ostringstream csv;
    csv << "lambda_radius,probe\n";
    for (std::size_t k = 0; k < probes.size(); ++k)
        csv << setup.lambda_radii[k] << "," << io::g17(probes[k]) << "\n";

    json summary;
    summary["kind"] = "quenched_probe";
    summary["h"] = setup.jm.disorder.h;
    summary["bias_q"] = setup.jm.disorder.bias_q;
    summary["beta"] = setup.jm.beta;
    summary["disorder_seed"] = setup.disorder_seed;
    summary["bc"] = setup.bc.describe();
    summary["quenched_magnetization"] =
        quenched::quenched_magnetization(setup.jm, n, setup.bc);
    std::string bits;
    for (const Site& x : setup.jm.lattice.sites()) bits += n.at(x) > 0 ? '+' : '-';
    summary["disorder_realization"] = bits;

    Artifacts out;
    out.cell_failures = std::move(failures);
    const std::string name = j["name"].get<std::string>();
    out.files.emplace_back(name + "_probe.csv", csv.str());
    out.files.emplace_back(name + "_probe.json", summary.dump(2) + "\n");
    out.summary_seeds["disorder_seed"] = setup.disorder_seed;
    return out;
}

Artifacts run_degeneracy(const json& j, int jobs) {
    (void)jobs;
    const int len = static_cast<int>(j.value("chain_length", 4));
    const double beta = j.value("beta", 20.0);

    quenched::JointModel jm;
    jm.disorder = quenched::DisorderField::dilution(0.5);
    jm.coupling_j = 1.0;
    jm.beta = beta;
    jm.lattice = Lattice(2, Box::rectangle(0, len, 0, 2));

    auto make_disorder = [&](bool connector) {
        Configuration n;
        for (const Site& x : jm.lattice.sites()) n.set(x, 0);
        for (int x = 0; x < len; ++x) {
            n.set(site(x, 0), 1);
            n.set(site(x, 2), 1);
        }
        if (connector) {
            n.set(site(len, 0), 1);
            n.set(site(len, 1), 1);
            n.set(site(len, 2), 1);
        }
        return n;
    };
    const Site bridge = site(0, 1);
    const auto bc = BoundaryCondition::free_bc();

    const Configuration open_n = make_disorder(false);
    const Configuration far_n = make_disorder(true);
    Configuration bridged_n = open_n;
    bridged_n.set(bridge, 1);

    const auto deg_open =
        exact::ground_state_degeneracy(quenched::occupied_subgraph_model(jm, open_n), bc);
    const auto deg_bridged =
        exact::ground_state_degeneracy(quenched::occupied_subgraph_model(jm, bridged_n), bc);
    const auto deg_far =
        exact::ground_state_degeneracy(quenched::occupied_subgraph_model(jm, far_n), bc);
    const double d_open = quenched::free_energy_increment(jm, open_n, bridge, bc);
    const double d_far = quenched::free_energy_increment(jm, far_n, bridge, bc);

    json summary;
    summary["kind"] = "degeneracy";
    summary["chain_length"] = len;
    summary["beta"] = beta;
    summary["degeneracy_disconnected"] = deg_open;
    summary["degeneracy_bridged"] = deg_bridged;
    summary["degeneracy_far_connected"] = deg_far;
    summary["increment_disconnected"] = d_open;
    summary["increment_connected"] = d_far;
    summary["increment_difference"] = d_far - d_open;
    summary["ln2"] = std::log(2.0);
    summary["convention"] =
        "empty sites keep a free spin; its uniform ln 2 cancels in increments";

    std::ostringstream csv;
    csv << "geometry,degeneracy,bridge_increment\n";
    csv << "disconnected," << deg_open << "," << io::g17(d_open) << "\n";
    csv << "far_connected," << deg_far << "," << io::g17(d_far) << "\n";
    csv << "bridged," << deg_bridged << ",\n";

    Artifacts out;
    const std::string name = j["name"].get<std::string>();
    out.files.emplace_back(name + "_degeneracy.csv", csv.str());
    out.files.emplace_back(name + "_degeneracy.json", summary.dump(2) + "\n");
    return out;
}

Artifacts run_oracle_crosscheck(const json& j, int jobs) {
    const double p = j["p"].get<double>();
    const double h = j.value("h", 0.0);
    std::vector<double> betas, alphas, ns;
    for (const auto& v : j["betas"]) betas.push_back(v.get<double>());
    for (const auto& v : j["alphas"]) alphas.push_back(v.get<double>());
    for (const auto& v : j["n_values"]) ns.push_back(v.get<double>());

    struct Cell {
        double beta, alpha, limit, oracle, diff;
    };
    std::vector<Cell> cells(betas.size() * alphas.size());
    auto failures = run_cells(cells.size(), jobs, [&](std::size_t k) {
        const double beta = betas[k / alphas.size()];
        const double alpha = alphas[k % alphas.size()];
        meanfield::CwParams q{beta, h, p, alpha};
        const double limit = meanfield::cw_decimated_conditional(q);
        // Richardson in 1/N over the two largest sizes
        const int n1 = static_cast<int>(ns[ns.size() - 1]);
        const int n2 = static_cast<int>(ns[ns.size() - 2]);
        const double v1 = meanfield::cw_finite_n_oracle(n1, q);
        const double v2 = meanfield::cw_finite_n_oracle(n2, q);
        const double w = static_cast<double>(n1) / (n1 - n2);
        const double oracle = w * v1 - (w - 1.0) * v2;
        cells[k] = {beta, alpha, limit, oracle, std::abs(oracle - limit)};
    });

    std::ostringstream csv;
    csv << "beta,alpha,limit,oracle,diff\n";
    double max_diff = 0.0;
    for (const auto& c : cells) {
        csv << io::g17(c.beta) << "," << io::g17(c.alpha) << "," << io::g17(c.limit) << ","
            << io::g17(c.oracle) << "," << io::g17(c.diff) << "\n";
        max_diff = std::max(max_diff, c.diff);
    }

    json summary;
    summary["kind"] = "oracle_crosscheck";
    summary["p"] = p;
    summary["h"] = h;
    summary["points"] = cells.size();
    summary["max_diff"] = max_diff;
    summary["tolerance"] = 5e-3;
    summary["within_tolerance"] = max_diff < 5e-3;

    Artifacts out;
    out.cell_failures = std::move(failures);
    const std::string name = j["name"].get<std::string>();
    out.files.emplace_back(name + "_crosscheck.csv", csv.str());
    out.files.emplace_back(name + "_crosscheck.json", summary.dump(2) + "\n");
    return out;
}

Artifacts run_betac(const json& j, int jobs) {
    std::vector<std::string> sink;
    BetacSetup setup = betac_from_json(j, sink);
    (void)jobs; // cells stream through the MC engine; chains stay sequential
    auto report = kac::betac_pipeline(setup.config);

    std::ostringstream csv;
    csv << "L,beta,u,u_err\n";
    for (const auto& pt : report.table)
        csv << pt.size << "," << io::g17(pt.beta) << "," << io::g17(pt.u) << ","
            << io::g17(pt.u_err) << "\n";

    json summary;
    summary["kind"] = "betac_pipeline";
    summary["profile"] = setup.config.profile.describe();
    summary["sizes"] = setup.config.sizes;
    summary["betas"] = setup.config.betas;
    summary["seed"] = setup.config.seed;
    summary["sweeps"] = setup.config.sweeps;
    summary["crossing_found"] = report.crossing_found;
    if (report.crossing_found) {
        summary["beta_c"] = report.beta_c;
        summary["beta_c_err"] = report.beta_c_err;
    } else {
        summary["beta_c"] = nullptr;
        summary["beta_c_err"] = nullptr;
    }
    summary["crossing_pair"] = {report.pair_l1, report.pair_l2};
    summary["note"] = report.note;

    Artifacts out;
    const std::string name = j["name"].get<std::string>();
    out.files.emplace_back(name + "_binder.csv", csv.str());
    out.files.emplace_back(name + "_crossing.json", summary.dump(2) + "\n");
    out.summary_seeds["seed"] = setup.config.seed;
    return out;
}

} // namespace

ValidationReport validate_file(const std::string& path) {
    ValidationReport report;
    json j = parse_config(path, report.errors);
    if (!report.errors.empty()) return report;
    return validate_json(j);
}

RunResult run_file(const std::string& path, int jobs, const std::string& out_dir) {
    RunResult result;
    std::vector<std::string> parse_errors;
    json j = parse_config(path, parse_errors);
    ValidationReport report;
    if (!parse_errors.empty()) {
        report.errors = parse_errors;
    } else {
        report = validate_json(j);
    }
    if (!report.ok) {
        result.exit_code = 1;
        result.message = report.describe();
        return result;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Artifacts artifacts;
    std::string status = "ok";
    try {
        if (report.kind == "cw_scan") artifacts = run_cw_scan(j, jobs);
        else if (report.kind == "lp_check") artifacts = run_lp_check(j, jobs);
        else if (report.kind == "badness_profile") artifacts = run_badness(j, jobs);
        else if (report.kind == "quenched_probe") artifacts = run_quenched(j, jobs);
        else if (report.kind == "degeneracy") artifacts = run_degeneracy(j, jobs);
        else if (report.kind == "oracle_crosscheck") artifacts = run_oracle_crosscheck(j, jobs);
        else if (report.kind == "betac_pipeline") artifacts = run_betac(j, jobs);
    } catch (const std::exception& e) {
        status = std::string("failed: ") + e.what();
        result.exit_code = 2;
        result.message = status;
    }
    const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    for (const auto& [file_name, content] : artifacts.files) {
        const std::string full = out_dir + "/" + file_name;
        io::write_file(full, content);
        result.outputs.push_back(full);
    }

    if (result.exit_code == 0 && !artifacts.cell_failures.empty()) {
        status = std::to_string(artifacts.cell_failures.size()) + " cells failed";
        result.exit_code = 2;
        result.message = status;
    }

    json manifest;
    manifest["name"] = report.name;
    manifest["kind"] = report.kind;
    manifest["config_hash"] = io::fnv_hex(io::read_file(path));
    manifest["tool_version"] = tool_version;
    manifest["seeds"] = artifacts.summary_seeds;
    manifest["outputs"] = json::array();
    for (const auto& [file_name, content] : artifacts.files) manifest["outputs"].push_back(file_name);
    manifest["status"] = status;
    manifest["cells_failed"] = artifacts.cell_failures;
    manifest["wall_ms"] = wall_ms;
    const std::string manifest_path = out_dir + "/" + report.name + "_manifest.json";
    io::write_file(manifest_path, manifest.dump(2) + "\n");
    result.outputs.push_back(manifest_path);
    if (result.exit_code == 0)
        result.message = "wrote " + std::to_string(result.outputs.size()) + " files to " + out_dir;
    return result;
}

std::string catalog_text() {
    std::ostringstream os;
    os << "scenario kinds (" << scenario_kinds().size() << "):\n";
    os << "  badness_profile    Eq-style variation curve of a transformed measure.\n"
          "                     params: model{dim,j,h,beta}, transform{kind,pitch|t},\n"
          "                     generator{kind,...}, radii, margin, bc, cap, mc_fallback\n"
          "                     example: scenarios/badness_profile.json\n";
    os << "  quenched_probe     RFIM joint-measure discontinuity probe over Lambda radii.\n"
          "                     params: h, bias_q, j, beta, window_x, window_y,\n"
          "                     disorder_seed, lambda_radii, bc\n"
          "                     example: scenarios/quenched_probe.json\n";
    os << "  cw_scan            Curie-Weiss decimation jump scan over a beta grid.\n"
          "                     params: p, h, beta_min, beta_max, beta_step\n"
          "                     example: scenarios/cw_scan.json\n";
    os << "  lp_check           1D Kac free energy vs the convexified mean-field value.\n"
          "                     params: profile{shape,gamma}, gammas, beta, h\n"
          "                     example: scenarios/lp_check.json\n";
    os << "  betac_pipeline     Binder scan of the quenched three-quarter-lattice model.\n"
          "                     params: profile{shape,gamma}, generator, sizes, betas,\n"
          "                     seed, sweeps, update\n"
          "                     example: scenarios/betac_pipeline.json\n";
    os << "  degeneracy         Two-chain ground-state counts and the ln 2 increment.\n"
          "                     params: chain_length, beta\n"
          "                     example: scenarios/degeneracy.json\n";
    os << "  oracle_crosscheck  Mean-field limit vs the finite-N oracle on a grid.\n"
          "                     params: p, h, betas, alphas, n_values\n"
          "                     example: scenarios/oracle_crosscheck.json\n";
    return os.str();
}

} // namespace nongibbs::scenario
