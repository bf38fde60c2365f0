#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nongibbs/spin_model.hpp"
#include "test_util.hpp"

using namespace nongibbs;
using testutil::SplitMix;

TEST_CASE("energy: single ferromagnetic bond") {
    SpinModel m = SpinModel::ising_chain(2, 1.0, 0.0, 1.0);
    Configuration s;
    s.set(site(0), +1);
    s.set(site(1), +1);
    CHECK(energy(s, BoundaryCondition::free_bc(), m) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("energy: one site against an all-minus boundary") {
    SpinModel m = SpinModel::ising_chain(1, 1.0, 0.0, 1.0);
    Configuration s;
    s.set(site(0), +1);
    // two frustrated bonds
    CHECK(energy(s, BoundaryCondition::all_minus(), m) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("energy: 3x3 periodic all-plus counts 18 bonds") {
    SpinModel m = SpinModel::ising_square(3, 3, 1.0, 0.0, 1.0);
    Configuration s = Configuration::constant(m.lattice.sites(), +1);
    const double e = energy(s, BoundaryCondition::periodic(), m);
    CHECK(e == doctest::Approx(-18.0).epsilon(1e-14));
    CHECK(e == doctest::Approx(testutil::brute_energy(s, BoundaryCondition::periodic(), m)));
}

TEST_CASE("energy: unresolved fixed boundary names the site") {
    SpinModel m = SpinModel::ising_chain(2, 1.0, 0.0, 1.0);
    Configuration s;
    s.set(site(0), +1);
    s.set(site(1), +1);
    Configuration annulus;
    annulus.set(site(-1), +1); // site 2 left unresolved
    try {
        energy(s, BoundaryCondition::fixed(annulus), m);
        FAIL("expected an error for the unresolved exterior site");
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("(2)") != std::string::npos);
    }
}

TEST_CASE("energy agrees with the brute-force oracle on random models") {
    SplitMix rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 1 + rng.below(2);
        SpinModel m;
        if (dim == 1) {
            m = SpinModel::ising_chain(5 + rng.below(4), rng.uniform() * 2 - 1,
                                       rng.uniform() - 0.5, 0.7);
            m.interaction.add_pair(site(2), rng.uniform() - 0.5); // next-nearest
        } else {
            m = SpinModel::ising_square(3, 3, rng.uniform() * 2 - 1, rng.uniform() - 0.5, 0.7);
        }
        m.interaction.add_site_field(m.lattice.sites()[0], rng.uniform());
        Configuration s = testutil::random_configuration(m.lattice.sites(), rng);
        for (auto bc : {BoundaryCondition::free_bc(), BoundaryCondition::all_plus(),
                        BoundaryCondition::all_minus(), BoundaryCondition::periodic()}) {
            CHECK(energy(s, bc, m) ==
                  doctest::Approx(testutil::brute_energy(s, bc, m)).epsilon(1e-12));
        }
    }
}

TEST_CASE("energy: global flip invariance at h = 0 under free and periodic") {
    SplitMix rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        SpinModel m = SpinModel::ising_square(3, 4, rng.uniform() * 2 - 1, 0.0, 1.0);
        Configuration s = testutil::random_configuration(m.lattice.sites(), rng);
        for (auto bc : {BoundaryCondition::free_bc(), BoundaryCondition::periodic()}) {
            CHECK(energy(s, bc, m) == doctest::Approx(energy(s.flipped(), bc, m)).epsilon(1e-12));
        }
    }
}

TEST_CASE("energy: plus/minus boundary difference equals twice the cross-boundary sum") {
    SplitMix rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        SpinModel m = SpinModel::ising_square(3, 3, rng.uniform() * 2 - 1, rng.uniform() - 0.5, 1.0);
        Configuration s = testutil::random_configuration(m.lattice.sites(), rng);
        double cross = 0.0; // sum of J * sigma_i over boundary-crossing bonds
        for (const Site& si : m.lattice.sites()) {
            for (const PairTerm& t : m.interaction.pairs()) {
                for (const Site& j : {add(si, t.offset), sub(si, t.offset)}) {
                    if (!m.lattice.in_window(j)) cross += t.coupling * s.at(si);
                }
            }
        }
        const double d = energy(s, BoundaryCondition::all_plus(), m) -
                         energy(s, BoundaryCondition::all_minus(), m);
        CHECK(d == doctest::Approx(-2.0 * cross).epsilon(1e-12));
    }
}

TEST_CASE("energy: explicit annulus matching all-plus reproduces all-plus energies") {
    // range-3 kernel: the fixed boundary must cover three shells
    SpinModel m = SpinModel::ising_chain(5, 0.4, 0.0, 1.0);
    m.interaction.add_pair(site(3), 0.2);
    Configuration annulus;
    for (int x = -3; x <= 7; ++x)
        if (x < 0 || x > 4) annulus.set(site(x), +1);
    SplitMix rng(2);
    Configuration s = testutil::random_configuration(m.lattice.sites(), rng);
    CHECK(energy(s, BoundaryCondition::fixed(annulus), m) ==
          doctest::Approx(energy(s, BoundaryCondition::all_plus(), m)).epsilon(1e-13));

    // one missing shell site is an error naming it
    Configuration partial = annulus;
    partial = Configuration{};
    for (int x = -2; x <= 6; ++x)
        if (x < 0 || x > 4) partial.set(site(x), +1); // width 2 only
    try {
        energy(s, BoundaryCondition::fixed(partial), m);
        FAIL("expected an unresolved-site error");
    } catch (const std::invalid_argument& err) {
        const std::string what = err.what();
        CHECK((what.find("(-3)") != std::string::npos || what.find("(7)") != std::string::npos));
    }
}

TEST_CASE("interaction_norm examples") {
    CHECK(interaction_norm(SpinModel::ising_square(3, 3, 1.0, 0.0, 1.0)) == doctest::Approx(4.0));
    CHECK(interaction_norm(SpinModel::ising_chain(4, 1.0, 0.5, 1.0)) == doctest::Approx(2.5));

    // discrete Kac top-hat kernel, gamma = 1/4: J(r) = 1/8 for 1 <= |r| <= 4
    SpinModel kac = SpinModel::ising_chain(9, 0.0, 0.0, 1.0);
    kac.interaction = Interaction{};
    for (int r = 1; r <= 4; ++r) kac.interaction.add_pair(site(r), 0.125);
    CHECK(interaction_norm(kac) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("interaction_norm: additive over terms and translation invariant") {
    SplitMix rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const double j1 = rng.uniform() * 2 - 1, j2 = rng.uniform() * 2 - 1;
        SpinModel a = SpinModel::ising_chain(6, j1, 0.0, 1.0);
        SpinModel b = SpinModel::ising_chain(6, 0.0, 0.0, 1.0);
        b.interaction = Interaction{};
        b.interaction.add_pair(site(2), j2);
        SpinModel both = SpinModel::ising_chain(6, j1, 0.0, 1.0);
        both.interaction.add_pair(site(2), j2);
        CHECK(interaction_norm(both) ==
              doctest::Approx(interaction_norm(a) + interaction_norm(b)).epsilon(1e-13));

        // translating the window leaves the norm alone
        SpinModel shifted = both;
        shifted.lattice = Lattice(1, Box::interval(10, 15));
        CHECK(interaction_norm(shifted) == doctest::Approx(interaction_norm(both)));
    }
}

TEST_CASE("gibbs_weight examples") {
    SpinModel m = SpinModel::ising_chain(2, 1.0, 0.0, 1e-12);
    SplitMix rng(5);
    Configuration s = testutil::random_configuration(m.lattice.sites(), rng);
    CHECK(gibbs_weight(s, BoundaryCondition::free_bc(), m) == doctest::Approx(1.0).epsilon(1e-9));

    m.beta = 1.0;
    Configuration pp;
    pp.set(site(0), +1);
    pp.set(site(1), +1);
    CHECK(gibbs_weight(pp, BoundaryCondition::free_bc(), m) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("gibbs_weight: spin-flip symmetry and affine log-weight in beta") {
    SplitMix rng(31337);
    for (int trial = 0; trial < 20; ++trial) {
        SpinModel m = SpinModel::ising_square(3, 3, rng.uniform() * 2 - 1, 0.0, 1.0);
        Configuration s = testutil::random_configuration(m.lattice.sites(), rng);
        const auto bc = BoundaryCondition::free_bc();
        CHECK(gibbs_weight(s, bc, m) == doctest::Approx(gibbs_weight(s.flipped(), bc, m)).epsilon(1e-12));

        double lw[3];
        const double betas[3] = {0.5, 1.0, 1.5};
        for (int k = 0; k < 3; ++k) {
            SpinModel mk = m;
            mk.beta = betas[k];
            lw[k] = log_gibbs_weight(s, bc, mk);
        }
        CHECK(lw[0] + lw[2] == doctest::Approx(2.0 * lw[1]).epsilon(1e-12));
    }
}
