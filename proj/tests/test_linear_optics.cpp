#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catsim/cat_state.hpp"
#include "catsim/linear_optics.hpp"
#include "helpers.hpp"

using namespace catsim;
using test_util::coherent;

namespace {

bool label_close(Complex a, Complex b, double tol = 1e-14) { return std::abs(a - b) < tol; }

}  // namespace

TEST_CASE("pair unitary basics") {
    CatState a0 = coherent({Complex(1.3), Complex(0.0)});
    LabelUnitary identity{1.0, 0.0, 0.0, 1.0};
    CatState same = apply_pair_unitary(a0, 0, 1, identity);
    CHECK(fidelity(same, a0) == doctest::Approx(1.0).epsilon(1e-14));

    CatState vac = coherent({Complex(0.0), Complex(0.0)});
    SeededRng rng(5);
    for (int i = 0; i < 10; ++i) {
        CatState out = apply_pair_unitary(vac, 0, 1, test_util::random_unitary(rng));
        CHECK(label_close(out.terms()[0].labels[0], 0.0));
        CHECK(label_close(out.terms()[0].labels[1], 0.0));
    }

    CatState mixed = apply_pair_unitary(a0, 0, 1, balanced_bs_unitary());
    CHECK(label_close(mixed.terms()[0].labels[0], 1.3 / std::sqrt(2.0)));
    CHECK(label_close(mixed.terms()[0].labels[1], 1.3 / std::sqrt(2.0)));

    LabelUnitary bogus{1.0, 0.0, 0.5, 1.0};
    CHECK_THROWS_AS((void)apply_pair_unitary(a0, 0, 1, bogus), NonUnitaryError);
    CHECK_THROWS_AS((void)apply_pair_unitary(a0, 0, 0, identity), ModeIndexError);
    CHECK_THROWS_AS((void)apply_pair_unitary(a0, 0, 2, identity), ModeIndexError);
}

TEST_CASE("phase shifter") {
    CatState a = coherent({Complex(0.9, 0.4)});
    CHECK(fidelity(phase_shift(a, 0, 0.0), a) == doctest::Approx(1.0).epsilon(1e-14));

    CatState flipped = phase_shift(a, 0, std::numbers::pi);
    CHECK(label_close(flipped.terms()[0].labels[0], Complex(-0.9, -0.4), 1e-14));

    CatState quarter = phase_shift(coherent({Complex(2.0)}), 0, std::numbers::pi / 2.0);
    CHECK(label_close(quarter.terms()[0].labels[0], Complex(0.0, -2.0), 1e-14));

    CHECK_THROWS_AS((void)phase_shift(a, 1, 1.0), ModeIndexError);
}

TEST_CASE("unbalanced splitter label map") {
    // theta = pi/4 sends |a sqrt2>|0> to |a>|a>.
    double root2 = std::sqrt(2.0);
    CatState in = coherent({Complex(0.7 * root2), Complex(0.0)});
    CatState out = modified_bs(in, 0, 1, std::numbers::pi / 4.0);
    CHECK(label_close(out.terms()[0].labels[0], 0.7, 1e-14));
    CHECK(label_close(out.terms()[0].labels[1], 0.7, 1e-14));

    // theta = 0: (b_k, b_l) -> (b_k, -i b_l).
    CatState in2 = coherent({Complex(0.5), Complex(1.1)});
    CatState out2 = modified_bs(in2, 0, 1, 0.0);
    CHECK(label_close(out2.terms()[0].labels[0], 0.5));
    CHECK(label_close(out2.terms()[0].labels[1], Complex(0.0, -1.1)));

    for (double theta : {0.3, 0.9552, 1.4}) {
        CHECK(modified_bs_unitary(theta).unitarity_defect() < 1e-15);
    }
}

TEST_CASE("balanced splitter merges and splits cats") {
    Complex alpha(0.8, -0.2);
    CatState same = coherent({alpha, alpha});
    CatState merged = balanced_bs(same, 0, 1);
    CHECK(label_close(merged.terms()[0].labels[0], alpha * std::sqrt(2.0)));
    CHECK(label_close(merged.terms()[0].labels[1], 0.0));

    CatState anti = coherent({alpha, -alpha});
    CatState pushed = balanced_bs(anti, 0, 1);
    CHECK(label_close(pushed.terms()[0].labels[0], 0.0));
    CHECK(label_close(pushed.terms()[0].labels[1], alpha * std::sqrt(2.0)));

    SeededRng rng(7);
    CatState psi = test_util::random_state(rng, 4, 4);
    if (psi.mode_count() >= 2) {
        CatState twice = balanced_bs(balanced_bs(psi, 0, 1), 0, 1);
        CHECK(fidelity(twice, psi) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("random op sequences preserve the norm") {
    SeededRng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        CatState state = test_util::random_state(rng, 6, 8);
        for (int step = 0; step < 20; ++step) {
            double pick = rng.uniform01();
            int k = static_cast<int>(rng.uniform01() * state.mode_count());
            if (k >= state.mode_count()) k = state.mode_count() - 1;
            if (pick < 0.3 || state.mode_count() < 2) {
                state = phase_shift(state, k, rng.uniform01() * 6.28);
            } else {
                int l = static_cast<int>(rng.uniform01() * state.mode_count());
                if (l >= state.mode_count()) l = state.mode_count() - 1;
                if (l == k) l = (k + 1) % state.mode_count();
                if (pick < 0.55) {
                    state = balanced_bs(state, k, l);
                } else if (pick < 0.8) {
                    state = modified_bs(state, k, l, rng.uniform01() * 3.14);
                } else {
                    state = apply_pair_unitary(state, k, l, test_util::random_unitary(rng));
                }
            }
        }
        CHECK(squared_norm(state) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("splitter helpers equal their generic pair unitaries exactly") {
    SeededRng rng(43);
    CatState psi = test_util::random_state(rng, 3, 4);
    while (psi.mode_count() < 2) psi = test_util::random_state(rng, 3, 4);
    for (double theta : {0.1, 0.7, 1.2}) {
        CatState a = modified_bs(psi, 0, 1, theta);
        CatState b = apply_pair_unitary(psi, 0, 1, modified_bs_unitary(theta));
        REQUIRE(a.terms().size() == b.terms().size());
        for (std::size_t t = 0; t < a.terms().size(); ++t) {
            CHECK(a.terms()[t].coeff == b.terms()[t].coeff);
            CHECK(a.terms()[t].labels == b.terms()[t].labels);
        }
    }
}
