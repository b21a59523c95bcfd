#include <doctest.h>

#include <cmath>

#include "catsim/analytics.hpp"
#include "catsim/generation.hpp"
#include "helpers.hpp"

using namespace catsim;

TEST_CASE("concurrence closed form") {
    // Equal halves of a minus channel are maximally entangled at every alpha.
    for (double s : {0.01, 0.1, 1.0, 4.0, 9.0}) {
        CHECK(std::abs(concurrence_analytic(6, 3, Sign::minus, std::sqrt(s)) - 1.0) < 1e-14);
        CHECK(std::abs(concurrence_analytic(2, 1, Sign::minus, std::sqrt(s)) - 1.0) < 1e-14);
    }

    // Small-alpha limits: 2 sqrt(K(M-K))/M for minus, 0 for plus.
    Complex tiny = std::sqrt(1e-8);
    CHECK(std::abs(concurrence_analytic(6, 1, Sign::minus, tiny) - 0.74535599249992990) < 1e-6);
    for (int m : {4, 6, 7}) {
        for (int k = 1; k < m; ++k) {
            double limit = 2.0 * std::sqrt(static_cast<double>(k) * (m - k)) / m;
            CHECK(std::abs(concurrence_analytic(m, k, Sign::minus, tiny) - limit) < 1e-6);
            CHECK(concurrence_analytic(m, k, Sign::plus, tiny) < 1e-6);
        }
    }

    // Both signs saturate to 1 at large alpha.
    Complex big = std::sqrt(9.0);
    CHECK(std::abs(concurrence_analytic(3, 1, Sign::minus, big) - 1.0) < 1e-12);
    CHECK(std::abs(concurrence_analytic(3, 1, Sign::plus, big) - 1.0) < 1e-12);

    CHECK_THROWS_AS((void)concurrence_analytic(3, 3, Sign::minus, 1.0), InvalidConfigError);
    CHECK_THROWS_AS((void)concurrence_analytic(3, 0, Sign::minus, 1.0), InvalidConfigError);
}

TEST_CASE("decomposition path equals the closed form") {
    for (int m = 2; m <= 8; ++m) {
        for (int k = 1; k < m; ++k) {
            for (double s : {0.01, 0.1, 1.0, 4.0, 10.0}) {
                for (Sign sign : {Sign::plus, Sign::minus}) {
                    Complex alpha = std::sqrt(s);
                    double via_amp = concurrence_from_decomposition(m, k, sign, alpha);
                    double direct = concurrence_analytic(m, k, sign, alpha);
                    CHECK(std::abs(via_amp - direct) < 1e-12);

                    auto d = concurrence_decomposition(m, k, sign, alpha);
                    double total =
                        d.a00 * d.a00 + d.a01 * d.a01 + d.a10 * d.a10 + d.a11 * d.a11;
                    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("concurrence symmetry and monotonicity") {
    for (int m : {5, 6, 8}) {
        for (int k = 1; k < m; ++k) {
            for (double s : {0.05, 0.7, 3.0}) {
                for (Sign sign : {Sign::plus, Sign::minus}) {
                    double a = concurrence_analytic(m, k, sign, std::sqrt(s));
                    double b = concurrence_analytic(m, m - k, sign, std::sqrt(s));
                    CHECK(std::abs(a - b) < 1e-14);
                }
            }
        }
    }

    for (Sign sign : {Sign::plus, Sign::minus}) {
        double previous = -1.0;
        for (double s = 0.01; s <= 10.0; s *= 1.6) {
            double c = concurrence_analytic(6, 2, sign, std::sqrt(s));
            CHECK(c >= previous - 1e-12);
            previous = c;
        }
    }
}

TEST_CASE("mean photon number per mode") {
    CHECK(mean_photon_per_mode(3, Sign::minus, 1.0) ==
          doctest::Approx(1.0049698233136892).epsilon(1e-14));
    CHECK(mean_photon_per_mode(3, Sign::plus, 1.0) ==
          doctest::Approx(0.99505475368673045).epsilon(1e-14));

    CHECK(mean_photon_per_mode(3, Sign::minus, 0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(mean_photon_per_mode(3, Sign::plus, 0.0) == 0.0);
    CHECK(mean_photon_per_mode(4, Sign::minus, std::sqrt(1e-12)) ==
          doctest::Approx(0.25).epsilon(1e-9));

    // The two signs bracket |alpha|^2, and both land within 1% at s = 2.
    for (int m = 2; m <= 5; ++m) {
        for (double s = 0.1; s <= 6.0; s += 0.3) {
            double low = mean_photon_per_mode(m, Sign::plus, std::sqrt(s));
            double high = mean_photon_per_mode(m, Sign::minus, std::sqrt(s));
            CHECK(low <= s + 1e-12);
            CHECK(high >= s - 1e-12);
        }
        double low2 = mean_photon_per_mode(m, Sign::plus, std::sqrt(2.0));
        double high2 = mean_photon_per_mode(m, Sign::minus, std::sqrt(2.0));
        CHECK(std::abs(low2 - 2.0) / 2.0 < 0.01);
        CHECK(std::abs(high2 - 2.0) / 2.0 < 0.01);
    }
}

TEST_CASE("GHZ comparison state") {
    Complex alpha = std::sqrt(9.0);
    CatState channel = make_channel_state({3, Sign::minus, alpha});
    CatState ghz = ghz_reference(3, Sign::minus, alpha);
    double f = fidelity(channel, ghz);
    CHECK(f >= 0.999);

    // Opposite-sign reference is orthogonal.
    CHECK(fidelity(channel, ghz_reference(3, Sign::plus, alpha)) < 1e-20);
}

TEST_CASE("W comparison state at small alpha") {
    Complex alpha = std::sqrt(1e-3);
    CatState channel = make_channel_state({3, Sign::minus, alpha});
    FockVector dense = to_fock(channel);
    FockVector w = w_reference_fock(3);
    CHECK(fock_fidelity(dense, w) >= 0.999);
}

TEST_CASE("eigen relation residual") {
    for (int m = 2; m <= 4; ++m) {
        for (Sign sign : {Sign::plus, Sign::minus}) {
            Complex alpha(0.8, 0.3);
            CatState channel = make_channel_state({m, sign, alpha});
            for (int k = 1; k <= m; ++k) {
                std::vector<int> modes;
                for (int q = 0; q < k; ++q) modes.push_back(q);
                CHECK(eigen_relation_residual(channel, modes, alpha) < 1e-10);
            }
        }
    }

    // The trio case: both signs, all three modes pinched.
    CatState trio = make_channel_state({3, Sign::minus, 1.1});
    CHECK(eigen_relation_residual(trio, {0, 1, 2}, 1.1) < 1e-10);

    SeededRng rng(77);
    CatState random = test_util::random_state(rng, 3, 5);
    std::vector<int> all;
    for (int m = 0; m < random.mode_count(); ++m) all.push_back(m);
    CHECK(eigen_relation_residual(random, all, Complex(0.9, 0.0)) > 0.01);
}
