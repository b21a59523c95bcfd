#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "catsim/cat_state.hpp"
#include "catsim/linear_optics.hpp"
#include "catsim/rng.hpp"

namespace test_util {

using catsim::CatState;
using catsim::CatTerm;
using catsim::Complex;

inline Complex random_complex(catsim::SeededRng& rng, double radius) {
    return {radius * (2.0 * rng.uniform01() - 1.0), radius * (2.0 * rng.uniform01() - 1.0)};
}

// Random normalized state: up to max_modes modes and max_terms terms, labels
// in a +-label_radius box.
inline CatState random_state(catsim::SeededRng& rng, int max_modes = 6, int max_terms = 8,
                             double label_radius = 2.0) {
    int modes = 1 + static_cast<int>(rng.uniform01() * max_modes);
    if (modes > max_modes) modes = max_modes;
    int count = 1 + static_cast<int>(rng.uniform01() * max_terms);
    if (count > max_terms) count = max_terms;
    std::vector<CatTerm> terms;
    for (int t = 0; t < count; ++t) {
        CatTerm term;
        term.coeff = random_complex(rng, 1.0);
        for (int m = 0; m < modes; ++m) term.labels.push_back(random_complex(rng, label_radius));
        terms.push_back(std::move(term));
    }
    return catsim::normalize(CatState(modes, std::move(terms))).state;
}

// Haar-style random 2x2 unitary.
inline catsim::LabelUnitary random_unitary(catsim::SeededRng& rng) {
    double theta = rng.uniform01() * 3.14159265358979323846 / 2.0;
    double phi = rng.uniform01() * 6.28318530717958647692;
    double psi = rng.uniform01() * 6.28318530717958647692;
    double chi = rng.uniform01() * 6.28318530717958647692;
    Complex e_phi = std::exp(Complex(0.0, phi));
    Complex e_psi = std::exp(Complex(0.0, psi));
    Complex e_chi = std::exp(Complex(0.0, chi));
    double c = std::cos(theta), s = std::sin(theta);
    return {e_chi * e_phi * c, e_chi * e_psi * s, -e_chi * std::conj(e_psi) * s,
            e_chi * std::conj(e_phi) * c};
}

inline CatState coherent(std::vector<Complex> labels) {
    int modes = static_cast<int>(labels.size());
    return CatState(modes, {CatTerm{1.0, std::move(labels)}});
}

}  // namespace test_util
