#include "catsim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace catsim {

namespace {

// Per-term Gram matrix over every mode except `skip`: G[i][j] = product of
// coherent overlaps. Reused for all n when building a number distribution.
std::vector<std::vector<Complex>> rest_gram(const CatState& state, int skip) {
    const auto& terms = state.terms();
    std::size_t t = terms.size();
    std::vector<std::vector<Complex>> g(t, std::vector<Complex>(t));
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = i; j < t; ++j) {
            Complex prod = 1.0;
            for (int m = 0; m < state.mode_count(); ++m) {
                if (m == skip) continue;
                prod *= coherent_overlap(terms[i].labels[m], terms[j].labels[m]);
            }
            g[i][j] = prod;
            g[j][i] = std::conj(prod);
        }
    }
    return g;
}

// Number-basis series N_0..N_n_max of one term's label at `mode`.
std::vector<Complex> fock_series(Complex beta, int n_max) {
    std::vector<Complex> out(n_max + 1);
    Complex value = std::exp(Complex(-0.5 * std::norm(beta), 0.0));
    out[0] = value;
    for (int n = 1; n <= n_max; ++n) {
        value *= beta / std::sqrt(static_cast<double>(n));
        out[n] = value;
    }
    return out;
}

}  // namespace

Complex fock_amplitude(int n, Complex beta) {
    if (n < 0) throw InvalidConfigError("photon number must be nonnegative");
    if (beta == Complex(0.0)) return n == 0 ? Complex(1.0) : Complex(0.0);
    Complex value = std::exp(Complex(-0.5 * std::norm(beta), 0.0));
    for (int k = 1; k <= n; ++k) value *= beta / std::sqrt(static_cast<double>(k));
    return value;
}

int suggested_cutoff(const CatState& state, int mode) {
    detail::check_mode(state, mode);
    double m = 0.0;
    for (const auto& t : state.terms()) m = std::max(m, std::norm(t.labels[mode]));
    return static_cast<int>(std::ceil(m + 10.0 * std::sqrt(m) + 10.0));
}

std::vector<double> number_distribution(const CatState& state, int mode, int n_max) {
    detail::check_mode(state, mode);
    if (n_max < 0) throw InvalidConfigError("n_max must be nonnegative");
    const auto& terms = state.terms();
    std::size_t t = terms.size();
    auto gram = rest_gram(state, mode);
    std::vector<std::vector<Complex>> series(t);
    for (std::size_t i = 0; i < t; ++i) series[i] = fock_series(terms[i].labels[mode], n_max);

    std::vector<double> p(n_max + 1, 0.0);
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < t; ++i) {
            for (std::size_t j = 0; j < t; ++j) {
                acc += std::conj(terms[i].coeff * series[i][n]) * terms[j].coeff * series[j][n] *
                       gram[i][j];
            }
        }
        p[n] = std::max(acc.real(), 0.0);
        total += p[n];
    }
    if (total < 1.0 - kTailMassLimit) {
        std::ostringstream os;
        os << "number distribution at mode " << mode << " leaks " << (1.0 - total)
           << " probability beyond n_max = " << n_max;
        throw TailMassError(os.str());
    }
    return p;
}

namespace {

NumberCollapse collapse_with_probability(const CatState& state, int mode, int n, double p_n) {
    std::vector<CatTerm> terms = state.terms();
    double inv = 1.0 / std::sqrt(p_n);
    std::vector<CatTerm> collapsed;
    collapsed.reserve(terms.size());
    for (auto& t : terms) {
        Complex c = t.coeff * fock_amplitude(n, t.labels[mode]) * inv;
        t.labels.erase(t.labels.begin() + mode);
        collapsed.push_back({c, std::move(t.labels)});
    }
    MeasurementRecord rec{mode, MeasurementRecord::Kind::number, n, p_n};
    return {rec, CatState(state.mode_count() - 1, std::move(collapsed))};
}

}  // namespace

NumberCollapse collapse_number(const CatState& state, int mode, int n) {
    detail::check_mode(state, mode);
    if (n < 0) throw InvalidConfigError("photon number must be nonnegative");
    const auto& terms = state.terms();
    auto gram = rest_gram(state, mode);
    std::vector<Complex> amp(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        amp[i] = fock_amplitude(n, terms[i].labels[mode]);
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
            acc += std::conj(terms[i].coeff * amp[i]) * terms[j].coeff * amp[j] * gram[i][j];
        }
    }
    double p_n = std::max(acc.real(), 0.0);
    if (p_n < kZeroNormThreshold) {
        throw ZeroNormError("conditioning on a zero-probability photon count");
    }
    return collapse_with_probability(state, mode, n, p_n);
}

NumberCollapse sample_number_measurement(const CatState& state, int mode, SeededRng& rng) {
    detail::check_mode(state, mode);
    auto p = number_distribution(state, mode, suggested_cutoff(state, mode));
    double total = 0.0;
    for (double v : p) total += v;
    double u = rng.uniform01() * total;
    // First bin whose running sum exceeds u; such a bin is never empty because
    // an empty bin does not move the running sum.
    int n = static_cast<int>(p.size()) - 1;
    double cdf = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        cdf += p[k];
        if (u < cdf) {
            n = static_cast<int>(k);
            break;
        }
    }
    while (n > 0 && p[n] == 0.0) --n;
    return collapse_with_probability(state, mode, n, p[n]);
}

ParityProjection project_total_parity(const CatState& state, const std::vector<int>& modes,
                                      Parity parity) {
    detail::check_mode_set(state, modes);
    double s = parity == Parity::even ? 1.0 : -1.0;
    std::vector<CatTerm> terms;
    terms.reserve(2 * state.terms().size());
    for (const auto& t : state.terms()) {
        CatTerm flipped = t;
        for (int m : modes) flipped.labels[m] = -flipped.labels[m];
        terms.push_back({0.5 * t.coeff, t.labels});
        flipped.coeff *= 0.5 * s;
        terms.push_back(std::move(flipped));
    }
    CatState projected(state.mode_count(), std::move(terms));
    double prob = squared_norm(projected);
    if (prob < kZeroNormThreshold) {
        return {projected, std::max(prob, 0.0)};
    }
    return {scale(projected, 1.0 / std::sqrt(prob)), prob};
}

}  // namespace catsim
