#include "catsim/analytics.hpp"

#include <cmath>

namespace catsim {

namespace {

void check_bipartition(int mode_count, int subsystem_modes) {
    if (mode_count < 2) throw InvalidConfigError("concurrence needs M >= 2");
    if (subsystem_modes < 1 || subsystem_modes >= mode_count) {
        throw InvalidConfigError("subsystem size must satisfy 1 <= K < M");
    }
}

}  // namespace

double ConcurrenceDecomposition::concurrence() const {
    return 2.0 * std::abs(a00 * a11 - a01 * a10);
}

ConcurrenceDecomposition concurrence_decomposition(int mode_count, int subsystem_modes,
                                                   Sign sign, Complex alpha) {
    check_bipartition(mode_count, subsystem_modes);
    double s = std::norm(alpha);
    int k = subsystem_modes, r = mode_count - subsystem_modes;
    double z = std::exp(-2.0 * s);
    double zk = std::exp(-2.0 * k * s);       // Z^K
    double zr = std::exp(-2.0 * r * s);       // Z^(M-K)
    double zm = std::exp(-2.0 * mode_count * s);
    double one_minus_z2k = -std::expm1(-4.0 * k * s);
    double one_minus_z2r = -std::expm1(-4.0 * r * s);
    double branch = sign == Sign::plus ? 1.0 + zm : -std::expm1(-2.0 * mode_count * s);
    if (branch == 0.0) {
        throw ZeroNormError("decomposition degenerates at alpha = 0");
    }
    double norm_coeff = 1.0 / std::sqrt(2.0 * branch);
    double orient = sign_value(sign);

    ConcurrenceDecomposition d{};
    d.z = z;
    d.subsystem_modes = subsystem_modes;
    d.mode_count = mode_count;
    d.sign = sign;
    d.a00 = norm_coeff * branch;
    d.a01 = orient * norm_coeff * zk * std::sqrt(one_minus_z2r);
    d.a10 = orient * norm_coeff * zr * std::sqrt(one_minus_z2k);
    d.a11 = orient * norm_coeff * std::sqrt(one_minus_z2k * one_minus_z2r);
    return d;
}

double concurrence_analytic(int mode_count, int subsystem_modes, Sign sign, Complex alpha) {
    check_bipartition(mode_count, subsystem_modes);
    double s = std::norm(alpha);
    int k = subsystem_modes, r = mode_count - subsystem_modes;
    if (s == 0.0) {
        // Continuous limits: 0 for the plus sign, 2 sqrt(K(M-K))/M for minus.
        if (sign == Sign::plus) return 0.0;
        return 2.0 * std::sqrt(static_cast<double>(k) * r) / mode_count;
    }
    double num = std::sqrt((-std::expm1(-4.0 * k * s)) * (-std::expm1(-4.0 * r * s)));
    double den = sign == Sign::plus ? 1.0 + std::exp(-2.0 * mode_count * s)
                                    : -std::expm1(-2.0 * mode_count * s);
    return num / den;
}

double concurrence_from_decomposition(int mode_count, int subsystem_modes, Sign sign,
                                      Complex alpha) {
    return concurrence_decomposition(mode_count, subsystem_modes, sign, alpha).concurrence();
}

double mean_photon_per_mode(int mode_count, Sign sign, Complex alpha) {
    if (mode_count < 1) throw InvalidConfigError("need at least one mode");
    double s = std::norm(alpha);
    if (sign == Sign::plus) return s * std::tanh(mode_count * s);
    if (s == 0.0) return 1.0 / mode_count;  // continuous limit of s coth(Ms)
    return s / std::tanh(mode_count * s);
}

CatState ghz_reference(int mode_count, Sign sign, Complex alpha) {
    if (mode_count < 2) throw InvalidConfigError("reference needs M >= 2");
    double w = 1.0 / std::sqrt(2.0);
    std::vector<CatTerm> terms{{w, std::vector<Complex>(mode_count, alpha)},
                               {sign_value(sign) * w, std::vector<Complex>(mode_count, -alpha)}};
    return CatState(mode_count, std::move(terms));
}

FockVector w_reference_fock(int mode_count) {
    if (mode_count < 2) throw InvalidConfigError("reference needs M >= 2");
    FockVector v{mode_count, std::vector<int>(mode_count, 1),
                 std::vector<Complex>(std::size_t{1} << mode_count, 0.0), 0.0};
    double w = 1.0 / std::sqrt(static_cast<double>(mode_count));
    std::vector<int> ns(mode_count, 0);
    for (int m = 0; m < mode_count; ++m) {
        ns[m] = 1;
        v.amps[v.index(ns)] = w;
        ns[m] = 0;
    }
    return v;
}

double eigen_relation_residual(const CatState& state, const std::vector<int>& modes,
                               Complex alpha) {
    detail::check_mode_set(state, modes);
    CatState applied = state;
    for (int m : modes) {
        applied = apply_annihilation(applied, m);
        applied = apply_annihilation(applied, m);
    }
    Complex eigenvalue = std::pow(alpha, 2.0 * static_cast<double>(modes.size()));
    return 1.0 - fidelity(applied, scale(state, eigenvalue));
}

}  // namespace catsim
