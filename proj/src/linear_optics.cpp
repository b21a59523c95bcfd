#include "catsim/linear_optics.hpp"

#include <cmath>

namespace catsim {

double LabelUnitary::unitarity_defect() const {
    double c0 = std::norm(u00) + std::norm(u10);
    double c1 = std::norm(u01) + std::norm(u11);
    Complex cross = std::conj(u00) * u01 + std::conj(u10) * u11;
    return std::max({std::abs(c0 - 1.0), std::abs(c1 - 1.0), std::abs(cross)});
}

LabelUnitary modified_bs_unitary(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {Complex(c, 0.0), Complex(0.0, s), Complex(s, 0.0), Complex(0.0, -c)};
}

LabelUnitary balanced_bs_unitary() {
    double r = 1.0 / std::sqrt(2.0);
    return {Complex(r, 0.0), Complex(r, 0.0), Complex(r, 0.0), Complex(-r, 0.0)};
}

CatState apply_pair_unitary(const CatState& state, int k, int l, const LabelUnitary& u) {
    detail::check_mode(state, k);
    detail::check_mode(state, l);
    if (k == l) throw ModeIndexError("pair unitary needs two distinct modes");
    if (!u.is_unitary(kUnitarityTolerance)) {
        throw NonUnitaryError("label map is not unitary within tolerance");
    }
    std::vector<CatTerm> terms = state.terms();
    for (auto& t : terms) {
        Complex bk = t.labels[k], bl = t.labels[l];
        t.labels[k] = u.u00 * bk + u.u01 * bl;
        t.labels[l] = u.u10 * bk + u.u11 * bl;
    }
    return CatState(state.mode_count(), std::move(terms));
}

CatState phase_shift(const CatState& state, int j, double phi) {
    detail::check_mode(state, j);
    Complex factor = std::exp(Complex(0.0, -phi));
    std::vector<CatTerm> terms = state.terms();
    for (auto& t : terms) t.labels[j] *= factor;
    return CatState(state.mode_count(), std::move(terms));
}

CatState modified_bs(const CatState& state, int k, int l, double theta) {
    return apply_pair_unitary(state, k, l, modified_bs_unitary(theta));
}

CatState balanced_bs(const CatState& state, int k, int l) {
    return apply_pair_unitary(state, k, l, balanced_bs_unitary());
}

}  // namespace catsim
