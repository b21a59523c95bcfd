#include "catsim/cat_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace catsim {

namespace {

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

bool labels_match(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (std::abs(a[m].real() - b[m].real()) > kMergeTolerance) return false;
        if (std::abs(a[m].imag() - b[m].imag()) > kMergeTolerance) return false;
    }
    return true;
}

bool labels_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m].real() != b[m].real()) return a[m].real() < b[m].real();
        if (a[m].imag() != b[m].imag()) return a[m].imag() < b[m].imag();
    }
    return false;
}

std::vector<CatTerm> canonicalize(int mode_count, std::vector<CatTerm> raw) {
    std::vector<CatTerm> merged;
    merged.reserve(raw.size());
    for (auto& t : raw) {
        if (static_cast<int>(t.labels.size()) != mode_count) {
            throw ModeIndexError("term label count does not match mode count");
        }
        if (!finite(t.coeff)) throw Error("non-finite coefficient in state");
        for (Complex l : t.labels) {
            if (!finite(l)) throw Error("non-finite label in state");
        }
        bool absorbed = false;
        for (auto& kept : merged) {
            if (labels_match(kept.labels, t.labels)) {
                kept.coeff += t.coeff;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) merged.push_back(std::move(t));
    }

    double max_mag = 0.0;
    for (const auto& t : merged) max_mag = std::max(max_mag, std::abs(t.coeff));
    std::vector<CatTerm> pruned;
    pruned.reserve(merged.size());
    for (auto& t : merged) {
        double mag = std::abs(t.coeff);
        if (mag == 0.0 || mag < kPruneRelative * max_mag) continue;
        pruned.push_back(std::move(t));
    }

    std::sort(pruned.begin(), pruned.end(),
              [](const CatTerm& a, const CatTerm& b) { return labels_less(a.labels, b.labels); });
    return pruned;
}

}  // namespace

CatState::CatState(int mode_count, std::vector<CatTerm> terms) : mode_count_(mode_count) {
    if (mode_count < 0) throw ModeIndexError("negative mode count");
    terms_ = canonicalize(mode_count, std::move(terms));
}

namespace detail {

void check_mode(const CatState& state, int mode) {
    if (mode < 0 || mode >= state.mode_count()) {
        std::ostringstream os;
        os << "mode " << mode << " out of range [0, " << state.mode_count() << ")";
        throw ModeIndexError(os.str());
    }
}

void check_mode_set(const CatState& state, const std::vector<int>& modes) {
    if (modes.empty()) throw ModeIndexError("empty mode set");
    std::unordered_set<int> seen;
    for (int m : modes) {
        check_mode(state, m);
        if (!seen.insert(m).second) throw ModeIndexError("duplicate mode in set");
    }
}

}  // namespace detail

Complex coherent_overlap(Complex beta, Complex gamma) {
    return std::exp(-0.5 * (std::norm(beta) + std::norm(gamma)) + std::conj(beta) * gamma);
}

Complex inner_product(const CatState& lhs, const CatState& rhs) {
    if (lhs.mode_count() != rhs.mode_count()) {
        throw ModeIndexError("inner_product: mode counts differ");
    }
    Complex sum = 0.0;
    for (const auto& a : lhs.terms()) {
        for (const auto& b : rhs.terms()) {
            Complex overlap = 1.0;
            for (int m = 0; m < lhs.mode_count(); ++m) {
                overlap *= coherent_overlap(a.labels[m], b.labels[m]);
            }
            sum += std::conj(a.coeff) * b.coeff * overlap;
        }
    }
    return sum;
}

double squared_norm(const CatState& state) {
    return inner_product(state, state).real();
}

Normalized normalize(const CatState& state) {
    double n2 = squared_norm(state);
    if (n2 < kZeroNormThreshold) {
        throw ZeroNormError("cannot normalize a (near-)zero state");
    }
    double n = std::sqrt(n2);
    return {scale(state, 1.0 / n), n};
}

double fidelity(const CatState& lhs, const CatState& rhs) {
    double nl = squared_norm(lhs);
    double nr = squared_norm(rhs);
    if (nl < kZeroNormThreshold || nr < kZeroNormThreshold) {
        throw ZeroNormError("fidelity of a (near-)zero state is undefined");
    }
    return std::norm(inner_product(lhs, rhs)) / (nl * nr);
}

CatState make_input_cat(Complex x, Complex y, Complex alpha, int mode_count) {
    if (mode_count < 1) throw ModeIndexError("input cat needs at least one mode");
    if (x == Complex(0.0) && y == Complex(0.0)) {
        throw InvalidConfigError("input cat amplitudes (x, y) must not both vanish");
    }
    std::vector<CatTerm> terms;
    terms.push_back({x, std::vector<Complex>(mode_count, alpha)});
    terms.push_back({y, std::vector<Complex>(mode_count, -alpha)});
    return normalize(CatState(mode_count, std::move(terms))).state;
}

CatState make_channel_state(const ChannelSpec& spec) {
    if (spec.mode_count < 2) throw InvalidConfigError("channel state needs M >= 2");
    std::vector<CatTerm> terms;
    terms.push_back({1.0, std::vector<Complex>(spec.mode_count, spec.alpha)});
    terms.push_back({sign_value(spec.sign), std::vector<Complex>(spec.mode_count, -spec.alpha)});
    CatState raw(spec.mode_count, std::move(terms));
    // At alpha ~ 0 the two branches coincide: the minus state cancels to zero
    // and the plus state loses its two-term structure. Both are degenerate.
    if (raw.terms().size() != 2) {
        throw ZeroNormError("channel state degenerates as alpha -> 0");
    }
    return normalize(raw).state;
}

CatState apply_annihilation(const CatState& state, int mode) {
    detail::check_mode(state, mode);
    std::vector<CatTerm> terms = state.terms();
    for (auto& t : terms) t.coeff *= t.labels[mode];
    return CatState(state.mode_count(), std::move(terms));
}

CatState scale(const CatState& state, Complex factor) {
    std::vector<CatTerm> terms = state.terms();
    for (auto& t : terms) t.coeff *= factor;
    return CatState(state.mode_count(), std::move(terms));
}

CatState tensor_product(const CatState& lhs, const CatState& rhs) {
    std::vector<CatTerm> terms;
    terms.reserve(lhs.terms().size() * rhs.terms().size());
    for (const auto& a : lhs.terms()) {
        for (const auto& b : rhs.terms()) {
            CatTerm t;
            t.coeff = a.coeff * b.coeff;
            t.labels = a.labels;
            t.labels.insert(t.labels.end(), b.labels.begin(), b.labels.end());
            terms.push_back(std::move(t));
        }
    }
    return CatState(lhs.mode_count() + rhs.mode_count(), std::move(terms));
}

CatState discard_product_modes(const CatState& state, const std::vector<int>& modes) {
    detail::check_mode_set(state, modes);
    std::vector<bool> drop(state.mode_count(), false);
    for (int m : modes) drop[m] = true;
    int kept_count = state.mode_count() - static_cast<int>(modes.size());
    if (kept_count == 0) throw ModeIndexError("cannot discard every mode");
    int sub_count = static_cast<int>(modes.size());

    struct Group {
        std::vector<Complex> kept_labels;
        std::vector<CatTerm> sub_terms;
    };
    std::vector<Group> groups;
    for (const auto& t : state.terms()) {
        std::vector<Complex> kept, sub;
        kept.reserve(kept_count);
        sub.reserve(sub_count);
        for (int m = 0; m < state.mode_count(); ++m) {
            (drop[m] ? sub : kept).push_back(t.labels[m]);
        }
        Group* g = nullptr;
        for (auto& cand : groups) {
            if (labels_match(cand.kept_labels, kept)) {
                g = &cand;
                break;
            }
        }
        if (g == nullptr) {
            groups.push_back({std::move(kept), {}});
            g = &groups.back();
        }
        g->sub_terms.push_back({t.coeff, std::move(sub)});
    }
    if (groups.empty()) return CatState(kept_count, {});

    // The state is a product iff every group's sub-state is proportional to a
    // common factor phi; the rest-factor coefficient of group g is <phi|sub_g>.
    CatState phi = normalize(CatState(sub_count, groups.front().sub_terms)).state;
    std::vector<CatTerm> rest;
    rest.reserve(groups.size());
    for (auto& g : groups) {
        CatState sub(sub_count, std::move(g.sub_terms));
        Complex c = inner_product(phi, sub);
        double residual = squared_norm(sub) - std::norm(c);
        if (residual > 1e-10 * std::max(squared_norm(sub), 1e-30)) {
            throw NonProductError("state does not factor over the requested modes");
        }
        rest.push_back({c, std::move(g.kept_labels)});
    }
    return CatState(kept_count, std::move(rest));
}

}  // namespace catsim
