#include "catsim/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace catsim {

namespace {

std::size_t checked_size(const std::vector<int>& cutoffs, std::size_t budget) {
    std::size_t size = 1;
    for (int c : cutoffs) {
        if (c < 0) throw InvalidConfigError("negative cutoff");
        std::size_t d = static_cast<std::size_t>(c) + 1;
        if (size > budget / d) {
            std::ostringstream os;
            os << "dense Fock vector would exceed the budget of " << budget << " entries";
            throw MemoryBudgetError(os.str());
        }
        size *= d;
    }
    return size;
}

std::vector<std::size_t> strides_for(const std::vector<int>& cutoffs) {
    std::vector<std::size_t> strides(cutoffs.size());
    std::size_t s = 1;
    for (int m = static_cast<int>(cutoffs.size()) - 1; m >= 0; --m) {
        strides[m] = s;
        s *= static_cast<std::size_t>(cutoffs[m]) + 1;
    }
    return strides;
}

double lg_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

std::size_t FockVector::index(const std::vector<int>& ns) const {
    auto strides = strides_for(cutoffs);
    std::size_t idx = 0;
    for (std::size_t m = 0; m < ns.size(); ++m) {
        idx += static_cast<std::size_t>(ns[m]) * strides[m];
    }
    return idx;
}

double FockVector::squared_norm() const {
    double n2 = 0.0;
    for (Complex a : amps) n2 += std::norm(a);
    return n2;
}

std::vector<int> default_cutoffs(const CatState& state) {
    std::vector<int> cutoffs(state.mode_count());
    for (int m = 0; m < state.mode_count(); ++m) cutoffs[m] = suggested_cutoff(state, m);
    return cutoffs;
}

FockVector to_fock(const CatState& state, const std::vector<int>& cutoffs, double loss_limit,
                   std::size_t budget) {
    if (static_cast<int>(cutoffs.size()) != state.mode_count()) {
        throw ModeIndexError("cutoff list length does not match mode count");
    }
    std::size_t size = checked_size(cutoffs, budget);
    FockVector out{state.mode_count(), cutoffs, std::vector<Complex>(size, 0.0), 0.0};

    // Accumulate each term as an outer product of per-mode coherent columns.
    std::vector<Complex> buffer, next;
    for (const auto& term : state.terms()) {
        buffer.assign(1, term.coeff);
        for (int m = 0; m < state.mode_count(); ++m) {
            std::size_t d = out.dim(m);
            std::vector<Complex> column(d);
            for (std::size_t n = 0; n < d; ++n) {
                column[n] = fock_amplitude(static_cast<int>(n), term.labels[m]);
            }
            next.assign(buffer.size() * d, 0.0);
            for (std::size_t i = 0; i < buffer.size(); ++i) {
                for (std::size_t n = 0; n < d; ++n) next[i * d + n] = buffer[i] * column[n];
            }
            buffer.swap(next);
        }
        for (std::size_t i = 0; i < size; ++i) out.amps[i] += buffer[i];
    }

    double exact = squared_norm(state);
    out.truncation_loss = 1.0 - out.squared_norm() / exact;
    if (out.truncation_loss > loss_limit) {
        std::ostringstream os;
        os << "conversion lost " << out.truncation_loss << " of the norm (limit " << loss_limit
           << "); raise the cutoffs";
        throw TailMassError(os.str());
    }
    return out;
}

FockVector to_fock(const CatState& state) { return to_fock(state, default_cutoffs(state)); }

Complex fock_inner(const FockVector& lhs, const FockVector& rhs) {
    if (lhs.mode_count != rhs.mode_count) throw ModeIndexError("mode counts differ");
    if (lhs.cutoffs == rhs.cutoffs) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            acc += std::conj(lhs.amps[i]) * rhs.amps[i];
        }
        return acc;
    }
    // Walk the common box when the truncations differ.
    std::vector<int> ns(lhs.mode_count, 0), box(lhs.mode_count);
    for (int m = 0; m < lhs.mode_count; ++m) box[m] = std::min(lhs.cutoffs[m], rhs.cutoffs[m]);
    Complex acc = 0.0;
    while (true) {
        acc += std::conj(lhs.amps[lhs.index(ns)]) * rhs.amps[rhs.index(ns)];
        int m = lhs.mode_count - 1;
        while (m >= 0 && ns[m] == box[m]) ns[m--] = 0;
        if (m < 0) break;
        ++ns[m];
    }
    return acc;
}

double fock_fidelity(const FockVector& lhs, const FockVector& rhs) {
    double nl = lhs.squared_norm(), nr = rhs.squared_norm();
    if (nl < kZeroNormThreshold || nr < kZeroNormThreshold) {
        throw ZeroNormError("fidelity of a (near-)zero vector is undefined");
    }
    return std::norm(fock_inner(lhs, rhs)) / (nl * nr);
}

FockVector fock_apply_pair_unitary(const FockVector& v, int k, int l, const LabelUnitary& u,
                                   double loss_limit) {
    if (k < 0 || l < 0 || k >= v.mode_count || l >= v.mode_count || k == l) {
        throw ModeIndexError("pair unitary needs two distinct in-range modes");
    }
    if (!u.is_unitary(kUnitarityTolerance)) {
        throw NonUnitaryError("label map is not unitary within tolerance");
    }
    int ck = v.cutoffs[k], cl = v.cutoffs[l];
    int nmax = ck + cl;

    // Power tables for the four matrix entries.
    auto powers = [nmax](Complex z) {
        std::vector<Complex> p(nmax + 1);
        p[0] = 1.0;
        for (int i = 1; i <= nmax; ++i) p[i] = p[i - 1] * z;
        return p;
    };
    auto p00 = powers(u.u00), p01 = powers(u.u01), p10 = powers(u.u10), p11 = powers(u.u11);
    std::vector<double> lgf(nmax + 1);
    for (int n = 0; n <= nmax; ++n) lgf[n] = lg_factorial(n);

    auto strides = strides_for(v.cutoffs);
    std::size_t sk = strides[k], sl = strides[l];
    FockVector out{v.mode_count, v.cutoffs, std::vector<Complex>(v.size(), 0.0),
                   v.truncation_loss};

    // The creation operators transform as a_k+ -> u00 a_k+ + u10 a_l+ and
    // a_l+ -> u01 a_k+ + u11 a_l+, so |m, p> scatters over the sector m + p:
    //   sum_{i<=m, j<=p} C(m,i) C(p,j) u00^i u10^(m-i) u01^j u11^(p-j)
    //                    sqrt((i+j)! (m+p-i-j)! / (m! p!)) |i+j, m+p-i-j>.
    std::vector<int> ns(v.mode_count, 0);
    std::size_t flat = 0;
    while (true) {
        Complex amp = v.amps[flat];
        if (amp != Complex(0.0)) {
            int m = ns[k], p = ns[l];
            std::size_t base = flat - static_cast<std::size_t>(m) * sk -
                               static_cast<std::size_t>(p) * sl;
            double lg_mp = lgf[m] + lgf[p];
            for (int i = 0; i <= m; ++i) {
                for (int j = 0; j <= p; ++j) {
                    int a = i + j, b = m + p - i - j;
                    if (a > ck || b > cl) continue;
                    double lg_binom = (lgf[m] - lgf[i] - lgf[m - i]) +
                                      (lgf[p] - lgf[j] - lgf[p - j]);
                    double factor = std::exp(lg_binom + 0.5 * (lgf[a] + lgf[b] - lg_mp));
                    Complex coef = p00[i] * p10[m - i] * p01[j] * p11[p - j] * factor;
                    out.amps[base + static_cast<std::size_t>(a) * sk +
                             static_cast<std::size_t>(b) * sl] += amp * coef;
                }
            }
        }
        int m = v.mode_count - 1;
        while (m >= 0 && ns[m] == v.cutoffs[m]) ns[m--] = 0;
        if (m < 0) break;
        ++ns[m];
        flat = 0;
        for (int q = 0; q < v.mode_count; ++q) {
            flat += static_cast<std::size_t>(ns[q]) * strides[q];
        }
    }

    double before = v.squared_norm();
    double loss = before > 0.0 ? 1.0 - out.squared_norm() / before : 0.0;
    if (loss > loss_limit) {
        std::ostringstream os;
        os << "pair unitary pushed " << loss << " of the norm past the cutoffs";
        throw TailMassError(os.str());
    }
    out.truncation_loss += std::max(loss, 0.0);
    return out;
}

FockVector fock_phase_shift(const FockVector& v, int j, double phi) {
    if (j < 0 || j >= v.mode_count) throw ModeIndexError("mode out of range");
    auto strides = strides_for(v.cutoffs);
    FockVector out = v;
    std::vector<Complex> factor(v.dim(j));
    for (std::size_t n = 0; n < factor.size(); ++n) {
        factor[n] = std::exp(Complex(0.0, -phi * static_cast<double>(n)));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t n = (i / strides[j]) % v.dim(j);
        out.amps[i] *= factor[n];
    }
    return out;
}

std::vector<double> fock_number_distribution(const FockVector& v, int mode) {
    if (mode < 0 || mode >= v.mode_count) throw ModeIndexError("mode out of range");
    auto strides = strides_for(v.cutoffs);
    std::vector<double> p(v.dim(mode), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        p[(i / strides[mode]) % v.dim(mode)] += std::norm(v.amps[i]);
    }
    return p;
}

FockParityProjection fock_parity_project(const FockVector& v, const std::vector<int>& modes,
                                         Parity parity) {
    if (modes.empty()) throw ModeIndexError("empty mode set");
    for (int m : modes) {
        if (m < 0 || m >= v.mode_count) throw ModeIndexError("mode out of range");
    }
    auto strides = strides_for(v.cutoffs);
    int want = parity == Parity::even ? 0 : 1;
    FockVector out = v;
    double kept = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        int total = 0;
        for (int m : modes) total += static_cast<int>((i / strides[m]) % v.dim(m));
        if ((total & 1) == want) {
            kept += std::norm(out.amps[i]);
        } else {
            out.amps[i] = 0.0;
        }
    }
    double total_norm = v.squared_norm();
    double prob = total_norm > 0.0 ? kept / total_norm : 0.0;
    if (kept >= kZeroNormThreshold) {
        double inv = 1.0 / std::sqrt(kept);
        for (auto& a : out.amps) a *= inv;
    }
    return {std::move(out), prob};
}

FockNumberCollapse fock_collapse_number(const FockVector& v, int mode, int n) {
    if (mode < 0 || mode >= v.mode_count) throw ModeIndexError("mode out of range");
    if (n < 0 || n > v.cutoffs[mode]) throw InvalidConfigError("outcome beyond cutoff");
    auto strides = strides_for(v.cutoffs);
    std::vector<int> rest_cutoffs;
    for (int m = 0; m < v.mode_count; ++m) {
        if (m != mode) rest_cutoffs.push_back(v.cutoffs[m]);
    }
    FockVector out{v.mode_count - 1, rest_cutoffs,
                   std::vector<Complex>(v.size() / v.dim(mode), 0.0), v.truncation_loss};
    std::size_t outer = 1;
    for (int m = 0; m < mode; ++m) outer *= v.dim(m);
    std::size_t inner = strides[mode];
    double kept = 0.0;
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            Complex a = v.amps[o * v.dim(mode) * inner + static_cast<std::size_t>(n) * inner + i];
            out.amps[o * inner + i] = a;
            kept += std::norm(a);
        }
    }
    double total = v.squared_norm();
    double prob = total > 0.0 ? kept / total : 0.0;
    if (kept < kZeroNormThreshold) {
        throw ZeroNormError("conditioning on a zero-probability photon count");
    }
    double inv = 1.0 / std::sqrt(kept);
    for (auto& a : out.amps) a *= inv;
    return {std::move(out), prob};
}

PipelineOp PipelineOp::pair(int k, int l, const LabelUnitary& u) {
    PipelineOp op;
    op.kind = Kind::pair_unitary;
    op.mode_a = k;
    op.mode_b = l;
    op.unitary = u;
    return op;
}

PipelineOp PipelineOp::phase(int j, double phi) {
    PipelineOp op;
    op.kind = Kind::phase_shift;
    op.mode_a = j;
    op.phi = phi;
    return op;
}

PipelineOp PipelineOp::parity_projection(std::vector<int> modes, Parity parity) {
    PipelineOp op;
    op.kind = Kind::parity_project;
    op.modes = std::move(modes);
    op.parity = parity;
    return op;
}

PipelineOp PipelineOp::collapse(int mode, int n) {
    PipelineOp op;
    op.kind = Kind::collapse_number;
    op.mode_a = mode;
    op.outcome = n;
    return op;
}

CrosscheckReport crosscheck_pipeline(const CatState& initial,
                                     const std::vector<PipelineOp>& script, double tolerance,
                                     std::size_t budget) {
    // Sparse pass first: it decides the truncation every comparison uses.
    CatState start = normalize(initial).state;
    std::vector<CatState> trajectory{start};
    std::vector<double> sparse_probs;
    for (const auto& op : script) {
        const CatState& cur = trajectory.back();
        switch (op.kind) {
            case PipelineOp::Kind::pair_unitary:
                trajectory.push_back(apply_pair_unitary(cur, op.mode_a, op.mode_b, op.unitary));
                break;
            case PipelineOp::Kind::phase_shift:
                trajectory.push_back(phase_shift(cur, op.mode_a, op.phi));
                break;
            case PipelineOp::Kind::parity_project: {
                ParityProjection proj = project_total_parity(cur, op.modes, op.parity);
                sparse_probs.push_back(proj.probability);
                trajectory.push_back(std::move(proj.state));
                break;
            }
            case PipelineOp::Kind::collapse_number: {
                NumberCollapse collapse = collapse_number(cur, op.mode_a, op.outcome);
                sparse_probs.push_back(collapse.record.probability);
                trajectory.push_back(std::move(collapse.state));
                break;
            }
        }
    }

    double label_max = 0.0;
    for (const auto& state : trajectory) {
        for (const auto& term : state.terms()) {
            for (Complex l : term.labels) label_max = std::max(label_max, std::norm(l));
        }
    }
    int cutoff =
        static_cast<int>(std::ceil(label_max + 10.0 * std::sqrt(label_max) + 10.0));

    CrosscheckReport report{};
    report.tolerance = tolerance;
    report.steps = static_cast<int>(script.size());

    FockVector v = to_fock(start, std::vector<int>(start.mode_count(), cutoff), 1e-9, budget);
    std::size_t prob_index = 0;
    auto compare_state = [&](const CatState& reference) {
        FockVector ref =
            to_fock(reference, std::vector<int>(reference.mode_count(), cutoff), 1e-9, budget);
        double worst = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            worst = std::max(worst, std::abs(ref.amps[i] - v.amps[i]));
        }
        report.max_amplitude_diff = std::max(report.max_amplitude_diff, worst);
    };
    compare_state(start);
    for (std::size_t k = 0; k < script.size(); ++k) {
        const auto& op = script[k];
        switch (op.kind) {
            case PipelineOp::Kind::pair_unitary:
                v = fock_apply_pair_unitary(v, op.mode_a, op.mode_b, op.unitary);
                break;
            case PipelineOp::Kind::phase_shift:
                v = fock_phase_shift(v, op.mode_a, op.phi);
                break;
            case PipelineOp::Kind::parity_project: {
                FockParityProjection proj = fock_parity_project(v, op.modes, op.parity);
                report.max_probability_diff =
                    std::max(report.max_probability_diff,
                             std::abs(proj.probability - sparse_probs[prob_index]));
                ++prob_index;
                v = std::move(proj.state);
                break;
            }
            case PipelineOp::Kind::collapse_number: {
                FockNumberCollapse collapse = fock_collapse_number(v, op.mode_a, op.outcome);
                report.max_probability_diff =
                    std::max(report.max_probability_diff,
                             std::abs(collapse.probability - sparse_probs[prob_index]));
                ++prob_index;
                v = std::move(collapse.state);
                break;
            }
        }
        compare_state(trajectory[k + 1]);
    }

    report.pass = report.max_amplitude_diff <= tolerance &&
                  report.max_probability_diff <= tolerance;
    return report;
}

}  // namespace catsim
