#include "switchsim/qudit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace switchsim {

namespace {

void require_normalized(std::span<const Amplitude> amplitudes, const char *what) {
    const double norm = l2_norm(amplitudes);
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw std::invalid_argument(std::string(what) + " is not normalized (norm " + std::to_string(norm) + ")");
    }
}

// out[(z + x) mod dim] = in[z]
void shift_into(std::span<const Amplitude> in, std::uint64_t x, std::span<Amplitude> out) {
    const auto split = in.end() - static_cast<std::ptrdiff_t>(x);
    std::rotate_copy(in.begin(), split, in.end(), out.begin());
}

void phase_in_place(std::span<Amplitude> amplitudes, const AugmentedBooleanFunction &f) {
    const auto table = f.table();
    for (std::size_t z = 0; z < amplitudes.size(); ++z) {
        if (table[z]) {
            amplitudes[z] = -amplitudes[z];
        }
    }
}

void unitary_into(std::span<const Amplitude> in, const UnitarySpec &u, std::span<Amplitude> out) {
    std::vector<Amplitude> phased(in.begin(), in.end());
    phase_in_place(phased, u.phase_fn());
    shift_into(phased, u.shift(), out);
}

void require_same_n(int a, int b) {
    if (a != b) {
        throw std::domain_error("dimension mismatch: n=" + std::to_string(a) + " vs n=" + std::to_string(b));
    }
}

}  // namespace

double l2_norm(std::span<const Amplitude> amplitudes) {
    double sum = 0;
    for (const auto &a : amplitudes) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

QuditState QuditState::basis(int n, std::size_t bin) {
    const std::size_t dim = augmented_domain_size(n);
    if (bin >= dim) {
        throw std::domain_error("basis index " + std::to_string(bin) + " outside dimension " + std::to_string(dim));
    }
    std::vector<Amplitude> amplitudes(dim);
    amplitudes[bin] = 1.0;
    return QuditState(n, std::move(amplitudes));
}

QuditState QuditState::from_amplitudes(int n, std::vector<Amplitude> amplitudes) {
    if (amplitudes.size() != augmented_domain_size(n)) {
        throw std::invalid_argument("amplitude vector length must be 2^(n+1)");
    }
    require_normalized(amplitudes, "qudit state");
    return QuditState(n, std::move(amplitudes));
}

UnitarySpec::UnitarySpec(std::uint64_t shift, AugmentedBooleanFunction phase_fn)
    : shift_(shift), phase_fn_(std::move(phase_fn)) {
    if (shift_ >= input_range(phase_fn_.n())) {
        throw std::invalid_argument("shift " + std::to_string(shift_) + " must be below 2^n");
    }
}

QuditState shift_apply(const QuditState &state, std::uint64_t x) {
    if (x >= state.dim()) {
        throw std::domain_error("shift " + std::to_string(x) + " outside [0, " + std::to_string(state.dim()) + ")");
    }
    std::vector<Amplitude> out(state.dim());
    shift_into(state.amplitudes(), x, out);
    return QuditState::from_amplitudes(state.n(), std::move(out));
}

QuditState phase_apply(const QuditState &state, const AugmentedBooleanFunction &f) {
    require_same_n(state.n(), f.n());
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    phase_in_place(out, f);
    return QuditState::from_amplitudes(state.n(), std::move(out));
}

QuditState unitary_apply(const QuditState &state, const UnitarySpec &u) {
    return shift_apply(phase_apply(state, u.phase_fn()), u.shift());
}

namespace {

std::vector<Amplitude> bracket_action(const UnitarySpec &ua, const UnitarySpec &ub, int n, double sign) {
    require_same_n(ua.n(), n);
    require_same_n(ub.n(), n);
    const auto zero = QuditState::basis(n, 0);
    const auto ab = unitary_apply(unitary_apply(zero, ub), ua);
    const auto ba = unitary_apply(unitary_apply(zero, ua), ub);
    std::vector<Amplitude> out(zero.dim());
    for (std::size_t z = 0; z < out.size(); ++z) {
        out[z] = ab[z] + sign * ba[z];
    }
    return out;
}

}  // namespace

std::vector<Amplitude> commutator_action(const UnitarySpec &ua, const UnitarySpec &ub, int n) {
    return bracket_action(ua, ub, n, -1.0);
}

std::vector<Amplitude> anticommutator_action(const UnitarySpec &ua, const UnitarySpec &ub, int n) {
    return bracket_action(ua, ub, n, +1.0);
}

JointState JointState::plus_control(int n) {
    const std::size_t dim = augmented_domain_size(n);
    std::vector<Amplitude> amplitudes(2 * dim);
    amplitudes[0] = std::numbers::sqrt2 / 2;
    amplitudes[dim] = std::numbers::sqrt2 / 2;
    return JointState(n, std::move(amplitudes));
}

JointState JointState::from_amplitudes(int n, std::vector<Amplitude> amplitudes) {
    if (amplitudes.size() != 2 * augmented_domain_size(n)) {
        throw std::invalid_argument("joint amplitude vector length must be 2 * 2^(n+1)");
    }
    require_normalized(amplitudes, "joint state");
    return JointState(n, std::move(amplitudes));
}

std::span<const Amplitude> JointState::branch(int control) const {
    if (control != 0 && control != 1) {
        throw std::domain_error("control value must be 0 or 1");
    }
    return std::span<const Amplitude>(amplitudes_).subspan(static_cast<std::size_t>(control) * target_dim(), target_dim());
}

JointState JointState::apply_on_branch(int control, const UnitarySpec &u) const {
    require_same_n(n_, u.n());
    std::vector<Amplitude> out(amplitudes_);
    const auto in = branch(control);
    unitary_into(in, u, std::span<Amplitude>(out).subspan(static_cast<std::size_t>(control) * target_dim(), target_dim()));
    return JointState(n_, std::move(out));
}

JointState JointState::hadamard_on_control() const {
    const std::size_t dim = target_dim();
    const double s = std::numbers::sqrt2 / 2;
    std::vector<Amplitude> out(amplitudes_.size());
    for (std::size_t z = 0; z < dim; ++z) {
        const Amplitude a0 = amplitudes_[z];
        const Amplitude a1 = amplitudes_[dim + z];
        out[z] = s * (a0 + a1);
        out[dim + z] = s * (a0 - a1);
    }
    return JointState(n_, std::move(out));
}

std::array<double, 2> JointState::control_probabilities() const {
    const double n0 = l2_norm(branch(0));
    const double n1 = l2_norm(branch(1));
    return {n0 * n0, n1 * n1};
}

}  // namespace switchsim
