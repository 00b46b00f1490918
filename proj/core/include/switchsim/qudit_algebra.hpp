#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "switchsim/boolean_function.hpp"

namespace switchsim {

using Amplitude = std::complex<double>;

/// Absolute tolerance for deciding that an amplitude vector vanishes.
inline constexpr double kZeroTolerance = 1e-10;
/// Tolerance on the norm of states that claim to be normalized.
inline constexpr double kNormTolerance = 1e-12;

double l2_norm(std::span<const Amplitude> amplitudes);

/// Pure state of the 2^(n+1)-dimensional time-bin target.
class QuditState {
  public:
    static QuditState basis(int n, std::size_t bin);
    /// Throws std::invalid_argument on wrong length or norm off by more than kNormTolerance.
    static QuditState from_amplitudes(int n, std::vector<Amplitude> amplitudes);

    int n() const { return n_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude operator[](std::size_t bin) const { return amplitudes_[bin]; }
    double norm() const { return l2_norm(amplitudes_); }

  private:
    QuditState(int n, std::vector<Amplitude> amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {}

    int n_;
    std::vector<Amplitude> amplitudes_;
};

/// One party's operation X_d^shift D_d(phase_fn): phase flip first, then cyclic shift.
class UnitarySpec {
  public:
    /// Requires shift < 2^n with n = phase_fn.n(), so two specs applied to |0> never wrap.
    UnitarySpec(std::uint64_t shift, AugmentedBooleanFunction phase_fn);

    int n() const { return phase_fn_.n(); }
    std::uint64_t shift() const { return shift_; }
    const AugmentedBooleanFunction &phase_fn() const { return phase_fn_; }

  private:
    std::uint64_t shift_;
    AugmentedBooleanFunction phase_fn_;
};

/// |z> -> |z + x mod dim>. Requires 0 <= x < dim.
QuditState shift_apply(const QuditState &state, std::uint64_t x);

/// |z> -> (-1)^f(z) |z>.
QuditState phase_apply(const QuditState &state, const AugmentedBooleanFunction &f);

QuditState unitary_apply(const QuditState &state, const UnitarySpec &u);

/// (U_A U_B - U_B U_A)|0>, unnormalized.
std::vector<Amplitude> commutator_action(const UnitarySpec &ua, const UnitarySpec &ub, int n);

/// (U_A U_B + U_B U_A)|0>, unnormalized.
std::vector<Amplitude> anticommutator_action(const UnitarySpec &ua, const UnitarySpec &ub, int n);

/// Control qubit tensored with the target. Amplitude (c, z) sits at index c * dim + z.
class JointState {
  public:
    /// (|0>_c + |1>_c)/sqrt(2) (x) |0>_t
    static JointState plus_control(int n);
    static JointState from_amplitudes(int n, std::vector<Amplitude> amplitudes);

    int n() const { return n_; }
    std::size_t target_dim() const { return amplitudes_.size() / 2; }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    /// Target amplitudes conditioned on control value c (unnormalized).
    std::span<const Amplitude> branch(int control) const;
    double norm() const { return l2_norm(amplitudes_); }

    /// Applies u to the target only on the branch where the control equals `control`.
    JointState apply_on_branch(int control, const UnitarySpec &u) const;
    JointState hadamard_on_control() const;
    /// Marginal probabilities of measuring the control in |0> and |1>.
    std::array<double, 2> control_probabilities() const;

  private:
    JointState(int n, std::vector<Amplitude> amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {}

    int n_;
    std::vector<Amplitude> amplitudes_;
};

}  // namespace switchsim
