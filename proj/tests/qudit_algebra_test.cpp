#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "switchsim/qudit_algebra.hpp"

using namespace switchsim;

namespace {

QuditState random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<Amplitude> amps(augmented_domain_size(n));
    double norm2 = 0;
    for (auto &a : amps) {
        a = {gauss(rng), gauss(rng)};
        norm2 += std::norm(a);
    }
    for (auto &a : amps) a /= std::sqrt(norm2);
    return QuditState::from_amplitudes(n, std::move(amps));
}

AugmentedBooleanFunction random_function(int n, std::mt19937_64 &rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> lower(std::size_t{1} << n, 0);
    for (std::size_t z = 1; z < lower.size(); ++z) lower[z] = coin(rng);
    return AugmentedBooleanFunction::from_lower_half(n, lower);
}

void expect_basis(const QuditState &s, std::size_t bin, double sign) {
    for (std::size_t z = 0; z < s.dim(); ++z) {
        const double expected = z == bin ? sign : 0.0;
        EXPECT_NEAR(s[z].real(), expected, 1e-15) << "bin " << z;
        EXPECT_NEAR(s[z].imag(), 0.0, 1e-15) << "bin " << z;
    }
}

}  // namespace

TEST(QuditState, DimensionIsTwoToTheNPlusOne) {
    EXPECT_EQ(QuditState::basis(1, 0).dim(), 4u);
    EXPECT_EQ(QuditState::basis(12, 0).dim(), 8192u);
    EXPECT_EQ(QuditState::basis(16, 0).dim(), 131072u);
}

TEST(QuditState, RejectsOversizedAndUnnormalized) {
    EXPECT_THROW(QuditState::basis(17, 0), std::domain_error);
    EXPECT_THROW(QuditState::basis(0, 0), std::domain_error);
    EXPECT_THROW(QuditState::basis(2, 8), std::domain_error);
    EXPECT_THROW(QuditState::from_amplitudes(1, {1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(QuditState::from_amplitudes(1, {1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(ShiftApply, Examples) {
    expect_basis(shift_apply(QuditState::basis(1, 0), 3), 3, 1.0);
    expect_basis(shift_apply(QuditState::basis(1, 3), 2), 1, 1.0);
    std::mt19937_64 rng(11);
    const auto s = random_state(1, rng);
    const auto same = shift_apply(s, 0);
    for (std::size_t z = 0; z < s.dim(); ++z) EXPECT_EQ(same[z], s[z]);
}

TEST(ShiftApply, OutOfRangeIsDomainError) {
    EXPECT_THROW(shift_apply(QuditState::basis(1, 0), 4), std::domain_error);
}

TEST(PhaseApply, Examples) {
    const double r = std::sqrt(0.5);
    const auto plus01 = QuditState::from_amplitudes(1, {r, r, 0.0, 0.0});
    const auto f = AugmentedBooleanFunction::from_lower_half(1, std::vector<std::uint8_t>{0, 1});
    const auto out = phase_apply(plus01, f);
    EXPECT_DOUBLE_EQ(out[0].real(), r);
    EXPECT_DOUBLE_EQ(out[1].real(), -r);

    expect_basis(phase_apply(QuditState::basis(1, 0), AugmentedBooleanFunction::parity(1)), 0, 1.0);
    expect_basis(phase_apply(QuditState::basis(2, 5), AugmentedBooleanFunction::parity(2)), 5, 1.0);
}

TEST(PhaseApply, DimensionMismatch) {
    EXPECT_THROW(phase_apply(QuditState::basis(2, 0), AugmentedBooleanFunction::zero(3)), std::domain_error);
}

TEST(UnitaryApply, Examples) {
    expect_basis(unitary_apply(QuditState::basis(2, 0), UnitarySpec(2, AugmentedBooleanFunction::parity(2))), 2, 1.0);
    // D flips the sign on bin 2, then X moves it to bin 3.
    expect_basis(unitary_apply(QuditState::basis(2, 2), UnitarySpec(1, AugmentedBooleanFunction::indicator(2, 2))), 3, -1.0);
    expect_basis(unitary_apply(QuditState::basis(2, 0), UnitarySpec(0, AugmentedBooleanFunction::zero(2))), 0, 1.0);
}

TEST(UnitarySpec, ShiftMustStayInLowerHalf) {
    EXPECT_NO_THROW(UnitarySpec(3, AugmentedBooleanFunction::zero(2)));
    EXPECT_THROW(UnitarySpec(4, AugmentedBooleanFunction::zero(2)), std::invalid_argument);
}

TEST(CommutatorAction, Examples) {
    const UnitarySpec alice_flip(1, AugmentedBooleanFunction::indicator(2, 2));
    const UnitarySpec alice_parity(1, AugmentedBooleanFunction::parity(2));
    const UnitarySpec bob(2, AugmentedBooleanFunction::zero(2));

    const auto anticommuting = commutator_action(alice_flip, bob, 2);
    EXPECT_NEAR(l2_norm(anticommuting), 2.0, 1e-12);
    EXPECT_NEAR(anticommuting[3].real(), -2.0, 1e-12);
    EXPECT_LT(l2_norm(anticommutator_action(alice_flip, bob, 2)), kZeroTolerance);

    EXPECT_LT(l2_norm(commutator_action(alice_parity, bob, 2)), kZeroTolerance);
    EXPECT_NEAR(l2_norm(anticommutator_action(alice_parity, bob, 2)), 2.0, 1e-12);

    EXPECT_LT(l2_norm(commutator_action(alice_flip, alice_flip, 2)), kZeroTolerance);
}

TEST(CommutatorAction, MatchesDenseMatrixRoute) {
    std::mt19937_64 rng(2024);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto inst = oracle::draw_instance(n, rng);
            const auto fa = inst.f().table();
            const auto gb = inst.g().table();
            const auto a = oracle::dense_unitary(n, inst.x(), {fa.begin(), fa.end()});
            const auto b = oracle::dense_unitary(n, inst.y(), {gb.begin(), gb.end()});
            const auto comm = commutator_action(inst.alice_unitary(), inst.bob_unitary(), n);
            const auto anti = anticommutator_action(inst.alice_unitary(), inst.bob_unitary(), n);
            const auto comm_ref = oracle::dense_bracket_on_zero(a, b, -1.0);
            const auto anti_ref = oracle::dense_bracket_on_zero(a, b, +1.0);
            for (std::size_t z = 0; z < comm.size(); ++z) {
                EXPECT_NEAR(std::abs(comm[z] - comm_ref[z]), 0.0, 1e-12);
                EXPECT_NEAR(std::abs(anti[z] - anti_ref[z]), 0.0, 1e-12);
            }
        }
    }
}

TEST(QuditProperties, UnitarityGroupLawAndInvolution) {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 6; ++n) {
        const std::uint64_t dim = augmented_domain_size(n);
        std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
        for (int trial = 0; trial < 40; ++trial) {
            const auto s = random_state(n, rng);
            const auto f = random_function(n, rng);
            const std::uint64_t a = pick(rng);
            const std::uint64_t b = pick(rng);

            EXPECT_NEAR(shift_apply(s, a).norm(), s.norm(), 1e-12);
            EXPECT_NEAR(phase_apply(s, f).norm(), s.norm(), 1e-12);

            const auto twice = shift_apply(shift_apply(s, a), b);
            const auto once = shift_apply(s, (a + b) % dim);
            for (std::size_t z = 0; z < dim; ++z) EXPECT_EQ(twice[z], once[z]);

            const auto back = phase_apply(phase_apply(s, f), f);
            for (std::size_t z = 0; z < dim; ++z) EXPECT_NEAR(std::abs(back[z] - s[z]), 0.0, 1e-12);
        }
    }
}

TEST(QuditProperties, ProductsSupportedOnSingleBin) {
    std::mt19937_64 rng(99);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto inst = oracle::draw_instance(n, rng);
            const auto zero = QuditState::basis(n, 0);
            const auto ab = unitary_apply(unitary_apply(zero, inst.bob_unitary()), inst.alice_unitary());
            const auto ba = unitary_apply(unitary_apply(zero, inst.alice_unitary()), inst.bob_unitary());
            const std::size_t target = inst.x() + inst.y();
            for (std::size_t z = 0; z < ab.dim(); ++z) {
                if (z == target) {
                    EXPECT_NEAR(std::abs(ab[z]), 1.0, 1e-15);
                    EXPECT_NEAR(std::abs(ba[z]), 1.0, 1e-15);
                } else {
                    EXPECT_EQ(ab[z], Amplitude(0.0));
                    EXPECT_EQ(ba[z], Amplitude(0.0));
                }
            }
        }
    }
}

TEST(JointState, BranchesAndHadamard) {
    const auto plus = JointState::plus_control(2);
    EXPECT_NEAR(plus.norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(plus.branch(0)[0]), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(plus.branch(1)[0]), std::sqrt(0.5), 1e-15);
    // H|+> = |0>
    const auto probs = plus.hadamard_on_control().control_probabilities();
    EXPECT_NEAR(probs[0], 1.0, 1e-15);
    EXPECT_NEAR(probs[1], 0.0, 1e-15);
    EXPECT_THROW(plus.branch(2), std::domain_error);
    EXPECT_THROW(JointState::from_amplitudes(1, std::vector<Amplitude>(8, 1.0)), std::invalid_argument);
}
