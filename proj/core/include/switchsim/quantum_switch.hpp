#pragma once

#include <cstdint>

#include "switchsim/ee_game.hpp"

namespace switchsim {

struct SwitchOutcome {
    double p0;
    double p1;
    /// argmax of (p0, p1); ties go to 0.
    int decision;
};

struct BaselineResult {
    int decision;
    std::uint64_t bits_communicated;
};

/// Control in |+>, target in |0>. The c = 0 branch sees U_A then U_B, the
/// c = 1 branch U_B then U_A; a Hadamard on the control follows, and the
/// control is measured.
SwitchOutcome run_switch(const GameInstance &inst);

int decide_ee(const GameInstance &inst);

/// One-way classical protocol: Alice ships the truth table of f on
/// [1, 2^n) and her n-bit x to Bob, who forwards one bit to Charlie.
BaselineResult classical_baseline(const GameInstance &inst);

/// Majority over detector clicks, ties broken toward 0.
int majority_decision(std::uint64_t clicks_for_0, std::uint64_t clicks_for_1);

}  // namespace switchsim
