#include "switchsim/quantum_switch.hpp"

#include <vector>

namespace switchsim {

SwitchOutcome run_switch(const GameInstance &inst) {
    const auto ua = inst.alice_unitary();
    const auto ub = inst.bob_unitary();
    const auto out = JointState::plus_control(inst.n())
                         .apply_on_branch(0, ua)
                         .apply_on_branch(0, ub)
                         .apply_on_branch(1, ub)
                         .apply_on_branch(1, ua)
                         .hadamard_on_control();
    const auto [p0, p1] = out.control_probabilities();
    return SwitchOutcome{p0, p1, p1 > p0 ? 1 : 0};
}

int decide_ee(const GameInstance &inst) {
    return run_switch(inst).decision;
}

BaselineResult classical_baseline(const GameInstance &inst) {
    const int n = inst.n();
    const std::uint64_t range = input_range(n);

    // Alice -> Bob: f(1), ..., f(2^n - 1), then the n bits of x.
    std::vector<std::uint8_t> message;
    message.reserve(range - 1 + static_cast<std::size_t>(n));
    for (std::uint64_t z = 1; z < range; ++z) {
        message.push_back(static_cast<std::uint8_t>(inst.f()(z)));
    }
    for (int bit = 0; bit < n; ++bit) {
        message.push_back(static_cast<std::uint8_t>((inst.x() >> bit) & 1));
    }

    // Bob decodes using only the message and his own (y, g).
    std::uint64_t x = 0;
    for (int bit = 0; bit < n; ++bit) {
        x |= std::uint64_t{message[range - 1 + static_cast<std::size_t>(bit)]} << bit;
    }
    const int f_at_y = inst.y() == 0 ? 0 : message[inst.y() - 1];
    const int to_charlie = f_at_y ^ inst.g()(x);

    return BaselineResult{to_charlie, message.size() + 1};
}

int majority_decision(std::uint64_t clicks_for_0, std::uint64_t clicks_for_1) {
    return clicks_for_1 > clicks_for_0 ? 1 : 0;
}

}  // namespace switchsim
