#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "switchsim/boolean_function.hpp"
#include "switchsim/qudit_algebra.hpp"

namespace switchsim {

/// Inputs (x, f) for Alice and (y, g) for Bob. Bit strings are little-endian
/// integers: bit k of x selects the long option of fiber segment k + 1.
class GameInstance {
  public:
    /// Throws std::invalid_argument unless x, y < 2^n and f.n() == g.n() == n.
    GameInstance(int n, std::uint64_t x, std::uint64_t y, AugmentedBooleanFunction f, AugmentedBooleanFunction g);

    int n() const { return n_; }
    std::uint64_t x() const { return x_; }
    std::uint64_t y() const { return y_; }
    const AugmentedBooleanFunction &f() const { return f_; }
    const AugmentedBooleanFunction &g() const { return g_; }

    UnitarySpec alice_unitary() const { return UnitarySpec(x_, f_); }
    UnitarySpec bob_unitary() const { return UnitarySpec(y_, g_); }

    /// (y, g) for Alice and (x, f) for Bob.
    GameInstance swapped() const { return GameInstance(n_, y_, x_, g_, f_); }

    bool operator==(const GameInstance &) const = default;

  private:
    int n_;
    std::uint64_t x_;
    std::uint64_t y_;
    AugmentedBooleanFunction f_;
    AugmentedBooleanFunction g_;
};

/// f(y) XOR g(x).
int ee_evaluate(const GameInstance &inst);

/// x = y = 2^n - 1 and f = g = parity on the lower half.
GameInstance worst_case_instance(int n);

/// Uniform x, y and uniform admissible f, g; a pure function of (n, seed).
GameInstance random_instance(int n, std::uint64_t seed);

/// Worst case with bit k of Alice's x cleared (segment k + 1 switched to the short option).
GameInstance bitflip_instance(int n, int k);

/// True iff the commutator vanishes exactly when EE = 0 and the anticommutator
/// vanishes exactly when EE = 1 (both at kZeroTolerance).
bool oracle_check(const GameInstance &inst);

/// All 2^(2^n - 1) admissible functions for n <= 4, in lexicographic order of
/// the lower-half table read as a little-endian integer.
std::vector<AugmentedBooleanFunction> enumerate_functions(int n);

/// Visits all 4^n * 2^(2^(n+1) - 2) instances for n <= 3.
template <typename Visitor>
void for_each_instance(int n, Visitor &&visit) {
    const auto functions = enumerate_functions(n);
    const std::uint64_t range = input_range(n);
    for (std::uint64_t x = 0; x < range; ++x) {
        for (std::uint64_t y = 0; y < range; ++y) {
            for (const auto &f : functions) {
                for (const auto &g : functions) {
                    visit(GameInstance(n, x, y, f, g));
                }
            }
        }
    }
}

/// {"n", "x", "y", "f_table", "g_table"}; tables are 0/1 arrays of length 2^(n+1).
std::string instance_to_json(const GameInstance &inst);
/// Throws std::invalid_argument on malformed or rule-violating documents.
GameInstance instance_from_json(std::string_view text);

}  // namespace switchsim
