#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace switchsim {

/// Largest input bit-string length supported by the dense simulator
/// (target dimension 2^(n+1) = 131072).
inline constexpr int kMaxInputBits = 16;

/// Throws std::domain_error unless 1 <= n <= kMaxInputBits.
void check_input_bits(int n);

/// Size of the doubled domain, 2^(n+1).
std::size_t augmented_domain_size(int n);

/// Number of admissible inputs x, 2^n.
std::uint64_t input_range(int n);

/// Boolean function on {0, ..., 2^(n+1) - 1} obeying the game rules:
/// f(0) = 0, and f(z) = 0 on the upper half z >= 2^n.
class AugmentedBooleanFunction {
  public:
    /// `table` has length 2^(n+1) with 0/1 entries; throws std::invalid_argument otherwise.
    AugmentedBooleanFunction(int n, std::vector<std::uint8_t> table);

    static AugmentedBooleanFunction zero(int n);
    /// Extends a table over the lower half [0, 2^n) with zeros.
    static AugmentedBooleanFunction from_lower_half(int n, std::span<const std::uint8_t> lower);
    /// f(z) = z mod 2 for z < 2^n.
    static AugmentedBooleanFunction parity(int n);
    /// f(z) = [z == point]; point must lie in [1, 2^n).
    static AugmentedBooleanFunction indicator(int n, std::uint64_t point);

    int n() const { return n_; }
    std::size_t domain_size() const { return table_.size(); }
    std::span<const std::uint8_t> table() const { return table_; }

    /// Out-of-domain arguments throw std::out_of_range.
    int operator()(std::uint64_t z) const;

    bool operator==(const AugmentedBooleanFunction &) const = default;

  private:
    int n_;
    std::vector<std::uint8_t> table_;
};

}  // namespace switchsim
