#include "switchsim/boolean_function.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace switchsim {

void check_input_bits(int n) {
    if (n < 1 || n > kMaxInputBits) {
        throw std::domain_error(
            "input length n=" + std::to_string(n) + " outside [1, " + std::to_string(kMaxInputBits) + "]");
    }
}

std::size_t augmented_domain_size(int n) {
    check_input_bits(n);
    return std::size_t{1} << (n + 1);
}

std::uint64_t input_range(int n) {
    check_input_bits(n);
    return std::uint64_t{1} << n;
}

AugmentedBooleanFunction::AugmentedBooleanFunction(int n, std::vector<std::uint8_t> table)
    : n_(n), table_(std::move(table)) {
    const std::size_t size = augmented_domain_size(n);
    if (table_.size() != size) {
        throw std::invalid_argument(
            "function table has length " + std::to_string(table_.size()) + ", expected " + std::to_string(size));
    }
    for (std::size_t z = 0; z < size; ++z) {
        if (table_[z] > 1) {
            throw std::invalid_argument("function table entry " + std::to_string(z) + " is not 0/1");
        }
    }
    if (table_[0] != 0) {
        throw std::invalid_argument("f(0) must be 0");
    }
    for (std::size_t z = size / 2; z < size; ++z) {
        if (table_[z] != 0) {
            throw std::invalid_argument("augmented upper half must be 0, but f(" + std::to_string(z) + ") = 1");
        }
    }
}

AugmentedBooleanFunction AugmentedBooleanFunction::zero(int n) {
    return AugmentedBooleanFunction(n, std::vector<std::uint8_t>(augmented_domain_size(n), 0));
}

AugmentedBooleanFunction AugmentedBooleanFunction::from_lower_half(int n, std::span<const std::uint8_t> lower) {
    const std::size_t size = augmented_domain_size(n);
    if (lower.size() != size / 2) {
        throw std::invalid_argument("lower-half table must have length 2^n");
    }
    std::vector<std::uint8_t> table(size, 0);
    std::copy(lower.begin(), lower.end(), table.begin());
    return AugmentedBooleanFunction(n, std::move(table));
}

AugmentedBooleanFunction AugmentedBooleanFunction::parity(int n) {
    std::vector<std::uint8_t> table(augmented_domain_size(n), 0);
    for (std::size_t z = 0; z < table.size() / 2; ++z) {
        table[z] = static_cast<std::uint8_t>(z & 1);
    }
    return AugmentedBooleanFunction(n, std::move(table));
}

AugmentedBooleanFunction AugmentedBooleanFunction::indicator(int n, std::uint64_t point) {
    if (point == 0 || point >= input_range(n)) {
        throw std::invalid_argument("indicator point must lie in [1, 2^n)");
    }
    std::vector<std::uint8_t> table(augmented_domain_size(n), 0);
    table[point] = 1;
    return AugmentedBooleanFunction(n, std::move(table));
}

int AugmentedBooleanFunction::operator()(std::uint64_t z) const {
    if (z >= table_.size()) {
        throw std::out_of_range("argument " + std::to_string(z) + " outside function domain");
    }
    return table_[z];
}

}  // namespace switchsim
