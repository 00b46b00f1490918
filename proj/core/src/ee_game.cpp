#include "switchsim/ee_game.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace switchsim {

GameInstance::GameInstance(
    int n, std::uint64_t x, std::uint64_t y, AugmentedBooleanFunction f, AugmentedBooleanFunction g)
    : n_(n), x_(x), y_(y), f_(std::move(f)), g_(std::move(g)) {
    const std::uint64_t range = input_range(n);
    if (x_ >= range || y_ >= range) {
        throw std::invalid_argument("inputs x, y must be below 2^n");
    }
    if (f_.n() != n || g_.n() != n) {
        throw std::invalid_argument("functions must be defined for the instance's n");
    }
}

int ee_evaluate(const GameInstance &inst) {
    return inst.f()(inst.y()) ^ inst.g()(inst.x());
}

GameInstance worst_case_instance(int n) {
    const std::uint64_t top = input_range(n) - 1;
    const auto parity = AugmentedBooleanFunction::parity(n);
    return GameInstance(n, top, top, parity, parity);
}

namespace {

AugmentedBooleanFunction random_function(int n, std::mt19937_64 &rng) {
    std::vector<std::uint8_t> table(augmented_domain_size(n), 0);
    const std::size_t half = table.size() / 2;
    std::uint64_t word = 0;
    for (std::size_t z = 1; z < half; ++z) {
        if ((z - 1) % 64 == 0) {
            word = rng();
        }
        table[z] = static_cast<std::uint8_t>(word & 1);
        word >>= 1;
    }
    return AugmentedBooleanFunction(n, std::move(table));
}

}  // namespace

GameInstance random_instance(int n, std::uint64_t seed) {
    // Masked raw engine output only: distribution adaptors are implementation-defined.
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = input_range(n) - 1;
    const std::uint64_t x = rng() & mask;
    const std::uint64_t y = rng() & mask;
    auto f = random_function(n, rng);
    auto g = random_function(n, rng);
    return GameInstance(n, x, y, std::move(f), std::move(g));
}

GameInstance bitflip_instance(int n, int k) {
    if (k < 0 || k >= n) {
        throw std::domain_error("bitflip index k=" + std::to_string(k) + " outside [0, n)");
    }
    const auto worst = worst_case_instance(n);
    return GameInstance(n, worst.x() & ~(std::uint64_t{1} << k), worst.y(), worst.f(), worst.g());
}

bool oracle_check(const GameInstance &inst) {
    const auto ua = inst.alice_unitary();
    const auto ub = inst.bob_unitary();
    const bool commutes = l2_norm(commutator_action(ua, ub, inst.n())) < kZeroTolerance;
    const bool anticommutes = l2_norm(anticommutator_action(ua, ub, inst.n())) < kZeroTolerance;
    const int ee = ee_evaluate(inst);
    return commutes == (ee == 0) && anticommutes == (ee == 1);
}

std::vector<AugmentedBooleanFunction> enumerate_functions(int n) {
    if (n < 1 || n > 4) {
        throw std::domain_error("function enumeration is limited to n <= 4");
    }
    const std::size_t free_bits = (std::size_t{1} << n) - 1;
    const std::uint64_t count = std::uint64_t{1} << free_bits;
    std::vector<AugmentedBooleanFunction> out;
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint8_t> table(augmented_domain_size(n), 0);
        for (std::size_t bit = 0; bit < free_bits; ++bit) {
            table[bit + 1] = static_cast<std::uint8_t>((code >> bit) & 1);
        }
        out.emplace_back(n, std::move(table));
    }
    return out;
}

std::string instance_to_json(const GameInstance &inst) {
    nlohmann::json doc;
    doc["n"] = inst.n();
    doc["x"] = inst.x();
    doc["y"] = inst.y();
    doc["f_table"] = std::vector<int>(inst.f().table().begin(), inst.f().table().end());
    doc["g_table"] = std::vector<int>(inst.g().table().begin(), inst.g().table().end());
    return doc.dump();
}

namespace {

AugmentedBooleanFunction table_from_json(int n, const nlohmann::json &array, const char *key) {
    if (!array.is_array()) {
        throw std::invalid_argument(std::string(key) + " must be an array");
    }
    std::vector<std::uint8_t> table;
    table.reserve(array.size());
    for (const auto &entry : array) {
        if (!entry.is_number_integer() || (entry.get<int>() != 0 && entry.get<int>() != 1)) {
            throw std::invalid_argument(std::string(key) + " entries must be 0 or 1");
        }
        table.push_back(static_cast<std::uint8_t>(entry.get<int>()));
    }
    return AugmentedBooleanFunction(n, std::move(table));
}

}  // namespace

GameInstance instance_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("instance JSON: ") + e.what());
    }
    for (const char *key : {"n", "x", "y", "f_table", "g_table"}) {
        if (!doc.contains(key)) {
            throw std::invalid_argument(std::string("instance JSON lacks \"") + key + "\"");
        }
    }
    if (!doc["n"].is_number_integer() || !doc["x"].is_number_unsigned() || !doc["y"].is_number_unsigned()) {
        throw std::invalid_argument("instance JSON: n, x, y must be nonnegative integers");
    }
    const int n = doc["n"].get<int>();
    check_input_bits(n);
    return GameInstance(
        n, doc["x"].get<std::uint64_t>(), doc["y"].get<std::uint64_t>(), table_from_json(n, doc["f_table"], "f_table"),
        table_from_json(n, doc["g_table"], "g_table"));
}

}  // namespace switchsim
