#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace switchsim {

/// Output time bin of each of the 2^n input modes after the two-switch
/// delay circuit realizing z -> z + x mod 2^n.
struct PermutationSchedule {
    int n = 0;
    std::uint64_t x = 0;
    std::uint64_t latency = 0;
    std::vector<std::uint64_t> out_time;

    bool operator==(const PermutationSchedule &) const = default;
};

/// Traces the circuit: the first 2^n - x modes take the 2^n-bin delay line,
/// the rest pass straight, then the whole train is delayed by x bins.
PermutationSchedule build_schedule(int n, std::uint64_t x);

/// a followed by b; the train leaving a enters b at time a.latency.
PermutationSchedule compose_schedules(const PermutationSchedule &a, const PermutationSchedule &b);

/// out_time is injective and out_time(z) - latency == (z + x) mod 2^n.
bool is_cyclic_shift(const PermutationSchedule &schedule);

/// "z,out_time" rows with header.
std::string schedule_csv(const PermutationSchedule &schedule);

}  // namespace switchsim
