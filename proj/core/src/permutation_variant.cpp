#include "switchsim/permutation_variant.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "switchsim/boolean_function.hpp"

namespace switchsim {

PermutationSchedule build_schedule(int n, std::uint64_t x) {
    const std::uint64_t modes = input_range(n);
    if (x >= modes) {
        throw std::domain_error("shift " + std::to_string(x) + " outside [0, 2^n)");
    }
    PermutationSchedule s;
    s.n = n;
    s.x = x;
    s.out_time.resize(modes);
    for (std::uint64_t z = 0; z < modes; ++z) {
        // Stage (a): switch S routes the leading 2^n - x modes into the delay line.
        const bool delayed = z < modes - x;
        const std::uint64_t after_switch = z + (delayed ? modes : 0);
        // Stage (b): the recombined train is delayed by x bins.
        s.out_time[z] = after_switch + x;
    }
    s.latency = *std::min_element(s.out_time.begin(), s.out_time.end());
    return s;
}

PermutationSchedule compose_schedules(const PermutationSchedule &a, const PermutationSchedule &b) {
    if (a.n != b.n || a.out_time.size() != b.out_time.size()) {
        throw std::domain_error("cannot compose schedules of different n");
    }
    const std::uint64_t modes = a.out_time.size();
    PermutationSchedule s;
    s.n = a.n;
    s.x = (a.x + b.x) % modes;
    s.latency = a.latency + b.latency;
    s.out_time.resize(modes);
    for (std::uint64_t z = 0; z < modes; ++z) {
        const std::uint64_t relative = a.out_time[z] - a.latency;
        if (relative >= modes) {
            throw std::domain_error("first schedule leaves the 2^n-bin frame");
        }
        s.out_time[z] = a.latency + b.out_time[relative];
    }
    return s;
}

bool is_cyclic_shift(const PermutationSchedule &schedule) {
    const std::uint64_t modes = schedule.out_time.size();
    if (schedule.n < 1 || modes != input_range(schedule.n)) return false;
    std::vector<bool> hit(modes, false);
    for (std::uint64_t z = 0; z < modes; ++z) {
        const std::uint64_t t = schedule.out_time[z];
        if (t < schedule.latency || t - schedule.latency != (z + schedule.x) % modes) return false;
        if (hit[t - schedule.latency]) return false;
        hit[t - schedule.latency] = true;
    }
    return true;
}

std::string schedule_csv(const PermutationSchedule &schedule) {
    std::string out = "z,out_time\n";
    for (std::size_t z = 0; z < schedule.out_time.size(); ++z) {
        out += std::to_string(z) + "," + std::to_string(schedule.out_time[z]) + "\n";
    }
    return out;
}

}  // namespace switchsim
