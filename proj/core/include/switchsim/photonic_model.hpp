#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "switchsim/ee_game.hpp"

namespace switchsim {

enum class Party { Alice, Bob };

std::string_view party_name(Party party);
/// Accepts "alice" / "bob" (case-insensitive).
Party parse_party(std::string_view name);

struct FiberOption {
    double length_ns = 0;
    double length_err_ns = 0;
    double loss_db = 0;
    double loss_err_db = 0;
};

/// Segment k adds 2^(k-1) time bins when its long option is chosen.
struct FiberSegment {
    int index = 0;  // k, 1-based
    FiberOption long_option;
    FiberOption short_option;

    /// 2 * (2^(k-1) + 1) ns
    double target_long_ns() const;
    static constexpr double kTargetShortNs = 2.0;
};

/// Measured lengths may sit at most this far from their targets.
inline constexpr double kSegmentLengthSlackNs = 0.2;
/// Delays deviating by this much would put the photon in the wrong modulation bin.
inline constexpr double kDelayDeviationBoundPs = 900.0;

class FiberSegmentTable {
  public:
    /// Segments must be numbered 1..size() in order; lengths within
    /// kSegmentLengthSlackNs of target; losses nonnegative.
    FiberSegmentTable(Party party, std::vector<FiberSegment> segments);

    /// Same lengths as the targets, all losses zero.
    static FiberSegmentTable ideal(Party party, int segments);

    Party party() const { return party_; }
    int size() const { return static_cast<int>(segments_.size()); }
    const FiberSegment &segment(int k) const { return segments_.at(static_cast<std::size_t>(k - 1)); }
    const std::vector<FiberSegment> &segments() const { return segments_; }

  private:
    Party party_;
    std::vector<FiberSegment> segments_;
};

/// Parses CSV with header party,segment,option,length_ns,length_err_ns,loss_db,loss_err_db.
/// Throws std::runtime_error with a line number on malformed input.
FiberSegmentTable parse_segment_table(std::string_view csv_text, Party party);
FiberSegmentTable load_segment_table(const std::filesystem::path &csv_path, Party party);

/// Realized relative delay: sum of (long - short) over segments whose bit is set in x.
double delay_of(const FiberSegmentTable &table, std::uint64_t x);

/// delay_of(x) - 2x ns, in picoseconds.
double delay_deviation_ps(const FiberSegmentTable &table, std::uint64_t x);

/// max over all x in [0, 2^size) of |delay_deviation_ps(x)|, by enumeration.
double delay_deviation_max(const FiberSegmentTable &table);

/// Same quantity from per-segment signed deviations: the larger of the summed
/// positive parts and the summed negative parts.
double delay_deviation_max_composed(const FiberSegmentTable &table);

/// Loss through segments 1..n, long option where x has the bit set.
double section_loss(const FiberSegmentTable &table, int n, std::uint64_t x);

struct PhotonicConfig {
    int n = 12;
    double time_bin_ns = 2.0;
    double system_base_loss_db = 11.62;
    /// When set, replaces base + section losses entirely.
    std::optional<double> total_loss_db_override;
    std::array<double, 2> dark_count_rates_hz{9.3, 8.3};
    std::array<double, 2> detector_efficiencies{0.765, 0.720};
    double visibility = 0.88;
    double pair_rate_hz = 1.0e5;
    /// As written in the JSON document; tables below are loaded from it.
    std::optional<std::string> segment_table_csv;
    std::optional<FiberSegmentTable> alice_segments;
    std::optional<FiberSegmentTable> bob_segments;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
    double coincidence_window_ns() const;
};

/// JSON keys mirror the struct fields; "segment_table_csv" (optional) is
/// resolved against base_dir and loaded for both parties.
PhotonicConfig parse_photonic_config(std::string_view json_text, const std::filesystem::path &base_dir);
PhotonicConfig load_photonic_config(const std::filesystem::path &json_path, const std::filesystem::path &data_dir);
std::string photonic_config_to_json(const PhotonicConfig &config);

double loss_to_efficiency(double loss_db);
double total_loss_db(const PhotonicConfig &config, const GameInstance &inst);
/// 10^(-L/10) with L from total_loss_db.
double system_efficiency(const PhotonicConfig &config, const GameInstance &inst);

/// Probability that at least one detector fires spuriously in one window.
double dark_click_probability(const PhotonicConfig &config, int n);

struct ErrorEstimate {
    double epsilon = 0;
    /// One standard deviation.
    double sigma = 0;

    bool operator==(const ErrorEstimate &) const = default;
};

struct CountRecord {
    std::uint64_t trials = 0;
    std::uint64_t coincidences_correct = 0;
    std::uint64_t coincidences_wrong = 0;
    std::uint64_t dark_events = 0;
    /// Empty when no coincidence was recorded.
    std::optional<ErrorEstimate> estimate;

    bool operator==(const CountRecord &) const = default;
};

/// Heralded-trial Monte Carlo. Trial t draws from its own stream keyed by
/// (seed, t), so the record does not depend on `workers`.
CountRecord simulate_counts(
    const GameInstance &inst, const PhotonicConfig &config, std::uint64_t trials, std::uint64_t seed,
    unsigned workers = 1);

/// The expectation simulate_counts converges to.
double analytic_error_probability(const GameInstance &inst, const PhotonicConfig &config);

/// Visibility that makes analytic_error_probability hit target_epsilon. Throws
/// std::domain_error when no V in [0, 1] does.
double fit_visibility(const GameInstance &inst, const PhotonicConfig &config, double target_epsilon);

/// Binomial estimate with one-sigma error. Throws std::domain_error on zero counts.
ErrorEstimate estimate_error_probability(std::uint64_t correct, std::uint64_t wrong);
ErrorEstimate estimate_error_probability(const CountRecord &counts);

/// Heralded g2(0) = 2 C123 C1 / (C12 + C13)^2.
double g2_estimate(double c1, double c12, double c13, double c123);

std::string count_record_csv_header();
std::string count_record_csv_row(const GameInstance &inst, const CountRecord &counts, std::uint64_t seed);

}  // namespace switchsim
