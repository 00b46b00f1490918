#include "switchsim/photonic_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include <fmt/core.h>

#include "csv.hpp"
#include "json.hpp"

namespace switchsim {

std::string_view party_name(Party party) {
    return party == Party::Alice ? "alice" : "bob";
}

Party parse_party(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "alice") return Party::Alice;
    if (lower == "bob") return Party::Bob;
    throw std::invalid_argument("unknown party \"" + std::string(name) + "\"");
}

double FiberSegment::target_long_ns() const {
    return kTargetShortNs * (std::ldexp(1.0, index - 1) + 1.0);
}

FiberSegmentTable::FiberSegmentTable(Party party, std::vector<FiberSegment> segments)
    : party_(party), segments_(std::move(segments)) {
    if (segments_.empty() || segments_.size() > static_cast<std::size_t>(kMaxInputBits)) {
        throw std::invalid_argument("segment table must hold between 1 and 16 segments");
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto &seg = segments_[i];
        const std::string where = fmt::format("{} segment {}", party_name(party_), i + 1);
        if (seg.index != static_cast<int>(i) + 1) {
            throw std::invalid_argument(where + ": segments must be numbered 1..k in order");
        }
        if (std::abs(seg.long_option.length_ns - seg.target_long_ns()) > kSegmentLengthSlackNs ||
            std::abs(seg.short_option.length_ns - FiberSegment::kTargetShortNs) > kSegmentLengthSlackNs) {
            throw std::invalid_argument(where + ": length too far from target");
        }
        for (const auto *opt : {&seg.long_option, &seg.short_option}) {
            if (opt->loss_db < 0 || opt->loss_err_db < 0 || opt->length_err_ns < 0) {
                throw std::invalid_argument(where + ": losses and uncertainties must be nonnegative");
            }
        }
    }
}

FiberSegmentTable FiberSegmentTable::ideal(Party party, int segments) {
    std::vector<FiberSegment> rows;
    for (int k = 1; k <= segments; ++k) {
        FiberSegment seg;
        seg.index = k;
        seg.long_option.length_ns = seg.target_long_ns();
        seg.short_option.length_ns = FiberSegment::kTargetShortNs;
        rows.push_back(seg);
    }
    return FiberSegmentTable(party, std::move(rows));
}

FiberSegmentTable parse_segment_table(std::string_view csv_text, Party party) {
    const auto rows = csv::parse(
        csv_text, {"party", "segment", "option", "length_ns", "length_err_ns", "loss_db", "loss_err_db"});
    std::vector<FiberSegment> segments;
    std::vector<std::pair<bool, bool>> seen;
    for (const auto &row : rows) {
        if (parse_party(row.fields[0]) != party) continue;
        const int k = csv::to_int(row, 1);
        if (k < 1 || k > kMaxInputBits) {
            throw std::runtime_error(fmt::format("line {}: segment index {} out of range", row.line, k));
        }
        if (segments.size() < static_cast<std::size_t>(k)) {
            segments.resize(static_cast<std::size_t>(k));
            seen.resize(static_cast<std::size_t>(k));
        }
        FiberOption opt{csv::to_double(row, 3), csv::to_double(row, 4), csv::to_double(row, 5), csv::to_double(row, 6)};
        auto &seg = segments[static_cast<std::size_t>(k - 1)];
        auto &flags = seen[static_cast<std::size_t>(k - 1)];
        seg.index = k;
        if (row.fields[2] == "long") {
            if (flags.first) throw std::runtime_error(fmt::format("line {}: duplicate long option", row.line));
            seg.long_option = opt;
            flags.first = true;
        } else if (row.fields[2] == "short") {
            if (flags.second) throw std::runtime_error(fmt::format("line {}: duplicate short option", row.line));
            seg.short_option = opt;
            flags.second = true;
        } else {
            throw std::runtime_error(fmt::format("line {}: option must be long or short", row.line));
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i].first || !seen[i].second) {
            throw std::runtime_error(
                fmt::format("{} segment {} lacks a long or short row", party_name(party), i + 1));
        }
    }
    if (segments.empty()) {
        throw std::runtime_error(fmt::format("no rows for party {}", party_name(party)));
    }
    try {
        return FiberSegmentTable(party, std::move(segments));
    } catch (const std::invalid_argument &e) {
        throw std::runtime_error(e.what());
    }
}

FiberSegmentTable load_segment_table(const std::filesystem::path &csv_path, Party party) {
    try {
        return parse_segment_table(csv::read_file(csv_path), party);
    } catch (const std::runtime_error &e) {
        throw std::runtime_error(csv_path.string() + ": " + e.what());
    }
}

namespace {

void require_x_in_table(const FiberSegmentTable &table, int n, std::uint64_t x) {
    if (n < 1 || n > table.size()) {
        throw std::domain_error(fmt::format("n={} exceeds the {} segments available", n, table.size()));
    }
    if (x >= (std::uint64_t{1} << n)) {
        throw std::domain_error(fmt::format("x={} outside [0, 2^{})", x, n));
    }
}

double segment_deviation_ns(const FiberSegment &seg) {
    const double nominal = FiberSegment::kTargetShortNs * std::ldexp(1.0, seg.index - 1);
    return (seg.long_option.length_ns - seg.short_option.length_ns) - nominal;
}

}  // namespace

double delay_of(const FiberSegmentTable &table, std::uint64_t x) {
    require_x_in_table(table, table.size(), x);
    double delay = 0;
    for (const auto &seg : table.segments()) {
        if ((x >> (seg.index - 1)) & 1) {
            delay += seg.long_option.length_ns - seg.short_option.length_ns;
        }
    }
    return delay;
}

double delay_deviation_ps(const FiberSegmentTable &table, std::uint64_t x) {
    return (delay_of(table, x) - FiberSegment::kTargetShortNs * static_cast<double>(x)) * 1000.0;
}

double delay_deviation_max(const FiberSegmentTable &table) {
    const std::uint64_t count = std::uint64_t{1} << table.size();
    double worst = 0;
    for (std::uint64_t x = 0; x < count; ++x) {
        worst = std::max(worst, std::abs(delay_deviation_ps(table, x)));
    }
    return worst;
}

double delay_deviation_max_composed(const FiberSegmentTable &table) {
    double positive = 0;
    double negative = 0;
    for (const auto &seg : table.segments()) {
        const double dev = segment_deviation_ns(seg);
        (dev > 0 ? positive : negative) += dev;
    }
    return std::max(positive, -negative) * 1000.0;
}

double section_loss(const FiberSegmentTable &table, int n, std::uint64_t x) {
    require_x_in_table(table, n, x);
    double loss = 0;
    for (int k = 1; k <= n; ++k) {
        const auto &seg = table.segment(k);
        loss += ((x >> (k - 1)) & 1) ? seg.long_option.loss_db : seg.short_option.loss_db;
    }
    return loss;
}

void PhotonicConfig::validate() const {
    check_input_bits(n);
    auto require = [](bool ok, const char *what) {
        if (!ok) throw std::invalid_argument(std::string("photonic config: ") + what);
    };
    require(time_bin_ns > 0, "time_bin_ns must be positive");
    require(system_base_loss_db >= 0, "system_base_loss_db must be nonnegative");
    require(!total_loss_db_override || *total_loss_db_override >= 0, "total_loss_db_override must be nonnegative");
    for (double rate : dark_count_rates_hz) require(rate >= 0, "dark count rates must be nonnegative");
    for (double eff : detector_efficiencies) require(eff >= 0 && eff <= 1, "detector efficiencies must lie in [0, 1]");
    require(visibility >= 0 && visibility <= 1, "visibility must lie in [0, 1]");
    require(pair_rate_hz >= 0, "pair_rate_hz must be nonnegative");
    require(dark_click_probability(*this, n) < 1, "dark counts saturate the coincidence window");
}

double PhotonicConfig::coincidence_window_ns() const {
    return time_bin_ns * static_cast<double>(augmented_domain_size(n));
}

namespace {

const char *const kConfigKeys[] = {
    "n", "time_bin_ns", "system_base_loss_db", "total_loss_db_override", "dark_count_rates_hz",
    "detector_efficiencies", "visibility", "pair_rate_hz", "segment_table_csv"};

double number_field(const nlohmann::json &doc, const char *key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) throw std::invalid_argument(std::string("photonic config: ") + key + " must be a number");
    return doc[key].get<double>();
}

std::array<double, 2> pair_field(const nlohmann::json &doc, const char *key, std::array<double, 2> fallback) {
    if (!doc.contains(key)) return fallback;
    const auto &v = doc[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw std::invalid_argument(std::string("photonic config: ") + key + " must be a two-number array");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

PhotonicConfig parse_photonic_config(std::string_view json_text, const std::filesystem::path &base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("photonic config: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("photonic config must be a JSON object");
    for (const auto &[key, _] : doc.items()) {
        if (std::find(std::begin(kConfigKeys), std::end(kConfigKeys), key) == std::end(kConfigKeys)) {
            throw std::invalid_argument("photonic config: unknown key \"" + key + "\"");
        }
    }

    PhotonicConfig config;
    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer()) throw std::invalid_argument("photonic config: n must be an integer");
        config.n = doc["n"].get<int>();
    }
    config.time_bin_ns = number_field(doc, "time_bin_ns", config.time_bin_ns);
    config.system_base_loss_db = number_field(doc, "system_base_loss_db", config.system_base_loss_db);
    if (doc.contains("total_loss_db_override") && !doc["total_loss_db_override"].is_null()) {
        config.total_loss_db_override = number_field(doc, "total_loss_db_override", 0);
    }
    config.dark_count_rates_hz = pair_field(doc, "dark_count_rates_hz", config.dark_count_rates_hz);
    config.detector_efficiencies = pair_field(doc, "detector_efficiencies", config.detector_efficiencies);
    config.visibility = number_field(doc, "visibility", config.visibility);
    config.pair_rate_hz = number_field(doc, "pair_rate_hz", config.pair_rate_hz);
    if (doc.contains("segment_table_csv") && !doc["segment_table_csv"].is_null()) {
        if (!doc["segment_table_csv"].is_string()) {
            throw std::invalid_argument("photonic config: segment_table_csv must be a string");
        }
        config.segment_table_csv = doc["segment_table_csv"].get<std::string>();
        const std::filesystem::path csv_path = base_dir / *config.segment_table_csv;
        config.alice_segments = load_segment_table(csv_path, Party::Alice);
        config.bob_segments = load_segment_table(csv_path, Party::Bob);
    }
    config.validate();
    return config;
}

PhotonicConfig load_photonic_config(const std::filesystem::path &json_path, const std::filesystem::path &data_dir) {
    return parse_photonic_config(csv::read_file(json_path), data_dir);
}

std::string photonic_config_to_json(const PhotonicConfig &config) {
    nlohmann::ordered_json doc;
    doc["n"] = config.n;
    doc["time_bin_ns"] = config.time_bin_ns;
    doc["system_base_loss_db"] = config.system_base_loss_db;
    doc["total_loss_db_override"] =
        config.total_loss_db_override ? nlohmann::ordered_json(*config.total_loss_db_override) : nullptr;
    doc["dark_count_rates_hz"] = config.dark_count_rates_hz;
    doc["detector_efficiencies"] = config.detector_efficiencies;
    doc["visibility"] = config.visibility;
    doc["pair_rate_hz"] = config.pair_rate_hz;
    doc["segment_table_csv"] = config.segment_table_csv ? nlohmann::ordered_json(*config.segment_table_csv) : nullptr;
    return doc.dump(2);
}

double loss_to_efficiency(double loss_db) {
    return std::pow(10.0, -loss_db / 10.0);
}

double total_loss_db(const PhotonicConfig &config, const GameInstance &inst) {
    if (config.total_loss_db_override) {
        return *config.total_loss_db_override;
    }
    if (!config.alice_segments || !config.bob_segments) {
        throw std::invalid_argument("photonic config has neither segment tables nor a total loss override");
    }
    return config.system_base_loss_db + section_loss(*config.alice_segments, inst.n(), inst.x()) +
           section_loss(*config.bob_segments, inst.n(), inst.y());
}

double system_efficiency(const PhotonicConfig &config, const GameInstance &inst) {
    return loss_to_efficiency(total_loss_db(config, inst));
}

double dark_click_probability(const PhotonicConfig &config, int n) {
    PhotonicConfig sized = config;
    sized.n = n;
    const double window_s = sized.coincidence_window_ns() * 1e-9;
    double none = 1.0;
    for (double rate : config.dark_count_rates_hz) {
        none *= 1.0 - std::min(1.0, rate * window_s);
    }
    return 1.0 - none;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// SplitMix64 keyed per (seed, trial).
class TrialStream {
  public:
    TrialStream(std::uint64_t seed, std::uint64_t trial) : state_(mix64(seed ^ mix64(trial + 0x9e3779b97f4a7c15ULL))) {}

    double uniform() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

struct Tally {
    std::uint64_t correct = 0;
    std::uint64_t wrong = 0;
    std::uint64_t dark = 0;
};

struct TrialModel {
    double efficiency;
    double p_correct_route;
    std::array<double, 2> p_dark;
};

Tally run_trials(const TrialModel &model, std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
    Tally tally;
    for (std::uint64_t t = begin; t < end; ++t) {
        TrialStream rng(seed, t);
        const bool survives = rng.uniform() < model.efficiency;
        const bool routed_correct = rng.uniform() < model.p_correct_route;
        const bool dark0 = rng.uniform() < model.p_dark[0];
        const bool dark1 = rng.uniform() < model.p_dark[1];
        const bool dark_correct = rng.uniform() < 0.5;
        const bool dark = dark0 || dark1;
        tally.dark += dark;
        if (survives) {
            (routed_correct ? tally.correct : tally.wrong) += 1;
        } else if (dark) {
            (dark_correct ? tally.correct : tally.wrong) += 1;
        }
    }
    return tally;
}

}  // namespace

CountRecord simulate_counts(
    const GameInstance &inst, const PhotonicConfig &config, std::uint64_t trials, std::uint64_t seed,
    unsigned workers) {
    if (trials == 0) {
        throw std::invalid_argument("simulate_counts needs at least one trial");
    }
    config.validate();
    PhotonicConfig sized = config;
    sized.n = inst.n();
    const double window_s = sized.coincidence_window_ns() * 1e-9;
    const TrialModel model{
        system_efficiency(config, inst),
        (1.0 + config.visibility) / 2.0,
        {std::min(1.0, config.dark_count_rates_hz[0] * window_s), std::min(1.0, config.dark_count_rates_hz[1] * window_s)},
    };

    workers = std::max(1u, workers);
    if (static_cast<std::uint64_t>(workers) > trials) workers = static_cast<unsigned>(trials);
    std::vector<Tally> partial(workers);
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = trials / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = chunk * w;
            const std::uint64_t end = w + 1 == workers ? trials : begin + chunk;
            pool.emplace_back([&, w, begin, end] { partial[w] = run_trials(model, seed, begin, end); });
        }
    }

    CountRecord record;
    record.trials = trials;
    for (const auto &t : partial) {
        record.coincidences_correct += t.correct;
        record.coincidences_wrong += t.wrong;
        record.dark_events += t.dark;
    }
    if (record.coincidences_correct + record.coincidences_wrong > 0) {
        record.estimate = estimate_error_probability(record);
    }
    return record;
}

double analytic_error_probability(const GameInstance &inst, const PhotonicConfig &config) {
    const double eta = system_efficiency(config, inst);
    const double p_dark = dark_click_probability(config, inst.n());
    const double detected = eta + (1.0 - eta) * p_dark;
    if (detected <= 0) {
        throw std::domain_error("no coincidences possible: zero efficiency and zero dark counts");
    }
    return (eta * (1.0 - config.visibility) / 2.0 + (1.0 - eta) * p_dark / 2.0) / detected;
}

double fit_visibility(const GameInstance &inst, const PhotonicConfig &config, double target_epsilon) {
    const double eta = system_efficiency(config, inst);
    if (eta <= 0) {
        throw std::domain_error("visibility has no effect at zero efficiency");
    }
    const double p_dark = dark_click_probability(config, inst.n());
    const double detected = eta + (1.0 - eta) * p_dark;
    const double v = 1.0 - 2.0 * (target_epsilon * detected - (1.0 - eta) * p_dark / 2.0) / eta;
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(fmt::format("target error probability {} needs visibility {} outside [0, 1]", target_epsilon, v));
    }
    return v;
}

ErrorEstimate estimate_error_probability(std::uint64_t correct, std::uint64_t wrong) {
    const std::uint64_t total = correct + wrong;
    if (total == 0) {
        throw std::domain_error("error probability undefined without coincidences");
    }
    const double eps = static_cast<double>(wrong) / static_cast<double>(total);
    return ErrorEstimate{eps, std::sqrt(eps * (1.0 - eps) / static_cast<double>(total))};
}

ErrorEstimate estimate_error_probability(const CountRecord &counts) {
    return estimate_error_probability(counts.coincidences_correct, counts.coincidences_wrong);
}

double g2_estimate(double c1, double c12, double c13, double c123) {
    const double pairs = c12 + c13;
    if (!(pairs > 0)) {
        throw std::domain_error("g2 estimate needs C12 + C13 > 0");
    }
    return 2.0 * c123 * c1 / (pairs * pairs);
}

std::string count_record_csv_header() {
    return "n,x,y,trials,correct,wrong,dark,epsilon,epsilon_stderr,seed";
}

std::string count_record_csv_row(const GameInstance &inst, const CountRecord &counts, std::uint64_t seed) {
    std::string eps;
    std::string sigma;
    if (counts.estimate) {
        eps = fmt::format("{:.8f}", counts.estimate->epsilon);
        sigma = fmt::format("{:.8f}", counts.estimate->sigma);
    }
    return fmt::format(
        "{},{},{},{},{},{},{},{},{},{}", inst.n(), inst.x(), inst.y(), counts.trials, counts.coincidences_correct,
        counts.coincidences_wrong, counts.dark_events, eps, sigma, seed);
}

}  // namespace switchsim
