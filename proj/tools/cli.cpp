#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "switchsim/complexity_analysis.hpp"
#include "switchsim/ee_game.hpp"
#include "switchsim/permutation_variant.hpp"
#include "switchsim/photonic_model.hpp"
#include "switchsim/quantum_switch.hpp"

namespace switchsim::cli {

namespace fs = std::filesystem;

namespace {

// Usage and configuration problems; mapped to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path data_dir() {
    if (const char *env = std::getenv("SWITCHSIM_DATA"); env != nullptr && *env != '\0') {
        return env;
    }
    return SWITCHSIM_DEFAULT_DATA_DIR;
}

std::string read_text(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Collects what is needed to rerun a command and writes it beside the output.
class Manifest {
  public:
    Manifest(std::string command, const std::vector<std::string> &args) {
        doc_["command"] = std::move(command);
        doc_["arguments"] = args;
        doc_["config"] = nullptr;
        doc_["seed"] = nullptr;
        doc_["datasets"] = nlohmann::ordered_json::array();
        doc_["outputs"] = nlohmann::ordered_json::array();
    }

    void seed(std::uint64_t s) { doc_["seed"] = s; }
    void config(const std::string &json) { doc_["config"] = nlohmann::ordered_json::parse(json); }
    void dataset(const fs::path &path) {
        doc_["datasets"].push_back({{"path", path.string()}, {"fnv1a64", fnv1a_hex(read_text(path))}});
    }

    void write_with(const fs::path &output, const std::string &body) {
        write_file(output, body);
        doc_["outputs"].push_back(output.string());
        doc_["timestamp"] = utc_timestamp();
        write_file(fs::path(output.string() + ".manifest.json"), doc_.dump(2) + "\n");
    }

  private:
    static void write_file(const fs::path &path, const std::string &body) {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out) throw UsageError("cannot write " + path.string());
        out << body;
    }

    nlohmann::ordered_json doc_;
};

void emit(const std::string &body, const std::string &out_path, Manifest &manifest, std::ostream &out) {
    if (out_path.empty()) {
        out << body;
    } else {
        manifest.write_with(out_path, body);
    }
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOptions {
    int n = 0;
    std::string mode = "random";
    std::uint64_t samples = 10000;
};

int cmd_oracle(
    const OracleOptions &opt, std::uint64_t seed, const std::string &out_path, const std::vector<std::string> &args,
    std::ostream &out) {
    check_input_bits(opt.n);
    std::uint64_t total = 0;
    std::vector<std::string> failures;
    auto visit = [&](const GameInstance &inst) {
        ++total;
        const bool dichotomy = oracle_check(inst);
        const bool decided = decide_ee(inst) == ee_evaluate(inst);
        if (!dichotomy || !decided) failures.push_back(instance_to_json(inst));
    };
    if (opt.mode == "exhaustive") {
        if (opt.n > 3) {
            throw UsageError(fmt::format("exhaustive mode is limited to n <= 3 (got n={})", opt.n));
        }
        for_each_instance(opt.n, visit);
    } else {
        std::mt19937_64 seeds(seed);
        for (std::uint64_t i = 0; i < opt.samples; ++i) visit(random_instance(opt.n, seeds()));
    }

    const std::uint64_t passed = total - failures.size();
    out << fmt::format("oracle n={} mode={}: {}/{} pass\n", opt.n, opt.mode, passed, total);
    for (const auto &f : failures) out << "FAIL " << f << "\n";

    if (!out_path.empty()) {
        Manifest manifest("oracle", args);
        manifest.seed(seed);
        manifest.write_with(out_path, fmt::format("n,mode,samples,seed,passed,failed\n{},{},{},{},{},{}\n", opt.n,
                                                  opt.mode, total, seed, passed, failures.size()));
    }
    return failures.empty() ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
    std::optional<int> n;
    std::string instance = "worst";
    std::string config_path;
    std::uint64_t trials = 1000000;
    unsigned workers = 0;
    std::optional<double> visibility;
    std::optional<double> loss_db;
};

std::vector<GameInstance> resolve_instances(const std::string &spec, int n) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto integer_arg = [&]() -> std::uint64_t {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
            return v;
        } catch (const std::exception &) {
            throw UsageError("instance spec \"" + spec + "\" needs an integer argument");
        }
    };
    if (kind == "worst" && arg.empty()) return {worst_case_instance(n)};
    if (kind == "random") return {random_instance(n, integer_arg())};
    if (kind == "bitflip") {
        const auto k = integer_arg();
        if (k >= static_cast<std::uint64_t>(n)) throw UsageError(fmt::format("bitflip:{} needs k < n={}", k, n));
        return {bitflip_instance(n, static_cast<int>(k))};
    }
    if (kind == "sweep" && arg.empty()) {
        std::vector<GameInstance> all;
        for (int k = 0; k < n; ++k) all.push_back(bitflip_instance(n, k));
        all.push_back(worst_case_instance(n));
        return all;
    }
    if (kind == "file" && !arg.empty()) {
        try {
            auto inst = instance_from_json(read_text(arg));
            if (inst.n() != n) throw UsageError(fmt::format("instance file has n={}, run uses n={}", inst.n(), n));
            return {std::move(inst)};
        } catch (const std::invalid_argument &e) {
            throw UsageError(arg + ": " + e.what());
        }
    }
    throw UsageError("unknown instance spec \"" + spec + "\" (worst, random:<seed>, file:<path>, bitflip:<k>, sweep)");
}

int cmd_simulate(
    const SimulateOptions &opt, std::uint64_t seed, const std::string &out_path, const std::vector<std::string> &args,
    std::ostream &out, std::ostream &err) {
    if (opt.trials == 0) throw UsageError("--trials must be at least 1");
    Manifest manifest("simulate", args);
    manifest.seed(seed);

    const fs::path config_path = opt.config_path.empty() ? data_dir() / "photonic_config.json" : fs::path(opt.config_path);
    PhotonicConfig config;
    try {
        config = load_photonic_config(config_path, opt.config_path.empty() ? data_dir() : config_path.parent_path());
    } catch (const std::exception &e) {
        throw UsageError(config_path.string() + ": " + e.what());
    }
    manifest.dataset(config_path);
    if (config.segment_table_csv) {
        const fs::path base = opt.config_path.empty() ? data_dir() : config_path.parent_path();
        manifest.dataset(base / *config.segment_table_csv);
    }
    if (opt.n) config.n = *opt.n;
    if (opt.visibility) config.visibility = *opt.visibility;
    if (opt.loss_db) config.total_loss_db_override = *opt.loss_db;
    try {
        config.validate();
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
    manifest.config(photonic_config_to_json(config));

    const unsigned workers = opt.workers > 0 ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    std::string body = count_record_csv_header() + "\n";
    for (const auto &inst : resolve_instances(opt.instance, config.n)) {
        CountRecord record;
        try {
            record = simulate_counts(inst, config, opt.trials, seed, workers);
        } catch (const std::domain_error &e) {
            throw UsageError(e.what());
        }
        body += count_record_csv_row(inst, record, seed) + "\n";
        err << fmt::format(
            "x={} y={} eta={:.5f} analytic_epsilon={:.6f}\n", inst.x(), inst.y(), system_efficiency(config, inst),
            analytic_error_probability(inst, config));
    }
    emit(body, out_path, manifest, out);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// reproduce

int cmd_reproduce(
    const std::string &target, const std::string &out_path, const std::vector<std::string> &args, std::ostream &out,
    std::ostream &err) {
    const fs::path dataset = data_dir() / "complexity_results.csv";
    std::vector<PublishedResult> published;
    try {
        published = load_published_results(dataset);
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
    Manifest manifest("reproduce", args);
    manifest.dataset(dataset);

    std::string body;
    bool ok = true;
    if (target == "s2") {
        body = complexity_csv_header() + "\n";
        for (const auto &row : reproduce_table(published)) {
            body += complexity_csv_row(row) + "\n";
            if (!row.within_tolerances()) {
                ok = false;
                err << fmt::format(
                    "n={}: outside tolerance (gamma_c diff {:.4f}, gamma_q diff {:.4f}, Q rel diff {:.4f})\n", row.n,
                    row.gamma_classical_abs_diff(), row.gamma_quantum_abs_diff(), row.q_rel_diff());
            }
        }
    } else {
        body = "n,epsilon,C_classical,C_quantum_definite,Q_published,Q_from_loss\n";
        for (const auto &p : bound_curve(published, 1, 14)) {
            body += fmt::format("{},{:.4f},{:.4f},{:.4f},", p.n, kWorstCaseEpsilon, p.c_classical, p.c_quantum_definite);
            body += p.q_published > 0 ? fmt::format("{:.2f},{:.4f}\n", p.q_published, p.q_from_loss) : ",\n";
        }
    }
    emit(body, out_path, manifest, out);
    return ok ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// delays

int cmd_delays(
    const std::string &party_name_arg, const std::string &table_path, const std::string &out_path,
    const std::vector<std::string> &args, std::ostream &out) {
    const Party party = parse_party(party_name_arg);
    const fs::path csv_path = table_path.empty() ? data_dir() / "fiber_segments.csv" : fs::path(table_path);
    std::optional<FiberSegmentTable> table;
    try {
        table = load_segment_table(csv_path, party);
    } catch (const std::exception &e) {
        throw UsageError(e.what());
    }
    const double worst = delay_deviation_max(*table);
    const bool pass = worst < kDelayDeviationBoundPs;
    out << fmt::format(
        "{}: {} segments, max |deviation| = {:.3f} ps over {} configurations (bound {:.0f} ps) {}\n",
        party_name(party), table->size(), worst, std::uint64_t{1} << table->size(), kDelayDeviationBoundPs,
        pass ? "PASS" : "FAIL");

    if (!out_path.empty()) {
        Manifest manifest("delays", args);
        manifest.dataset(csv_path);
        std::string body = "x,delay_ns,target_ns,deviation_ps\n";
        const std::uint64_t count = std::uint64_t{1} << table->size();
        for (std::uint64_t x = 0; x < count; ++x) {
            body += fmt::format(
                "{},{:.3f},{:.3f},{:.3f}\n", x, delay_of(*table, x), FiberSegment::kTargetShortNs * static_cast<double>(x),
                delay_deviation_ps(*table, x));
        }
        manifest.write_with(out_path, body);
    }
    return pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// schedule

int cmd_schedule(int n, std::uint64_t x, const std::string &out_path, const std::vector<std::string> &args, std::ostream &out) {
    const auto schedule = build_schedule(n, x);
    Manifest manifest("schedule", args);
    emit(schedule_csv(schedule), out_path, manifest, out);
    return is_cyclic_shift(schedule) ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum-switch exchange-evaluation simulator", "switchsim"};
    app.require_subcommand(1);

    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    std::string config_path;

    OracleOptions oracle_opt;
    auto *oracle = app.add_subcommand("oracle", "Check the commute/anticommute dichotomy and switch decisions");
    oracle->add_option("--n", oracle_opt.n, "Input bit-string length")->required();
    oracle->add_option("--mode", oracle_opt.mode, "exhaustive (n <= 3) or random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    oracle->add_option("--samples", oracle_opt.samples, "Random instances to draw")->check(CLI::PositiveNumber);

    SimulateOptions sim_opt;
    int sim_n = 0;
    double sim_visibility = 0;
    double sim_loss = 0;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo coincidence counts for the photonic setup");
    auto *sim_n_opt = simulate->add_option("--n", sim_n, "Input bit-string length (default: from config)");
    simulate->add_option("--instance", sim_opt.instance, "worst | random:<seed> | file:<path> | bitflip:<k> | sweep");
    simulate->add_option("--trials", sim_opt.trials, "Heralded trials per instance");
    simulate->add_option("--workers", sim_opt.workers, "Worker threads (0: all cores)");
    auto *sim_v_opt = simulate->add_option("--visibility", sim_visibility, "Override interference visibility");
    auto *sim_l_opt = simulate->add_option("--loss-db", sim_loss, "Override total system loss in dB");

    std::string target = "s2";
    auto *reproduce = app.add_subcommand("reproduce", "Recompute the communication-complexity comparison");
    reproduce->add_option("--target", target, "s2 (results table) or fig4 (bound curves)")
        ->check(CLI::IsMember({"s2", "fig4"}));

    std::string party;
    std::string table_path;
    auto *delays = app.add_subcommand("delays", "Delay deviations of a party's fiber segments");
    delays->add_option("--party", party, "alice or bob")->required()->check(CLI::IsMember({"alice", "bob"}, CLI::ignore_case));
    delays->add_option("--table", table_path, "Segment table CSV (default: shipped dataset)");

    int sched_n = 0;
    std::uint64_t sched_x = 0;
    auto *schedule = app.add_subcommand("schedule", "Output times of the n-qubit cyclic-shift delay circuit");
    schedule->add_option("--n", sched_n, "Input bit-string length")->required();
    schedule->add_option("--x", sched_x, "Shift amount")->required();

    for (auto *sub : {oracle, simulate, reproduce, delays, schedule}) {
        sub->add_option("--out", out_path, "Output file (a .manifest.json is written beside it)");
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--config", config_path, "Photonic configuration JSON");
    }

    std::vector<std::string> argv_store{"switchsim"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (oracle->parsed()) return cmd_oracle(oracle_opt, seed, out_path, args, out);
        if (simulate->parsed()) {
            if (*sim_n_opt) sim_opt.n = sim_n;
            if (*sim_v_opt) sim_opt.visibility = sim_visibility;
            if (*sim_l_opt) sim_opt.loss_db = sim_loss;
            sim_opt.config_path = config_path;
            return cmd_simulate(sim_opt, seed, out_path, args, out, err);
        }
        if (reproduce->parsed()) return cmd_reproduce(target, out_path, args, out, err);
        if (delays->parsed()) return cmd_delays(party, table_path, out_path, args, out);
        if (schedule->parsed()) return cmd_schedule(sched_n, sched_x, out_path, args, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace switchsim::cli
