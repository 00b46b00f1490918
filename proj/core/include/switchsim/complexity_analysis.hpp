#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace switchsim {

/// Worst measured error probability plus its one-sigma uncertainty (0.0638 + 0.0025).
inline constexpr double kWorstCaseEpsilon = 0.0663;

inline constexpr double kGammaClassicalTolerance = 0.005;
inline constexpr double kGammaQuantumTolerance = 0.012;
inline constexpr double kTransmittedInformationRelTolerance = 0.02;

double binary_entropy(double eps);

/// (1 - H(eps)) 2^(n-1) bits; eps in [0, 1/2].
double classical_lower_bound(int n, double eps);

/// (1 - H(eps)) 2^(n-2) bits; half the classical bound.
double quantum_definite_lower_bound(int n, double eps);

/// Q = (n + 2) / eta.
double transmitted_information(int n, double eta);

double gamma_ratio(double q, double c);

/// One measured row of the published results.
struct PublishedResult {
    int n = 0;
    double loss_alice_db = 0;
    double loss_bob_db = 0;
    double system_loss_db = 0;
    double epsilon = 0;
    double epsilon_err = 0;
    double q = 0;
    double q_err = 0;
    double gamma_classical = 0;
    double gamma_quantum = 0;
};

std::vector<PublishedResult> parse_published_results(std::string_view csv_text);
std::vector<PublishedResult> load_published_results(const std::filesystem::path &csv_path);

struct ComplexityRow {
    int n = 0;
    double epsilon_worst = 0;
    double system_loss_db = 0;
    /// (n + 2) 10^(L/10) from the measured system loss.
    double q_from_loss = 0;
    double q_published = 0;
    double c_classical = 0;
    double c_quantum_definite = 0;
    /// Ratios against the published Q.
    double gamma_classical = 0;
    double gamma_quantum = 0;
    double gamma_classical_from_loss = 0;
    double gamma_quantum_from_loss = 0;
    double gamma_classical_published = 0;
    double gamma_quantum_published = 0;

    double q_rel_diff() const;
    double gamma_classical_abs_diff() const;
    double gamma_quantum_abs_diff() const;
    bool within_tolerances() const;
};

std::vector<ComplexityRow> reproduce_table(
    const std::vector<PublishedResult> &published, double eps_worst = kWorstCaseEpsilon);

std::string complexity_csv_header();
std::string complexity_csv_row(const ComplexityRow &row);

struct BoundCurvePoint {
    int n = 0;
    double c_classical = 0;
    double c_quantum_definite = 0;
    /// Zero where no measurement exists for n.
    double q_published = 0;
    double q_from_loss = 0;
};

std::vector<BoundCurvePoint> bound_curve(
    const std::vector<PublishedResult> &published, int n_min, int n_max, double eps = kWorstCaseEpsilon);

}  // namespace switchsim
