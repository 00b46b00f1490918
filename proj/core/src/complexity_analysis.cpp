#include "switchsim/complexity_analysis.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "csv.hpp"

namespace switchsim {

double binary_entropy(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::domain_error(fmt::format("binary entropy argument {} outside [0, 1]", eps));
    }
    if (eps == 0.0 || eps == 1.0) return 0.0;
    return -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
}

namespace {

double information_deficit(int n, double eps) {
    if (n < 1) throw std::domain_error("n must be positive");
    if (!(eps >= 0.0 && eps <= 0.5)) {
        throw std::domain_error(fmt::format("error probability {} outside [0, 1/2]", eps));
    }
    return 1.0 - binary_entropy(eps);
}

}  // namespace

double classical_lower_bound(int n, double eps) {
    return std::ldexp(information_deficit(n, eps), n - 1);
}

double quantum_definite_lower_bound(int n, double eps) {
    return std::ldexp(information_deficit(n, eps), n - 2);
}

double transmitted_information(int n, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::domain_error(fmt::format("efficiency {} outside (0, 1]", eta));
    }
    return static_cast<double>(n + 2) / eta;
}

double gamma_ratio(double q, double c) {
    if (c == 0.0) throw std::domain_error("gamma undefined for a zero bound");
    return q / c;
}

std::vector<PublishedResult> parse_published_results(std::string_view csv_text) {
    const auto rows = csv::parse(
        csv_text, {"n", "loss_alice_db", "loss_bob_db", "system_loss_db", "epsilon", "epsilon_err", "Q", "Q_err",
                   "gamma_classical", "gamma_quantum"});
    std::vector<PublishedResult> out;
    for (const auto &row : rows) {
        PublishedResult r;
        r.n = csv::to_int(row, 0);
        r.loss_alice_db = csv::to_double(row, 1);
        r.loss_bob_db = csv::to_double(row, 2);
        r.system_loss_db = csv::to_double(row, 3);
        r.epsilon = csv::to_double(row, 4);
        r.epsilon_err = csv::to_double(row, 5);
        r.q = csv::to_double(row, 6);
        r.q_err = csv::to_double(row, 7);
        r.gamma_classical = csv::to_double(row, 8);
        r.gamma_quantum = csv::to_double(row, 9);
        if (r.n < 2 || r.system_loss_db < 0 || r.q <= 0) {
            throw std::runtime_error(fmt::format("line {}: implausible result row", row.line));
        }
        out.push_back(r);
    }
    if (out.empty()) throw std::runtime_error("no result rows");
    return out;
}

std::vector<PublishedResult> load_published_results(const std::filesystem::path &csv_path) {
    try {
        return parse_published_results(csv::read_file(csv_path));
    } catch (const std::runtime_error &e) {
        throw std::runtime_error(csv_path.string() + ": " + e.what());
    }
}

double ComplexityRow::q_rel_diff() const {
    return (q_from_loss - q_published) / q_published;
}

double ComplexityRow::gamma_classical_abs_diff() const {
    return std::abs(gamma_classical - gamma_classical_published);
}

double ComplexityRow::gamma_quantum_abs_diff() const {
    return std::abs(gamma_quantum - gamma_quantum_published);
}

bool ComplexityRow::within_tolerances() const {
    return gamma_classical_abs_diff() <= kGammaClassicalTolerance && gamma_quantum_abs_diff() <= kGammaQuantumTolerance &&
           std::abs(q_rel_diff()) <= kTransmittedInformationRelTolerance;
}

std::vector<ComplexityRow> reproduce_table(const std::vector<PublishedResult> &published, double eps_worst) {
    std::vector<ComplexityRow> rows;
    rows.reserve(published.size());
    for (const auto &p : published) {
        ComplexityRow row;
        row.n = p.n;
        row.epsilon_worst = eps_worst;
        row.system_loss_db = p.system_loss_db;
        row.q_from_loss = transmitted_information(p.n, std::pow(10.0, -p.system_loss_db / 10.0));
        row.q_published = p.q;
        row.c_classical = classical_lower_bound(p.n, eps_worst);
        row.c_quantum_definite = quantum_definite_lower_bound(p.n, eps_worst);
        row.gamma_classical = gamma_ratio(p.q, row.c_classical);
        row.gamma_quantum = gamma_ratio(p.q, row.c_quantum_definite);
        row.gamma_classical_from_loss = gamma_ratio(row.q_from_loss, row.c_classical);
        row.gamma_quantum_from_loss = gamma_ratio(row.q_from_loss, row.c_quantum_definite);
        row.gamma_classical_published = p.gamma_classical;
        row.gamma_quantum_published = p.gamma_quantum;
        rows.push_back(row);
    }
    return rows;
}

std::string complexity_csv_header() {
    return "n,epsilon_worst,system_loss_db,Q_from_loss,Q_published,Q_rel_diff,C_classical,C_quantum_definite,"
           "gamma_classical,gamma_classical_published,gamma_classical_rel_diff,"
           "gamma_quantum,gamma_quantum_published,gamma_quantum_rel_diff,"
           "gamma_classical_from_loss,gamma_quantum_from_loss,within_tolerance";
}

std::string complexity_csv_row(const ComplexityRow &row) {
    auto rel = [](double computed, double published) { return (computed - published) / published; };
    return fmt::format(
        "{},{:.4f},{:.2f},{:.4f},{:.2f},{:.6f},{:.4f},{:.4f},{:.6f},{:.3f},{:.6f},{:.6f},{:.3f},{:.6f},{:.6f},{:.6f},{}",
        row.n, row.epsilon_worst, row.system_loss_db, row.q_from_loss, row.q_published, row.q_rel_diff(),
        row.c_classical, row.c_quantum_definite, row.gamma_classical, row.gamma_classical_published,
        rel(row.gamma_classical, row.gamma_classical_published), row.gamma_quantum, row.gamma_quantum_published,
        rel(row.gamma_quantum, row.gamma_quantum_published), row.gamma_classical_from_loss,
        row.gamma_quantum_from_loss, row.within_tolerances() ? 1 : 0);
}

std::vector<BoundCurvePoint> bound_curve(
    const std::vector<PublishedResult> &published, int n_min, int n_max, double eps) {
    if (n_min < 1 || n_max < n_min) throw std::domain_error("invalid n range for bound curve");
    std::vector<BoundCurvePoint> out;
    for (int n = n_min; n <= n_max; ++n) {
        BoundCurvePoint point;
        point.n = n;
        point.c_classical = classical_lower_bound(n, eps);
        point.c_quantum_definite = quantum_definite_lower_bound(n, eps);
        for (const auto &p : published) {
            if (p.n == n) {
                point.q_published = p.q;
                point.q_from_loss = transmitted_information(n, std::pow(10.0, -p.system_loss_db / 10.0));
            }
        }
        out.push_back(point);
    }
    return out;
}

}  // namespace switchsim
