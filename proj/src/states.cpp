#include "magnobattery/states.hpp"

#include "magnobattery/error.hpp"

#include <complex>
#include <string>

namespace magnobattery {

namespace {

constexpr double kNormSlack = 1e-9;

double checked_norm(const AmplitudeState& a) {
    const double n = a.norm();
    if (n > 1.0 + kNormSlack) {
        throw InconsistentState("amplitude norm " + std::to_string(n) + " exceeds 1");
    }
    return n;
}

double lost_norm(double norm, AccountingMode mode) {
    return mode == AccountingMode::trace_repaired ? std::max(0.0, 1.0 - norm) : 0.0;
}

}  // namespace

std::string_view to_string(AccountingMode mode) {
    return mode == AccountingMode::paper ? "paper" : "repaired";
}

AccountingMode parse_accounting_mode(std::string_view text) {
    if (text == "paper") {
        return AccountingMode::paper;
    }
    if (text == "repaired" || text == "trace_repaired") {
        return AccountingMode::trace_repaired;
    }
    throw InvalidInput("unknown accounting mode '" + std::string(text) + "'");
}

bool DensityMatrix::is_hermitian(double tol) const {
    return entries.rows() == entries.cols() &&
           (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix battery_density(const AmplitudeState& a, AccountingMode mode) {
    const double norm = checked_norm(a);
    const auto& c = a.c;
    const double ground = std::norm(c(0)) + std::norm(c(1)) + std::norm(c(2));
    // C5 = C4, so C4 C5* = |C4|^2 on both coherences.
    const double excited = std::norm(c(3));

    DensityMatrix rho{Eigen::MatrixXcd::Zero(4, 4), {"gg", "eg", "ge", "ee"}};
    rho.entries(0, 0) = ground + lost_norm(norm, mode);
    rho.entries(1, 1) = excited;
    rho.entries(2, 2) = excited;
    rho.entries(1, 2) = excited;
    rho.entries(2, 1) = excited;
    return rho;
}

DensityMatrix charger_density(const AmplitudeState& a, AccountingMode mode) {
    const double norm = checked_norm(a);
    const auto& c = a.c;

    DensityMatrix rho{Eigen::MatrixXcd::Zero(4, 4), {"100", "010", "001", "000"}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            rho.entries(i, j) = c(i) * std::conj(c(j));
        }
        rho.entries(i, i) = std::norm(c(i));
    }
    rho.entries(3, 3) = 2.0 * std::norm(c(3)) + lost_norm(norm, mode);
    return rho;
}

}  // namespace magnobattery
