// states.hpp — reduced density matrices of the battery (two atoms) and the
// charger (cavity, magnon, phonon) built from single-excitation amplitudes.

#pragma once

#include "magnobattery/propagator.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace magnobattery {

// How norm lost to dissipation is booked.
//   paper:          reduced matrices straight from the amplitudes (trace = N(t) <= 1)
//   trace_repaired: lost norm is added to the joint ground state (trace = 1)
enum class AccountingMode { paper, trace_repaired };

std::string_view to_string(AccountingMode mode);
// Accepts "paper", "repaired" and "trace_repaired". Throws InvalidInput otherwise.
AccountingMode parse_accounting_mode(std::string_view text);

struct DensityMatrix {
    Eigen::MatrixXcd entries;
    std::vector<std::string> basis_labels;

    Eigen::Index dim() const { return entries.rows(); }
    std::complex<double> trace() const { return entries.trace(); }
    bool is_hermitian(double tol) const;
};

// Basis (|gg>, |eg>, |ge>, |ee>).
DensityMatrix battery_density(const AmplitudeState& a, AccountingMode mode);

// Basis (|100>, |010>, |001>, |000>) of (cavity, magnon, phonon) occupations.
DensityMatrix charger_density(const AmplitudeState& a, AccountingMode mode);

}  // namespace magnobattery
