#pragma once

#include <cstdint>
#include <vector>

#include "nongibbs/spin_model.hpp"

namespace nongibbs::exact {

// Transfer matrix for a translation-invariant 1D chain of interaction
// range R (in sites). States are windows of R spins; appending a spin
// costs exp(beta * (sum_r J(r) s_new s_{-r} + h s_new)). All entries are
// positive for finite beta, so the leading eigenvalue is simple
// (Perron-Frobenius) and power iteration applies.
struct TransferMatrix {
    int range = 1;
    std::size_t dim = 2; // 2^range
    double beta = 1.0;
    std::vector<double> append_weight; // [u * 2 + b], b = new spin bit

    // y[v] = sum over transitions u -> v of weight * x[u]
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

inline constexpr int max_transfer_range = 14;

TransferMatrix build_transfer_matrix(const SpinModel& model);

struct LeadingEigenvalue {
    double value = 0.0;
    int iterations = 0;
};

// Power iteration with Collatz-Wielandt bounds; converged when the bound
// width is below tol relative to the eigenvalue.
LeadingEigenvalue leading_eigenvalue(const TransferMatrix& tm, double tol = 1e-12,
                                     int max_iter = 2'000'000);

// Free energy per site f = -(1/beta) log lambda_max.
double transfer_matrix_free_energy(const SpinModel& model, double tol = 1e-12);

// log Tr T^L, the exact ring log-partition function; for cross-checks
// against direct enumeration.
double transfer_matrix_log_trace(const TransferMatrix& tm, int length);

} // namespace nongibbs::exact
