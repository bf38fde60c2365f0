#pragma once

#include <optional>
#include <vector>

namespace nongibbs::meanfield {

// Curie-Weiss decimation parameters: a model of N spins is projected to a
// subset of density 1 - p; conditional probabilities of one retained spin
// are studied as a function of the conditioned empirical magnetization
// alpha. Weight convention: exp((beta/2N)(sum sigma)^2 + beta h sum sigma).
struct CwParams {
    double beta = 1.0;
    double h = 0.0;
    double p = 0.75;    // fraction decimated away
    double alpha = 0.0; // empirical magnetization of the conditioning
};

struct CwSolution {
    double m = 0.0;            // global free-energy minimizer
    bool two_branches = false; // symmetric pair at h = 0, beta_eff > 1
    double m_plus = 0.0;
    double m_minus = 0.0;
};

// Global minimizer of f(m) = -beta m^2/2 - h m + s(m), s the binary
// entropy term, equivalently the stable solution of
// m = tanh(beta_eff m + h_eff). All fixed points are located by a dense
// scan plus bisection, then compared through f.
CwSolution cw_magnetization(double beta_eff, double h_eff);

// min_m [ -m^2/2 - h m + s(m)/beta ]: the convex-envelope value of the CW
// free energy in physical units; the Lebowitz-Penrose comparison target.
double cw_free_energy_envelope(double beta, double h);

enum class Branch { plus, minus, automatic };

// Constrained fixed point chosen for the conditional, with ties reported
// (an exact tie occurs at the crossing point, h = 0, alpha = 0).
struct BranchSelection {
    double m = 0.0;
    bool tie = false;
};

BranchSelection cw_select_branch(const CwParams& params, Branch branch);

// lim_N P(retained spin = +1 | conditioned empirical magnetization alpha)
// = e^x / (2 cosh x), x = beta (p m*(alpha) + (1-p) alpha + h), where
// m*(alpha) solves m = tanh(p beta m + (1-p) beta alpha + beta h) on the
// selected branch. `automatic` picks the branch maximizing the conditional
// large-deviation functional.
double cw_decimated_conditional(const CwParams& params, Branch branch = Branch::automatic);

struct JumpPoint {
    double beta = 0.0;
    double jump = 0.0;
};

struct JumpScan {
    std::vector<JumpPoint> points;
    std::optional<double> threshold; // first grid beta with jump > 1e-6
};

// jump(beta) = |conditional(alpha -> 0+) - conditional(alpha -> 0-)| via
// one-sided evaluations at alpha = +-1e-8. Nonzero exactly when p beta > 1.
JumpScan cw_jump_scan(const std::vector<double>& betas, double p, double h = 0.0);

// Exact finite-N conditional probability by summing over magnetization
// sectors of the unobserved spins with log-binomial weights; the
// anti-hallucination oracle for every mean-field limit here. Conditioned
// count (1-p)N and plus-count (1-p)N(1+alpha)/2 must be integral.
double cw_finite_n_oracle(int n_total, const CwParams& params);

} // namespace nongibbs::meanfield
