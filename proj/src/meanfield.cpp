#include "nongibbs/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nongibbs::meanfield {

namespace {

// s(m) = (1+m)/2 log((1+m)/2) + (1-m)/2 log((1-m)/2), continuous at +-1
double entropy_term(double m) {
    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    return xlogx(0.5 * (1.0 + m)) + xlogx(0.5 * (1.0 - m));
}

// all roots of m = tanh(c1 m + c0) on [-1, 1], ascending; dense scan for
// sign changes of psi(m) = m - tanh(...) followed by bisection
std::vector<double> fixed_points(double c1, double c0) {
    auto psi = [&](double m) { return m - std::tanh(c1 * m + c0); };
    constexpr int grid = 4000;
    std::vector<double> roots;
    double prev_m = -1.0, prev_v = psi(-1.0);
    for (int k = 1; k <= grid; ++k) {
        const double m = -1.0 + 2.0 * k / grid;
        const double v = psi(m);
        if (prev_v == 0.0) roots.push_back(prev_m);
        if (prev_v * v < 0.0) {
            double lo = prev_m, hi = m, flo = prev_v;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = psi(mid);
                if (fmid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((flo < 0.0) == (fmid < 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_m = m;
        prev_v = v;
    }
    if (prev_v == 0.0) roots.push_back(prev_m);
    // collapse duplicates from tangential crossings
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-10; }),
                roots.end());
    return roots;
}

bool is_stable(double m, double c1, double c0) {
    const double th = std::tanh(c1 * m + c0);
    return c1 * (1.0 - th * th) <= 1.0 + 1e-12;
}

} // namespace

CwSolution cw_magnetization(double beta_eff, double h_eff) {
    if (beta_eff <= 0.0) throw std::invalid_argument("cw_magnetization needs beta_eff > 0");
    auto f = [&](double m) { return -0.5 * beta_eff * m * m - h_eff * m + entropy_term(m); };
    const auto roots = fixed_points(beta_eff, h_eff);

    CwSolution out;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> stable;
    for (double r : roots) {
        if (!is_stable(r, beta_eff, h_eff)) continue;
        stable.push_back(r);
        if (f(r) < best) {
            best = f(r);
            out.m = r;
        }
    }
    if (stable.empty()) { // should not happen; the extreme roots are stable
        out.m = roots.front();
        return out;
    }
    if (h_eff == 0.0 && beta_eff > 1.0 && stable.size() >= 2) {
        out.two_branches = true;
        out.m_minus = stable.front();
        out.m_plus = stable.back();
        out.m = out.m_plus; // symmetric pair: report the positive branch
    }
    return out;
}

double cw_free_energy_envelope(double beta, double h) {
    if (beta <= 0.0) throw std::invalid_argument("cw_free_energy_envelope needs beta > 0");
    auto f = [&](double m) { return -0.5 * m * m - h * m + entropy_term(m) / beta; };
    double best = std::numeric_limits<double>::infinity();
    for (double r : fixed_points(beta, beta * h)) best = std::min(best, f(r));
    return best;
}

namespace {

// large-deviation functional of the decimated-spin saddle, to be maximized
double branch_value(double m_d, const CwParams& q) {
    const double u = q.p * m_d + (1.0 - q.p) * q.alpha;
    return 0.5 * q.beta * u * u + q.beta * q.h * u - q.p * entropy_term(m_d);
}

} // namespace

BranchSelection cw_select_branch(const CwParams& q, Branch branch) {
    const double c1 = q.p * q.beta;
    const double c0 = (1.0 - q.p) * q.beta * q.alpha + q.beta * q.h;
    const auto roots = fixed_points(c1, c0);
    std::vector<double> stable;
    for (double r : roots)
        if (is_stable(r, c1, c0)) stable.push_back(r);
    if (stable.empty()) stable = roots;

    switch (branch) {
        case Branch::plus: {
            const double r = stable.back();
            if (r < 0.0)
                throw std::invalid_argument("plus branch does not exist at these parameters");
            return {r, false};
        }
        case Branch::minus: {
            const double r = stable.front();
            if (r > 0.0)
                throw std::invalid_argument("minus branch does not exist at these parameters");
            return {r, false};
        }
        case Branch::automatic:
        default: {
            const double tol = 1e-14;
            double best_m = stable.front();
            double best_g = branch_value(best_m, q);
            bool tie = false;
            for (std::size_t k = 1; k < stable.size(); ++k) {
                const double g = branch_value(stable[k], q);
                const double scale = std::max(1.0, std::abs(best_g));
                if (g > best_g + tol * scale) {
                    best_g = g;
                    best_m = stable[k];
                    tie = false;
                } else if (std::abs(g - best_g) <= tol * scale &&
                           std::abs(stable[k] - best_m) > 1e-10) {
                    tie = true;
                }
            }
            return {best_m, tie};
        }
    }
}

double cw_decimated_conditional(const CwParams& params, Branch branch) {
    if (params.beta <= 0.0) throw std::invalid_argument("beta must be positive");
    if (params.p <= 0.0 || params.p >= 1.0)
        throw std::invalid_argument("decimated fraction p must lie in (0,1)");
    if (params.alpha < -1.0 || params.alpha > 1.0)
        throw std::invalid_argument("alpha must lie in [-1,1]");
    const double m_d = cw_select_branch(params, branch).m;
    const double x = params.beta * (params.p * m_d + (1.0 - params.p) * params.alpha + params.h);
    // e^x / (2 cosh x), evaluated stably
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-2.0 * x));
    const double e = std::exp(2.0 * x);
    return e / (1.0 + e);
}

JumpScan cw_jump_scan(const std::vector<double>& betas, double p, double h) {
    if (!std::is_sorted(betas.begin(), betas.end()))
        throw std::invalid_argument("beta grid must be sorted");
    JumpScan out;
    for (double beta : betas) {
        CwParams plus{beta, h, p, +1e-8};
        CwParams minus{beta, h, p, -1e-8};
        const double jump = std::abs(cw_decimated_conditional(plus, Branch::automatic) -
                                     cw_decimated_conditional(minus, Branch::automatic));
        out.points.push_back({beta, jump});
        if (!out.threshold && jump > 1e-6) out.threshold = beta;
    }
    return out;
}

double cw_finite_n_oracle(int n_total, const CwParams& params) {
    if (n_total < 2 || n_total > 10'000)
        throw std::invalid_argument("oracle size must lie in [2, 10^4]");
    const double c_real = (1.0 - params.p) * n_total;
    const int conditioned = static_cast<int>(std::lround(c_real));
    if (std::abs(c_real - conditioned) > 1e-9)
        throw std::invalid_argument("(1-p) N must be integral for the finite-N oracle");
    const double k_real = conditioned * (1.0 + params.alpha) / 2.0;
    const int k_plus = static_cast<int>(std::lround(k_real));
    if (std::abs(k_real - k_plus) > 1e-9)
        throw std::invalid_argument("conditioned plus-count (1-p)N(1+alpha)/2 must be integral");
    if (k_plus < 0 || k_plus > conditioned)
        throw std::invalid_argument("alpha outside [-1,1] for this N");
    const int unobserved = n_total - conditioned - 1;
    if (unobserved < 0) throw std::invalid_argument("no spins left unobserved");

    const double cond_sum = 2.0 * k_plus - conditioned;
    // log weights of the queried spin s0 with the unobserved sector at
    // magnetization 2k - D; binomial multiplicities via lgamma
    auto log_weight = [&](int s0, int k) {
        const double t = s0 + cond_sum + (2.0 * k - unobserved);
        const double energy = 0.5 * params.beta / n_total * t * t + params.beta * params.h * t;
        const double log_binom = std::lgamma(unobserved + 1.0) - std::lgamma(k + 1.0) -
                                 std::lgamma(unobserved - k + 1.0);
        return log_binom + energy;
    };

    double max_lw = -std::numeric_limits<double>::infinity();
    for (int s0 : {1, -1})
        for (int k = 0; k <= unobserved; ++k) max_lw = std::max(max_lw, log_weight(s0, k));
    double w_plus = 0.0, w_minus = 0.0;
    for (int k = 0; k <= unobserved; ++k) {
        w_plus += std::exp(log_weight(1, k) - max_lw);
        w_minus += std::exp(log_weight(-1, k) - max_lw);
    }
    return w_plus / (w_plus + w_minus);
}

} // namespace nongibbs::meanfield
