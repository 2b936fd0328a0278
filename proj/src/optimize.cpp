#include "spinestim/optimize.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <random>
#include <thread>

namespace spinestim {

namespace {

constexpr double kSingularPenalty = 1e6;
constexpr double kGradStep = 1e-6;

int thread_count() {
    if (const char* env = std::getenv("SPINESTIM_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

using RealVec = Eigen::VectorXd;

Vector to_complex(const RealVec& theta) {
    const int n = static_cast<int>(theta.size()) / 2;
    Vector v(n);
    for (int k = 0; k < n; ++k) v(k) = Complex(theta(2 * k), theta(2 * k + 1));
    return v;
}

// Objective over unit-sphere parameters. `blocks` lists the index ranges to
// normalize independently (one block for a plain state, two for the product
// manifold).
struct SphereProblem {
    std::function<double(const RealVec&)> f;
    std::vector<std::pair<int, int>> blocks;  // (offset, length) in reals

    void renormalize(RealVec& theta) const {
        for (auto [off, len] : blocks) {
            double n = theta.segment(off, len).norm();
            if (n < 1e-14) {
                theta(off) = 1.0;
                n = 1.0;
            }
            theta.segment(off, len) /= n;
        }
    }
};

struct RestartResult {
    double value;
    RealVec theta;
    bool converged;
};

RestartResult run_restart(const SphereProblem& prob, int n_params,
                          std::uint64_t seed, int max_iters, double tol) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealVec theta(n_params);
    for (int k = 0; k < n_params; ++k) theta(k) = gauss(gen);
    prob.renormalize(theta);

    double fval = prob.f(theta);
    double step = 0.5;
    bool converged = false;

    for (int it = 0; it < max_iters; ++it) {
        // central-difference gradient
        RealVec grad(n_params);
        for (int k = 0; k < n_params; ++k) {
            RealVec tp = theta, tm = theta;
            tp(k) += kGradStep;
            tm(k) -= kGradStep;
            prob.renormalize(tp);
            prob.renormalize(tm);
            grad(k) = (prob.f(tp) - prob.f(tm)) / (2.0 * kGradStep);
        }
        double gnorm = grad.norm();
        if (gnorm < 1e-12) {
            converged = true;
            break;
        }

        // step-halving line search along -grad, renormalizing each trial
        bool accepted = false;
        double trial_step = step;
        for (int halvings = 0; halvings < 40; ++halvings) {
            RealVec cand = theta - (trial_step / gnorm) * grad;
            prob.renormalize(cand);
            double fcand = prob.f(cand);
            if (fcand < fval) {
                double drop = fval - fcand;
                theta = cand;
                fval = fcand;
                step = trial_step * 2.0;  // let the next step grow again
                accepted = true;
                if (drop < tol) converged = true;
                break;
            }
            trial_step *= 0.5;
        }
        if (!accepted || converged) {
            converged = converged || !accepted;
            break;
        }
    }
    return RestartResult{fval, theta, converged};
}

OptimizeResult run_all(const SphereProblem& prob, int n_params,
                       const OptimizeConfig& config,
                       const std::function<StateVector(const RealVec&)>& to_state,
                       double sign) {
    if (config.restarts < 1)
        throw std::invalid_argument("restarts must be >= 1");
    if (config.tol <= 0) throw std::invalid_argument("tol must be > 0");

    std::vector<RestartResult> results(
        static_cast<std::size_t>(config.restarts));
    const int workers = std::min(thread_count(), config.restarts);
    std::atomic<int> cursor{0};
    auto worker = [&] {
        for (;;) {
            int r = cursor.fetch_add(1);
            if (r >= config.restarts) return;
            results[static_cast<std::size_t>(r)] =
                run_restart(prob, n_params, mix_seed(config.seed, r),
                            config.max_iters, config.tol);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers - 1; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int best = 0;
    for (int r = 1; r < config.restarts; ++r)
        if (results[static_cast<std::size_t>(r)].value <
            results[static_cast<std::size_t>(best)].value)
            best = r;

    std::vector<double> trace;
    trace.reserve(results.size());
    for (const auto& r : results) trace.push_back(sign * r.value);

    const auto& b = results[static_cast<std::size_t>(best)];
    return OptimizeResult{sign * b.value, to_state(b.theta), trace,
                          b.converged};
}

}  // namespace

double two_mode_margin(const StateVector& state, SpinQuantum j) {
    TwoModeOps ops = two_mode_ops(j, j);
    StateVector s{CompositeSpace{state.dim(), 0}, state.amp};
    return std::abs(expectation_real(s, ops.z_plus)) -
           variance(s, ops.x_minus) - variance(s, ops.y_plus);
}

OptimizeResult minimize_trace_inverse(const OptimizeConfig& config) {
    if (config.ancilla_dim != 0 && config.ancilla_dim != 2)
        throw std::invalid_argument("ancilla_dim must be 0 or 2");
    CompositeSpace space{config.j.dim(), config.ancilla_dim};
    const int n_params = 2 * space.total_dim();

    SpinOps base = make_spin_ops(config.j);
    Operator jx = embed(base.x, space);
    Operator jy = embed(base.y, space);

    auto objective = [space, jx, jy](const RealVec& theta) {
        StateVector s{space, to_complex(theta)};
        double vxx = sym_covariance(s, jx, jx);
        double vyy = sym_covariance(s, jy, jy);
        double vxy = sym_covariance(s, jx, jy);
        double det = vxx * vyy - vxy * vxy;
        if (det <= 1e-12 / 16.0) return kSingularPenalty;
        return (vxx + vyy) / (4.0 * det);  // tr[(H0)^-1]
    };

    SphereProblem prob{objective, {{0, n_params}}};
    auto to_state = [space](const RealVec& theta) {
        return StateVector{space, to_complex(theta)};
    };
    return run_all(prob, n_params, config, to_state, 1.0);
}

OptimizeResult maximize_variance(const OptimizeConfig& config) {
    if (config.ancilla_dim != 0)
        throw std::invalid_argument("maximize_variance: no ancilla supported");
    CompositeSpace space{config.j.dim(), 0};
    const int n_params = 2 * space.total_dim();
    SpinOps base = make_spin_ops(config.j);
    Operator jx = base.x;

    auto objective = [space, jx](const RealVec& theta) {
        StateVector s{space, to_complex(theta)};
        return -sym_covariance(s, jx, jx);
    };
    SphereProblem prob{objective, {{0, n_params}}};
    auto to_state = [space](const RealVec& theta) {
        return StateVector{space, to_complex(theta)};
    };
    return run_all(prob, n_params, config, to_state, -1.0);
}

OptimizeResult maximize_two_mode_margin(const OptimizeConfig& config) {
    const int d = config.j.dim();
    CompositeSpace space{d * d, 0};
    TwoModeOps ops = two_mode_ops(config.j, config.j);

    auto margin_of = [space, ops](const Vector& amp) {
        StateVector s{space, amp};
        return std::abs(expectation_real(s, ops.z_plus)) -
               variance(s, ops.x_minus) - variance(s, ops.y_plus);
    };

    if (config.product_manifold) {
        const int n_params = 4 * d;  // two independent spheres
        auto objective = [d, margin_of](const RealVec& theta) {
            Vector a = to_complex(theta.head(2 * d));
            Vector b = to_complex(theta.tail(2 * d));
            Vector amp(d * d);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) amp(i * d + k) = a(i) * b(k);
            return -margin_of(amp);
        };
        SphereProblem prob{objective, {{0, 2 * d}, {2 * d, 2 * d}}};
        auto to_state = [d, space](const RealVec& theta) {
            Vector a = to_complex(theta.head(2 * d));
            Vector b = to_complex(theta.tail(2 * d));
            Vector amp(d * d);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) amp(i * d + k) = a(i) * b(k);
            return StateVector{space, std::move(amp)};
        };
        return run_all(prob, n_params, config, to_state, -1.0);
    }

    const int n_params = 2 * d * d;
    auto objective = [margin_of](const RealVec& theta) {
        return -margin_of(to_complex(theta));
    };
    SphereProblem prob{objective, {{0, n_params}}};
    auto to_state = [space](const RealVec& theta) {
        return StateVector{space, to_complex(theta)};
    };
    return run_all(prob, n_params, config, to_state, -1.0);
}

}  // namespace spinestim
