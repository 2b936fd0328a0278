#include "spinestim/montecarlo.hpp"

#include <cmath>
#include <numeric>

namespace spinestim {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double sample_mean(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

double sample_variance(const std::vector<double>& xs) {
    double m = sample_mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / (xs.size() - 1);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    // decorrelate the (seed, stream) pair before use
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    x = stream ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t b = splitmix64(x);
    state_ = a ^ (b * 0x2545f4914f6cdd1dULL);
}

std::uint64_t RngStream::next() { return splitmix64(state_); }

double RngStream::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<double> sample_projective(const StateVector& state,
                                      const Operator& op, int n,
                                      RngStream& rng) {
    if (!op.hermitian)
        throw std::invalid_argument("sample_projective: observable must be Hermitian");
    if (op.dim() != state.dim())
        throw DimensionMismatch("sample_projective: dimension mismatch");
    if (n < 1) throw std::invalid_argument("sample_projective: n >= 1 required");

    Eigen::SelfAdjointEigenSolver<Matrix> es(op.mat);
    const int d = op.dim();
    std::vector<double> probs(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        Complex ov = es.eigenvectors().col(k).dot(state.amp);
        probs[static_cast<std::size_t>(k)] = std::norm(ov);
    }
    // cumulative distribution; roundoff absorbed in the last bin
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    cdf.back() = 1.0;

    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        auto k = static_cast<int>(it - cdf.begin());
        out[static_cast<std::size_t>(i)] = es.eigenvalues()(k);
    }
    return out;
}

namespace {

struct ShotPlan {
    int m_x;
    int m_y;
};

ShotPlan shot_plan(const ExperimentConfig& config) {
    if (config.m_total < 2)
        throw std::invalid_argument("m_total must be >= 2");
    if (config.split <= 0.0 || config.split >= 1.0)
        throw std::invalid_argument("split must be in (0, 1)");
    int m_x = static_cast<int>(std::lround(config.m_total * config.split));
    return ShotPlan{m_x, config.m_total - m_x};
}

}  // namespace

ExperimentResult estimate_sequential_spin(const ExperimentConfig& config) {
    const StateVector& probe = config.probe;
    probe.check_norm(1e-10);
    if (config.repetitions < 2)
        throw std::invalid_argument("repetitions must be >= 2");
    SpinOps ops = probe_ops(probe);
    double jz0 = expectation_real(probe, ops.z);
    if (std::abs(jz0) < 1e-10)
        throw DivergentSensitivityError(
            "probe has <Jz> ~ 0, moment estimator diverges");

    ShotPlan plan = shot_plan(config);
    StateVector evolved = evolve(probe, config.phi_true);

    std::vector<double> est_x, est_y;
    est_x.reserve(static_cast<std::size_t>(config.repetitions));
    est_y.reserve(static_cast<std::size_t>(config.repetitions));
    for (int r = 0; r < config.repetitions; ++r) {
        RngStream sx(config.seed, 2 * static_cast<std::uint64_t>(r));
        RngStream sy(config.seed, 2 * static_cast<std::uint64_t>(r) + 1);
        auto y_shots = sample_projective(evolved, ops.y, plan.m_x, sx);
        auto x_shots = sample_projective(evolved, ops.x, plan.m_y, sy);
        est_x.push_back(sample_mean(y_shots) / jz0);
        est_y.push_back(-sample_mean(x_shots) / jz0);
    }

    QfiMatrix h = qfi_matrix_analytic(probe, config.phi_true);
    double var_jy = variance(evolved, ops.y);
    double var_jx = variance(evolved, ops.x);
    bool warn = config.phi_true.norm() > 0.1;
    return ExperimentResult{
        {sample_mean(est_x), sample_mean(est_y)},
        {sample_variance(est_x), sample_variance(est_y)},
        {1.0 / (plan.m_x * h.h(0, 0)), 1.0 / (plan.m_y * h.h(1, 1))},
        {var_jy / (jz0 * jz0 * plan.m_x), var_jx / (jz0 * jz0 * plan.m_y)},
        config.repetitions,
        warn};
}

ExperimentResult estimate_sequential_ghz(const ExperimentConfig& config) {
    const StateVector& probe = config.probe;
    probe.check_norm(1e-10);
    if (config.repetitions < 2)
        throw std::invalid_argument("repetitions must be >= 2");
    if (probe.space.ancilla_dim != 0)
        throw std::invalid_argument("GHZ estimator expects a plain spin probe");
    SpinQuantum j = config.j;
    if (probe.dim() != j.dim())
        throw DimensionMismatch("probe dimension does not match j");

    // Parity observable in the span of the extremal eigenstates along `axis`.
    auto run_axis = [&](const StateVector& axis_probe, Axis axis,
                        double phi_along, int shots, std::uint64_t stream_base,
                        std::vector<double>& estimates, double& slope_out,
                        double& var_out) {
        auto basis = eigenbasis(j, axis);
        const Vector& top = basis.front();
        const Vector& bot = basis.back();
        // probe must live in span{top, bot} with equal weights
        Complex a = top.dot(axis_probe.amp);
        Complex b = bot.dot(axis_probe.amp);
        if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-8 ||
            std::abs(std::norm(a) - 0.5) > 1e-8)
            throw std::invalid_argument(
                "GHZ estimator needs a sequential_optimal probe along " +
                axis_name(axis));
        Matrix sigma_m = top * bot.adjoint();
        Operator sigma{sigma_m + sigma_m.adjoint().eval(), true};

        // exact linear response of the mean outcome at phi = 0
        SpinOps ops = make_spin_ops(j);
        const Matrix& gen = axis == Axis::X ? ops.x.mat : ops.y.mat;
        Matrix comm = gen * sigma.mat - sigma.mat * gen;
        StateVector plain{CompositeSpace{j.dim(), 0}, axis_probe.amp};
        double mean0 = expectation_real(plain, sigma);
        double slope =
            (Complex(0, -1) * axis_probe.amp.dot(comm * axis_probe.amp)).real();
        if (std::abs(slope) < 1e-10)
            throw DivergentSensitivityError(
                "parity-observable response is flat at phi=0; use xi = pi/2");

        PhasePair phi = axis == Axis::X ? PhasePair{phi_along, 0.0}
                                        : PhasePair{0.0, phi_along};
        StateVector evolved = evolve(plain, phi);
        for (int r = 0; r < config.repetitions; ++r) {
            RngStream rng(config.seed,
                          stream_base + 2 * static_cast<std::uint64_t>(r));
            auto outcomes = sample_projective(evolved, sigma, shots, rng);
            estimates.push_back((sample_mean(outcomes) - mean0) / slope);
        }
        slope_out = slope;
        var_out = variance(evolved, sigma);
    };

    ShotPlan plan = shot_plan(config);
    std::vector<double> est_x, est_y;
    double slope_x = 0, slope_y = 0, var_sx = 0, var_sy = 0;
    run_axis(probe, Axis::X, config.phi_true.phi_x, plan.m_x, 0, est_x,
             slope_x, var_sx);
    // the phi_y ensemble uses the matching GHZ probe along y
    StateVector probe_y =
        sequential_optimal(j, Axis::Y, M_PI / 2);
    run_axis(probe_y, Axis::Y, config.phi_true.phi_y, plan.m_y, 1, est_y,
             slope_y, var_sy);

    double h_xx = qfi_matrix_analytic(probe, config.phi_true).h(0, 0);
    double h_yy = qfi_matrix_analytic(probe_y, config.phi_true).h(1, 1);
    bool warn = config.phi_true.norm() > 0.1;
    return ExperimentResult{
        {sample_mean(est_x), sample_mean(est_y)},
        {sample_variance(est_x), sample_variance(est_y)},
        {1.0 / (plan.m_x * h_xx), 1.0 / (plan.m_y * h_yy)},
        {var_sx / (slope_x * slope_x * plan.m_x),
         var_sy / (slope_y * slope_y * plan.m_y)},
        config.repetitions,
        warn};
}

}  // namespace spinestim
