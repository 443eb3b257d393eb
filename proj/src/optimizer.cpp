#include "tivqe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "tivqe/circuit.hpp"
#include "tivqe/simulator.hpp"

namespace tivqe {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Driver {
    const CostFunction& cost;
    const NelderMeadOptions& opt;
    const AnnealSchedule* schedule;  // null for the plain variant
    uint64_t seed;

    OptimizerTrace trace;
    uint64_t evals = 0;
    uint64_t draws = 0;
    bool sampling = false;
    std::deque<double> accepted_window;

    std::vector<std::vector<double>> vertices;
    std::vector<double> values;   // unperturbed estimates per vertex
    std::vector<double> jitters;  // per-vertex noise, redrawn every pass

    Driver(const CostFunction& c, const NelderMeadOptions& o,
           const AnnealSchedule* s, uint64_t sd)
        : cost(c), opt(o), schedule(s), seed(sd) {}

    double draw() {
        if (!schedule) return 0.0;
        return Rng(seed ^ kAnnealStream, draws++)
            .uniform(schedule->lo, schedule->hi);
    }

    // returns {estimate, comparison value, trace entry index}; fresh points
    // compete with their draw subtracted while stored vertices carry theirs
    // added, so at noise scales above the local relief the simplex keeps
    // accepting moves instead of freezing onto one lucky vertex
    std::tuple<double, double, size_t> evaluate(
        const std::vector<double>& theta) {
        const CostSample s = cost(theta, evals);
        const double u = draw();
        ++evals;
        trace.entries.push_back({theta, s.value, s.std, u, false, sampling});
        return {s.value, s.value - u, trace.entries.size() - 1};
    }

    void accept(size_t entry_index, double used_value) {
        trace.entries[entry_index].accepted = true;
        accepted_window.push_back(used_value);
        if (schedule &&
            accepted_window.size() > size_t(std::max(1, schedule->window)))
            accepted_window.pop_front();
    }

    size_t best_vertex() const {
        size_t best = 0;
        for (size_t i = 1; i < values.size(); ++i)
            if (values[i] < values[best]) best = i;
        return best;
    }

    double simplex_size() const {
        const size_t best = best_vertex();
        double size = 0;
        for (size_t i = 0; i < vertices.size(); ++i)
            for (size_t d = 0; d < vertices[i].size(); ++d)
                size = std::max(size,
                                std::abs(vertices[i][d] - vertices[best][d]));
        return size;
    }

    bool window_settled() const {
        if (!schedule) return false;
        const size_t w = size_t(std::max(1, schedule->window));
        if (accepted_window.size() < w) return false;
        double mean = 0;
        for (double v : accepted_window) mean += v / double(w);
        double var = 0;
        for (double v : accepted_window)
            var += (v - mean) * (v - mean) / double(w);
        return std::sqrt(var) <= schedule->mean();
    }

    // one reflection/expansion/contraction/shrink pass; the simplex ranks
    // by estimate plus noise, with every vertex's noise redrawn per pass so
    // no vertex keeps a lucky draw
    void iterate() {
        const size_t n = vertices[0].size();
        for (size_t i = 0; i < jitters.size(); ++i) jitters[i] = draw();
        auto ranked = [&](size_t i) { return values[i] + jitters[i]; };

        std::vector<size_t> order(vertices.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return ranked(a) < ranked(b);
        });
        const size_t worst = order.back();
        const size_t second = order[order.size() - 2];
        const size_t best = order.front();

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i + 1 < order.size(); ++i)
            for (size_t d = 0; d < n; ++d)
                centroid[d] += vertices[order[i]][d] / double(n);

        auto along = [&](double t) {
            std::vector<double> x(n);
            for (size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + t * (centroid[d] - vertices[worst][d]);
            return x;
        };
        auto replace_worst = [&](const std::vector<double>& x, double value,
                                 double compare, size_t entry) {
            vertices[worst] = x;
            values[worst] = value;
            jitters[worst] = compare - value;
            accept(entry, compare);
        };

        const std::vector<double> xr = along(opt.reflection);
        const auto [vr, fr, er] = evaluate(xr);
        if (fr < ranked(best)) {
            const std::vector<double> xe = along(opt.expansion);
            const auto [ve, fe, ee] = evaluate(xe);
            if (fe < fr)
                replace_worst(xe, ve, fe, ee);
            else
                replace_worst(xr, vr, fr, er);
            return;
        }
        if (fr < ranked(second)) {
            replace_worst(xr, vr, fr, er);
            return;
        }
        if (fr < ranked(worst)) {
            const std::vector<double> xc = along(opt.contraction);
            const auto [vc, fc, ec] = evaluate(xc);
            if (fc <= fr) {
                replace_worst(xc, vc, fc, ec);
                return;
            }
        } else {
            const std::vector<double> xc = along(-opt.contraction);
            const auto [vc, fc, ec] = evaluate(xc);
            if (fc < ranked(worst)) {
                replace_worst(xc, vc, fc, ec);
                return;
            }
        }
        for (size_t i : order)
            if (i != best) {
                for (size_t d = 0; d < n; ++d)
                    vertices[i][d] = vertices[best][d] +
                                     opt.shrink *
                                         (vertices[i][d] - vertices[best][d]);
                const auto [vs, fs, es] = evaluate(vertices[i]);
                values[i] = vs;
                jitters[i] = fs - vs;
                accept(es, fs);
            }
    }

    void finish(const std::string& reason) {
        const size_t best = best_vertex();
        trace.terminal_reason = reason;
        trace.terminal_theta = vertices[best];
        trace.terminal_energy = values[best];
    }

    OptimizerTrace run(const std::vector<double>& theta0) {
        if (theta0.empty())
            throw std::invalid_argument("need at least one parameter");
        const size_t n = theta0.size();
        vertices.assign(n + 1, theta0);
        for (size_t i = 0; i < n; ++i)
            vertices[i + 1][i] += opt.initial_edge;
        values.resize(n + 1);
        jitters.assign(n + 1, 0.0);
        for (size_t i = 0; i <= n; ++i) {
            const auto [v, f, e] = evaluate(vertices[i]);
            values[i] = v;
            jitters[i] = f - v;
            accept(e, f);
        }

        int extra_left = -1;  // -1: converging, >= 0: sampling countdown
        while (true) {
            if (evals >= opt.max_evaluations) {
                finish("max_evaluations");
                return trace;
            }
            if (extra_left < 0) {
                const bool collapsed =
                    simplex_size() <= opt.simplex_tolerance;
                if (!schedule && collapsed) {
                    finish("simplex_tolerance");
                    return trace;
                }
                if (schedule && (collapsed || window_settled())) {
                    extra_left = std::max(0, schedule->extra_iterations);
                    sampling = true;
                }
            }
            if (extra_left == 0) {
                finish("sampling_complete");
                return trace;
            }
            iterate();
            if (extra_left > 0) --extra_left;
        }
    }
};

}  // namespace

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

OptimizerTrace nelder_mead(const CostFunction& cost,
                           const std::vector<double>& theta0,
                           const NelderMeadOptions& options) {
    Driver d(cost, options, nullptr, 0);
    return d.run(theta0);
}

OptimizerTrace annealed_nelder_mead(const CostFunction& cost,
                                    const std::vector<double>& theta0,
                                    const AnnealSchedule& schedule,
                                    uint64_t seed,
                                    const NelderMeadOptions& options) {
    if (!(schedule.lo >= 0.0) || !(schedule.hi >= schedule.lo))
        throw std::invalid_argument("schedule bounds must satisfy 0 <= lo <= hi");
    if (schedule.extra_iterations < 10 || schedule.extra_iterations > 20)
        throw std::invalid_argument("extra iterations must lie in [10, 20]");
    Driver d(cost, options, &schedule, seed);
    return d.run(theta0);
}

OptimizerTrace vqe_run(const VqeProblem& problem,
                       const OptimizerChoice& choice) {
    const int n = problem.ansatz.n_qubits;
    if (problem.hamiltonian.size() > 0) {
        int hmax = -1;
        for (const auto& [s, c] : problem.hamiltonian)
            hmax = std::max(hmax, s.max_qubit());
        if (hmax >= n)
            throw std::invalid_argument(
                "hamiltonian acts outside the ansatz register");
    }
    if (problem.ansatz.entries.empty())
        throw std::invalid_argument("ansatz has no parameters");

    std::vector<MeasurementSetting> plan;
    std::vector<uint64_t> alloc;
    if (problem.shots > 0) {
        plan = plan_measurements(problem.hamiltonian);
        alloc = allocate_shots(plan, problem.shots,
                               problem.weighted_allocation);
    }

    const CostFunction cost = [&](const std::vector<double>& theta,
                                  uint64_t eval) -> CostSample {
        std::vector<Gate> circuit;
        for (size_t i = 0; i < problem.ansatz.entries.size(); ++i) {
            const AnsatzEntry& entry = problem.ansatz.entries[i];
            const std::vector<Gate> part = compile_pauli_rotation(
                entry.generator, entry.scale * theta[i], problem.durations);
            circuit.insert(circuit.end(), part.begin(), part.end());
        }

        if (problem.noise.kind == NoiseModel::Kind::off) {
            Eigen::VectorXcd psi = basis_state(problem.ansatz.reference, n);
            apply_circuit(psi, circuit, n);
            if (problem.shots == 0)
                return {expectation(psi, problem.hamiltonian), 0.0};
            Rng rng(problem.seed, eval);
            std::vector<Counts> counts;
            for (size_t j = 0; j < plan.size(); ++j)
                counts.push_back(
                    sample_counts(psi, plan[j], alloc[j], rng));
            const EnergyEstimate e =
                estimate(problem.hamiltonian, plan, counts);
            return {e.value, e.std};
        }

        Eigen::MatrixXcd rho =
            density_from_state(basis_state(problem.ansatz.reference, n));
        apply_circuit(rho, circuit, n, problem.noise);
        if (problem.shots == 0)
            return {expectation(rho, problem.hamiltonian), 0.0};
        Rng rng(problem.seed, eval);
        std::vector<Counts> counts;
        for (size_t j = 0; j < plan.size(); ++j)
            counts.push_back(sample_counts(rho, plan[j], n, problem.noise,
                                           alloc[j], rng));
        const EnergyEstimate e =
            estimate(problem.hamiltonian, plan, counts);
        return {e.value, e.std};
    };

    std::vector<double> theta0 = problem.theta0;
    if (theta0.empty())
        theta0.assign(problem.ansatz.entries.size(), 0.0);
    if (theta0.size() != problem.ansatz.entries.size())
        throw std::invalid_argument(
            "initial point does not match the ansatz parameter count");

    if (choice.annealed)
        return annealed_nelder_mead(cost, theta0, choice.schedule,
                                    problem.seed, choice.nm);
    return nelder_mead(cost, theta0, choice.nm);
}

}  // namespace tivqe
