#include "nisac/beamform.hpp"

#include "nisac/arrays.hpp"
#include "nisac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nisac {

Eigen::VectorXcd active_beam(double elevation, int n_t, double p_t) {
    if (n_t < 1) {
        throw ConfigError("active_beam: N_t must be at least 1");
    }
    if (!(p_t > 0.0)) {
        throw ConfigError("active_beam: P_t must be positive");
    }
    return std::sqrt(p_t / n_t) * ula_response(elevation, n_t);
}

ProbabilityMatrix ProbabilityMatrix::uniform(int elements, int bits) {
    const int levels = 1 << bits;
    return {Eigen::MatrixXd::Constant(levels, elements, 1.0 / levels)};
}

void validate(const CeConfig& cfg) {
    if (cfg.candidates < 1 || cfg.elite < 1 || cfg.elite > cfg.candidates) {
        throw ConfigError("ce: need 1 <= elite <= candidates");
    }
    if (!(cfg.threshold > 0.0)) {
        throw ConfigError("ce: threshold must be positive");
    }
    if (cfg.max_iterations < 1) {
        throw ConfigError("ce: max_iterations must be at least 1");
    }
}

std::vector<PhaseConfig> sample_candidates(const ProbabilityMatrix& probs, int bits, int count,
                                           std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int L = probs.elements();
    const int S = probs.levels();
    std::vector<PhaseConfig> out(static_cast<std::size_t>(count));
    for (auto& cand : out) {
        cand.bits = bits;
        cand.indices.resize(static_cast<std::size_t>(L));
        for (int l = 0; l < L; ++l) {
            const double u = unit(rng);
            double acc = 0.0;
            int chosen = -1;
            int last_nonzero = 0;
            for (int s = 0; s < S; ++s) {
                if (probs.p(s, l) > 0.0) {
                    last_nonzero = s;
                }
                acc += probs.p(s, l);
                if (u < acc) {
                    chosen = s;
                    break;
                }
            }
            // Rounding can leave the cumulative sum a hair below 1.
            cand.indices[static_cast<std::size_t>(l)] = chosen < 0 ? last_nonzero : chosen;
        }
    }
    return out;
}

ProbabilityMatrix elite_update(std::span<const PhaseConfig> elites, int elements, int bits) {
    if (elites.empty()) {
        throw std::invalid_argument("elite_update: no elite samples");
    }
    const int levels = 1 << bits;
    Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(levels, elements);
    for (const PhaseConfig& e : elites) {
        if (e.size() != elements || e.bits != bits) {
            throw std::invalid_argument("elite_update: inconsistent elite dimensions");
        }
        for (int l = 0; l < elements; ++l) {
            counts(e.indices[static_cast<std::size_t>(l)], l) += 1;
        }
    }
    return {counts.cast<double>() / static_cast<double>(elites.size())};
}

namespace {

double checked_eval(const PhaseObjective& objective, const PhaseConfig& cand) {
    const double v = objective(cand);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "ce_optimize: non-finite objective " << v << " for candidate [";
        for (std::size_t i = 0; i < cand.indices.size(); ++i) {
            msg << (i ? "," : "") << cand.indices[i];
        }
        msg << "]";
        throw std::runtime_error(msg.str());
    }
    return v;
}

}  // namespace

CeResult ce_optimize(const PhaseObjective& objective, int elements, int bits, const CeConfig& cfg) {
    validate(cfg);
    if (elements < 1) {
        throw ConfigError("ce_optimize: need at least one IRS element");
    }
    std::mt19937_64 rng(cfg.seed);
    ProbabilityMatrix probs = ProbabilityMatrix::uniform(elements, bits);

    CeResult res;
    res.best_objective = std::numeric_limits<double>::infinity();
    std::vector<double> values(static_cast<std::size_t>(cfg.candidates));
    std::vector<int> order(static_cast<std::size_t>(cfg.candidates));

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        std::vector<PhaseConfig> batch = sample_candidates(probs, bits, cfg.candidates, rng);
        for (std::size_t c = 0; c < batch.size(); ++c) {
            values[c] = checked_eval(objective, batch[c]);
        }
        res.evaluations += cfg.candidates;
        res.iterations = iter + 1;

        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return values[static_cast<std::size_t>(a)] <
                                                    values[static_cast<std::size_t>(b)]; });
        const double vmin = values[static_cast<std::size_t>(order.front())];
        const double vmax = values[static_cast<std::size_t>(order.back())];
        res.batch_min.push_back(vmin);
        res.batch_max.push_back(vmax);

        if (vmin < res.best_objective) {
            res.best_objective = vmin;
            res.best_phase = batch[static_cast<std::size_t>(order.front())];
        }
        res.objective_trace.push_back(res.best_objective);
        res.final_batch_best = batch[static_cast<std::size_t>(order.front())];
        res.final_batch_objective = vmin;

        if (std::abs(vmax - vmin) < cfg.threshold) {
            res.converged = true;
            break;
        }

        std::vector<PhaseConfig> elites;
        elites.reserve(static_cast<std::size_t>(cfg.elite));
        for (int q = 0; q < cfg.elite; ++q) {
            elites.push_back(batch[static_cast<std::size_t>(order[static_cast<std::size_t>(q)])]);
        }
        probs = elite_update(elites, elements, bits);
    }
    return res;
}

ExhaustiveResult exhaustive_search(const PhaseObjective& objective, int elements, int bits) {
    if (elements < 1 || bits < 1) {
        throw ConfigError("exhaustive_search: need elements >= 1 and bits >= 1");
    }
    const long long total_bits = static_cast<long long>(bits) * elements;
    if (total_bits > 20) {
        throw ConfigError("exhaustive_search: 2^" + std::to_string(total_bits) +
                          " configurations exceed the 2^20 limit");
    }
    const int levels = 1 << bits;
    const std::int64_t total = std::int64_t{1} << total_bits;

    ExhaustiveResult res;
    res.best_objective = std::numeric_limits<double>::infinity();
    PhaseConfig cand{std::vector<int>(static_cast<std::size_t>(elements), 0), bits};
    for (std::int64_t code = 0; code < total; ++code) {
        // Element 0 is the most significant digit, so codes run in lexicographic order.
        std::int64_t rest = code;
        for (int l = elements - 1; l >= 0; --l) {
            cand.indices[static_cast<std::size_t>(l)] = static_cast<int>(rest % levels);
            rest /= levels;
        }
        const double v = objective(cand);
        ++res.evaluations;
        if (v < res.best_objective) {
            res.best_objective = v;
            res.best_phase = cand;
        }
    }
    return res;
}

}  // namespace nisac
