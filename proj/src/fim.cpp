#include "nisac/fim.hpp"

#include "nisac/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nisac {

ReflectedBeams reflect(const ChannelSet& cs, const DerivativeChannels& derivs,
                       const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w) {
    if (xi.size() != cs.h_i2u.cols() || w.size() != cs.h_b2i.cols()) {
        throw std::invalid_argument("reflect: dimension mismatch");
    }
    const Eigen::VectorXcd reflected = xi.cwiseProduct(cs.h_b2i * w);
    return {cs.h_i2u * reflected, derivs.d_gamma * reflected, derivs.d_phi * reflected};
}

BetaSet compute_betas(const ReflectedBeams& beams, std::span<const cd> symbols) {
    if (symbols.empty()) {
        throw std::invalid_argument("compute_betas: need at least one slot");
    }
    BetaSet b;
    b.beta_x = beams.beta_x;
    b.beta_gamma.reserve(symbols.size());
    b.beta_phi.reserve(symbols.size());
    for (const cd x : symbols) {
        b.beta_gamma.push_back(beams.g_gamma * x);
        b.beta_phi.push_back(beams.g_phi * x);
    }
    return b;
}

BetaSet compute_betas(const ChannelSet& cs, const DerivativeChannels& derivs,
                      const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w,
                      std::span<const cd> symbols) {
    return compute_betas(reflect(cs, derivs, xi, w), symbols);
}

FisherMatrix assemble_fim(const BetaSet& betas, double noise_var) {
    if (!(noise_var > 0.0)) {
        throw std::invalid_argument("assemble_fim: noise variance must be positive");
    }
    const int T = static_cast<int>(betas.beta_gamma.size());
    const double scale = 2.0 / noise_var;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(T + 2, T + 2);

    const double bx2 = betas.beta_x.squaredNorm();
    double gg = 0.0, pp = 0.0, gp = 0.0;
    for (int t = 0; t < T; ++t) {
        const auto& bg = betas.beta_gamma[t];
        const auto& bp = betas.beta_phi[t];
        J(t, t) = scale * bx2;
        J(t, T) = J(T, t) = scale * betas.beta_x.dot(bg).real();
        J(t, T + 1) = J(T + 1, t) = scale * betas.beta_x.dot(bp).real();
        gg += bg.squaredNorm();
        pp += bp.squaredNorm();
        gp += bg.dot(bp).real();
    }
    J(T, T) = scale * gg;
    J(T + 1, T + 1) = scale * pp;
    J(T, T + 1) = J(T + 1, T) = scale * gp;
    return {J};
}

Eigen::MatrixXd invert_information(const Eigen::MatrixXd& info, const std::string& block) {
    const Eigen::Index n = info.rows();
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(info(i, i) > 0.0)) {
            throw SingularFimError(block + ", zero information on parameter " + std::to_string(i),
                                   std::numeric_limits<double>::infinity());
        }
        d(i) = 1.0 / std::sqrt(info(i, i));
    }
    const Eigen::MatrixXd scaled = d.asDiagonal() * info * d.asDiagonal();
    const Eigen::LLT<Eigen::MatrixXd> llt(scaled);
    if (llt.info() != Eigen::Success) {
        throw SingularFimError(block + ", not positive definite",
                               std::numeric_limits<double>::infinity());
    }
    const double rcond = llt.rcond();
    if (!(rcond * kMaxCondition >= 1.0)) {
        throw SingularFimError(block, rcond > 0.0 ? 1.0 / rcond
                                                  : std::numeric_limits<double>::infinity());
    }
    const Eigen::MatrixXd inv_scaled = llt.solve(Eigen::MatrixXd::Identity(n, n));
    return d.asDiagonal() * inv_scaled * d.asDiagonal();
}

CrlbReport invert_crlbs(const FisherMatrix& fim, double zeta) {
    const int T = fim.slots();
    if (T < 1) {
        throw std::invalid_argument("invert_crlbs: FIM must cover at least one symbol");
    }
    const Eigen::MatrixXd inv = invert_information(fim.entries, "joint symbol/angle FIM");

    CrlbReport r;
    r.crlb_per_symbol.resize(static_cast<std::size_t>(T));
    double sum = 0.0;
    for (int t = 0; t < T; ++t) {
        r.crlb_per_symbol[static_cast<std::size_t>(t)] = inv(t, t);
        sum += inv(t, t);
    }
    r.crlb_x = sum / T;
    r.crlb_gamma = inv(T, T);
    r.crlb_phi = inv(T + 1, T + 1);
    r.crlb_angle = 0.5 * (r.crlb_gamma + r.crlb_phi);
    r.crlb_isac_db = zeta * std::log10(r.crlb_x) + (1.0 - zeta) * std::log10(r.crlb_angle);
    return r;
}

MutualInformation mutual_information(const CrlbReport& report, double var_x) {
    if (!(var_x > 0.0)) {
        throw std::invalid_argument("mutual_information: sigma_x^2 must be positive");
    }
    MutualInformation mi;
    mi.per_slot.reserve(report.crlb_per_symbol.size());
    double sum = 0.0;
    for (const double c : report.crlb_per_symbol) {
        const double bits = 0.5 * std::log2(var_x / c);
        mi.below_prior = mi.below_prior || bits < 0.0;
        mi.per_slot.push_back(bits);
        sum += bits;
    }
    mi.average = mi.per_slot.empty() ? 0.0 : sum / static_cast<double>(mi.per_slot.size());
    return mi;
}

void attach_mutual_information(CrlbReport& report, double var_x) {
    MutualInformation mi = mutual_information(report, var_x);
    report.mi_per_slot = std::move(mi.per_slot);
    report.mi_avg = mi.average;
    report.mi_below_prior = mi.below_prior;
}

FisherMatrix localization_fim(const ReflectedBeams& beams, std::span<const cd> pilots,
                              double noise_var) {
    if (pilots.empty()) {
        throw std::invalid_argument("localization_fim: need at least one pilot");
    }
    if (!(noise_var > 0.0)) {
        throw std::invalid_argument("localization_fim: noise variance must be positive");
    }
    double energy = 0.0;
    for (const cd x : pilots) {
        energy += std::norm(x);
    }
    // sum_t |x(t)|^2 times the per-unit-symbol angle block.
    const double scale = 2.0 / noise_var * energy;
    Eigen::MatrixXd J(2, 2);
    J(0, 0) = scale * beams.g_gamma.squaredNorm();
    J(1, 1) = scale * beams.g_phi.squaredNorm();
    J(0, 1) = J(1, 0) = scale * beams.g_gamma.dot(beams.g_phi).real();
    return {J};
}

FisherMatrix localization_fim(const ChannelSet& cs, const DerivativeChannels& derivs,
                              const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w,
                              std::span<const cd> pilots, double noise_var) {
    return localization_fim(reflect(cs, derivs, xi, w), pilots, noise_var);
}

AngleBounds angle_crlbs(const FisherMatrix& angle_fim) {
    if (angle_fim.entries.rows() != 2 || angle_fim.entries.cols() != 2) {
        throw std::invalid_argument("angle_crlbs: expected a 2x2 information matrix");
    }
    const Eigen::MatrixXd inv = invert_information(angle_fim.entries, "angle block");
    return {inv(0, 0), inv(1, 1), 0.5 * (inv(0, 0) + inv(1, 1))};
}

double v_xi(const FisherMatrix& fim, const Eigen::VectorXcd& w, double zeta,
            const Eigen::VectorXcd& a_b) {
    const double gain = std::norm(a_b.dot(w));
    if (!(gain > 0.0)) {
        throw std::invalid_argument("v_xi: |a_B^H w| must be positive");
    }
    const FisherMatrix normalized{fim.entries / gain};
    return invert_crlbs(normalized, zeta).crlb_isac_db;
}

TdIsacMetrics td_isac_metrics(const ReflectedBeams& beams, const SignalModel& signal,
                              double split) {
    const int T = signal.slots;
    if (!(split >= 0.0) || !(split < 1.0)) {
        throw ConfigError("td-isac: pilot fraction must be in [0, 1)");
    }
    const double exact = T * split;
    TdIsacMetrics m;
    m.pilot_slots = static_cast<int>(std::floor(exact + 1e-9));
    m.data_slots = T - m.pilot_slots;
    m.floored = std::abs(exact - m.pilot_slots) > 1e-9;
    if (split > 0.0 && m.pilot_slots < 1) {
        throw ConfigError("td-isac: T=" + std::to_string(T) + " leaves no pilot slot (need T >= " +
                          std::to_string(static_cast<int>(std::ceil(1.0 / split))) + ")");
    }

    if (m.pilot_slots > 0) {
        const std::vector<cd> pilots(static_cast<std::size_t>(m.pilot_slots), cd(1.0, 0.0));
        const AngleBounds a = angle_crlbs(localization_fim(beams, pilots, signal.noise_var));
        m.crlb_gamma = a.crlb_gamma;
        m.crlb_phi = a.crlb_phi;
        m.crlb_angle = a.crlb_angle;
    } else {
        m.crlb_gamma = m.crlb_phi = m.crlb_angle = std::numeric_limits<double>::infinity();
    }

    // Known angles leave only the symbol's own information.
    m.crlb_x = signal.noise_var / (2.0 * beams.beta_x.squaredNorm());
    const double per_slot = 0.5 * std::log2(signal.var_x / m.crlb_x);
    m.mi_avg = per_slot * m.data_slots / static_cast<double>(T);
    return m;
}

TdIsacMetrics td_isac_metrics(const ChannelSet& cs, const DerivativeChannels& derivs,
                              const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w,
                              const SignalModel& signal, double split) {
    return td_isac_metrics(reflect(cs, derivs, xi, w), signal, split);
}

}  // namespace nisac
