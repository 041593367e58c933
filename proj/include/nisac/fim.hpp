#pragma once

// Fisher information for the joint estimation of the T transmitted symbols and
// the IRS->user AoA pair, the resulting CRLBs and the derived ISAC metrics.
//
// Parameter order: theta = [x(1), ..., x(T), elevation, azimuth]. Symbols are
// complex parameters taken with the complex-derivative convention, so J is
// (T+2)x(T+2) and the prior term vanishes (J = J_D).

#include "nisac/channel.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <vector>

namespace nisac {

// Received beam and its angle derivatives for a unit symbol.
struct ReflectedBeams {
    Eigen::VectorXcd beta_x;   // H_I2U diag(xi) H_B2I w
    Eigen::VectorXcd g_gamma;  // H_I2U,gamma diag(xi) H_B2I w
    Eigen::VectorXcd g_phi;    // H_I2U,phi diag(xi) H_B2I w
};

ReflectedBeams reflect(const ChannelSet& cs, const DerivativeChannels& derivs,
                       const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w);

struct BetaSet {
    Eigen::VectorXcd beta_x;
    std::vector<Eigen::VectorXcd> beta_gamma;  // one per slot, x(t) * g_gamma
    std::vector<Eigen::VectorXcd> beta_phi;    // one per slot, x(t) * g_phi
};

BetaSet compute_betas(const ReflectedBeams& beams, std::span<const cd> symbols);

BetaSet compute_betas(const ChannelSet& cs, const DerivativeChannels& derivs,
                      const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w,
                      std::span<const cd> symbols);

struct FisherMatrix {
    Eigen::MatrixXd entries;

    int slots() const noexcept { return static_cast<int>(entries.rows()) - 2; }
};

// Closed-form block assembly from the beta vectors; throws std::invalid_argument
// for a non-positive noise variance.
FisherMatrix assemble_fim(const BetaSet& betas, double noise_var);

struct CrlbReport {
    std::vector<double> crlb_per_symbol;
    double crlb_x = 0.0;
    double crlb_gamma = 0.0;
    double crlb_phi = 0.0;
    double crlb_angle = 0.0;
    double crlb_isac_db = 0.0;
    std::vector<double> mi_per_slot;
    double mi_avg = 0.0;
    bool mi_below_prior = false;  // some CRLB(x(t)) exceeded sigma_x^2
};

// Condition number above which J is reported singular.
inline constexpr double kMaxCondition = 1e12;

// Inverse of a symmetric positive-definite matrix after diagonal equilibration.
// Throws SingularFimError naming `block` when the equilibrated condition
// estimate exceeds kMaxCondition.
Eigen::MatrixXd invert_information(const Eigen::MatrixXd& info, const std::string& block);

// CRLBs from the diagonal of J^-1 and the zeta-weighted log10 ISAC metric.
// Mutual-information fields are left empty; see attach_mutual_information.
CrlbReport invert_crlbs(const FisherMatrix& fim, double zeta);

struct MutualInformation {
    std::vector<double> per_slot;  // bits
    double average = 0.0;
    bool below_prior = false;
};

// I(t) = 0.5 * log2(sigma_x^2 / CRLB(x(t))).
MutualInformation mutual_information(const CrlbReport& report, double var_x);

void attach_mutual_information(CrlbReport& report, double var_x);

// 2x2 angle information when the transmitted symbols are known pilots.
FisherMatrix localization_fim(const ChannelSet& cs, const DerivativeChannels& derivs,
                              const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w,
                              std::span<const cd> pilots, double noise_var);

FisherMatrix localization_fim(const ReflectedBeams& beams, std::span<const cd> pilots,
                              double noise_var);

struct AngleBounds {
    double crlb_gamma = 0.0;
    double crlb_phi = 0.0;
    double crlb_angle = 0.0;
};

AngleBounds angle_crlbs(const FisherMatrix& angle_fim);

// Phase-configuration objective computed on J / |a_B^H w|^2. Satisfies
// crlb_isac_db = v_xi - 2 lg|a_B^H w|.
double v_xi(const FisherMatrix& fim, const Eigen::VectorXcd& w, double zeta,
            const Eigen::VectorXcd& a_b);

struct TdIsacMetrics {
    double mi_avg = 0.0;      // bits, averaged over all T slots
    double crlb_angle = 0.0;  // from the pilot slots; +inf without pilots
    double crlb_gamma = 0.0;
    double crlb_phi = 0.0;
    double crlb_x = 0.0;      // per data slot, angles known
    int pilot_slots = 0;
    int data_slots = 0;
    bool floored = false;     // T * split was not an integer
};

// Time-division baseline: unit pilots in the first floor(T*split) slots, data in
// the rest. Throws ConfigError when split > 0 leaves no pilot slot.
TdIsacMetrics td_isac_metrics(const ReflectedBeams& beams, const SignalModel& signal,
                              double split);

TdIsacMetrics td_isac_metrics(const ChannelSet& cs, const DerivativeChannels& derivs,
                              const Eigen::VectorXcd& xi, const Eigen::VectorXcd& w,
                              const SignalModel& signal, double split = 0.2);

}  // namespace nisac
