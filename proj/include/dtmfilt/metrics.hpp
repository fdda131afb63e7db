#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtmfilt/dtm.hpp"
#include "dtmfilt/minimax.hpp"
#include "dtmfilt/persistence.hpp"
#include "dtmfilt/pexponent.hpp"
#include "dtmfilt/pointcloud.hpp"

namespace dtmf {

struct BottleneckResult {
    double distance = 0.0;
    std::string explanation;  ///< set when the distance is infinite
};

/// Exact bottleneck distance between the dimension-`dim` parts of two
/// diagrams. Essential points are matched among themselves by sorted births;
/// different essential counts give +inf.
BottleneckResult bottleneck_detail(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

/// Exact W2 by min-cost flow. Masses are snapped to fractions with
/// denominator <= 10^6; ParameterError if a mass moves by more than 1e-9 or
/// the total masses differ. DimensionError on mismatched dimensions.
double wasserstein2(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Closest fraction num/den to x with den <= max_den.
std::pair<std::int64_t, std::int64_t> snap_rational(double x, std::int64_t max_den);

enum class Theorem { p44, t46, t413, p48 };

std::string to_string(Theorem theorem);
/// Accepts P4.4, T4.6, T4.13, P4.8 and P4.8-bound.
Theorem parse_theorem(const std::string& text);

struct StabilityReport {
    Theorem theorem = Theorem::t46;
    double m = 0.0;
    PExponent p{1.0};
    std::vector<std::pair<std::string, double>> terms;
    double bound = 0.0;
    std::optional<double> measured_bottleneck;
    std::optional<bool> satisfied;
    std::vector<int> dims;
    std::string note;

    double term(const std::string& name) const;
};

/// Pretty-printed JSON object.
std::string format_report(const StabilityReport& report);

/// m^(-1/2) W2(mu, nu) + 2^(1/p) d_H(supp mu, supp nu).
StabilityReport bound_p44(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const DtmParams& params,
                          PExponent p);

/// m^(-1/2) (W2(X,G) + W2(G,O) + W2(O,Y)) + c(G,m) + c(O,m) with uniform
/// measures. The W2(O,Y) term is omitted when O equals Y. Throws
/// ParameterError unless G is contained in X and O in Y.
StabilityReport bound_t46(const PointCloud& x, const PointCloud& gamma, const PointCloud& omega, const PointCloud& y,
                          const DtmParams& params);

/// As bound_t46 with c(., m, p) in place of c(., m).
StabilityReport bound_t413(const PointCloud& x, const PointCloud& gamma, const PointCloud& omega,
                           const PointCloud& y, const DtmParams& params, PExponent p,
                           const MinimaxOptions& options = {});

/// m^(-1/2) W2(mu, mu_X) + 2 eps + c(mu, m), eps = d_H(supp mu u X, X).
StabilityReport bound_p48(const DiscreteMeasure& mu, const PointCloud& x, const DtmParams& params);

/// Inputs of `certify`. P4.4 reads mu and nu; T4.6 and T4.13 read x, gamma
/// and optionally omega (default gamma) and y (default omega); P4.8 reads mu
/// and x.
struct CertifyInputs {
    std::optional<PointCloud> x;
    std::optional<PointCloud> gamma;
    std::optional<PointCloud> omega;
    std::optional<PointCloud> y;
    std::optional<DiscreteMeasure> mu;
    std::optional<DiscreteMeasure> nu;
};

struct CertifyOptions {
    int max_dim = 2;
    std::optional<double> t_max;  ///< default: diameter of the union of both clouds
    std::vector<int> dims{0, 1};
    MinimaxOptions solver;
    ReductionStrategy strategy = ReductionStrategy::twist;
};

/// Computes the bound, builds both DTM filtrations, and records the largest
/// bottleneck distance over `dims`. P4.8 only reports the bound.
StabilityReport certify(Theorem theorem, const CertifyInputs& inputs, const DtmParams& params, PExponent p,
                        const CertifyOptions& options = {});

}  // namespace dtmf
