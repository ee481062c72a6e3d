#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graphbench {

// Distribution helpers, accurate to ~1e-10 over the ranges the tests exercise.
double normal_cdf(double z);
double student_t_cdf(double x, double dof);
double student_t_quantile(double dof, double p);
double regularized_gamma_p(double a, double x);
double regularized_beta(double a, double b, double x);
double chi_square_survival(double statistic, double dof);

/// Paired measurements of the same instances under two competing setups.
struct PairedSample {
    std::vector<std::string> labels;
    std::vector<double> a;
    std::vector<double> b;
};

struct WilcoxonResult {
    double statistic = 0.0; ///< min(W+, W-) over the nonzero differences
    double p_value = 1.0;   ///< two-sided
    std::size_t nonzero = 0;
    bool exact = false;          ///< enumeration used (nonzero count <= 25)
    bool all_zero_warning = false;
};

/**
 * Signed-rank test on paired data. Zero differences are discarded, tied
 * magnitudes get mid-ranks. Up to 25 nonzero differences the p-value is exact
 * over all sign assignments; above that a normal approximation with tie
 * correction is used.
 */
WilcoxonResult wilcoxon_signed_rank(const PairedSample& s);

/// Student-t interval for the mean: mean +- t_{k-1,(1+level)/2} * s/sqrt(k).
std::pair<double, double> confidence_interval_mean(std::span<const double> values, double level);

struct HpdInterval {
    double low = 0.0;
    double high = 0.0;
};

/// Shortest contiguous window of the sorted samples holding ceil(mass*k) of
/// them; ties resolved toward the lowest window. Needs at least 100 samples.
HpdInterval hpd_interval(std::span<const double> samples, double mass = 0.95);

enum class RopeVerdict { practically_equivalent, different, inconclusive };

RopeVerdict rope_verdict(const HpdInterval& hpd, double rope_low, double rope_high);
RopeVerdict rope_decision(std::span<const double> samples, double rope_low, double rope_high,
                          double hpd_mass = 0.95);

enum class ModelVariant {
    size_scaling,                ///< log time against log instance size
    relative_time,               ///< log time of A against log time of B
    relative_time_with_diameter, ///< relative_time plus a switched diameter term
};

/**
 * Log-log regression data. `response` holds log running times of the studied
 * setup; `predictor` holds log sizes (size_scaling) or the reference setup's
 * log times (relative variants); `log_diameter` is only read by the
 * indicator variant. Priors: intercept N(0,10), slope N(1,10), noise scale
 * InverseGamma(1,1), diameter coefficient N(0,10) behind a Bernoulli(0.5)
 * inclusion switch.
 */
struct ModelSpec {
    ModelVariant variant = ModelVariant::relative_time;
    std::vector<double> response;
    std::vector<double> predictor;
    std::vector<double> log_diameter;
};

struct McmcSettings {
    int chains = 4;
    std::size_t draws = 10000; ///< per chain, post-warmup; at least 1000
    std::size_t warmup = 1000;
    std::uint64_t seed = 0;
};

/// Posterior draws, chain-major: entry i of a parameter belongs to chain
/// i / draws_per_chain.
struct PosteriorTrace {
    std::vector<std::string> parameter_names;
    std::vector<std::vector<double>> samples; ///< [parameter][chain * draw]
    std::map<std::string, double> acceptance_rates; ///< random-walk parameters only
    int chain_count = 0;
    std::size_t draws_per_chain = 0;
    std::size_t warmup = 0;

    std::size_t parameter_index(std::string_view name) const;
    std::span<const double> chain(std::size_t parameter, int chain) const;
};

struct ParameterSummary {
    std::string name;
    double mean = 0.0;
    double hpd_low = 0.0;
    double hpd_high = 0.0;
    double rhat = 1.0;
};

struct PosteriorSummary {
    std::vector<ParameterSummary> parameters;
    bool convergence_warning = false; ///< any R-hat at or above 1.05
};

using LogDensity = std::function<double(const std::vector<double>&)>;

/**
 * Adaptive random-walk Metropolis over an arbitrary log density. Step sizes
 * are tuned during warmup toward 20-40% acceptance and frozen afterwards.
 * Deterministic per seed; chains run independently.
 */
PosteriorTrace sample_posterior(const LogDensity& log_density,
                                const std::vector<std::string>& parameter_names,
                                const std::vector<double>& initial, const McmcSettings& settings);

/**
 * Fits one of the scaling models. Traces carry alpha, beta, sigma, and for
 * the indicator variant also gamma and the binary selected_model switch,
 * which is resampled by Gibbs from its conditional odds each sweep; gamma is
 * refreshed from its prior while switched off.
 */
PosteriorTrace mcmc_sample(const ModelSpec& model, const McmcSettings& settings);

PosteriorSummary summarize(const PosteriorTrace& trace, double hpd_mass = 0.95);

/// Potential scale reduction over the chains of one parameter.
double gelman_rubin(const PosteriorTrace& trace, std::size_t parameter);

struct BayesFactor {
    double inclusion_probability = 0.0;
    double bayes_factor = 1.0;
    /// Set when every draw agreed; the factor is then a one-sided bound at
    /// the Monte-Carlo resolution 1/k rather than infinity.
    bool resolution_bound = false;
};

BayesFactor bayes_factor_indicator(const PosteriorTrace& trace, double prior_odds = 1.0);

} // namespace graphbench
