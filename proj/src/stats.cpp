#include "graphbench/stats.hpp"

#include "graphbench/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace graphbench {

namespace {

constexpr double kEps = 1e-14;
constexpr double kTiny = 1e-300;

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the upper tail Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double beta_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < 10000; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h;
}

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

} // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_p: a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double regularized_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("regularized_beta: a, b > 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("regularized_beta: x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
    return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double chi_square_survival(double statistic, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("chi_square_survival: dof > 0");
    if (statistic <= 0.0) return 1.0;
    return 1.0 - regularized_gamma_p(dof / 2.0, statistic / 2.0);
}

double student_t_cdf(double x, double dof) {
    if (dof <= 0.0) throw std::invalid_argument("student_t_cdf: dof > 0");
    if (x == 0.0) return 0.5;
    const double tail = 0.5 * regularized_beta(dof / 2.0, 0.5, dof / (dof + x * x));
    return x > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double dof, double p) {
    if (dof <= 0.0) throw std::invalid_argument("student_t_quantile: dof > 0");
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("student_t_quantile: p in (0, 1)");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -student_t_quantile(dof, 1.0 - p);
    double high = 1.0;
    while (student_t_cdf(high, dof) < p && high < 1e12) high *= 2.0;
    double low = 0.0;
    for (int i = 0; i < 200 && high - low > 1e-13 * std::max(1.0, high); ++i) {
        const double mid = 0.5 * (low + high);
        (student_t_cdf(mid, dof) < p ? low : high) = mid;
    }
    return 0.5 * (low + high);
}

WilcoxonResult wilcoxon_signed_rank(const PairedSample& s) {
    if (s.a.size() != s.b.size() || s.a.empty())
        throw std::invalid_argument("paired sample needs equal-length nonempty sides");
    require_finite(s.a, "paired sample");
    require_finite(s.b, "paired sample");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        const double d = s.a[i] - s.b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult result;
    result.nonzero = diffs.size();
    if (diffs.empty()) {
        result.all_zero_warning = true;
        result.p_value = 1.0;
        return result;
    }

    // mid-ranks over |d|
    const std::size_t k = diffs.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(diffs[x]) < std::abs(diffs[y]);
    });
    std::vector<double> rank(k);
    std::vector<std::size_t> tie_sizes;
    for (std::size_t i = 0; i < k;) {
        std::size_t j = i;
        while (j < k && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
        const double mid = (double(i + 1) + double(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) rank[order[t]] = mid;
        tie_sizes.push_back(j - i);
        i = j;
    }

    double w_plus = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        if (diffs[i] > 0.0) w_plus += rank[i];
    const double total = double(k) * double(k + 1) / 2.0;
    const double w_minus = total - w_plus;
    result.statistic = std::min(w_plus, w_minus);

    if (k <= 25) {
        result.exact = true;
        // distribution of 2*W+ over all 2^k sign choices; doubling keeps
        // mid-ranks integral
        std::vector<std::int64_t> doubled(k);
        std::int64_t doubled_total = 0;
        for (std::size_t i = 0; i < k; ++i) {
            doubled[i] = std::llround(2.0 * rank[i]);
            doubled_total += doubled[i];
        }
        std::vector<std::uint64_t> ways(std::size_t(doubled_total) + 1, 0);
        ways[0] = 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::int64_t w = doubled_total; w >= doubled[i]; --w)
                ways[std::size_t(w)] += ways[std::size_t(w - doubled[i])];
        const auto observed = std::llround(2.0 * w_plus);
        std::uint64_t at_most = 0;
        std::uint64_t at_least = 0;
        for (std::int64_t w = 0; w <= doubled_total; ++w) {
            if (w <= observed) at_most += ways[std::size_t(w)];
            if (w >= observed) at_least += ways[std::size_t(w)];
        }
        const double denom = std::pow(2.0, double(k));
        const double tail = double(std::min(at_most, at_least)) / denom;
        result.p_value = std::min(1.0, 2.0 * tail);
        return result;
    }

    const double mean = total / 2.0;
    double tie_term = 0.0;
    for (std::size_t t : tie_sizes) tie_term += double(t) * t * t - double(t);
    const double variance =
        double(k) * double(k + 1) * double(2 * k + 1) / 24.0 - tie_term / 48.0;
    const double z = (result.statistic - mean) / std::sqrt(variance);
    result.p_value = std::min(1.0, 2.0 * normal_cdf(z));
    return result;
}

std::pair<double, double> confidence_interval_mean(std::span<const double> values, double level) {
    if (values.size() < 2) throw std::invalid_argument("confidence interval needs >= 2 values");
    if (level <= 0.0 || level >= 1.0)
        throw std::invalid_argument("confidence level must lie in (0, 1)");
    require_finite(values, "values");
    const double k = double(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / k;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    const double t = student_t_quantile(k - 1.0, (1.0 + level) / 2.0);
    return {mean - t * se, mean + t * se};
}

HpdInterval hpd_interval(std::span<const double> samples, double mass) {
    if (samples.size() < 100) throw std::invalid_argument("hpd_interval needs >= 100 samples");
    if (mass <= 0.0 || mass > 1.0) throw std::invalid_argument("hpd mass must lie in (0, 1]");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t k = sorted.size();
    const auto window = std::size_t(std::ceil(mass * double(k)));
    std::size_t best = 0;
    double best_width = sorted[window - 1] - sorted[0];
    for (std::size_t i = 1; i + window <= k; ++i) {
        const double width = sorted[i + window - 1] - sorted[i];
        if (width < best_width) {
            best_width = width;
            best = i;
        }
    }
    return {sorted[best], sorted[best + window - 1]};
}

RopeVerdict rope_verdict(const HpdInterval& hpd, double rope_low, double rope_high) {
    if (rope_low >= rope_high) throw std::invalid_argument("rope bounds must satisfy low < high");
    if (hpd.low >= rope_low && hpd.high <= rope_high) return RopeVerdict::practically_equivalent;
    if (hpd.high < rope_low || hpd.low > rope_high) return RopeVerdict::different;
    return RopeVerdict::inconclusive;
}

RopeVerdict rope_decision(std::span<const double> samples, double rope_low, double rope_high,
                          double hpd_mass) {
    return rope_verdict(hpd_interval(samples, hpd_mass), rope_low, rope_high);
}

std::size_t PosteriorTrace::parameter_index(std::string_view name) const {
    for (std::size_t i = 0; i < parameter_names.size(); ++i)
        if (parameter_names[i] == name) return i;
    throw std::invalid_argument("trace has no parameter named " + std::string(name));
}

std::span<const double> PosteriorTrace::chain(std::size_t parameter, int chain) const {
    if (parameter >= samples.size() || chain < 0 || chain >= chain_count)
        throw std::out_of_range("chain index out of range");
    return std::span<const double>(samples[parameter])
        .subspan(std::size_t(chain) * draws_per_chain, draws_per_chain);
}

namespace {

double log_normal_prior(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return -0.5 * z * z;
}

// InverseGamma(1,1) on sigma = e^u, including the log-scale Jacobian.
double log_sigma_prior(double u) { return -u - std::exp(-u); }

struct AdaptiveStepper {
    std::vector<double> step;
    std::vector<int> window_accepted;
    std::vector<int> window_proposed;
    std::vector<long long> accepted;
    std::vector<long long> proposed;
    bool adapting = true;
    static constexpr int kWindow = 50;

    explicit AdaptiveStepper(std::size_t n)
        : step(n, 0.5), window_accepted(n, 0), window_proposed(n, 0), accepted(n, 0),
          proposed(n, 0) {}

    void reset_counts() {
        std::fill(accepted.begin(), accepted.end(), 0);
        std::fill(proposed.begin(), proposed.end(), 0);
    }

    template <typename Density>
    void move(std::size_t i, std::vector<double>& state, double& lp, Density&& density,
              Rng& rng) {
        const double old = state[i];
        state[i] = old + step[i] * rng.normal();
        const double candidate = density(state);
        ++proposed[i];
        bool accept = candidate - lp >= 0.0;
        if (!accept) accept = rng.uniform() < std::exp(candidate - lp);
        if (accept) {
            lp = candidate;
            ++accepted[i];
        } else {
            state[i] = old;
        }
        if (adapting) {
            ++window_proposed[i];
            if (accept) ++window_accepted[i];
            if (window_proposed[i] == kWindow) {
                const double rate = double(window_accepted[i]) / kWindow;
                if (rate > 0.40)
                    step[i] *= 1.2;
                else if (rate < 0.20)
                    step[i] *= 0.8;
                step[i] = std::clamp(step[i], 1e-6, 1e6);
                window_accepted[i] = window_proposed[i] = 0;
            }
        }
    }
};

std::uint64_t chain_seed(std::uint64_t seed, int chain) {
    return seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(chain + 1) * 0xD1B54A32D192ED03ULL;
}

void validate_settings(const McmcSettings& s) {
    if (s.chains < 1) throw std::invalid_argument("at least one chain required");
    if (s.draws < 1000) throw std::invalid_argument("at least 1000 draws per chain required");
}

} // namespace

PosteriorTrace sample_posterior(const LogDensity& log_density,
                                const std::vector<std::string>& parameter_names,
                                const std::vector<double>& initial,
                                const McmcSettings& settings) {
    validate_settings(settings);
    if (parameter_names.empty() || parameter_names.size() != initial.size())
        throw std::invalid_argument("parameter names and initial values must align");
    if (!std::isfinite(log_density(initial)))
        throw std::runtime_error(
            "log density is not finite at the initial point; rescale the data");

    const std::size_t dim = parameter_names.size();
    PosteriorTrace trace;
    trace.parameter_names = parameter_names;
    trace.samples.assign(dim, {});
    for (auto& column : trace.samples)
        column.reserve(std::size_t(settings.chains) * settings.draws);
    trace.chain_count = settings.chains;
    trace.draws_per_chain = settings.draws;
    trace.warmup = settings.warmup;

    std::vector<long long> accepted(dim, 0), proposed(dim, 0);
    for (int c = 0; c < settings.chains; ++c) {
        Rng rng(chain_seed(settings.seed, c));
        std::vector<double> state = initial;
        double lp = log_density(state);
        AdaptiveStepper stepper(dim);
        for (std::size_t sweep = 0; sweep < settings.warmup; ++sweep)
            for (std::size_t i = 0; i < dim; ++i)
                stepper.move(i, state, lp, log_density, rng);
        stepper.adapting = false;
        stepper.reset_counts();
        for (std::size_t sweep = 0; sweep < settings.draws; ++sweep) {
            for (std::size_t i = 0; i < dim; ++i)
                stepper.move(i, state, lp, log_density, rng);
            for (std::size_t i = 0; i < dim; ++i) trace.samples[i].push_back(state[i]);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            accepted[i] += stepper.accepted[i];
            proposed[i] += stepper.proposed[i];
        }
    }
    for (std::size_t i = 0; i < dim; ++i)
        trace.acceptance_rates[parameter_names[i]] = double(accepted[i]) / double(proposed[i]);
    return trace;
}

namespace {

// Covariates are centered for sampling; the intercept ridge would otherwise
// cripple single-coordinate moves. The shear back to the natural intercept
// has unit Jacobian, so priors and recorded draws use natural_alpha.
struct ModelData {
    std::vector<double> xc;
    std::vector<double> dc;
    const std::vector<double>& y;
    double x_mean = 0.0;
    double d_mean = 0.0;
    bool with_diameter;

    ModelData(const ModelSpec& spec, bool diam) : y(spec.response), with_diameter(diam) {
        const double n = double(spec.predictor.size());
        x_mean = std::accumulate(spec.predictor.begin(), spec.predictor.end(), 0.0) / n;
        for (double x : spec.predictor) xc.push_back(x - x_mean);
        if (with_diameter) {
            d_mean =
                std::accumulate(spec.log_diameter.begin(), spec.log_diameter.end(), 0.0) / n;
            for (double d : spec.log_diameter) dc.push_back(d - d_mean);
        }
    }

    double natural_alpha(double centered, double beta, double gamma, int indicator) const {
        return centered - beta * x_mean - (indicator == 1 ? gamma * d_mean : 0.0);
    }

    double log_likelihood(double centered, double beta, double gamma_active, double u) const {
        const double sigma = std::exp(u);
        const auto n = y.size();
        double ll = -double(n) * (u + 0.5 * std::log(2.0 * 3.141592653589793238462643));
        const double inv = 1.0 / (2.0 * sigma * sigma);
        for (std::size_t i = 0; i < n; ++i) {
            double mu = centered + beta * xc[i];
            if (with_diameter) mu += gamma_active * dc[i];
            const double r = y[i] - mu;
            ll -= r * r * inv;
        }
        return ll;
    }
};

} // namespace

PosteriorTrace mcmc_sample(const ModelSpec& model, const McmcSettings& settings) {
    validate_settings(settings);
    const bool with_diameter = model.variant == ModelVariant::relative_time_with_diameter;
    if (model.response.size() != model.predictor.size() || model.response.size() < 2)
        throw std::invalid_argument("model needs equal-length response and predictor, >= 2 rows");
    if (with_diameter && model.log_diameter.size() != model.response.size())
        throw std::invalid_argument("diameter covariate must align with the response");
    require_finite(model.response, "response");
    require_finite(model.predictor, "predictor");
    if (with_diameter) require_finite(model.log_diameter, "log_diameter");

    const ModelData data(model, with_diameter);
    // state: centered intercept, beta, [gamma], u = log sigma
    const std::size_t dim = with_diameter ? 4 : 3;
    const std::size_t gamma_slot = 2;
    const std::size_t u_slot = dim - 1;

    const auto log_joint = [&](const std::vector<double>& s, int indicator) {
        const double gamma = with_diameter ? s[gamma_slot] : 0.0;
        const double alpha = data.natural_alpha(s[0], s[1], gamma, indicator);
        double lp = log_normal_prior(alpha, 0.0, 10.0) + log_normal_prior(s[1], 1.0, 10.0) +
                    log_sigma_prior(s[u_slot]);
        if (with_diameter) lp += log_normal_prior(gamma, 0.0, 10.0);
        lp += data.log_likelihood(s[0], s[1], indicator == 1 ? gamma : 0.0, s[u_slot]);
        return lp;
    };

    std::vector<double> initial(dim, 0.0);
    initial[1] = 1.0;
    initial[0] = data.x_mean; // natural intercept starts at zero
    if (!std::isfinite(log_joint(initial, 1)))
        throw std::runtime_error(
            "log likelihood is not finite at the initial point; rescale the data");

    PosteriorTrace trace;
    trace.parameter_names = with_diameter
                                ? std::vector<std::string>{"alpha", "beta", "gamma", "sigma",
                                                           "selected_model"}
                                : std::vector<std::string>{"alpha", "beta", "sigma"};
    trace.samples.assign(trace.parameter_names.size(), {});
    trace.chain_count = settings.chains;
    trace.draws_per_chain = settings.draws;
    trace.warmup = settings.warmup;

    std::vector<long long> accepted(dim, 0), proposed(dim, 0);
    for (int c = 0; c < settings.chains; ++c) {
        Rng rng(chain_seed(settings.seed, c));
        std::vector<double> state = initial;
        int indicator = 1;
        double lp = log_joint(state, indicator);
        const auto density = [&](const std::vector<double>& s) { return log_joint(s, indicator); };
        AdaptiveStepper stepper(dim);

        const auto sweep_once = [&]() {
            for (std::size_t i = 0; i < dim; ++i) {
                if (with_diameter && i == gamma_slot && indicator == 0) {
                    // switched off: the conditional for gamma is its prior
                    state[gamma_slot] = rng.normal(0.0, 10.0);
                    lp = log_joint(state, indicator);
                    continue;
                }
                stepper.move(i, state, lp, density, rng);
            }
            if (with_diameter) {
                // inclusion prior is an even coin, so the odds reduce to the
                // joint density ratio
                const double on = log_joint(state, 1);
                const double off = log_joint(state, 0);
                const double p_on = 1.0 / (1.0 + std::exp(off - on));
                indicator = rng.uniform() < p_on ? 1 : 0;
                lp = indicator == 1 ? on : off;
            }
        };

        for (std::size_t sweep = 0; sweep < settings.warmup; ++sweep) sweep_once();
        stepper.adapting = false;
        stepper.reset_counts();
        for (std::size_t sweep = 0; sweep < settings.draws; ++sweep) {
            sweep_once();
            const double gamma = with_diameter ? state[gamma_slot] : 0.0;
            trace.samples[0].push_back(data.natural_alpha(state[0], state[1], gamma, indicator));
            trace.samples[1].push_back(state[1]);
            if (with_diameter) {
                trace.samples[2].push_back(gamma);
                trace.samples[3].push_back(std::exp(state[u_slot]));
                trace.samples[4].push_back(double(indicator));
            } else {
                trace.samples[2].push_back(std::exp(state[u_slot]));
            }
        }
        for (std::size_t i = 0; i < dim; ++i) {
            accepted[i] += stepper.accepted[i];
            proposed[i] += stepper.proposed[i];
        }
    }

    const auto rate = [&](std::size_t i) { return double(accepted[i]) / double(proposed[i]); };
    trace.acceptance_rates["alpha"] = rate(0);
    trace.acceptance_rates["beta"] = rate(1);
    if (with_diameter && proposed[gamma_slot] > 0)
        trace.acceptance_rates["gamma"] = rate(gamma_slot);
    trace.acceptance_rates["sigma"] = rate(u_slot);
    return trace;
}

double gelman_rubin(const PosteriorTrace& trace, std::size_t parameter) {
    if (parameter >= trace.samples.size()) throw std::out_of_range("parameter out of range");
    const int m = trace.chain_count;
    const double n = double(trace.draws_per_chain);
    if (m < 2 || trace.draws_per_chain < 2) return 1.0;
    std::vector<double> means(m), vars(m);
    for (int c = 0; c < m; ++c) {
        const auto chain = trace.chain(parameter, c);
        double mean = 0.0;
        for (double v : chain) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : chain) ss += (v - mean) * (v - mean);
        means[c] = mean;
        vars[c] = ss / (n - 1.0);
    }
    const double grand = std::accumulate(means.begin(), means.end(), 0.0) / m;
    double b = 0.0;
    for (double mu : means) b += (mu - grand) * (mu - grand);
    b *= n / (m - 1.0);
    const double w = std::accumulate(vars.begin(), vars.end(), 0.0) / m;
    if (w <= 0.0) return 1.0;
    const double var_plus = (n - 1.0) / n * w + b / n;
    return std::sqrt(var_plus / w);
}

PosteriorSummary summarize(const PosteriorTrace& trace, double hpd_mass) {
    PosteriorSummary summary;
    for (std::size_t p = 0; p < trace.parameter_names.size(); ++p) {
        const auto& column = trace.samples[p];
        ParameterSummary row;
        row.name = trace.parameter_names[p];
        row.mean = std::accumulate(column.begin(), column.end(), 0.0) / double(column.size());
        const auto hpd = hpd_interval(column, hpd_mass);
        row.hpd_low = hpd.low;
        row.hpd_high = hpd.high;
        row.rhat = gelman_rubin(trace, p);
        if (row.rhat >= 1.05) summary.convergence_warning = true;
        summary.parameters.push_back(std::move(row));
    }
    return summary;
}

BayesFactor bayes_factor_indicator(const PosteriorTrace& trace, double prior_odds) {
    if (prior_odds <= 0.0) throw std::invalid_argument("prior odds must be positive");
    const auto& column = trace.samples[trace.parameter_index("selected_model")];
    if (column.empty()) throw std::invalid_argument("selected_model has no samples");
    const double k = double(column.size());
    const double p = std::accumulate(column.begin(), column.end(), 0.0) / k;
    BayesFactor result;
    result.inclusion_probability = p;
    if (p <= 0.0 || p >= 1.0) {
        // unanimous draws: report the Monte-Carlo resolution bound
        result.resolution_bound = true;
        const double bounded = p <= 0.0 ? 1.0 / k : 1.0 - 1.0 / k;
        result.bayes_factor = bounded / (1.0 - bounded) / prior_odds;
    } else {
        result.bayes_factor = p / (1.0 - p) / prior_odds;
    }
    return result;
}

} // namespace graphbench
