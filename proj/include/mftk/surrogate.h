#pragma once

#include "mftk/mfdfa.h"
#include "mftk/series.h"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mftk::surrogate {

enum class ShuffleKind {
    Full,      // permute all returns across days
    Intraday,  // permute within each day, day order fixed
    Daily,     // permute whole days, within-day order fixed
};

std::string to_string(ShuffleKind kind);
ShuffleKind parse_shuffle_kind(std::string_view text);

// Fisher-Yates permutation driven by mt19937_64. FULL and DAILY use
// sub-stream 0 of `seed`; INTRADAY shuffles day d with sub-stream d + 1.
ReturnSeries shuffle(const ReturnSeries& series, ShuffleKind kind, std::uint64_t seed);

// l2 distance of tau(q) from the i.i.d. finite-variance line q/2 - 1.
// Non-finite tau are skipped (noted in *warnings); all skipped -> DegenerateInputError.
double d_statistic(std::span<const double> q, std::span<const double> tau,
                   std::vector<std::string>* warnings = nullptr);
double d_statistic(const mfdfa::ScalingExponents& exponents, std::vector<std::string>* warnings = nullptr);

// (1 + #{d_i >= observed}) / (M + 1)
double empirical_p_value(double observed, std::span<const double> ensemble);

// Linear interpolation between order statistics, p in [0, 100].
double percentile(std::vector<double> values, double p);

struct EnsembleSummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample (n - 1) standard deviation
    double min = 0.0;
    double max = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
    double p99 = 0.0;
    double p999 = 0.0;
};

EnsembleSummary summarize(std::span<const double> values);

struct SurrogateReport {
    ShuffleKind kind = ShuffleKind::Full;
    std::uint64_t seed = 0;
    std::size_t requested = 0;  // M
    std::size_t failures = 0;
    double d_observed = 0.0;
    std::vector<double> d_ensemble;  // member order, failures excluded
    EnsembleSummary summary;
    double p_value = 1.0;
    bool exceeds_all = false;  // observed d above every surrogate: report "< 1/M"
    std::vector<double> q_grid;
    std::vector<std::string> failure_messages;

    std::string p_value_display() const;
};

// Runs MF-DFA -> tau -> d on the series and on M independent surrogates
// (surrogate i shuffled with sub-stream seed i + 1), all with the same
// resolved config. More than 1% failed surrogates raises DegenerateInputError.
SurrogateReport surrogate_test(const ReturnSeries& series, ShuffleKind kind, std::size_t ensemble_size,
                               const mfdfa::MfdfaConfig& config, std::uint64_t seed, std::size_t jobs = 1);

}  // namespace mftk::surrogate
