#include "mftk/surrogate.h"

#include "mftk/error.h"
#include "mftk/parallel.h"
#include "mftk/rng.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace mftk::surrogate {

namespace {

template <typename T>
void fisher_yates(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace

std::string to_string(ShuffleKind kind) {
    switch (kind) {
        case ShuffleKind::Full: return "full";
        case ShuffleKind::Intraday: return "intraday";
        case ShuffleKind::Daily: return "daily";
    }
    return "unknown";
}

ShuffleKind parse_shuffle_kind(std::string_view text) {
    if (text == "full") return ShuffleKind::Full;
    if (text == "intraday") return ShuffleKind::Intraday;
    if (text == "daily") return ShuffleKind::Daily;
    throw InputError("unknown shuffle kind '" + std::string(text) + "' (full|intraday|daily)");
}

ReturnSeries shuffle(const ReturnSeries& series, ShuffleKind kind, std::uint64_t seed) {
    if (series.size() == 0) throw InputError("shuffle: empty series");
    ReturnSeries out = series;
    switch (kind) {
        case ShuffleKind::Full: {
            auto values = series.flatten();
            auto rng = make_rng(seed, 0);
            fisher_yates(values, rng);
            std::size_t k = 0;
            for (auto& day : out.days)
                for (auto& r : day.returns) r = values[k++];
            break;
        }
        case ShuffleKind::Intraday:
            for (std::size_t d = 0; d < out.days.size(); ++d) {
                auto rng = make_rng(seed, d + 1);
                fisher_yates(out.days[d].returns, rng);
            }
            break;
        case ShuffleKind::Daily: {
            // Blocks move with their returns; dates stay in calendar order.
            std::vector<std::size_t> order(series.days.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            auto rng = make_rng(seed, 0);
            fisher_yates(order, rng);
            for (std::size_t d = 0; d < order.size(); ++d) out.days[d].returns = series.days[order[d]].returns;
            break;
        }
    }
    return out;
}

double d_statistic(std::span<const double> q, std::span<const double> tau, std::vector<std::string>* warnings) {
    if (q.size() != tau.size()) throw InputError("d statistic: q and tau sizes differ");
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!std::isfinite(tau[i])) {
            if (warnings) {
                std::ostringstream msg;
                msg << "d statistic: tau(" << q[i] << ") not finite, excluded";
                warnings->push_back(msg.str());
            }
            continue;
        }
        const double dev = tau[i] - (0.5 * q[i] - 1.0);
        sum += dev * dev;
        ++used;
    }
    if (used == 0) throw DegenerateInputError("d statistic: no finite tau values");
    return std::sqrt(sum);
}

double d_statistic(const mfdfa::ScalingExponents& exponents, std::vector<std::string>* warnings) {
    return d_statistic(exponents.q, exponents.tau, warnings);
}

double empirical_p_value(double observed, std::span<const double> ensemble) {
    const auto at_least = std::count_if(ensemble.begin(), ensemble.end(), [&](double d) { return d >= observed; });
    return (1.0 + static_cast<double>(at_least)) / (static_cast<double>(ensemble.size()) + 1.0);
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw InputError("percentile of an empty set");
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

EnsembleSummary summarize(std::span<const double> values) {
    if (values.empty()) throw InputError("summary of an empty ensemble");
    EnsembleSummary s;
    const auto n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    const std::vector<double> copy(values.begin(), values.end());
    s.p50 = percentile(copy, 50.0);
    s.p95 = percentile(copy, 95.0);
    s.p99 = percentile(copy, 99.0);
    s.p999 = percentile(copy, 99.9);
    return s;
}

std::string SurrogateReport::p_value_display() const {
    if (exceeds_all) return "< 1/" + std::to_string(d_ensemble.size());
    std::ostringstream out;
    out << p_value;
    return out.str();
}

SurrogateReport surrogate_test(const ReturnSeries& series, ShuffleKind kind, std::size_t ensemble_size,
                               const mfdfa::MfdfaConfig& config, std::uint64_t seed, std::size_t jobs) {
    if (ensemble_size < 100) throw InputError("surrogate test: ensemble size must be >= 100");
    if ((kind == ShuffleKind::Daily) && series.days.size() < 2)
        throw InputError("surrogate test: daily reshuffling needs at least 2 days");
    if (kind == ShuffleKind::Intraday && series.days.empty())
        throw InputError("surrogate test: intraday reshuffling needs day-partitioned input");

    const auto flat = series.flatten();
    auto resolved = mfdfa::resolve_config(config, flat.size());
    resolved.jobs = 1;  // parallelism lives at the ensemble level

    SurrogateReport report;
    report.kind = kind;
    report.seed = seed;
    report.requested = ensemble_size;
    report.q_grid = resolved.q_grid;

    const auto observed = mfdfa::analyze(flat, resolved);
    if (!observed.exponents.all_ok()) throw DegenerateInputError("surrogate test: MF-DFA fit failed on the observed series");
    report.d_observed = d_statistic(observed.exponents);

    std::vector<std::optional<double>> member(ensemble_size);
    std::vector<std::string> errors(ensemble_size);
    parallel_for(ensemble_size, jobs, [&](std::size_t i) {
        try {
            const auto shuffled = shuffle(series, kind, substream_seed(seed, i + 1)).flatten();
            const auto result = mfdfa::analyze(shuffled, resolved);
            if (!result.exponents.all_ok()) {
                errors[i] = "surrogate " + std::to_string(i) + ": fit failed";
                return;
            }
            member[i] = d_statistic(result.exponents);
        } catch (const std::exception& e) {
            errors[i] = "surrogate " + std::to_string(i) + ": " + e.what();
        }
    });

    for (std::size_t i = 0; i < ensemble_size; ++i) {
        if (member[i]) {
            report.d_ensemble.push_back(*member[i]);
        } else {
            ++report.failures;
            report.failure_messages.push_back(errors[i]);
        }
    }
    if (static_cast<double>(report.failures) > 0.01 * static_cast<double>(ensemble_size))
        throw DegenerateInputError("surrogate test: " + std::to_string(report.failures) + " of " +
                                   std::to_string(ensemble_size) + " surrogates failed (limit 1%)");

    report.summary = summarize(report.d_ensemble);
    report.p_value = empirical_p_value(report.d_observed, report.d_ensemble);
    report.exceeds_all = report.d_observed > report.summary.max;
    return report;
}

}  // namespace mftk::surrogate
