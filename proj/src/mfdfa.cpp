#include "mftk/mfdfa.h"

#include "mftk/error.h"
#include "mftk/parallel.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mftk::mfdfa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// log(sum(exp(v))) over the finite entries of v
double log_sum_exp(const std::vector<double>& v) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double x : v) peak = std::max(peak, x);
    if (!std::isfinite(peak)) return peak;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - peak);
    return peak + std::log(acc);
}

struct LineFit {
    double slope = kNaN;
    double intercept = kNaN;
    double slope_stderr = kNaN;
    double r2 = kNaN;
};

LineFit ordinary_least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - fit.intercept - fit.slope * x[i];
        ssr += e * e;
    }
    fit.slope_stderr = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : kNaN;
    fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return fit;
}

}  // namespace

std::vector<double> make_q_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw InputError("q grid: need lo <= hi and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        double q = lo + static_cast<double>(i) * step;
        if (std::abs(q) < kZeroQ) q = 0.0;
        grid[i] = q;
    }
    return grid;
}

std::vector<double> default_q_grid() { return make_q_grid(-5.0, 5.0, 0.25); }

std::vector<std::size_t> log_scale_grid(std::size_t lo, std::size_t hi, std::size_t count) {
    if (lo == 0 || hi < lo || count == 0) throw InputError("scale grid: need 0 < lo <= hi and count > 0");
    std::vector<std::size_t> grid;
    const double llo = std::log(static_cast<double>(lo));
    const double lhi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const auto s = static_cast<std::size_t>(std::llround(std::exp(llo + t * (lhi - llo))));
        const std::size_t clamped = std::clamp(s, lo, hi);
        if (grid.empty() || clamped > grid.back()) grid.push_back(clamped);
    }
    return grid;
}

std::vector<std::size_t> default_scale_grid(std::size_t n) {
    if (n / 4 < 16)
        throw InputError("default scale grid needs N >= 64, got N = " + std::to_string(n));
    return log_scale_grid(16, n / 4, 30);
}

MfdfaConfig resolve_config(MfdfaConfig config, std::size_t n) {
    if (config.poly_order < 0) throw InputError("polynomial order must be >= 0");
    if (config.q_grid.empty()) config.q_grid = default_q_grid();
    for (auto& q : config.q_grid)
        if (std::abs(q) < kZeroQ) q = 0.0;
    for (std::size_t i = 1; i < config.q_grid.size(); ++i)
        if (!(config.q_grid[i] > config.q_grid[i - 1]))
            throw InputError("q grid must be strictly increasing");
    const bool has_two = std::any_of(config.q_grid.begin(), config.q_grid.end(),
                                     [](double q) { return std::abs(q - 2.0) < 1e-12; });
    if (!has_two) throw InputError("q grid must contain q = 2");

    if (config.scale_grid.empty()) config.scale_grid = default_scale_grid(n);
    for (std::size_t i = 1; i < config.scale_grid.size(); ++i)
        if (config.scale_grid[i] <= config.scale_grid[i - 1])
            throw InputError("scale grid must be strictly increasing");
    const auto min_scale = static_cast<std::size_t>(config.poly_order) + 2;
    if (config.scale_grid.front() < min_scale || config.scale_grid.front() < 4)
        throw InputError("smallest scale " + std::to_string(config.scale_grid.front()) +
                         " is below max(4, poly_order + 2) = " + std::to_string(std::max<std::size_t>(4, min_scale)));
    if (config.scale_grid.back() > n / 4)
        throw InputError("largest scale " + std::to_string(config.scale_grid.back()) +
                         " exceeds N/4 = " + std::to_string(n / 4));
    if (config.jobs == 0) config.jobs = 1;
    return config;
}

std::vector<double> profile(std::span<const double> series) {
    if (series.size() < 4) throw InputError("profile: series needs at least 4 points");
    long double sum = 0.0L;
    for (double x : series) sum += x;
    const long double mean = sum / static_cast<long double>(series.size());

    bool constant = true;
    for (double x : series)
        if (static_cast<long double>(x) != mean) constant = false;
    if (constant) throw DegenerateInputError("profile: series is constant, fluctuations are undefined");

    std::vector<double> y(series.size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < series.size(); ++i) {
        acc += static_cast<long double>(series[i]) - mean;
        y[i] = static_cast<double>(acc);
    }
    return y;
}

std::vector<Window> segment(std::size_t n, std::size_t s, bool both_ends) {
    if (s < 4) throw InputError("segment: window length must be >= 4");
    if (s > n) throw InputError("segment: window length " + std::to_string(s) +
                                " exceeds series length " + std::to_string(n));
    const std::size_t count = n / s;
    std::vector<Window> windows;
    windows.reserve(both_ends ? 2 * count : count);
    for (std::size_t v = 0; v < count; ++v) windows.push_back({v * s, s});
    if (both_ends) {
        const std::size_t offset = n - count * s;
        for (std::size_t v = 0; v < count; ++v) windows.push_back({offset + v * s, s});
    }
    return windows;
}

PolynomialDetrender::PolynomialDetrender(std::size_t length, int order)
    : length_(length), order_(order) {
    if (order < 0) throw InputError("polynomial order must be >= 0");
    if (length < static_cast<std::size_t>(order) + 2)
        throw InputError("window length " + std::to_string(length) + " too short for order " +
                         std::to_string(order));
    const auto rows = static_cast<Eigen::Index>(length);
    const auto cols = static_cast<Eigen::Index>(order) + 1;
    Eigen::MatrixXd vandermonde(rows, cols);
    const double half = 0.5 * static_cast<double>(length - 1);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double x = (static_cast<double>(i) - half) / half;
        double power = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            vandermonde(i, j) = power;
            power *= x;
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(vandermonde);
    // distinct abscissae guarantee full column rank
    assert(std::abs(qr.matrixQR().diagonal().array()).minCoeff() > 0.0);
    basis_ = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

double PolynomialDetrender::mean_squared_residual(std::span<const double> window) const {
    assert(window.size() == length_);
    const Eigen::Map<const Eigen::VectorXd> y(window.data(), static_cast<Eigen::Index>(window.size()));
    const Eigen::VectorXd coeffs = basis_.transpose() * y;
    thread_local Eigen::VectorXd residual;
    residual = y;
    residual.noalias() -= basis_ * coeffs;
    return residual.squaredNorm() / static_cast<double>(length_);
}

std::vector<double> PolynomialDetrender::residuals(std::span<const double> window) const {
    assert(window.size() == length_);
    const Eigen::Map<const Eigen::VectorXd> y(window.data(), static_cast<Eigen::Index>(window.size()));
    const Eigen::VectorXd coeffs = basis_.transpose() * y;
    const Eigen::VectorXd r = y - basis_ * coeffs;
    return {r.data(), r.data() + r.size()};
}

double segment_rms(std::span<const double> window, int order) {
    return std::sqrt(PolynomialDetrender(window.size(), order).mean_squared_residual(window));
}

double q_order_mean(std::span<const double> squared_rms, double q, std::size_t* excluded) {
    std::size_t zeros = 0;
    std::vector<double> logs;
    logs.reserve(squared_rms.size());
    for (double f2 : squared_rms) {
        if (f2 > 0.0)
            logs.push_back(std::log(f2));
        else
            ++zeros;
    }
    const bool skip_zeros = q <= 0.0 || std::abs(q) < kZeroQ;
    if (excluded) *excluded = skip_zeros ? zeros : 0;
    if (logs.empty()) return skip_zeros ? kNaN : 0.0;

    if (std::abs(q) < kZeroQ) {
        const double mean_log = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
        return std::exp(0.5 * mean_log);
    }
    const double count = static_cast<double>(skip_zeros ? logs.size() : squared_rms.size());
    for (auto& l : logs) l *= 0.5 * q;
    return std::exp((log_sum_exp(logs) - std::log(count)) / q);
}

FluctuationSurface fluctuation(std::span<const double> profile_values, const MfdfaConfig& config) {
    const std::size_t n = profile_values.size();
    FluctuationSurface surface;
    surface.q = config.q_grid;
    surface.scales = config.scale_grid;
    const std::size_t ns = surface.scales.size();
    const std::size_t nq = surface.q.size();
    surface.values.assign(nq * ns, kNaN);
    surface.segments.assign(ns, 0);
    surface.zero_segments.assign(ns, 0);

    // Segment fluctuations at one scale are shared by every q.
    parallel_for(ns, config.jobs, [&](std::size_t is) {
        const std::size_t s = surface.scales[is];
        const auto windows = segment(n, s, config.both_ends);
        const PolynomialDetrender detrender(s, config.poly_order);
        std::vector<double> f2(windows.size());
        std::size_t zeros = 0;
        for (std::size_t v = 0; v < windows.size(); ++v) {
            f2[v] = detrender.mean_squared_residual(profile_values.subspan(windows[v].begin, s));
            if (f2[v] == 0.0) ++zeros;
        }
        if (zeros == f2.size())
            throw DegenerateInputError("fluctuation: every window is exactly polynomial at scale s = " +
                                       std::to_string(s));
        surface.segments[is] = windows.size();
        surface.zero_segments[is] = zeros;
        for (std::size_t iq = 0; iq < nq; ++iq) surface.values[iq * ns + is] = q_order_mean(f2, surface.q[iq]);
    });
    return surface;
}

bool ScalingExponents::all_ok() const {
    return std::all_of(fit_ok.begin(), fit_ok.end(), [](bool ok) { return ok; });
}

ScalingExponents fit_h(const FluctuationSurface& surface, std::optional<std::size_t> fit_min_scale,
                       std::optional<std::size_t> fit_max_scale) {
    ScalingExponents out;
    const std::size_t nq = surface.q.size();
    const std::size_t ns = surface.scales.size();
    out.q = surface.q;
    out.h.assign(nq, kNaN);
    out.tau.assign(nq, kNaN);
    out.h_stderr.assign(nq, kNaN);
    out.r2.assign(nq, kNaN);
    out.intercept.assign(nq, kNaN);
    out.fit_ok.assign(nq, false);

    const std::size_t lo = fit_min_scale.value_or(0);
    const std::size_t hi = fit_max_scale.value_or(std::numeric_limits<std::size_t>::max());
    out.fit_min_scale = std::numeric_limits<std::size_t>::max();
    out.fit_max_scale = 0;
    for (std::size_t s : surface.scales) {
        if (s < lo || s > hi) continue;
        out.fit_min_scale = std::min(out.fit_min_scale, s);
        out.fit_max_scale = std::max(out.fit_max_scale, s);
    }
    if (out.fit_max_scale == 0) out.fit_min_scale = 0;

    for (std::size_t iq = 0; iq < nq; ++iq) {
        std::vector<double> x, y;
        for (std::size_t is = 0; is < ns; ++is) {
            const std::size_t s = surface.scales[is];
            const double f = surface.at(iq, is);
            if (s < lo || s > hi || !std::isfinite(f) || !(f > 0.0)) continue;
            x.push_back(std::log(static_cast<double>(s)));
            y.push_back(std::log(f));
        }
        if (x.size() < 5) {
            std::ostringstream msg;
            msg << "fit_h: q = " << surface.q[iq] << " has only " << x.size() << " usable scales (need 5)";
            out.warnings.push_back(msg.str());
            continue;
        }
        const auto fit = ordinary_least_squares(x, y);
        out.h[iq] = fit.slope;
        out.tau[iq] = surface.q[iq] * fit.slope - 1.0;
        out.h_stderr[iq] = fit.slope_stderr;
        out.r2[iq] = fit.r2;
        out.intercept[iq] = fit.intercept;
        out.fit_ok[iq] = true;
    }
    return out;
}

Analysis analyze(std::span<const double> series, const MfdfaConfig& config) {
    Analysis result;
    result.config = resolve_config(config, series.size());
    const auto y = profile(series);
    result.surface = fluctuation(y, result.config);
    result.exponents = fit_h(result.surface, result.config.fit_min_scale, result.config.fit_max_scale);
    return result;
}

PartitionEstimate partition_function_oracle(std::span<const double> series, const std::vector<double>& q_grid,
                                            std::vector<unsigned> depths, PadMode pad) {
    if (series.size() < 2) throw InputError("partition function: series needs at least 2 points");
    std::size_t n = 1;
    unsigned levels = 0;
    while (n * 2 <= series.size()) {
        n *= 2;
        ++levels;
    }
    std::vector<double> data(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(n));
    if (n != series.size() && pad == PadMode::ZeroPad) {
        data.assign(series.begin(), series.end());
        data.resize(n * 2, 0.0);
        n *= 2;
        ++levels;
    }
    if (depths.empty())
        for (unsigned j = 1; j <= levels; ++j) depths.push_back(j);
    for (unsigned j : depths)
        if (j > levels) throw InputError("partition function: depth " + std::to_string(j) + " exceeds log2(N)");
    if (depths.size() < 2) throw InputError("partition function: need at least two depths");

    // box sums at every depth, finest first: sums[levels] = data
    std::vector<std::vector<double>> sums(levels + 1);
    sums[levels] = data;
    for (unsigned j = levels; j > 0; --j) {
        const auto& fine = sums[j];
        auto& coarse = sums[j - 1];
        coarse.resize(fine.size() / 2);
        for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = fine[2 * i] + fine[2 * i + 1];
    }

    PartitionEstimate out;
    out.q = q_grid;
    out.depths = depths;
    out.length_used = n;
    out.tau.assign(q_grid.size(), kNaN);
    out.r2.assign(q_grid.size(), kNaN);
    out.excluded_boxes.assign(q_grid.size(), 0);

    for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
        const double q = q_grid[iq];
        std::vector<double> x, y;
        for (unsigned j : depths) {
            std::vector<double> terms;
            terms.reserve(sums[j].size());
            for (double s : sums[j]) {
                const double a = std::abs(s);
                if (a > 0.0)
                    terms.push_back(q * std::log(a));
                else if (q <= 0.0)
                    ++out.excluded_boxes[iq];
                // q > 0: |0|^q contributes nothing
            }
            if (terms.empty()) continue;
            x.push_back(-static_cast<double>(j) * std::log(2.0));
            y.push_back(log_sum_exp(terms));
        }
        if (x.size() < 2) continue;
        const auto fit = ordinary_least_squares(x, y);
        out.tau[iq] = fit.slope;
        out.r2[iq] = fit.r2;
    }
    return out;
}

}  // namespace mftk::mfdfa
