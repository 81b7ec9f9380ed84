#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mftk::mfdfa {

// q values with |q| below this are evaluated with the logarithmic mean.
inline constexpr double kZeroQ = 1e-8;

struct MfdfaConfig {
    std::vector<double> q_grid;            // empty -> default_q_grid()
    std::vector<std::size_t> scale_grid;   // empty -> default_scale_grid(N)
    int poly_order = 5;
    bool both_ends = true;
    // Restrict the log-log regression to scales within [fit_min_scale, fit_max_scale].
    std::optional<std::size_t> fit_min_scale;
    std::optional<std::size_t> fit_max_scale;
    std::size_t jobs = 1;
};

// lo, lo + step, ..., hi (inclusive up to rounding).
std::vector<double> make_q_grid(double lo, double hi, double step);
std::vector<double> default_q_grid();

// `count` log-spaced integer scales in [lo, hi], rounded and deduplicated.
std::vector<std::size_t> log_scale_grid(std::size_t lo, std::size_t hi, std::size_t count);
// 16 .. N/4, 30 points.
std::vector<std::size_t> default_scale_grid(std::size_t n);

// Fills empty grids with defaults for a series of length n and checks the
// invariants (q strictly increasing and containing 2, min scale >= m + 2,
// max scale <= n / 4). Throws InputError on violation.
MfdfaConfig resolve_config(MfdfaConfig config, std::size_t n);

// Cumulative sum of the demeaned series. Throws DegenerateInputError for a
// constant series and InputError for fewer than 4 points.
std::vector<double> profile(std::span<const double> series);

struct Window {
    std::size_t begin = 0;
    std::size_t length = 0;
};

// floor(n/s) windows from the start and, when both_ends, floor(n/s) more
// aligned to the end.
std::vector<Window> segment(std::size_t n, std::size_t s, bool both_ends);

// Least-squares polynomial detrending for windows of one fixed length. The
// abscissa is mapped to [-1, 1] and the Vandermonde basis orthonormalised
// once, so every window costs two thin mat-vec products.
class PolynomialDetrender {
public:
    PolynomialDetrender(std::size_t length, int order);

    std::size_t length() const noexcept { return length_; }
    int order() const noexcept { return order_; }

    // Mean squared residual F^2(nu, s) after removing the best-fit polynomial.
    double mean_squared_residual(std::span<const double> window) const;
    std::vector<double> residuals(std::span<const double> window) const;

private:
    std::size_t length_;
    int order_;
    Eigen::MatrixXd basis_;  // length x (order + 1), orthonormal columns
};

// Root mean square of the order-m residuals of one window.
double segment_rms(std::span<const double> window, int order);

// q-th order mean of window fluctuations given their squared RMS values:
// ((1/K) sum (F^2)^{q/2})^{1/q}, or exp((1/2K) sum ln F^2) for q = 0.
// Zero entries are skipped for q <= 0; the number skipped is written to
// *excluded when provided. Returns NaN when nothing is left to average.
double q_order_mean(std::span<const double> squared_rms, double q, std::size_t* excluded = nullptr);

struct FluctuationSurface {
    std::vector<double> q;
    std::vector<std::size_t> scales;
    // values[iq * scales.size() + is] = F_q(s)
    std::vector<double> values;
    std::vector<std::size_t> segments;       // per scale: windows used
    std::vector<std::size_t> zero_segments;  // per scale: windows with F = 0

    double at(std::size_t iq, std::size_t is) const { return values[iq * scales.size() + is]; }
};

FluctuationSurface fluctuation(std::span<const double> profile, const MfdfaConfig& config);

struct ScalingExponents {
    std::vector<double> q;
    std::vector<double> h;
    std::vector<double> tau;
    std::vector<double> h_stderr;
    std::vector<double> r2;
    std::vector<double> intercept;  // ln c(q)
    std::vector<bool> fit_ok;
    std::size_t fit_min_scale = 0;
    std::size_t fit_max_scale = 0;
    std::vector<std::string> warnings;

    bool all_ok() const;
};

// OLS of ln F_q(s) on ln s per q. Non-finite points are dropped; a q with
// fewer than 5 usable scales is flagged (fit_ok = false, h = NaN).
ScalingExponents fit_h(const FluctuationSurface& surface,
                       std::optional<std::size_t> fit_min_scale = std::nullopt,
                       std::optional<std::size_t> fit_max_scale = std::nullopt);

struct Analysis {
    MfdfaConfig config;  // resolved
    FluctuationSurface surface;
    ScalingExponents exponents;
};

// profile -> fluctuation -> fit_h on the (concatenated) series.
Analysis analyze(std::span<const double> series, const MfdfaConfig& config);

enum class PadMode { Trim, ZeroPad };

struct PartitionEstimate {
    std::vector<double> q;
    std::vector<double> tau;
    std::vector<double> r2;
    std::vector<unsigned> depths;
    std::vector<std::size_t> excluded_boxes;  // per q, summed over depths
    std::size_t length_used = 0;
};

// Box-sum partition function Z_q(eps) = sum |S(n eps; eps)|^q over dyadic
// boxes eps = 2^-j, j in depths; tau(q) is the slope of ln Z_q on ln eps.
// Empty depths -> 1 .. log2(N) - 1. Zero boxes are skipped for q <= 0.
PartitionEstimate partition_function_oracle(std::span<const double> series,
                                            const std::vector<double>& q_grid,
                                            std::vector<unsigned> depths = {},
                                            PadMode pad = PadMode::Trim);

}  // namespace mftk::mfdfa
