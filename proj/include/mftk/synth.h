#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mftk::synth {

struct FgnSpec {
    double hurst = 0.5;
    std::size_t length = 0;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

struct CascadeSpec {
    double multiplier = 0.6;  // mass fraction a sent to one half at every split
    unsigned levels = 1;      // series length is 2^levels
    std::uint64_t seed = 0;
    bool randomize_placement = false;
};

// Largest cascade we agree to materialise (2^27 doubles = 1 GiB).
inline constexpr unsigned kMaxCascadeLevels = 27;

std::vector<double> generate_gaussian_iid(std::size_t n, double sigma, std::uint64_t seed);

// Autocovariance of unit-step fractional Gaussian noise:
// (sigma^2 / 2) (|k+1|^2H - 2|k|^2H + |k-1|^2H).
double fgn_autocovariance(double hurst, double sigma, std::size_t lag);

// Eigenvalues of the 2n-point circulant embedding of the fGn covariance
// (first row gamma(0..n), gamma(n-1..1)). Exact synthesis needs them all >= 0.
std::vector<double> fgn_circulant_eigenvalues(double hurst, double sigma, std::size_t n);

// Exact fGn. Uses circulant embedding (Davies-Harte); if the embedding has a
// negative eigenvalue it falls back to the exact Durbin-Levinson recursion.
std::vector<double> generate_fgn(const FgnSpec& spec);

// Exact O(n^2) Durbin-Levinson (Hosking) synthesis. Exposed for testing the
// fallback path.
std::vector<double> generate_fgn_recursive(const FgnSpec& spec);

std::vector<double> cumulative_sum(const std::vector<double>& increments);

// Binomial multiplicative cascade on 2^levels cells, total mass 1.
std::vector<double> generate_binomial_cascade(const CascadeSpec& spec);

// -log2(a^q + (1-a)^q)
double analytic_tau_cascade(double a, double q);

// d tau / d q of the cascade, i.e. the Hoelder exponent alpha(q).
double analytic_alpha_cascade(double a, double q);

}  // namespace mftk::synth
