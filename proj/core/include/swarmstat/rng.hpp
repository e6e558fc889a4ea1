#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Dense>

namespace swarmstat {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Seeded RNG with a fixed draw contract so simulations replay bit-exactly.
///
/// Every distribution is derived by hand from the raw mt19937_64 stream:
///   uniform()      one engine draw  -> 53-bit double in [0, 1)
///   normal_pair()  two engine draws -> Box-Muller pair
///   normal()       two engine draws -> first element of a Box-Muller pair
///   normal2(L)     two engine draws -> L * (z0, z1)
///   poisson(l)     k+1 engine draws for a count of k (Knuth)
/// std::* distributions are avoided on purpose: their draw sequences are
/// implementation-defined and would break cross-build reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    std::pair<double, double> normal_pair() {
        const double u1 = 1.0 - uniform();  // (0, 1]; keeps the log finite
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = kTwoPi * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

    double normal() { return normal_pair().first; }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Zero-mean bivariate normal with covariance L*L^T, L lower-triangular.
    Eigen::Vector2d normal2(const Eigen::Matrix2d& chol_lower) {
        const auto [z0, z1] = normal_pair();
        return chol_lower * Eigen::Vector2d(z0, z1);
    }

    /// Knuth's product-of-uniforms method; fine for the rates used here.
    int poisson(double rate) {
        if (rate <= 0.0) return 0;
        const double limit = std::exp(-rate);
        int count = 0;
        double prod = uniform();
        while (prod > limit) {
            ++count;
            prod *= uniform();
        }
        return count;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace swarmstat
