#pragma once

#include <cstdint>
#include <random>

#include "adhm/gluing.hpp"

namespace adhm {

/// Deterministic generator of small exact test data.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi);  // inclusive
    bool coin(int num = 1, int den = 2);

    /// Entries p/q with |p| <= 4, q <= 3; imaginary part about a third of the time.
    GaussianRational scalar();
    GaussianRational nonzero_scalar();
    /// Nonzero value with |x|^2 < bound.
    GaussianRational small_scalar(const Rational& bound);
    MatrixC matrix(std::size_t rows, std::size_t cols);
    MatrixC invertible(std::size_t n);

    /// Charge-one plane configuration with bc = 0. Needs r >= 2 when both b
    /// and c are nonzero.
    Config0 config0_k1(std::size_t r, bool zero_b = false, bool zero_c = false);
    Config1 config1_k1(std::size_t r, const GaussianRational& d, bool zero_b = false, bool zero_c = false);
    /// Same, with a1 inside the disc nb.
    Config0 config0_k1_near(std::size_t r, const NeighborhoodSpec& nb, bool zero_b = false, bool zero_c = false);

    /// Centers with distinct first coordinates.
    BlowupCenters centers();
    /// Charge-one blow-up configuration in N' (|d a1| < delta).
    Config1 config1_k1_small_d(std::size_t r, const NeighborhoodSpec& nb, bool zero_b = false, bool zero_c = false);

    enum class SurfaceKind { Both, LeftOnly, RightOnly, C };
    /// Non-degenerate point of the given kind (r = 2).
    SurfacePoint surface_point(const BlowupCenters& centers, const NeighborhoodSpec& nb, SurfaceKind kind);

    std::mt19937_64& engine() { return rng_; }

private:
    std::pair<MatrixC, MatrixC> framing(std::size_t r, bool zero_b, bool zero_c);

    std::mt19937_64 rng_;
};

}  // namespace adhm
