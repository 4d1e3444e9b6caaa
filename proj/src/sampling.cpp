#include "adhm/sampling.hpp"

namespace adhm {

int Sampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Sampler::coin(int num, int den) { return uniform(1, den) <= num; }

GaussianRational Sampler::scalar() {
    Rational re(Integer(uniform(-4, 4)), Integer(uniform(1, 3)));
    re.canonicalize();
    Rational im(0);
    if (coin(1, 3)) {
        im = Rational(Integer(uniform(-3, 3)), Integer(uniform(1, 2)));
        im.canonicalize();
    }
    return {re, im};
}

GaussianRational Sampler::nonzero_scalar() {
    for (;;) {
        GaussianRational x = scalar();
        if (!x.is_zero()) return x;
    }
}

GaussianRational Sampler::small_scalar(const Rational& bound) {
    GaussianRational x = nonzero_scalar();
    while (x.norm() >= bound) x /= GaussianRational(2);
    return x;
}

MatrixC Sampler::matrix(std::size_t rows, std::size_t cols) {
    MatrixC m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar();
    return m;
}

MatrixC Sampler::invertible(std::size_t n) {
    for (;;) {
        MatrixC g = matrix(n, n);
        if (rank(g) == n) return g;
    }
}

std::pair<MatrixC, MatrixC> Sampler::framing(std::size_t r, bool zero_b, bool zero_c) {
    MatrixC b(1, r), c(r, 1);
    if (!zero_b)
        while (b.is_zero()) b = matrix(1, r);
    if (!zero_c) {
        if (zero_b) {
            while (c.is_zero()) c = matrix(r, 1);
        } else {
            if (r < 2) throw InvalidArgument("bc = 0 with b, c nonzero needs r >= 2");
            // Random nonzero combination of the kernel of b.
            const MatrixC ker = null_space(b);
            while (c.is_zero()) c = ker * matrix(ker.cols(), 1);
        }
    }
    return {b, c};
}

Config0 Sampler::config0_k1(std::size_t r, bool zero_b, bool zero_c) {
    auto [b, c] = framing(r, zero_b, zero_c);
    return Config0(matrix(1, 1), matrix(1, 1), b, c);
}

Config1 Sampler::config1_k1(std::size_t r, const GaussianRational& d, bool zero_b, bool zero_c) {
    auto [b, c] = framing(r, zero_b, zero_c);
    MatrixC a1 = matrix(1, 1), a2 = matrix(1, 1);
    if (zero_b)
        while (a1.is_zero() && a2.is_zero()) a1 = matrix(1, 1);
    return Config1(a1, a2, MatrixC{{d}}, b, c);
}

Config0 Sampler::config0_k1_near(std::size_t r, const NeighborhoodSpec& nb, bool zero_b, bool zero_c) {
    Config0 m = config0_k1(r, zero_b, zero_c);
    m.a1(0, 0) = nb.center + (coin(1, 4) ? GaussianRational(0) : small_scalar(nb.delta_sq));
    return m;
}

BlowupCenters Sampler::centers() {
    for (;;) {
        Point2 l{scalar(), scalar()}, r{scalar(), scalar()};
        if (!(l.x1 == r.x1)) return {l, r};
    }
}

Config1 Sampler::config1_k1_small_d(std::size_t r, const NeighborhoodSpec& nb, bool zero_b, bool zero_c) {
    Config1 m = config1_k1(r, 0, zero_b, zero_c);
    if (coin(2, 3)) m.d(0, 0) = small_scalar(nb.delta_sq / (m.a1(0, 0).norm() + 1));
    return m;
}

SurfacePoint Sampler::surface_point(const BlowupCenters& c, const NeighborhoodSpec& nb, SurfaceKind kind) {
    const Point2 z = c.z();
    switch (kind) {
        case SurfaceKind::Both: {
            const Config0 y = boxplus0(config0_k1_near(2, nb.around(c.xL.x1)), config0_k1_near(2, nb.around(c.xR.x1)));
            return SurfacePoint::from_left(pullback_blowup(y, c.xL), c);
        }
        case SurfaceKind::LeftOnly:
            return SurfacePoint::from_left(
                boxplusL(config1_k1_small_d(2, nb), config0_k1_near(2, nb.around(z.x1))), c);
        case SurfaceKind::RightOnly:
            return SurfacePoint::from_right(
                boxplusL(config1_k1_small_d(2, nb), config0_k1_near(2, nb.around(-z.x1))), c);
        case SurfaceKind::C:
            return SurfacePoint::c_point(config1_k1(2, 0), config1_k1(2, 0));
    }
    throw InvalidArgument("unknown surface kind");
}

}  // namespace adhm
