#include "doctest.h"

#include <random>

#include "adhm/spectral.hpp"

using namespace adhm;

namespace {

const GradedRing kA({{"a1", 2}, {"a2", 4}});
const GradedRing kKA({{"a1", 2}, {"k1", 2}, {"a2", 4}, {"k2", 4}});
const GradedRing kX({{"x1", 2}, {"x2", 2}, {"x3", 2}, {"x4", 2}});
const GradedRing kN0({{"n0L", 2}, {"n0R", 2}});

bool divides(const Exponent& g, const Exponent& e) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] > e[i]) return false;
    return true;
}

// Monomials of degree n outside the ideal, counted directly.
std::uint64_t quotient_count(const GradedRing& r, const std::vector<Exponent>& gens, int n) {
    std::uint64_t c = 0;
    for (const auto& e : monomial_basis(r, n)) {
        bool in = false;
        for (const auto& g : gens) in = in || divides(g, e);
        c += !in;
    }
    return c;
}

}  // namespace

TEST_CASE("graded rings") {
    CHECK(kA.index_of("a2") == 1);
    CHECK_THROWS_AS(kA.index_of("b"), InvalidArgument);
    CHECK_THROWS_AS(GradedRing({{"x", 3}}), InvalidArgument);
    CHECK_THROWS_AS(GradedRing({{"x", 0}}), InvalidArgument);
    CHECK_THROWS_AS(GradedRing({{"x", 2}, {"x", 4}}), InvalidArgument);
    CHECK(weighted_degree(kKA, {1, 0, 1, 1}) == 10);
}

TEST_CASE("monomial bases") {
    const auto b8 = monomial_basis(kA, 8);
    CHECK(b8 == std::vector<Exponent>{{4, 0}, {2, 1}, {0, 2}});
    for (int n : {1, 3, 7, 11}) CHECK(monomial_basis(kKA, n).empty());
    CHECK(monomial_basis(kX, 4).size() == 10);
    CHECK(monomial_basis(kX, 0) == std::vector<Exponent>{{0, 0, 0, 0}});
    for (int n = 0; n <= 16; n += 2) CHECK(monomial_basis(kKA, n).size() == free_ring_hilbert(kKA, n));
}

TEST_CASE("polynomials") {
    const Polynomial p = parse_polynomial(kN0, "n0L^2 + 2*n0L*n0R - n0R^2");
    CHECK(p.terms().size() == 3);
    CHECK(p.is_homogeneous(kN0, 4));
    CHECK_FALSE(p.is_homogeneous(kN0, 2));
    CHECK(parse_polynomial(kN0, polynomial_to_string(kN0, p)) == p);
    const Polynomial s = parse_polynomial(kN0, "n0L + n0R");
    CHECK(s * s - parse_polynomial(kN0, "n0L^2 + 2*n0L*n0R + n0R^2") == Polynomial(2));
    CHECK(parse_polynomial(kN0, "0").is_zero());
    CHECK_THROWS_AS(parse_polynomial(kN0, "n0L + q"), InvalidArgument);
    CHECK_THROWS_AS(parse_polynomial(kN0, "n0L +"), ParseError);
}

TEST_CASE("Hilbert functions") {
    const auto ka = GradedModuleSpec::monomial_ideal(kKA, {{0, 1, 0, 0}, {0, 0, 0, 1}});
    CHECK(hilbert(ka, 0) == 0);
    CHECK(hilbert(ka, 2) == 1);
    CHECK(hilbert(ka, 4) == 3);
    const auto kc = GradedModuleSpec::monomial_ideal(kX, {{1, 1, 0, 0}});
    CHECK(hilbert(kc, 2) == 0);
    CHECK(hilbert(kc, 4) == 1);
    // principal ideal on a degree-4 generator: t^4 / (1 - t^2)^4
    for (int m = 2; m <= 12; ++m) CHECK(hilbert(kc, 2 * m) == free_ring_hilbert(kX, 2 * m - 4));

    GradedModuleSpec sum;
    sum.add_summand(GradedModuleSpec::free_ring(kA), 1);
    sum.add_summand(ka, 3);
    for (int n = 0; n <= 12; ++n) CHECK(hilbert(sum, n) == free_ring_hilbert(kA, n) + 3 * hilbert(ka, n));
}

TEST_CASE("ideal and quotient counts add up to the ring") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> e(0, 2), ngen(1, 3);
    for (int t = 0; t < 60; ++t) {
        std::vector<Exponent> gens;
        for (int g = ngen(rng); g > 0; --g) {
            Exponent x{e(rng), e(rng), e(rng), e(rng)};
            if (x == Exponent{0, 0, 0, 0}) x[0] = 1;
            gens.push_back(x);
        }
        const auto ideal = GradedModuleSpec::monomial_ideal(kKA, gens);
        for (int n = 0; n <= 16; n += 2)
            CHECK(hilbert(ideal, n) + quotient_count(kKA, gens, n) == free_ring_hilbert(kKA, n));
    }
}

TEST_CASE("ring map matrices") {
    const RingMap whitney = RingMap::from_strings(kA, kN0, {"n0L + n0R", "n0L*n0R"});
    CHECK(map_matrix(whitney, 4) == IntMatrix{{1, 0}, {2, 1}, {1, 0}});
    RingMap neg = whitney;
    neg.sign = -1;
    CHECK(map_matrix(neg, 4) == -map_matrix(whitney, 4));
    const RingMap id = RingMap::from_strings(kKA, kKA, {"a1", "k1", "a2", "k2"});
    for (int n = 0; n <= 10; n += 2) CHECK(map_matrix(id, n) == IntMatrix::identity(free_ring_hilbert(kKA, n)));
    CHECK_THROWS_AS(RingMap::from_strings(kA, kN0, {"n0L", "n0L"}), DegreeMismatch);
    CHECK_THROWS_AS(RingMap::from_strings(kA, kN0, {"n0L"}), ShapeMismatch);
}

TEST_CASE("map matrices respect composition") {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<int> c(-2, 2);
    const GradedRing mid({{"u", 2}, {"v", 2}, {"w", 4}});
    auto random_image = [&](const GradedRing& target, int deg) {
        Polynomial p(target.size());
        for (const auto& e : monomial_basis(target, deg)) p.add_term(e, c(rng));
        return p;
    };
    for (int t = 0; t < 40; ++t) {
        RingMap f{kA, mid, {random_image(mid, 2), random_image(mid, 4)}, t % 2 ? -1 : 1};
        RingMap g{mid, kX, {random_image(kX, 2), random_image(kX, 2), random_image(kX, 4)}, 1};
        f.validate();
        g.validate();
        const RingMap gf = RingMap::compose(g, f);
        for (int n = 0; n <= 8; n += 2) CHECK(map_matrix(gf, n) == map_matrix(g, n) * map_matrix(f, n));
    }
}

TEST_CASE("kernel Hilbert functions") {
    const auto& p = charge2_pieces();
    CHECK(kernel_hilbert({p.N2_NL, p.N2_NR}, 4) == 1);
    CHECK(kernel_hilbert({p.AL_A0}, 2) == 1);
    const RingMap id = RingMap::from_strings(kA, kA, {"a1", "a2"});
    for (int n = 0; n <= 8; n += 2) CHECK(kernel_hilbert({id}, n) == 0);
    // kernels ignore signs
    RingMap neg = p.AL_A0;
    neg.sign = -1;
    for (int n = 0; n <= 12; n += 2) CHECK(kernel_hilbert({neg}, n) == kernel_hilbert({p.AL_A0}, n));

    const auto kc = GradedModuleSpec::monomial_ideal(p.N2, {{1, 0, 1, 0}});
    const auto kal = GradedModuleSpec::monomial_ideal(p.AL, {{1, 0, 0, 0}, {0, 0, 1, 0}});
    for (int n = 0; n <= 24; ++n) {
        CHECK(kernel_hilbert({p.N2_NL, p.N2_NR}, n) == hilbert(kc, n));
        CHECK(kernel_hilbert({p.AL_A0}, n) == hilbert(kal, n));
    }
}

TEST_CASE("charge-two module degrees match the rank-one baseline") {
    // q = 1 must be the free ring on generators of degrees 2, 2, 4, 4
    const auto spec = charge2_module_spec(1);
    for (int n = 0; n <= 24; ++n) CHECK(hilbert(spec, n) == free_ring_hilbert(kKA, n));
}
