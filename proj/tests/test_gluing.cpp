#include "doctest.h"

#include "adhm/sampling.hpp"

using namespace adhm;

namespace {

using G = GaussianRational;

const Config1 kM1({{2}}, {{3}}, {{0}}, {{1, 0}}, {{0}, {1}});
const Config0 kM2({{1}}, {{0}}, {{0, 1}}, {{1}, {0}});

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

const std::vector<Rational> kTimes{q(0), q(1, 4), q(1, 2), q(3, 4), q(1)};

}  // namespace

TEST_CASE("pullback, direct image and translation") {
    const Config0 m({{5}}, {{7}}, {{1, 0}}, {{0}, {1}});
    const Config1 at_origin = pullback_blowup(m, {0, 0});
    CHECK(at_origin.d == MatrixC{{1}});
    CHECK(at_origin.a1 == m.a1);
    const Config1 moved = pullback_blowup(m, {5, 7});
    CHECK(moved.a1 == MatrixC{{0}});
    CHECK(moved.a2 == MatrixC{{0}});

    CHECK(direct_image(at_origin) == m);
    Config1 s0 = kM1;
    const Config0 img = direct_image(s0);
    CHECK(img.a1.is_zero());
    CHECK(img.b.is_zero());
    CHECK(img.c == s0.c);

    CHECK(translate_tau(m, {0, 0}) == m);
    CHECK(translate_tau(translate_tau(m, {2, G(1, 3)}), {-2, -G(1, 3)}) == m);

    Sampler s(21);
    for (int trial = 0; trial < 100; ++trial) {
        const Config0 y = boxplus0(s.config0_k1(2), [&] {
            Config0 r = s.config0_k1(2);
            r.a1(0, 0) = s.coin() ? G(11) : G(-11);
            return r;
        }());
        const Point2 x{s.scalar(), s.scalar()};
        CHECK(integrable(pullback_blowup(y, x)));
        CHECK(direct_image(pullback_blowup(y, x)) == translate_tau(y, x));
        CHECK(integrable(translate_tau(y, x)));
        // ideal points shift with the translation
        Config0 ideal = y;
        ideal.b = MatrixC(2, 2);
        ideal.c = MatrixC(2, 2);
        ideal.a2 = MatrixC::diagonal({ideal.a2(0, 0), ideal.a2(1, 1)});
        auto shifted = canonical_reduction(ideal).points;
        for (auto& p : shifted) {
            p.l1 -= QuadExt(x.x1);
            p.l2 -= QuadExt(x.x2);
        }
        CHECK(same_points(shifted, canonical_reduction(translate_tau(ideal, x)).points));
    }
}

TEST_CASE("boxplus0") {
    const Config0 mL({{0}}, {{0}}, {{1, 0}}, {{0}, {1}});
    const Config0 mR({{1}}, {{0}}, {{0, 1}}, {{1}, {0}});
    const Config0 m = boxplus0(mL, mR);
    CHECK(m.a2 == MatrixC{{0, 1}, {-1, 0}});
    CHECK(integrable(m));
    CHECK(nondegenerate(m));
    CHECK_THROWS_AS(boxplus0(mL, mL), EigenvalueCollision);

    const Config0 point({{1}}, {{4}}, {{0, 0}}, {{0}, {0}});
    const Config0 split = boxplus0(mL, point);
    CHECK(split.a2(0, 1).is_zero());
    CHECK(split.a2(1, 0).is_zero());
    CHECK_FALSE(nondegenerate(split));
    const Reduction0 red = canonical_reduction(split);
    REQUIRE(red.points.size() == 1);
    CHECK(same_point(red.points[0], DUPoint{DUPoint::Surface::Plane, QuadExt(1), QuadExt(4), std::nullopt}));
}

TEST_CASE("boxplusL") {
    const Config1 m = boxplusL(kM1, kM2);
    CHECK(m.a1 == MatrixC{{2, 0}, {0, 1}});
    CHECK(m.a2 == MatrixC{{3, 1}, {-1, 0}});
    CHECK(m.d == MatrixC{{0, 0}, {0, 1}});
    CHECK(integrable(m));
    CHECK(nondegenerate(m));
    CHECK(m.c * m.d * m.b == MatrixC{{0, 1}, {0, 0}});

    Config0 collide = kM2;
    collide.a1(0, 0) = 0;
    CHECK_THROWS_AS(boxplusL(kM1, collide), EigenvalueCollision);

    // Pullback of a glued configuration is the glued pullback.
    Sampler s(22);
    for (int trial = 0; trial < 200; ++trial) {
        const Config0 m1 = s.config0_k1(2), m2 = s.config0_k1(2);
        if (m1.a1 == m2.a1) continue;
        const Point2 xL{s.scalar(), s.scalar()};
        const Config1 lhs = pullback_blowup(boxplus0(m1, m2), xL);
        const Config1 rhs = boxplusL(pullback_blowup(m1, xL), translate_tau(m2, xL));
        CHECK(same_orbit(lhs, rhs));
    }
}

TEST_CASE("gluing preserves integrability and detects degeneracy") {
    Sampler s(23);
    int forced = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const bool zb1 = s.coin(1, 5), zc1 = !zb1 && s.coin(1, 5), zb2 = s.coin(1, 5), zc2 = !zb2 && s.coin(1, 5);
        forced += zb1 || zc1 || zb2 || zc2;
        const Config0 l = s.config0_k1(2, zb1, zc1);
        Config0 r = s.config0_k1(2, zb2, zc2);
        if (l.a1 == r.a1) r.a1(0, 0) += G(1);
        const Config0 glued = boxplus0(l, r);
        CHECK(integrable(glued));
        CHECK(nondegenerate(glued) == !(zb1 || zc1 || zb2 || zc2));

        const Config1 m1 = s.config1_k1(2, s.scalar(), zb1, zc1);
        if (r.a1(0, 0) == m1.d(0, 0) * m1.a1(0, 0)) r.a1(0, 0) += G(1);
        const Config1 gl = boxplusL(m1, r);
        CHECK(integrability_defect(gl).is_zero());
        CHECK(effective(gl) == !(r.a1.is_zero() && r.a2.is_zero() && r.b.is_zero()));
        CHECK(nondegenerate(gl) == !(zb1 || zc1 || zb2 || zc2));
    }
    CHECK(forced > 20);
}

TEST_CASE("boxplusL inverse") {
    const Config1 m = boxplusL(kM1, kM2);
    const NeighborhoodSpec nb = NeighborhoodSpec::from_radius(q(1, 5), 1);
    const auto [f1, f2] = boxplusL_inverse(m, 1, nb);
    CHECK(f1 == kM1);
    CHECK(f2 == kM2);

    Config1 coincident = m;
    coincident.a1 = MatrixC::identity(2);
    coincident.d = MatrixC::identity(2);
    CHECK_THROWS_AS(boxplusL_inverse(coincident, 1, nb), NotInNL);
    CHECK_THROWS_AS(boxplusL_inverse(m, 7, nb), NotInNL);

    Sampler s(24);
    for (int trial = 0; trial < 200; ++trial) {
        const BlowupCenters c = s.centers();
        const NeighborhoodSpec n = NeighborhoodSpec::default_for(c);
        const Config1 a = s.config1_k1_small_d(2, n);
        const Config0 b = s.config0_k1_near(2, n.around(c.z().x1));
        const Config1 glued = boxplusL(a, b);
        const Config1 moved = group_act(glued, s.invertible(2), s.invertible(2));
        const auto [g1, g2] = boxplusL_inverse(moved, c.z().x1, n);
        CHECK(same_orbit(g1, a));
        CHECK(same_orbit(g2, b));
        CHECK(same_orbit(boxplusL(g1, g2), moved));
    }
}

TEST_CASE("boxplus0 inverse and canonical forms") {
    Sampler s(25);
    for (int trial = 0; trial < 100; ++trial) {
        const BlowupCenters c = s.centers();
        const NeighborhoodSpec n = NeighborhoodSpec::default_for(c);
        const Config0 l = s.config0_k1_near(2, n.around(c.xL.x1)), r = s.config0_k1_near(2, n.around(c.xR.x1));
        const Config0 y = group_act(boxplus0(l, r), s.invertible(2));
        const auto [gl, gr] = boxplus0_inverse(y, c, n);
        CHECK(same_orbit(gl, l));
        CHECK(same_orbit(gr, r));
        CHECK(canonical_form(y) == canonical_form(boxplus0(l, r)));
    }
    const Config0 scalar_a1(MatrixC::identity(2), MatrixC(2, 2), MatrixC(2, 1), MatrixC(1, 2));
    CHECK_FALSE(canonical_form(scalar_a1).has_value());
    CHECK(same_orbit(scalar_a1, scalar_a1));
}

TEST_CASE("classification of the image of C") {
    const Point2 z{1, 0};
    CHECK_FALSE(classify_C_image(boxplusL(kM1, kM2), z).in_image);

    const Config0 no_c({{1}}, {{0}}, {{0, 1}}, {{0}, {0}});
    const Config1 m = boxplusL(kM1, no_c);
    const CImageResult res = classify_C_image(m, z);
    REQUIRE(res.in_image);
    CHECK(res.s0_factor.d.is_zero());
    CHECK(same_orbit(res.block_form, m));
    CHECK(res.point_factor.a1 == MatrixC{{1}});

    const Config1 wrong({{0, 0}, {0, 5}}, MatrixC(2, 2), MatrixC::identity(2), MatrixC(2, 1), MatrixC(1, 2));
    const CImageResult bad = classify_C_image(wrong, z);
    CHECK_FALSE(bad.in_image);
    CHECK(bad.reason.find("d a1") != std::string::npos);
}

TEST_CASE("cover piece membership") {
    const NeighborhoodSpec nb = NeighborhoodSpec::from_radius(q(1, 2), 3);
    CHECK(membership(kM1, CoverPiece::S0, nb));
    CHECK_FALSE(membership(pullback_blowup(kM2, {0, 0}), CoverPiece::S0, nb));
    CHECK(membership(Config0({{3}}, {{0}}, {{1}}, {{0}}), CoverPiece::Nz, nb));
    CHECK(membership(Config0({{3}}, {{0}}, {{1}}, {{0}}), CoverPiece::Nz, NeighborhoodSpec::from_radius(q(1, 1000), 3)));
    // |d a1| = delta exactly is outside
    CHECK_FALSE(membership(Config1({{1}}, {{0}}, {{G(q(1, 2))}}, {{1}}, {{0}}), CoverPiece::NPrime, nb));
    CHECK(membership(Config1({{1}}, {{0}}, {{G(q(1, 3))}}, {{1}}, {{0}}), CoverPiece::NPrime, nb));
    CHECK(membership(boxplusL(kM1, kM2), CoverPiece::NLCanonical, NeighborhoodSpec::from_radius(q(1, 5), 1)));
    CHECK_FALSE(membership(boxplusL(kM1, kM2), CoverPiece::NLCanonical, NeighborhoodSpec::from_radius(q(1, 5), 2)));
    CHECK_THROWS_AS(membership(kM1, CoverPiece::Nz, nb), InvalidArgument);
    CHECK_THROWS_AS(NeighborhoodSpec::from_radius(0), InvalidArgument);
}

TEST_CASE("homotopies") {
    const Config0 y({{2}}, {{3}}, {{1, 0}}, {{0}, {1}});
    const Point2 x{5, -1};
    CHECK(homotopy_xy(y, x, 1) == y);
    const Config0 end = homotopy_xy(y, x, 0);
    CHECK(end.a1 == MatrixC{{5}});
    CHECK(end.a2 == MatrixC{{-1}});
    CHECK(end.b.is_zero());
    CHECK(end.c.is_zero());
    CHECK(homotopy_1(kM1, 1) == kM1);
    CHECK_THROWS_AS(homotopy_xy(y, x, 2), InvalidArgument);

    const Config1 m = boxplusL(kM1, kM2);
    const NeighborhoodSpec nb = NeighborhoodSpec::from_radius(q(1, 5), 1);
    CHECK(homotopy_L(m, {1, 0}, nb, 1) == m);

    Sampler s(26);
    for (int trial = 0; trial < 60; ++trial) {
        const BlowupCenters c = s.centers();
        const NeighborhoodSpec n = NeighborhoodSpec::default_for(c);
        const Config0 g = group_act(
            boxplus0(s.config0_k1_near(2, n.around(c.xL.x1)), s.config0_k1_near(2, n.around(c.xR.x1))), s.invertible(2));
        CHECK(homotopy_0(g, c, n, 1) == g);
        for (const auto& t : kTimes) {
            CHECK(integrable(homotopy_0(g, c, n, t)));
            // The two sides differ by the torus element (1/t, t); at t = 0 they
            // only agree in the orbit closure.
            if (t == 0) continue;
            const Config1 lhs = homotopy_L(pullback_blowup(g, c.xL), c.z(), n, t);
            const Config1 rhs = pullback_blowup(homotopy_0(g, c, n, t), c.xL);
            CHECK(same_orbit(lhs, rhs));
        }
    }
}

TEST_CASE("two-point homotopy") {
    Sampler s(27);
    for (int trial = 0; trial < 40; ++trial) {
        const BlowupCenters c = s.centers();
        const NeighborhoodSpec n = NeighborhoodSpec::default_for(c);
        for (auto kind : {Sampler::SurfaceKind::Both, Sampler::SurfaceKind::LeftOnly, Sampler::SurfaceKind::RightOnly,
                          Sampler::SurfaceKind::C}) {
            const SurfacePoint x = s.surface_point(c, n, kind);
            const SurfacePoint one = homotopy_H2(x, c, n, 1);
            CHECK(same_orbit(surface_left(one, c), surface_left(x, c)));
            CHECK(same_orbit(surface_right(one, c), surface_right(x, c)));
            const SurfacePoint zero = homotopy_H2(x, c, n, 0);
            CHECK(zero.kind == SurfacePoint::Kind::CPoint);
            CHECK(classify_C_image(surface_left(zero, c), c.z()).in_image);
            CHECK(classify_C_image(surface_right(zero, c), -c.z()).in_image);
            if (kind == Sampler::SurfaceKind::C) {
                for (const auto& t : kTimes) CHECK(homotopy_H2(x, c, n, t).left == x.left);
            }
            for (const auto& t : kTimes) {
                const H2Check chk = check_H2(x, c, n, t);
                CHECK(chk.ok());
            }
        }
    }
}

TEST_CASE("two-point homotopy rejects inconsistent pairs") {
    Sampler s(28);
    const BlowupCenters c({0, 0}, {1, 0});
    const NeighborhoodSpec n = NeighborhoodSpec::default_for(c);
    const SurfacePoint x = s.surface_point(c, n, Sampler::SurfaceKind::Both);
    SurfacePoint broken = x;
    broken.right.b = broken.right.b * G(3);
    broken.right.c = broken.right.c * G(5);
    CHECK_THROWS_AS(homotopy_H2(broken, c, n, q(1, 2)), InconsistentPair);
    const SurfacePoint far = SurfacePoint::pair(pullback_blowup(boxplus0(kM2, Config0({{40}}, {{0}}, {{1, 0}}, {{0}, {1}})), {0, 0}),
                                                pullback_blowup(boxplus0(kM2, Config0({{40}}, {{0}}, {{1, 0}}, {{0}, {1}})), {1, 0}));
    CHECK_THROWS_AS(homotopy_H2(far, c, n, q(1, 2)), InconsistentPair);
    CHECK_THROWS_AS(BlowupCenters({1, 0}, {1, 2}), InvalidArgument);
}

TEST_CASE("boxplusL with a plane factor at the origin and b'' = 0") {
    const Config0 bare({{0}}, {{0}}, {{0, 0}}, {{1}, {0}});
    const Config1 gl = boxplusL(Config1({{2}}, {{3}}, {{1}}, {{1, 0}}, {{0}, {1}}), bare);
    CHECK(integrability_defect(gl).is_zero());
    CHECK_FALSE(effective(gl));
    CHECK_FALSE(integrable(gl));
}
