#include "doctest.h"

#include "adhm/gluing.hpp"
#include "adhm/sampling.hpp"

using namespace adhm;

namespace {

using G = GaussianRational;

const Mono5 X3SQ{0, 0, 2, 0, 0};

Config1 example_config1() {
    return Config1({{2, 0}, {0, 1}}, {{3, 1}, {-1, 0}}, {{0, 0}, {0, 1}}, {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}});
}

// Only the x3^2 term survives and it carries the integrability defect.
bool residual_is_defect(const MonadPolynomial& p, const MatrixC& defect) {
    if (defect.is_zero()) return p.is_zero();
    if (p.terms().size() != 1 || p.terms().begin()->first != X3SQ) return false;
    MatrixC rest = p.terms().begin()->second;
    const std::size_t k = defect.rows();
    if (!(rest.block(0, 0, k, k) == defect)) return false;
    rest.set_block(0, 0, MatrixC(k, k));
    return rest.is_zero();
}

Config0 random_degenerate0(Sampler& s) {
    for (;;) {
        Config0 l = s.config0_k1(2, s.coin(1, 3), false);
        Config0 r = s.config0_k1(2, s.coin(), s.coin());
        if (!r.b.is_zero() && !r.c.is_zero() && !l.b.is_zero()) r = s.config0_k1(2, true, false);
        if (l.a1 == r.a1) continue;
        return s.coin() ? boxplus0(l, r) : boxplus0(r, l);
    }
}

Config0 random_glued0(Sampler& s) {
    for (;;) {
        const Config0 l = s.config0_k1(2), r = s.config0_k1(2);
        if (!(l.a1 == r.a1)) return boxplus0(l, r);
    }
}

Config1 random_config1(Sampler& s, bool degenerate) {
    for (;;) {
        const G d = s.coin(1, 3) ? G(0) : s.scalar();
        Config1 m1 = s.config1_k1(2, d, degenerate && s.coin(1, 4), false);
        Config0 m2 = s.config0_k1(2, degenerate && s.coin(), degenerate && s.coin());
        if (degenerate && !m1.b.is_zero() && !m2.b.is_zero() && !m2.c.is_zero()) m2 = s.config0_k1(2, false, true);
        if (m2.a1(0, 0) == d * m1.a1(0, 0)) continue;
        Config1 m = boxplusL(m1, m2);
        if (!integrable(m)) continue;
        return m;
    }
}

}  // namespace

TEST_CASE("integrability examples") {
    CHECK(integrable(Config0({{0}}, {{0}}, {{1, 0}}, {{0}, {1}})));
    CHECK_FALSE(integrable(Config0({{0}}, {{0}}, {{1, 1}}, {{1}, {1}})));
    const Config1 m = example_config1();
    CHECK(integrability_defect(m).is_zero());
    CHECK(effective(m));
    CHECK(integrable(m));
}

TEST_CASE("configuration shapes are validated") {
    CHECK_THROWS_AS(Config0({{0}}, {{0, 1}}, {{1}}, {{1}}), ShapeMismatch);
    CHECK_THROWS_AS(Config1({{0}}, {{0}}, {{1}}, {{1, 0}}, {{1}}), ShapeMismatch);
    CHECK(Config0::empty(3).r() == 3);
    CHECK(Config0::empty(3).k() == 0);
}

TEST_CASE("monad residual of plane configurations") {
    const Config0 m({{0}}, {{0}}, {{1, 0}}, {{0}, {1}});
    CHECK(monad_residual(m).is_zero());

    Sampler s(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = s.uniform(1, 2), r = s.uniform(1, 2);
        const Config0 g(s.matrix(k, k), s.matrix(k, k), s.matrix(k, r), s.matrix(r, k));
        const MonadPolynomial p = monad_residual(g);
        REQUIRE(p.terms().size() <= 1);
        CHECK(p.coefficient(X3SQ) == integrability_defect(g));
    }
}

TEST_CASE("monad residual of blow-up configurations") {
    CHECK(monad_residual(example_config1()).is_zero());
    CHECK(mono_to_string(X3SQ) == "x3^2");
    CHECK(mono_to_string({1, 0, 0, 1, 0}) == "x1*y1");

    Sampler s(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Config1 m = random_config1(s, s.coin());
        CHECK(monad_residual(m).is_zero());
        // pullbacks of integrable plane configurations
        const Config0 y = random_glued0(s);
        CHECK(monad_residual(pullback_blowup(y, {s.scalar(), s.scalar()})).is_zero());
        // breaking integrability leaves exactly the defect
        Config1 bad = m;
        bad.a2(0, 0) += G(1);
        if (!integrability_defect(bad).is_zero()) {
            const MonadPolynomial p = monad_residual(bad);
            CHECK_FALSE(p.is_zero());
            CHECK(residual_is_defect(p, integrability_defect(bad)));
        }
    }
}

TEST_CASE("relation rewriting keeps x1*y1 out of the normal form") {
    MonadPolynomial p(1, 1, false);
    p.add_term({2, 0, 0, 1, 0}, MatrixC{{1}});
    CHECK(p.coefficient({2, 0, 0, 1, 0}) == MatrixC{{1}});
    p.set_relation(true);
    CHECK(p.coefficient({1, 1, 0, 0, 1}) == MatrixC{{-1}});
    for (const auto& [mono, c] : p.terms()) CHECK_FALSE((mono[0] > 0 && mono[3] > 0));
}

TEST_CASE("special subspaces") {
    SUBCASE("charge one has none") {
        const Config0 m({{1}}, {{2}}, {{1, 0}}, {{0}, {1}});
        CHECK(special_subspaces(m).empty());
        CHECK(nondegenerate(m));
    }
    SUBCASE("block sum with a zeroed c-block") {
        const Config0 m({{0, 0}, {0, 1}}, {{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{0, 0}, {1, 0}});
        CHECK(integrable(m));
        const SpecialReport rep = special_subspaces(m);
        REQUIRE(rep.lines.size() == 1);
        CHECK(rep.lines[0].kind == SpecialSubspace::Kind::C);
        CHECK(parallel(rep.lines[0].v, VectorQ{0, 1}));
        CHECK(is_c_special(m, rep.lines[0].v));
        CHECK_FALSE(nondegenerate(m));
    }
    SUBCASE("rank-two b admits no b-special line") {
        const Config0 m(MatrixC(2, 2), MatrixC(2, 2), {{1, 0}, {0, 1}}, {{1, 0}, {0, 1}});
        for (const auto& l : special_subspaces(m).lines) CHECK(l.kind != SpecialSubspace::Kind::B);
    }
    SUBCASE("zero framing is flagged") {
        const Config0 m({{1, 0}, {0, 2}}, MatrixC(2, 2), MatrixC(2, 1), MatrixC(1, 2));
        const SpecialReport rep = special_subspaces(m);
        CHECK(rep.b_zero);
        CHECK(rep.c_zero);
        CHECK(rep.lines.size() == 4);  // two eigenlines, each of both kinds
    }
    SUBCASE("irrational invariant lines") {
        const Config0 m({{0, 2}, {1, 0}}, MatrixC(2, 2), MatrixC(2, 1), MatrixC(1, 2));
        const SpecialReport rep = special_subspaces(m);
        REQUIRE_FALSE(rep.lines.empty());
        const bool both_rational = rep.lines[0].v[1].in_base_field() && rep.lines[0].v[0].in_base_field();
        CHECK_FALSE(both_rational);
        for (const auto& l : rep.lines) CHECK(is_b_special(m, l.v));
    }
    SUBCASE("blow-up pairs") {
        const Config1 m = example_config1();
        CHECK(special_subspaces(m).empty());
        CHECK(nondegenerate(m));
        // c'' = 0 leaves the pair (e2, e2) c-special
        const Config1 deg = boxplusL(Config1({{2}}, {{3}}, {{0}}, {{1, 0}}, {{0}, {1}}),
                                     Config0({{1}}, {{0}}, {{0, 1}}, {{0}, {0}}));
        const SpecialReport rep = special_subspaces(deg);
        REQUIRE_FALSE(rep.lines.empty());
        for (const auto& l : rep.lines) {
            CHECK(l.pair);
            if (l.kind == SpecialSubspace::Kind::C) CHECK(is_c_special(deg, l.v, l.w));
            else CHECK(is_b_special(deg, l.v, l.w));
        }
        CHECK_FALSE(nondegenerate(deg));
    }
    SUBCASE("charge three is rejected") {
        const Config0 m(MatrixC(3, 3), MatrixC(3, 3), MatrixC(3, 1), MatrixC(1, 3));
        CHECK_THROWS_AS(special_subspaces(m), ChargeTooLarge);
        CHECK_THROWS_AS(nondegenerate(m), ChargeTooLarge);
    }
}

TEST_CASE("non-degeneracy") {
    CHECK(nondegenerate(Config0({{0}}, {{0}}, {{1, 0}}, {{0}, {1}})));
    CHECK_FALSE(nondegenerate(Config0({{0}}, {{0}}, {{0, 0}}, {{0}, {1}})));
    CHECK_FALSE(nondegenerate(Config0({{0}}, {{0}}, {{1, 0}}, {{0}, {0}})));
    const Config0 glued = boxplus0(Config0({{0}}, {{0}}, {{1, 0}}, {{0}, {1}}), Config0({{1}}, {{0}}, {{0, 1}}, {{1}, {0}}));
    CHECK(nondegenerate(glued));
    Config0 no_c = glued;
    no_c.c = MatrixC(2, 2);
    CHECK_FALSE(nondegenerate(no_c));

    Sampler s(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Config0 m = s.config0_k1(2, s.coin(1, 3), s.coin(1, 3));
        CHECK(nondegenerate(m) == (!m.b.is_zero() && !m.c.is_zero()));
        CHECK(integrable(m));
        Config0 n(s.matrix(1, 1), s.matrix(1, 1), s.matrix(1, 2), s.matrix(2, 1));
        CHECK(integrable(n) == (n.b * n.c).is_zero());
    }
}

TEST_CASE("group actions") {
    const Config0 m({{0, 1}, {0, 0}}, MatrixC(2, 2), {{1}, {0}}, {{0, 1}});
    CHECK(group_act(m, MatrixC::identity(2)) == m);
    CHECK(group_act(m, {{1, 0}, {0, 2}}).a1 == MatrixC{{0, 2}, {0, 0}});
    CHECK_THROWS_AS(group_act(m, {{1, 2}, {2, 4}}), SingularGroupElement);

    const Config0 k1({{3}}, {{4}}, {{2, 1}}, {{1}, {-2}});
    const Config0 act = group_act(k1, {{G(5)}});
    CHECK(act.a1 == k1.a1);
    CHECK(act.b == k1.b * G(Rational(1, 5)));
    CHECK(act.c == k1.c * G(5));
    CHECK(act.b * act.c == k1.b * k1.c);

    const Config1 e = example_config1();
    CHECK(group_act(e, MatrixC::identity(2), MatrixC::identity(2)) == e);
    CHECK_THROWS_AS(group_act(e, MatrixC(2, 2), MatrixC::identity(2)), SingularGroupElement);
}

TEST_CASE("group actions preserve integrability, non-degeneracy and DU points") {
    Sampler s(14);
    for (int trial = 0; trial < 200; ++trial) {
        const Config0 m = trial % 2 ? random_degenerate0(s) : random_glued0(s);
        const Config0 g = group_act(m, s.invertible(2));
        CHECK(integrable(g));
        CHECK(nondegenerate(g) == nondegenerate(m));
        CHECK(same_points(canonical_reduction(m).points, canonical_reduction(g).points));

        const Config1 n = random_config1(s, trial % 2);
        const Config1 h = group_act(n, s.invertible(2), s.invertible(2));
        CHECK(integrable(h));
        CHECK(nondegenerate(h) == nondegenerate(n));
        CHECK(same_points(canonical_reduction(n).points, canonical_reduction(h).points));
    }
}

TEST_CASE("canonical reduction") {
    SUBCASE("ideal configuration of charge one") {
        const Reduction0 red = canonical_reduction(Config0({{3}}, {{-2}}, {{0, 0}}, {{0}, {0}}));
        CHECK(red.reduced.k() == 0);
        CHECK(red.reduced.r() == 2);
        REQUIRE(red.points.size() == 1);
        CHECK(same_point(red.points[0], DUPoint{DUPoint::Surface::Plane, QuadExt(3), QuadExt(-2), std::nullopt}));
        CHECK_FALSE(red.was_nondegenerate);
    }
    SUBCASE("block sum with an ideal point") {
        const Config0 good({{0}}, {{1}}, {{1, 0}}, {{0}, {1}});
        const Config0 m = boxplus0(good, Config0({{5}}, {{7}}, {{0, 0}}, {{0}, {0}}));
        const Reduction0 red = canonical_reduction(m);
        REQUIRE(red.points.size() == 1);
        CHECK(same_point(red.points[0], DUPoint{DUPoint::Surface::Plane, QuadExt(5), QuadExt(7), std::nullopt}));
        CHECK(red.reduced.k() == 1);
        CHECK(same_orbit(red.reduced, good));
        CHECK(nondegenerate(red.reduced));
    }
    SUBCASE("non-degenerate input is returned") {
        const Config1 e = example_config1();
        const Reduction1 red = canonical_reduction(e);
        CHECK(red.was_nondegenerate);
        CHECK(red.reduced == e);
        CHECK(red.points.empty());
    }
    SUBCASE("blow-up point with its direction") {
        const Reduction1 red = canonical_reduction(Config1({{2}}, {{3}}, {{5}}, {{0, 0}}, {{1}, {0}}));
        REQUIRE(red.points.size() == 1);
        const DUPoint& p = red.points[0];
        CHECK(p.l1 == QuadExt(10));
        CHECK(p.l2 == QuadExt(15));
        REQUIRE(p.mu.has_value());
        CHECK((p.mu->first * QuadExt(2) + p.mu->second * QuadExt(3)).is_zero());
        CHECK(p.incident());
    }
    SUBCASE("irrational ideal points") {
        const Reduction0 red = canonical_reduction(Config0({{0, 2}, {1, 0}}, MatrixC(2, 2), MatrixC(2, 1), MatrixC(1, 2)));
        REQUIRE(red.points.size() == 2);
        CHECK((red.points[0].l1 + red.points[1].l1).is_zero());
        CHECK((red.points[0].l1 * red.points[1].l1) == QuadExt(-2));
    }
    SUBCASE("non-integrable input") {
        CHECK_THROWS_AS(canonical_reduction(Config0({{0}}, {{0}}, {{1}}, {{1}})), NotIntegrable);
    }
    SUBCASE("random degenerate blow-up configurations") {
        Sampler s(15);
        for (int trial = 0; trial < 100; ++trial) {
            const Config1 m = random_config1(s, true);
            const Reduction1 red = canonical_reduction(m);
            CHECK(red.points.size() + red.reduced.k() == 2);
            for (const auto& p : red.points) CHECK(p.incident());
            if (red.reduced.k() > 0) CHECK(nondegenerate(red.reduced));
        }
    }
}
