#include "doctest.h"

#include "adhm/spectral.hpp"

using namespace adhm;

namespace {

// Two charts with zero restriction maps to their overlap.
CoverDescription zero_map_cover() {
    const GradedRing a({{"s", 2}}), b({{"t", 2}}), ab({{"w", 2}});
    CoverDescription c;
    c.name = "zero";
    c.faces = {{"A", 0, a}, {"B", 0, b}, {"AB", 1, ab}};
    c.arrows = {{0, 2, RingMap::from_strings(a, ab, {"0"}, 1)}, {1, 2, RingMap::from_strings(b, ab, {"0"}, -1)}};
    return c;
}

}  // namespace

TEST_CASE("charge-1 covers") {
    SUBCASE("q = 1 is a single chart") {
        const auto cover = build_cover_charge1(1);
        CHECK(cover.faces.size() == 1);
        CHECK(cover.arrows.empty());
        const auto rep = compute_pages(cover, 10);
        // BU(1) x BU(1)
        for (int n = 0; n <= 10; n += 2) CHECK(rep.betti.rows[n].rank == static_cast<std::uint64_t>(n / 2 + 1));
    }
    SUBCASE("q = 2, degree 2") {
        const auto cover = build_cover_charge1(2);
        CHECK(cover.top_dimension() == 1);
        const IntMatrix d = d1_matrix(cover, 0, 2);
        CHECK(d.rows() == 1);
        CHECK(d.cols() == 4);
        const auto rep = compute_pages(cover, 2);
        CHECK(rep.pages[2].e1 == std::vector<std::size_t>{4, 1});
        CHECK(rep.pages[2].e2[0].rank == 3);
        CHECK(rep.pages[2].e2[1].rank == 0);
    }
    SUBCASE("q = 3, degree 2") {
        const auto rep = compute_pages(build_cover_charge1(3), 2);
        CHECK(rep.pages[2].e2[0].rank == 4);
        CHECK(rep.pages[2].e2[1] == AbelianGroup{});
        CHECK(rep.pages[2].e2[2] == AbelianGroup{});
    }
    SUBCASE("q = 2 up to degree 20") {
        const auto rep = compute_pages(build_cover_charge1(2), 20);
        for (int n = 0; n <= 20; ++n) CHECK(rep.betti.rows[n].rank == (n % 2 ? 0u : 1u + static_cast<unsigned>(n)));
    }
    CHECK_THROWS_AS(build_cover_charge1(-1), InvalidArgument);
}

TEST_CASE("charge-2 two-point cover") {
    const auto cover = build_cover_charge2_q2();
    CHECK(cover.faces.size() == 7);
    const auto rep = compute_pages(cover, 24);
    const auto& page = rep.pages[2];
    CHECK(page.e1 == std::vector<std::size_t>{8, 7, 2});
    CHECK(page.e2[0].rank == 3);
    CHECK(page.e2[1].rank == 0);
    CHECK(page.e2[2].rank == 0);
    CHECK(rep.betti.rows[4].rank == 9);
    CHECK(rep.betti.rows[6].rank == 18);
    CHECK(rep.d_squared_zero);
    CHECK(rep.top_surjective);
    CHECK(rep.collapse_certified);
    CHECK_FALSE(rep.betti.has_torsion());
    for (int n = 0; n <= 24; ++n) CHECK((d1_matrix(cover, 1, n) * d1_matrix(cover, 0, n)).is_zero());
}

TEST_CASE("odd rows vanish and d1 squares to zero on every built-in cover") {
    std::vector<CoverDescription> covers{build_cover_charge2_q2()};
    for (int q = 0; q <= 5; ++q) covers.push_back(build_cover_charge1(q));
    for (const auto& c : covers) {
        const auto rep = compute_pages(c, 24);
        CHECK(rep.d_squared_zero);
        CHECK(rep.odd_rows_vanish);
        CHECK(rep.betti.odd_vanishes());
        for (int n = 1; n <= 24; n += 2)
            for (int p = 0; p <= c.top_dimension(); ++p) CHECK(e1_rank(c, p, n) == 0);
    }
}

TEST_CASE("cover with zero maps keeps its E1 page") {
    const auto c = zero_map_cover();
    const auto rep = compute_pages(c, 6);
    // degree 0 carries the units, which every ring map preserves
    for (int n = 2; n <= 6; n += 2) {
        CHECK(rep.pages[n].e2[0].rank == rep.pages[n].e1[0]);
        CHECK(rep.pages[n].e2[1].rank == rep.pages[n].e1[1]);
    }
    CHECK_FALSE(rep.collapse_certified);
    CHECK_FALSE(rep.surviving.empty());
    PagesOptions strict;
    strict.strict = true;
    CHECK_THROWS_AS(compute_pages(c, 6, strict), NonCollapsing);
}

TEST_CASE("cover validation") {
    auto c = zero_map_cover();
    c.arrows[0].to = 1;  // same dimension
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    auto d = zero_map_cover();
    d.arrows[0].map.target = GradedRing({{"z", 2}, {"y", 2}});
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
}

TEST_CASE("parallel and serial page computations agree") {
    for (const auto& c : {build_cover_charge2_q2(), build_cover_charge1(4)}) {
        const auto par = compute_pages(c, 20), ser = compute_pages_serial(c, 20);
        CHECK(par.betti == ser.betti);
        for (int n = 0; n <= 20; ++n) {
            CHECK(par.pages[n].e1 == ser.pages[n].e1);
            CHECK(par.pages[n].e2 == ser.pages[n].e2);
        }
    }
}

TEST_CASE("closed forms") {
    for (int q = 0; q <= 5; ++q) {
        const auto t = closed_form_betti(1, q, 20);
        for (int n = 0; n <= 20; ++n)
            CHECK(t.rows[n].rank == (n % 2 ? 0u : 1u + static_cast<unsigned>(q * n / 2)));
    }
    const auto q0 = closed_form_betti(2, 0, 10);
    const std::vector<std::uint64_t> want{1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 3};
    for (int n = 0; n <= 10; ++n) CHECK(q0.rows[n].rank == want[n]);
    const auto q2 = closed_form_betti(2, 2, 6);
    CHECK(q2.rows[2].rank == 3);
    CHECK(q2.rows[4].rank == 9);
    CHECK(q2.rows[6].rank == 18);
    CHECK(q2.to_tsv() == "degree\trank\ttorsion\n0\t1\t-\n1\t0\t-\n2\t3\t-\n3\t0\t-\n4\t9\t-\n5\t0\t-\n6\t18\t-\n");
    CHECK(closed_form_betti(2, 3, 24).rows.size() == 25);
    CHECK_THROWS_AS(closed_form_betti(3, 1, 4), InvalidArgument);
    CHECK_THROWS_AS(closed_form_betti(2, -1, 4), InvalidArgument);
}

TEST_CASE("simplex assembly") {
    CHECK(simplex_assembly_betti(2, 24) == compute_pages(build_cover_charge2_q2(), 24).betti);
    CHECK(simplex_assembly_betti(3, 4).rows[4] == closed_form_betti(2, 3, 4).rows[4]);
    for (int q = 2; q <= 5; ++q) {
        const auto rep = simplex_assembly(q, 12);
        CHECK(rep.middle_exact);
        CHECK(rep.bottom_exact);
        CHECK(rep.surjective);
        CHECK(rep.betti == closed_form_betti(2, q, 12));
        CHECK(rep.betti.odd_vanishes());
    }
    CHECK_THROWS_AS(simplex_assembly(1, 4), InvalidArgument);
}

TEST_CASE("q = 2 decomposition") {
    const auto rep = decomposition_check_q2(24);
    CHECK(rep.ok);
    CHECK(rep.rows[0].total == 1);
    CHECK(rep.rows[0].kc == 0);
    CHECK(rep.rows[0].ka == 1);
    CHECK(rep.rows[2].total == 3);
    CHECK(rep.rows[2].kc == 0);
    CHECK(rep.rows[4].total == 9);
    CHECK(rep.rows[4].kc == 1);
    CHECK(rep.rows[4].ka == 8);
}
