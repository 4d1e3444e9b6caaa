#include "doctest.h"

#include "adhm/sampling.hpp"
#include "adhm/serialize.hpp"

using namespace adhm;

TEST_CASE("configuration JSON") {
    Sampler s(41);
    for (int t = 0; t < 50; ++t) {
        const Config0 m0 = s.config0_k1(2);
        CHECK(std::get<Config0>(config_from_json(config_to_json(m0))) == m0);
        const Config1 m1 = boxplusL(s.config1_k1(2, s.nonzero_scalar()), [&] {
            Config0 r = s.config0_k1(2);
            r.a1(0, 0) = 17;
            return r;
        }());
        const Json j = config_to_json(m1);
        CHECK(j["kind"] == "config1");
        CHECK(j["k"] == 2);
        CHECK(std::get<Config1>(config_from_json(j)) == m1);
        // text survives a dump and reparse
        CHECK(std::get<Config1>(config_from_json(Json::parse(j.dump()))) == m1);
    }
    const Json plain = Json::parse(R"({"kind":"config0","k":1,"r":1,"a1":[[2]],"a2":[["1/2+1/3i"]],"b":[[1]],"c":[[0]]})");
    const Config0 m = std::get<Config0>(config_from_json(plain));
    CHECK(m.a2(0, 0) == GaussianRational(Rational(Integer(1), Integer(2)), Rational(Integer(1), Integer(3))));
    const Config0 empty = std::get<Config0>(config_from_json(config_to_json(Config0::empty(2))));
    CHECK(empty == Config0::empty(2));
}

TEST_CASE("malformed configuration JSON") {
    const auto bad = [](const char* text) { return config_from_json(Json::parse(text)); };
    CHECK_THROWS_AS(bad(R"({"kind":"config0","k":1,"r":1,"a1":[["1/0"]],"a2":[[0]],"b":[[1]],"c":[[0]]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"kind":"config2","k":1,"r":1,"a1":[[1]],"a2":[[0]],"b":[[1]],"c":[[0]]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"kind":"config0","k":2,"r":1,"a1":[[1]],"a2":[[0]],"b":[[1]],"c":[[0]]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"kind":"config0","k":1,"r":1,"a1":[[1]],"a2":[[0]],"b":[[1]]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"kind":"config1","k":1,"r":1,"a1":[[1]],"a2":[[0]],"b":[[1]],"c":[[0]]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"kind":"config0","k":-1,"r":1})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"kind":"config0","k":1,"r":1,"a1":[[true]],"a2":[[0]],"b":[[1]],"c":[[0]]})"), ParseError);
    CHECK_THROWS_AS(bad(R"([1, 2])"), ParseError);
    CHECK_THROWS_AS(read_config_file("/nonexistent/config.json"), ParseError);
    CHECK_THROWS_AS(parse_point("1,2,3"), ParseError);
    CHECK(parse_point("1/2,-i") == Point2{GaussianRational(Rational(Integer(1), Integer(2))), -GaussianRational::i()});
}

TEST_CASE("ring, map and module JSON") {
    const auto& p = charge2_pieces();
    CHECK(ring_from_json(ring_to_json(p.AL)) == p.AL);
    const RingMap f = map_from_json(map_to_json(p.AL_NL));
    CHECK(f.sign == -1);
    for (int n = 0; n <= 8; n += 2) CHECK(map_matrix(f, n) == map_matrix(p.AL_NL, n));
    const Json j = map_to_json(p.A0_N0);
    CHECK(j["images"][0].size() == 2);

    const auto spec = charge2_module_spec(3);
    const auto back = module_from_json(module_to_json(spec));
    for (int n = 0; n <= 16; ++n) CHECK(hilbert(back, n) == hilbert(spec, n));

    Json broken = map_to_json(p.A0_N0);
    broken["images"][1][0]["exponent"] = {1, 0};  // degree 2 image for a degree-4 generator
    CHECK_THROWS_AS(map_from_json(broken), ParseError);
    CHECK_THROWS_AS(ring_from_json(Json::parse(R"({"generators":[{"name":"x","degree":3}]})")), ParseError);
}

TEST_CASE("cover and Betti JSON") {
    for (const auto& c : {build_cover_charge2_q2(), build_cover_charge1(3)}) {
        const Json j = cover_to_json(c);
        const CoverDescription back = cover_from_json(Json::parse(j.dump()));
        CHECK(back.faces.size() == c.faces.size());
        CHECK(back.arrows.size() == c.arrows.size());
        CHECK(compute_pages(back, 12).betti == compute_pages(c, 12).betti);
        for (int n = 0; n <= 8; n += 2)
            for (int p = 0; p < c.top_dimension(); ++p) CHECK(d1_matrix(back, p, n) == d1_matrix(c, p, n));
    }
    Json bad = cover_to_json(build_cover_charge2_q2());
    bad["arrows"][0]["to"] = "nowhere";
    CHECK_THROWS_AS(cover_from_json(bad), ParseError);

    BettiTable t = closed_form_betti(2, 2, 6);
    t.rows[2].torsion = {2, 4};
    CHECK(betti_from_json(betti_to_json(t)) == t);
    CHECK(betti_to_json(t)["rows"][4]["rank"] == 9);
}
