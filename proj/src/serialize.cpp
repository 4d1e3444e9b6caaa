#include "adhm/serialize.hpp"

#include <fstream>
#include <sstream>

namespace adhm {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

Json integer_to_json(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        const Rational q = parse_rational(j.get<std::string>());
        if (q.get_den() != 1) throw ParseError("expected an integer, got " + j.get<std::string>());
        return q.get_num();
    }
    throw ParseError("expected an integer");
}

int small_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

// nlohmann's own type errors carry no library type; map them here.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    } catch (const ShapeMismatch& e) {
        throw ParseError(e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    } catch (const DegreeMismatch& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

Json scalar_to_json(const GaussianRational& x) { return x.to_string(); }

GaussianRational scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return {Rational(Integer(std::to_string(j.get<long long>())))};
    if (j.is_string()) return GaussianRational::parse(j.get<std::string>());
    throw ParseError("scalar must be text or an integer");
}

Json matrix_to_json(const MatrixC& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

MatrixC matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    MatrixC m(rows, cols);
    if (j.empty() && (rows == 0 || cols == 0)) return m;
    if (j.size() != rows) throw ParseError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json(row[c]);
    }
    return m;
}

Json config_to_json(const Config0& m) {
    return Json{{"kind", "config0"}, {"k", m.k()},  {"r", m.r()},
                {"a1", matrix_to_json(m.a1)}, {"a2", matrix_to_json(m.a2)},
                {"b", matrix_to_json(m.b)},   {"c", matrix_to_json(m.c)}};
}

Json config_to_json(const Config1& m) {
    return Json{{"kind", "config1"}, {"k", m.k()}, {"r", m.r()}, {"a1", matrix_to_json(m.a1)},
                {"a2", matrix_to_json(m.a2)}, {"d", matrix_to_json(m.d)}, {"b", matrix_to_json(m.b)},
                {"c", matrix_to_json(m.c)}};
}

AnyConfig config_from_json(const Json& j) {
    return guarded([&]() -> AnyConfig {
        const Json& kind = field(j, "kind");
        if (!kind.is_string()) throw ParseError("\"kind\" must be a string");
        const std::size_t k = size_field(j, "k"), r = size_field(j, "r");
        const MatrixC a1 = matrix_from_json(field(j, "a1"), k, k);
        const MatrixC a2 = matrix_from_json(field(j, "a2"), k, k);
        const MatrixC b = matrix_from_json(field(j, "b"), k, r);
        const MatrixC c = matrix_from_json(field(j, "c"), r, k);
        if (kind == "config0") return Config0(a1, a2, b, c);
        if (kind == "config1") return Config1(a1, a2, matrix_from_json(field(j, "d"), k, k), b, c);
        throw ParseError("unknown configuration kind " + kind.get<std::string>());
    });
}

AnyConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return config_from_json(j);
}

Json point_to_json(const Point2& p) { return Json::array({scalar_to_json(p.x1), scalar_to_json(p.x2)}); }

Point2 point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("point must be a pair of scalars");
    return {scalar_from_json(j[0]), scalar_from_json(j[1])};
}

Point2 parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw ParseError("point must be \"x1,x2\": " + text);
    return {GaussianRational::parse(text.substr(0, comma)), GaussianRational::parse(text.substr(comma + 1))};
}

Json ring_to_json(const GradedRing& r) {
    Json gens = Json::array();
    for (const auto& g : r.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    return {{"generators", gens}};
}

GradedRing ring_from_json(const Json& j) {
    return guarded([&] {
        std::vector<Generator> gens;
        for (const auto& g : field(j, "generators")) {
            const Json& name = field(g, "name");
            if (!name.is_string()) throw ParseError("generator name must be a string");
            gens.push_back({name.get<std::string>(), small_int(field(g, "degree"), "degree")});
        }
        return GradedRing(std::move(gens));
    });
}

namespace {

Json polynomial_to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"coefficient", integer_to_json(c)}, {"exponent", e}});
    return terms;
}

Polynomial polynomial_from_json(const Json& j, std::size_t nvars) {
    if (!j.is_array()) throw ParseError("polynomial must be a list of terms");
    Polynomial p(nvars);
    for (const auto& t : j) {
        Exponent e;
        for (const auto& x : field(t, "exponent")) e.push_back(small_int(x, "exponent"));
        if (e.size() != nvars) throw ParseError("exponent vector has the wrong length");
        for (int x : e)
            if (x < 0) throw ParseError("negative exponent");
        p.add_term(e, integer_from_json(field(t, "coefficient")));
    }
    return p;
}

Json images_to_json(const RingMap& f) {
    Json images = Json::array();
    for (const auto& p : f.images) images.push_back(polynomial_to_json(p));
    return images;
}

RingMap map_with_rings(const Json& j, GradedRing source, GradedRing target) {
    RingMap f;
    f.source = std::move(source);
    f.target = std::move(target);
    const Json& images = field(j, "images");
    if (!images.is_array() || images.size() != f.source.size())
        throw ParseError("map needs one image per source generator");
    for (const auto& im : images) f.images.push_back(polynomial_from_json(im, f.target.size()));
    f.sign = j.contains("sign") ? small_int(j.at("sign"), "sign") : 1;
    if (f.sign != 1 && f.sign != -1) throw ParseError("sign must be +1 or -1");
    f.validate();
    return f;
}

}  // namespace

Json map_to_json(const RingMap& f) {
    return {{"source", ring_to_json(f.source)}, {"target", ring_to_json(f.target)}, {"sign", f.sign},
            {"images", images_to_json(f)}};
}

RingMap map_from_json(const Json& j) {
    return guarded([&] { return map_with_rings(j, ring_from_json(field(j, "source")), ring_from_json(field(j, "target"))); });
}

Json module_to_json(const GradedModuleSpec& s) {
    switch (s.kind) {
        case GradedModuleSpec::Kind::FreeRing:
            return {{"kind", "free_ring"}, {"ring", ring_to_json(s.ring)}};
        case GradedModuleSpec::Kind::MonomialIdeal:
            return {{"kind", "monomial_ideal"}, {"ring", ring_to_json(s.ring)}, {"generators", s.ideal_generators}};
        case GradedModuleSpec::Kind::DirectSum: {
            Json parts = Json::array();
            for (std::size_t i = 0; i < s.summands.size(); ++i)
                parts.push_back({{"module", module_to_json(s.summands[i])}, {"multiplicity", s.multiplicities[i]}});
            return {{"kind", "direct_sum"}, {"summands", parts}};
        }
    }
    return {};
}

GradedModuleSpec module_from_json(const Json& j) {
    return guarded([&] {
        const Json& kind = field(j, "kind");
        if (kind == "free_ring") return GradedModuleSpec::free_ring(ring_from_json(field(j, "ring")));
        if (kind == "monomial_ideal") {
            GradedRing r = ring_from_json(field(j, "ring"));
            std::vector<Exponent> gens;
            for (const auto& g : field(j, "generators")) {
                Exponent e;
                for (const auto& x : g) e.push_back(small_int(x, "exponent"));
                if (e.size() != r.size()) throw ParseError("ideal generator has the wrong length");
                gens.push_back(std::move(e));
            }
            return GradedModuleSpec::monomial_ideal(std::move(r), std::move(gens));
        }
        if (kind == "direct_sum") {
            GradedModuleSpec s;
            s.kind = GradedModuleSpec::Kind::DirectSum;
            for (const auto& part : field(j, "summands"))
                s.add_summand(module_from_json(field(part, "module")), size_field(part, "multiplicity"));
            return s;
        }
        throw ParseError("unknown module kind");
    });
}

Json cover_to_json(const CoverDescription& c) {
    Json faces = Json::array();
    for (const auto& f : c.faces) faces.push_back({{"name", f.name}, {"dimension", f.dimension}, {"ring", ring_to_json(f.ring)}});
    Json arrows = Json::array();
    for (const auto& a : c.arrows)
        arrows.push_back({{"from", c.faces[a.from].name},
                          {"to", c.faces[a.to].name},
                          {"sign", a.map.sign},
                          {"images", images_to_json(a.map)}});
    return {{"name", c.name}, {"faces", faces}, {"arrows", arrows}};
}

CoverDescription cover_from_json(const Json& j) {
    return guarded([&] {
        CoverDescription c;
        if (j.contains("name")) c.name = j.at("name").get<std::string>();
        for (const auto& f : field(j, "faces"))
            c.faces.push_back({field(f, "name").get<std::string>(), small_int(field(f, "dimension"), "dimension"),
                               ring_from_json(field(f, "ring"))});
        for (const auto& a : field(j, "arrows")) {
            CoverArrow arrow;
            arrow.from = c.face_index(field(a, "from").get<std::string>());
            arrow.to = c.face_index(field(a, "to").get<std::string>());
            arrow.map = map_with_rings(a, c.faces[arrow.from].ring, c.faces[arrow.to].ring);
            c.arrows.push_back(std::move(arrow));
        }
        c.validate();
        return c;
    });
}

Json betti_to_json(const BettiTable& t) {
    Json rows = Json::array();
    for (std::size_t m = 0; m < t.rows.size(); ++m) {
        Json tors = Json::array();
        for (const auto& x : t.rows[m].torsion) tors.push_back(x.get_str());
        rows.push_back({{"degree", m}, {"rank", t.rows[m].rank}, {"torsion", tors}});
    }
    return {{"max_degree", t.max_degree()}, {"rows", rows}};
}

BettiTable betti_from_json(const Json& j) {
    return guarded([&] {
        BettiTable t;
        for (const auto& row : field(j, "rows")) {
            if (size_field(row, "degree") != t.rows.size()) throw ParseError("Betti rows must be consecutive from 0");
            BettiEntry e;
            e.rank = field(row, "rank").get<std::uint64_t>();
            for (const auto& x : field(row, "torsion")) e.torsion.push_back(integer_from_json(x));
            t.rows.push_back(std::move(e));
        }
        return t;
    });
}

}  // namespace adhm
