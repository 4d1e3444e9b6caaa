#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "adhm/acceptance.hpp"
#include "adhm/serialize.hpp"

using namespace adhm;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Thrown for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string vec_to_string(const VectorQ& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
    return s + ")";
}

// ---- betti ----

struct BettiArgs {
    std::optional<int> charge, q;
    int max_degree = 24;
    std::string method = "closed-form";
    std::string format = "tsv";
    std::string cover_in, cover_out;
};

CoverDescription read_cover(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return cover_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

int run_betti(const BettiArgs& a) {
    if (a.max_degree < 0) throw UsageError("--max-degree must be nonnegative");
    BettiTable table;
    std::optional<CoverDescription> cover;
    if (!a.cover_in.empty()) {
        if (a.method != "cech") throw UsageError("--cover needs --method cech");
        cover = read_cover(a.cover_in);
    } else {
        if (!a.charge || !a.q) throw UsageError("--charge and --q are required");
        const int charge = *a.charge, q = *a.q;
        if (charge != 1 && charge != 2) throw UsageError("--charge must be 1 or 2");
        if (q < 0) throw UsageError("--q must be nonnegative");
        if (a.method == "cech") {
            if (charge == 1) cover = build_cover_charge1(q);
            else if (q == 2) cover = build_cover_charge2_q2();
            else throw UsageError("cech needs charge 1, or charge 2 with q = 2");
        } else if (a.method == "simplex") {
            if (charge != 2 || q < 2) throw UsageError("simplex needs charge 2 and q >= 2");
            table = simplex_assembly_betti(q, a.max_degree);
        } else {
            table = closed_form_betti(charge, q, a.max_degree);
        }
    }
    if (cover) {
        if (!a.cover_out.empty()) {
            std::ofstream out(a.cover_out);
            if (!out) throw UsageError("cannot write " + a.cover_out);
            out << cover_to_json(*cover).dump(2) << '\n';
        }
        const SpectralReport rep = compute_pages(*cover, a.max_degree);
        if (!rep.d_squared_zero) {
            std::cerr << "d1 d1 != 0 on " << cover->name << '\n';
            return kFail;
        }
        for (const auto& s : rep.surviving) std::cerr << "warning: nonzero " << s << '\n';
        table = rep.betti;
    } else if (!a.cover_out.empty()) {
        throw UsageError("--export-cover needs --method cech");
    }
    if (a.format == "json") std::cout << betti_to_json(table).dump(2) << '\n';
    else std::cout << table.to_tsv();
    return kPass;
}

// ---- verify-config ----

template <class C>
int verify(const C& m, const std::vector<std::string>& checks) {
    bool all = true;
    auto line = [&](const std::string& name, bool ok, const std::string& detail = "") {
        all = all && ok;
        std::cout << name << ": " << (ok ? "pass" : "fail") << (detail.empty() ? "" : " (" + detail + ")") << '\n';
    };
    for (const auto& check : checks) {
        if (check == "integrability") {
            const MatrixC defect = integrability_defect(m);
            std::string detail = defect.is_zero() ? "" : "defect is nonzero";
            bool ok = defect.is_zero();
            if constexpr (std::is_same_v<C, Config1>) {
                if (!effective(m)) {
                    ok = false;
                    detail += std::string(detail.empty() ? "" : ", ") + "[a1|a2|b] does not span V";
                }
            }
            line(check, ok, detail);
        } else if (check == "monad-complex") {
            const MonadPolynomial res = monad_residual(m);
            std::string detail;
            for (const auto& [mono, coeff] : res.terms()) detail += (detail.empty() ? "" : ", ") + mono_to_string(mono);
            line(check, res.is_zero(), detail.empty() ? "" : "B A has terms in " + detail);
        } else if (check == "nondegeneracy") {
            line(check, nondegenerate(m));
        } else if (check == "special-subspaces") {
            const SpecialReport rep = special_subspaces(m);
            if (rep.b_zero) std::cout << "  b-special: zero subspace\n";
            if (rep.c_zero) std::cout << "  c-special: whole space\n";
            for (const auto& s : rep.lines) {
                std::cout << "  " << (s.kind == SpecialSubspace::Kind::B ? "b" : "c") << "-special: ";
                if (s.pair) std::cout << "V' = " << vec_to_string(s.v) << ", W' = " << vec_to_string(s.w);
                else std::cout << "W' = " << vec_to_string(s.v);
                std::cout << (s.family ? " (one of a family)" : "") << '\n';
            }
            line(check, rep.empty(), rep.empty() ? "" : "special subspaces found");
        }
    }
    return all ? kPass : kFail;
}

int run_verify(const std::string& path, const std::vector<std::string>& checks) {
    const AnyConfig cfg = read_config_file(path);
    return std::visit([&](const auto& m) { return verify(m, checks); }, cfg);
}

// ---- glue ----

struct GlueArgs {
    std::string op;
    std::string left, right;
    std::string xL, xR, at;
    std::string delta;
    std::string output;
};

template <class C>
C expect_kind(const AnyConfig& cfg, const std::string& path) {
    if (!std::holds_alternative<C>(cfg))
        throw UsageError(path + " must be a " + (std::is_same_v<C, Config0> ? "config0" : "config1") + " file");
    return std::get<C>(cfg);
}

std::optional<BlowupCenters> centers_from(const std::string& xL, const std::string& xR) {
    if (xL.empty() && xR.empty()) return std::nullopt;
    if (xL.empty() || xR.empty()) throw UsageError("--xL and --xR go together");
    try {
        return BlowupCenters(parse_point(xL), parse_point(xR));
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

NeighborhoodSpec neighborhood(const BlowupCenters& c, const std::string& delta) {
    if (delta.empty()) return NeighborhoodSpec::default_for(c);
    try {
        return NeighborhoodSpec::from_radius(parse_rational(delta), c.z().x1);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

int run_glue(const GlueArgs& a) {
    const auto centers = centers_from(a.xL, a.xR);
    Json prov{{"operation", a.op}, {"inputs", Json::array()}};
    if (centers) {
        const NeighborhoodSpec nb = neighborhood(*centers, a.delta);
        prov["centers"] = {{"xL", point_to_json(centers->xL)}, {"xR", point_to_json(centers->xR)}};
        prov["delta_sq"] = rational_to_string(nb.delta_sq);
    }
    auto need = [&](const std::string& path, const char* flag) {
        if (path.empty()) throw UsageError(std::string(a.op) + " needs " + flag);
        prov["inputs"].push_back(path);
        return read_config_file(path);
    };
    auto point = [&]() -> Point2 {
        if (!a.at.empty()) {
            const Point2 p = parse_point(a.at);
            prov["at"] = point_to_json(p);
            return p;
        }
        if (centers) return centers->xL;
        throw UsageError(a.op + " needs --at or centers");
    };

    Json out;
    if (a.op == "boxplus0") {
        const Config0 l = expect_kind<Config0>(need(a.left, "--left"), a.left);
        const Config0 r = expect_kind<Config0>(need(a.right, "--right"), a.right);
        if (centers && l.k() == 1 && r.k() == 1) {
            const NeighborhoodSpec nb = neighborhood(*centers, a.delta);
            prov["left_near_xL"] = membership(l, CoverPiece::Nz, nb.around(centers->xL.x1));
            prov["right_near_xR"] = membership(r, CoverPiece::Nz, nb.around(centers->xR.x1));
        }
        out = config_to_json(boxplus0(l, r));
    } else if (a.op == "boxplusL") {
        const Config1 l = expect_kind<Config1>(need(a.left, "--left"), a.left);
        const Config0 r = expect_kind<Config0>(need(a.right, "--right"), a.right);
        const Config1 m = boxplusL(l, r);
        if (centers && m.k() == 2) prov["in_NL"] = in_NL(m, centers->z().x1, neighborhood(*centers, a.delta));
        out = config_to_json(m);
    } else if (a.op == "pullback") {
        const Config0 y = expect_kind<Config0>(need(a.left, "--left"), a.left);
        out = config_to_json(pullback_blowup(y, point()));
    } else if (a.op == "translate") {
        const Config0 y = expect_kind<Config0>(need(a.left, "--left"), a.left);
        out = config_to_json(translate_tau(y, point()));
    } else {
        const Config1 m = expect_kind<Config1>(need(a.left, "--left"), a.left);
        out = config_to_json(direct_image(m));
    }
    out["provenance"] = prov;
    if (a.output.empty()) {
        std::cout << out.dump(2) << '\n';
    } else {
        std::ofstream f(a.output);
        if (!f) throw UsageError("cannot write " + a.output);
        f << out.dump(2) << '\n';
    }
    return kPass;
}

// ---- classify ----

struct ClassifyArgs {
    std::string file;
    std::string z, xL, xR;
    std::string delta;
    std::string expect;
    bool json = false;
};

int run_classify(const ClassifyArgs& a) {
    const auto centers = centers_from(a.xL, a.xR);
    if (a.z.empty() == !centers.has_value()) throw UsageError("give either --z or both --xL and --xR");
    const Point2 z = centers ? centers->z() : parse_point(a.z);
    if (z.x1.is_zero()) throw UsageError("z1 must be nonzero");
    const Config1 m = expect_kind<Config1>(read_config_file(a.file), a.file);
    if (m.k() != 2) throw UsageError("classification is for charge 2");
    const CImageResult res = classify_C_image(m, z);
    NeighborhoodSpec nb;
    if (a.delta.empty()) nb = NeighborhoodSpec::default_for(BlowupCenters({0, 0}, z));
    else nb = NeighborhoodSpec::from_radius(parse_rational(a.delta), z.x1);

    if (a.json) {
        Json out{{"in_image", res.in_image}, {"z", point_to_json(z)}, {"in_NL", in_NL(m, z.x1, nb)}};
        if (res.in_image) {
            out["s0_factor"] = config_to_json(res.s0_factor);
            out["point_factor"] = config_to_json(res.point_factor);
        } else {
            out["reason"] = res.reason;
        }
        std::cout << out.dump(2) << '\n';
    } else if (res.in_image) {
        std::cout << "in image of C\n";
        std::cout << "point factor: a1'' = " << res.point_factor.a1(0, 0) << ", a2'' = " << res.point_factor.a2(0, 0)
                  << '\n';
    } else {
        std::cout << "not in image of C: " << res.reason << '\n';
    }
    if (a.expect.empty()) return kPass;
    return (a.expect == "in") == res.in_image ? kPass : kFail;
}

// ---- suite ----

int run_suite(std::uint64_t seed, const std::string& filter, bool timings, bool list) {
    if (list) {
        for (const auto& c : acceptance_criteria())
            std::cout << c.id << '\t' << c.name << '\t' << c.tags << '\t' << c.budget_seconds << " s\n";
        return kPass;
    }
    const auto results = run_acceptance(seed, filter);
    if (results.empty()) throw UsageError("no criterion matches filter '" + filter + "'");
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::cout << r.report(timings) << '\n';
        passed += r.passed();
    }
    std::cout << passed << "/" << results.size() << " criteria passed (seed " << seed << ")\n";
    return passed == results.size() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for framed instantons on blow-ups of the plane"};
    app.require_subcommand(1);

    BettiArgs betti;
    auto* b = app.add_subcommand("betti", "Betti numbers of the rank-stable moduli space");
    b->add_option("--charge", betti.charge, "instanton charge (1 or 2)");
    b->add_option("--q", betti.q, "number of blown-up points");
    b->add_option("--max-degree", betti.max_degree, "last degree in the table")->capture_default_str();
    b->add_option("--method", betti.method, "closed-form, cech or simplex")
        ->check(CLI::IsMember({"closed-form", "cech", "simplex"}))
        ->capture_default_str();
    b->add_option("--format", betti.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
    b->add_option("--cover", betti.cover_in, "run the Cech computation on a cover JSON file");
    b->add_option("--export-cover", betti.cover_out, "write the cover used by --method cech");

    std::string verify_file;
    std::vector<std::string> checks{"integrability", "nondegeneracy", "monad-complex", "special-subspaces"};
    auto* v = app.add_subcommand("verify-config", "Check a configuration file");
    v->add_option("file", verify_file, "configuration JSON")->required();
    v->add_option("--check", checks, "checks to run (comma separated)")
        ->delimiter(',')
        ->check(CLI::IsMember({"integrability", "nondegeneracy", "monad-complex", "special-subspaces"}));

    GlueArgs glue;
    auto* g = app.add_subcommand("glue", "Glue or transport configurations");
    g->add_option("--op", glue.op, "boxplus0, boxplusL, pullback, translate or direct-image")
        ->required()
        ->check(CLI::IsMember({"boxplus0", "boxplusL", "pullback", "translate", "direct-image"}));
    g->add_option("--left", glue.left, "first configuration file");
    g->add_option("--right", glue.right, "second configuration file");
    g->add_option("--xL", glue.xL, "left center \"x1,x2\"");
    g->add_option("--xR", glue.xR, "right center \"x1,x2\"");
    g->add_option("--at", glue.at, "point for pullback and translate");
    g->add_option("--delta", glue.delta, "neighborhood radius \"p/q\" (default from the centers)");
    g->add_option("-o,--output", glue.output, "output file (default stdout)");

    ClassifyArgs cls;
    auto* c = app.add_subcommand("classify", "Decide whether a charge-2 configuration lies in the image of C");
    c->add_option("file", cls.file, "config1 JSON")->required();
    c->add_option("--z", cls.z, "\"z1,z2\"");
    c->add_option("--xL", cls.xL, "left center");
    c->add_option("--xR", cls.xR, "right center");
    c->add_option("--delta", cls.delta, "neighborhood radius \"p/q\"");
    c->add_option("--expect", cls.expect, "exit 1 unless the result is in/out")->check(CLI::IsMember({"in", "out"}));
    c->add_flag("--json", cls.json, "print a JSON report");

    std::uint64_t seed = kDefaultSeed;
    std::string filter;
    bool timings = false, list = false;
    auto* s = app.add_subcommand("suite", "Run the acceptance criteria");
    s->add_option("--seed", seed, "random seed")->capture_default_str();
    s->add_option("--filter", filter, "criterion id, or substring of a name or tag");
    s->add_flag("--timings", timings, "show elapsed time per criterion");
    s->add_flag("--list", list, "list criteria and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*b) return run_betti(betti);
        if (*v) return run_verify(verify_file, checks);
        if (*g) return run_glue(glue);
        if (*c) return run_classify(cls);
        return run_suite(seed, filter, timings, list);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ChargeTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        // mathematical failures on well-formed input, e.g. colliding eigenvalues
        std::cerr << "failed: " << e.what() << '\n';
        return kFail;
    }
}
