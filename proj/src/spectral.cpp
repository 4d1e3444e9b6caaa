#include "adhm/spectral.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <map>
#include <sstream>

namespace adhm {

int CoverDescription::top_dimension() const {
    int top = -1;
    for (const auto& f : faces) top = std::max(top, f.dimension);
    return top;
}

std::vector<std::size_t> CoverDescription::faces_of_dimension(int p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].dimension == p) out.push_back(i);
    return out;
}

std::size_t CoverDescription::face_index(const std::string& face_name) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].name == face_name) return i;
    throw InvalidArgument("unknown face '" + face_name + "'");
}

void CoverDescription::validate() const {
    if (faces.empty()) throw InvalidArgument("cover has no faces");
    for (const auto& f : faces)
        if (f.dimension < 0) throw InvalidArgument("face '" + f.name + "' has negative dimension");
    for (const auto& a : arrows) {
        if (a.from >= faces.size() || a.to >= faces.size()) throw InvalidArgument("arrow endpoint out of range");
        const auto& src = faces[a.from];
        const auto& dst = faces[a.to];
        if (dst.dimension != src.dimension + 1)
            throw InvalidArgument("arrow " + src.name + " -> " + dst.name + " does not raise dimension by one");
        if (!(a.map.source == src.ring) || !(a.map.target == dst.ring))
            throw InvalidArgument("arrow " + src.name + " -> " + dst.name + " has mismatched rings");
        a.map.validate();
    }
}

CoverDescription build_cover_charge1(int q) {
    if (q < 0) throw InvalidArgument("q must be nonnegative");
    CoverDescription cover;
    cover.name = "charge1_q" + std::to_string(q);
    const GradedRing line({{"w", 2}});
    if (q == 0) {
        cover.faces.push_back({"X0", 0, line});
        return cover;
    }
    if (q > 20) throw InvalidArgument("q too large for the full nerve");

    auto face_name = [](unsigned mask) {
        std::string s;
        for (unsigned i = 0; (mask >> i) != 0; ++i)
            if ((mask >> i & 1U) != 0) s += "X" + std::to_string(i + 1);
        return s;
    };
    std::map<unsigned, std::size_t> index_of;
    for (unsigned mask = 1; mask < (1U << q); ++mask) {
        const int dim = __builtin_popcount(mask) - 1;
        GradedRing ring = line;
        if (dim == 0) {
            const int i = __builtin_ctz(mask) + 1;
            ring = GradedRing({{"u" + std::to_string(i), 2}, {"v" + std::to_string(i), 2}});
        }
        index_of[mask] = cover.faces.size();
        cover.faces.push_back({face_name(mask), dim, std::move(ring)});
    }
    for (const auto& [mask, idx] : index_of) {
        if (__builtin_popcount(mask) < 2) continue;
        int position = 0;
        for (unsigned i = 0; (mask >> i) != 0; ++i) {
            if ((mask >> i & 1U) == 0) continue;
            const unsigned sub = mask & ~(1U << i);
            const std::size_t from = index_of.at(sub);
            const int sign = position % 2 == 0 ? 1 : -1;
            const auto& src = cover.faces[from].ring;
            const auto& dst = cover.faces[idx].ring;
            RingMap f = cover.faces[from].dimension == 0 ? RingMap::from_strings(src, dst, {"w", "0"}, sign)
                                                        : RingMap::from_strings(src, dst, {"w"}, sign);
            cover.arrows.push_back({from, idx, std::move(f)});
            ++position;
        }
    }
    return cover;
}

const Charge2Pieces& charge2_pieces() {
    static const Charge2Pieces pieces = [] {
        Charge2Pieces p;
        p.AL = GradedRing({{"aD1L", 2}, {"ab1L", 2}, {"aD2L", 4}, {"ab2L", 4}});
        p.AR = GradedRing({{"aD1R", 2}, {"ab1R", 2}, {"aD2R", 4}, {"ab2R", 4}});
        p.N2 = GradedRing({{"cDL", 2}, {"cbL", 2}, {"cDR", 2}, {"cbR", 2}});
        p.A0 = GradedRing({{"a1", 2}, {"a2", 4}});
        p.NL = GradedRing({{"nDL", 2}, {"nbL", 2}, {"n0R", 2}});
        p.NR = GradedRing({{"nDR", 2}, {"nbR", 2}, {"n0L", 2}});
        p.N0 = GradedRing({{"n0L", 2}, {"n0R", 2}});
        p.AL_A0 = RingMap::from_strings(p.AL, p.A0, {"0", "a1", "0", "a2"}, +1);
        p.AR_A0 = RingMap::from_strings(p.AR, p.A0, {"0", "a1", "0", "a2"}, +1);
        p.AL_NL = RingMap::from_strings(p.AL, p.NL, {"nDL", "nbL + n0R", "nDL*n0R", "nbL*n0R"}, -1);
        p.AR_NR = RingMap::from_strings(p.AR, p.NR, {"nDR", "nbR + n0L", "nDR*n0L", "nbR*n0L"}, -1);
        p.N2_NL = RingMap::from_strings(p.N2, p.NL, {"nDL", "nbL", "0", "n0R"}, +1);
        p.N2_NR = RingMap::from_strings(p.N2, p.NR, {"0", "n0L", "nDR", "nbR"}, -1);
        p.A0_N0 = RingMap::from_strings(p.A0, p.N0, {"n0L + n0R", "n0L*n0R"}, +1);
        p.NL_N0 = RingMap::from_strings(p.NL, p.N0, {"0", "n0L", "n0R"}, +1);
        p.NR_N0 = RingMap::from_strings(p.NR, p.N0, {"0", "n0R", "n0L"}, +1);
        return p;
    }();
    return pieces;
}

CoverDescription build_cover_charge2_q2() {
    const auto& p = charge2_pieces();
    CoverDescription c;
    c.name = "charge2_q2";
    c.faces = {{"A_L", 0, p.AL}, {"A_R", 0, p.AR}, {"N_2", 0, p.N2},   {"A_0", 1, p.A0},
               {"N_L", 1, p.NL}, {"N_R", 1, p.NR}, {"N_0", 2, p.N0}};
    c.arrows = {{0, 3, p.AL_A0}, {1, 3, p.AR_A0}, {0, 4, p.AL_NL}, {2, 4, p.N2_NL}, {1, 5, p.AR_NR},
                {2, 5, p.N2_NR}, {3, 6, p.A0_N0}, {4, 6, p.NL_N0}, {5, 6, p.NR_N0}};
    return c;
}

namespace {

std::map<std::size_t, std::size_t> offsets(const CoverDescription& cover, int p, int n, std::size_t* total) {
    std::map<std::size_t, std::size_t> off;
    std::size_t acc = 0;
    for (auto f : cover.faces_of_dimension(p)) {
        off[f] = acc;
        acc += monomial_basis(cover.faces[f].ring, n).size();
    }
    *total = acc;
    return off;
}

}  // namespace

std::size_t e1_rank(const CoverDescription& cover, int p, int n) {
    std::size_t total = 0;
    offsets(cover, p, n, &total);
    return total;
}

IntMatrix d1_matrix(const CoverDescription& cover, int p, int n) {
    std::size_t cols = 0;
    std::size_t rows = 0;
    const auto col_off = offsets(cover, p, n, &cols);
    const auto row_off = offsets(cover, p + 1, n, &rows);
    IntMatrix d(rows, cols);
    for (const auto& a : cover.arrows) {
        if (cover.faces[a.from].dimension != p) continue;
        const IntMatrix block = map_matrix(a.map, n);
        const std::size_t r0 = row_off.at(a.to);
        const std::size_t c0 = col_off.at(a.from);
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j)
                if (sgn(block(i, j)) != 0) d(r0 + i, c0 + j) += block(i, j);
    }
    return d;
}

bool BettiTable::has_torsion() const {
    return std::any_of(rows.begin(), rows.end(), [](const BettiEntry& e) { return !e.torsion.empty(); });
}

bool BettiTable::odd_vanishes() const {
    for (std::size_t m = 1; m < rows.size(); m += 2)
        if (rows[m].rank != 0 || !rows[m].torsion.empty()) return false;
    return true;
}

std::string BettiTable::to_tsv() const {
    std::ostringstream os;
    os << "degree\trank\ttorsion\n";
    for (std::size_t m = 0; m < rows.size(); ++m) {
        os << m << '\t' << rows[m].rank << '\t';
        if (rows[m].torsion.empty()) {
            os << '-';
        } else {
            for (std::size_t k = 0; k < rows[m].torsion.size(); ++k) os << (k ? "," : "") << rows[m].torsion[k].get_str();
        }
        os << '\n';
    }
    return os.str();
}

namespace {

DegreePage compute_degree(const CoverDescription& cover, int n, bool check_d_squared) {
    DegreePage page;
    page.degree = n;
    const int top = cover.top_dimension();
    std::vector<IntMatrix> d;
    for (int p = 0; p <= top; ++p) page.e1.push_back(e1_rank(cover, p, n));
    for (int p = 0; p < top; ++p) d.push_back(d1_matrix(cover, p, n));
    for (int p = 0; p <= top; ++p) {
        const IntMatrix f = p == 0 ? IntMatrix(page.e1[0], 0) : d[p - 1];
        const IntMatrix g = p == top ? IntMatrix(0, page.e1[p]) : d[p];
        page.e2.push_back(cochain_cohomology(f, g, page.e1[p]));
    }
    if (check_d_squared)
        for (int p = 0; p + 1 < top; ++p)
            if (!(d[p + 1] * d[p]).is_zero()) page.d_squared_zero = false;
    return page;
}

SpectralReport assemble(std::vector<DegreePage> pages, int maxdeg, const PagesOptions& opts) {
    SpectralReport rep;
    rep.pages = std::move(pages);
    rep.betti.rows.resize(static_cast<std::size_t>(maxdeg) + 1);
    for (const auto& page : rep.pages) {
        const int n = page.degree;
        if (!page.d_squared_zero) rep.d_squared_zero = false;
        for (std::size_t p = 0; p < page.e1.size(); ++p) {
            if (n % 2 == 1 && page.e1[p] != 0) rep.odd_rows_vanish = false;
            const auto& e2 = page.e2[p];
            const bool nonzero = e2.rank != 0 || !e2.torsion.empty();
            if (p >= 1 && nonzero) {
                rep.collapse_certified = false;
                rep.surviving.push_back("E2^{" + std::to_string(p) + "," + std::to_string(n) + "}");
            }
            if (p + 1 == page.e1.size() && p >= 1 && nonzero) rep.top_surjective = false;
            const std::size_t m = static_cast<std::size_t>(n) + p;
            if (m >= rep.betti.rows.size()) continue;
            rep.betti.rows[m].rank += e2.rank;
            for (const auto& t : e2.torsion) rep.betti.rows[m].torsion.push_back(t);
        }
    }
    for (auto& row : rep.betti.rows) std::sort(row.torsion.begin(), row.torsion.end());
    if (opts.strict && !rep.collapse_certified) {
        std::string which;
        for (const auto& s : rep.surviving) which += (which.empty() ? "" : ", ") + s;
        throw NonCollapsing("terms with p >= 1 survive to E2: " + which);
    }
    return rep;
}

void check_args(const CoverDescription& cover, int maxdeg) {
    if (maxdeg < 0) throw InvalidArgument("max degree must be nonnegative");
    cover.validate();
}

}  // namespace

SpectralReport compute_pages_serial(const CoverDescription& cover, int maxdeg, const PagesOptions& opts) {
    check_args(cover, maxdeg);
    std::vector<DegreePage> pages;
    for (int n = 0; n <= maxdeg; ++n) pages.push_back(compute_degree(cover, n, opts.check_d_squared));
    return assemble(std::move(pages), maxdeg, opts);
}

SpectralReport compute_pages(const CoverDescription& cover, int maxdeg, const PagesOptions& opts) {
    check_args(cover, maxdeg);
    std::vector<DegreePage> pages(static_cast<std::size_t>(maxdeg) + 1);
    std::exception_ptr failure;
    // high degrees are the expensive ones, so hand them out first
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k <= maxdeg; ++k) {
        const int n = maxdeg - k;
        try {
            pages[n] = compute_degree(cover, n, opts.check_d_squared);
        } catch (...) {
#pragma omp critical(adhm_pages_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return assemble(std::move(pages), maxdeg, opts);
}

GradedModuleSpec charge2_module_spec(int q) {
    if (q < 0) throw InvalidArgument("q must be nonnegative");
    const GradedRing base({{"a1", 2}, {"a2", 4}});
    const GradedRing ka_ring({{"a1", 2}, {"k1", 2}, {"a2", 4}, {"k2", 4}});
    const GradedRing kc_ring({{"x1", 2}, {"x2", 2}, {"x3", 2}, {"x4", 2}});
    GradedModuleSpec spec;
    spec.add_summand(GradedModuleSpec::free_ring(base), 1);
    if (q >= 1) spec.add_summand(GradedModuleSpec::monomial_ideal(ka_ring, {{0, 1, 0, 0}, {0, 0, 0, 1}}), q);
    if (q >= 2)
        spec.add_summand(GradedModuleSpec::monomial_ideal(kc_ring, {{1, 1, 0, 0}}),
                         static_cast<std::size_t>(q) * (q - 1) / 2);
    return spec;
}

BettiTable closed_form_betti(int charge, int q, int maxdeg) {
    if (q < 0) throw InvalidArgument("q must be nonnegative");
    if (maxdeg < 0) throw InvalidArgument("max degree must be nonnegative");
    BettiTable t;
    t.rows.resize(static_cast<std::size_t>(maxdeg) + 1);
    if (charge == 1) {
        // BU(1) x (wedge of q copies of BU(1))
        const GradedRing bu1({{"c", 2}});
        for (int m = 0; m <= maxdeg; ++m) {
            std::uint64_t b = 0;
            for (int k = 0; k <= m; ++k) {
                const std::uint64_t wedge = k == 0 ? 1 : static_cast<std::uint64_t>(q) * free_ring_hilbert(bu1, k);
                b += free_ring_hilbert(bu1, m - k) * wedge;
            }
            t.rows[m].rank = b;
        }
        return t;
    }
    if (charge == 2) {
        const auto spec = charge2_module_spec(q);
        for (int m = 0; m <= maxdeg; ++m) t.rows[m].rank = hilbert(spec, m);
        return t;
    }
    throw InvalidArgument("closed forms exist for charge 1 and 2 only");
}

namespace {

PresentedModule free_module(std::size_t dim) { return {dim, IntMatrix(dim, 0)}; }

struct SubdividedGraph {
    std::size_t q = 0;
    std::size_t pairs = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (vertex, midpoint)
};

SubdividedGraph subdivided_complete_graph(std::size_t q) {
    SubdividedGraph g;
    g.q = q;
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j) {
            g.edges.push_back({i, g.pairs});
            g.edges.push_back({j, g.pairs});
            ++g.pairs;
        }
    return g;
}

void add_group(AbelianGroup& acc, const AbelianGroup& x, std::uint64_t times = 1) {
    acc.rank += x.rank * times;
    for (std::uint64_t k = 0; k < times; ++k)
        for (const auto& t : x.torsion) acc.torsion.push_back(t);
}

}  // namespace

SimplexReport simplex_assembly(int q, int maxdeg) {
    if (q < 2) throw InvalidArgument("simplex assembly needs q >= 2");
    if (maxdeg < 0) throw InvalidArgument("max degree must be nonnegative");
    const auto& pc = charge2_pieces();
    const std::size_t nq = static_cast<std::size_t>(q);
    const SubdividedGraph graph = subdivided_complete_graph(nq);
    const std::size_t E = graph.edges.size();

    // star of one vertex: q-1 edges to midpoints; relative cochains kill the midpoints
    IntMatrix star_rel(nq - 1, 1);
    for (std::size_t e = 0; e + 1 < nq; ++e) star_rel(e, 0) = -1;
    const IntMatrix star_connect = IntMatrix::identity(nq - 1);

    IntMatrix graph_rel(E, nq);                 // delta on cochains vanishing on midpoints
    IntMatrix graph_full(E, nq + graph.pairs);  // delta on all cochains
    IntMatrix graph_connect(E, graph.pairs);    // H^0(midpoints) -> H^1(graph, midpoints)
    for (std::size_t e = 0; e < E; ++e) {
        const auto [v, mid] = graph.edges[e];
        graph_rel(e, v) = -1;
        graph_full(e, v) = -1;
        graph_full(e, nq + mid) = 1;
        graph_connect(e, mid) = 1;
    }

    SimplexReport rep;
    rep.contributions.resize(static_cast<std::size_t>(maxdeg) + 1);
    const PresentedModule zero = free_module(0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (int n = 0; n <= maxdeg; ++n) {
        try {
            SimplexContribution c;
            c.degree = n;
            const std::size_t k_pair = kernel_hilbert({pc.N2_NL, pc.N2_NR}, n);
            const IntMatrix a_map = map_matrix(pc.AL_A0, n);
            const std::size_t k_vertex = a_map.cols() - integer_rank(a_map);
            const std::size_t k_base = monomial_basis(pc.A0, n).size();

            c.top = static_cast<std::uint64_t>(graph.pairs) * k_pair;

            {
                const IntMatrix id = IntMatrix::identity(k_vertex);
                const PresentedModule src = free_module((nq - 1) * k_vertex);
                const PresentedModule mid{(nq - 1) * k_vertex, kronecker(star_rel, id)};
                const IntMatrix phi = kronecker(star_connect, id);
                const AbelianGroup ker =
                    quotient_complex_cohomology(zero, IntMatrix(src.dim, 0), src, phi, mid);
                const AbelianGroup h1 = quotient_complex_cohomology(src, phi, mid, IntMatrix(0, mid.dim), zero);
                add_group(c.middle_kernel, ker, nq);
                add_group(c.middle_h1, h1, nq);
            }
            {
                const IntMatrix id = IntMatrix::identity(k_base);
                const PresentedModule src = free_module(graph.pairs * k_base);
                const PresentedModule mid{E * k_base, kronecker(graph_rel, id)};
                const PresentedModule dst{E * k_base, kronecker(graph_full, id)};
                const IntMatrix phi = kronecker(graph_connect, id);
                const IntMatrix psi = IntMatrix::identity(E * k_base);
                c.bottom_kernel = quotient_complex_cohomology(zero, IntMatrix(src.dim, 0), src, phi, mid);
                c.bottom_h1 = quotient_complex_cohomology(src, phi, mid, psi, dst);
                c.bottom_coker = quotient_complex_cohomology(mid, psi, dst, IntMatrix(0, dst.dim), zero);
            }
            rep.contributions[n] = std::move(c);
        } catch (...) {
#pragma omp critical(adhm_simplex_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    rep.betti.rows.resize(static_cast<std::size_t>(maxdeg) + 1);
    auto put = [&](int m, const AbelianGroup& g) {
        if (m < 0 || m > maxdeg) return;
        rep.betti.rows[m].rank += g.rank;
        for (const auto& t : g.torsion) rep.betti.rows[m].torsion.push_back(t);
    };
    for (const auto& c : rep.contributions) {
        const int n = c.degree;
        rep.betti.rows[n].rank += c.top;
        put(n, c.middle_kernel);
        put(n + 1, c.middle_h1);
        put(n, c.bottom_kernel);
        put(n + 1, c.bottom_h1);
        put(n + 2, c.bottom_coker);
        auto nonzero = [](const AbelianGroup& g) { return g.rank != 0 || !g.torsion.empty(); };
        if (nonzero(c.middle_h1)) rep.middle_exact = false;
        if (nonzero(c.bottom_h1)) rep.bottom_exact = false;
        if (nonzero(c.bottom_coker)) rep.surjective = false;
    }
    for (auto& row : rep.betti.rows) std::sort(row.torsion.begin(), row.torsion.end());
    return rep;
}

BettiTable simplex_assembly_betti(int q, int maxdeg) { return simplex_assembly(q, maxdeg).betti; }

DecompositionReport decomposition_check_q2(int maxdeg) {
    const auto& pc = charge2_pieces();
    const SpectralReport cech = compute_pages(build_cover_charge2_q2(), maxdeg);
    DecompositionReport rep;
    for (int n = 0; n <= maxdeg; ++n) {
        DecompositionRow row;
        row.degree = n;
        row.total = cech.betti.rows[n].rank;
        row.kc = kernel_hilbert({pc.N2_NL, pc.N2_NR}, n);
        const IntMatrix a = hconcat(map_matrix(pc.AL_A0, n), map_matrix(pc.AR_A0, n));
        row.ka = a.cols() - integer_rank(a);
        row.ok = row.total == row.kc + row.ka && cech.betti.rows[n].torsion.empty();
        if (!row.ok) rep.ok = false;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace adhm
