#include "adhm/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "adhm/sampling.hpp"
#include "adhm/spectral.hpp"

namespace adhm {

void CheckLog::check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failed_;
    if (messages_.size() < 8) messages_.push_back(what);
}

namespace {

using G = GaussianRational;

std::string deg(int n) { return " (degree " + std::to_string(n) + ")"; }

Rational frac(long p, long q) { return Rational(Integer(p), Integer(q)); }

// ---- enumeration oracles ----
// Each walks every exponent vector of the given degree and tests membership
// directly; nothing here goes through the Hilbert-function code.

template <class Keep>
void walk(const std::vector<int>& degrees, std::size_t i, int left, std::vector<int>& e, std::uint64_t& count,
          const Keep& keep) {
    if (i == degrees.size()) {
        if (left == 0 && keep(e)) ++count;
        return;
    }
    for (int x = 0; x * degrees[i] <= left; ++x) {
        e[i] = x;
        walk(degrees, i + 1, left - x * degrees[i], e, count, keep);
    }
    e[i] = 0;
}

template <class Keep>
std::uint64_t count_monomials(const std::vector<int>& degrees, int n, const Keep& keep) {
    std::vector<int> e(degrees.size(), 0);
    std::uint64_t count = 0;
    walk(degrees, 0, n, e, count, keep);
    return count;
}

std::uint64_t count_all(const std::vector<int>& degrees, int n) {
    return count_monomials(degrees, n, [](const std::vector<int>&) { return true; });
}

// BU(1) x (wedge of q copies of BU(1)): c^a, or c^a u_i^b with b >= 1.
std::uint64_t charge1_oracle(int q, int n) {
    std::uint64_t count = 0;
    for (int a = 0; 2 * a <= n; ++a) {
        const int rest = n - 2 * a;
        if (rest == 0) ++count;
        else if (rest % 2 == 0) count += static_cast<std::uint64_t>(q);
    }
    return n % 2 == 0 ? count : 0;
}

// Z[a1, a2] + q copies of (k1, k2) in Z[a1, k1, a2, k2] + q(q-1)/2 copies of
// (x1 x2) in Z[x1..x4].
std::uint64_t charge2_oracle(int q, int n) {
    const std::uint64_t base = count_all({2, 4}, n);
    const std::uint64_t ka = count_monomials({2, 2, 4, 4}, n, [](const std::vector<int>& e) { return e[1] > 0 || e[3] > 0; });
    const std::uint64_t kc = count_monomials({2, 2, 2, 2}, n, [](const std::vector<int>& e) { return e[0] > 0 && e[1] > 0; });
    const auto uq = static_cast<std::uint64_t>(q);
    return base + uq * ka + uq * (uq - 1) / 2 * kc;
}

void check_clean(CheckLog& log, const BettiTable& t, const std::string& what) {
    log.check(!t.has_torsion(), what + " has torsion");
    log.check(t.odd_vanishes(), what + " has odd cohomology");
}

// ---- 1 ----
void charge1_betti(CheckLog& log, std::uint64_t) {
    for (int q = 0; q <= 5; ++q) {
        const std::string tag = "charge 1, q=" + std::to_string(q);
        const SpectralReport rep = compute_pages(build_cover_charge1(q), 20);
        const BettiTable closed = closed_form_betti(1, q, 20);
        log.check(rep.betti == closed, tag + ": Cech table differs from the closed form");
        log.check(rep.d_squared_zero, tag + ": d1 d1 != 0");
        check_clean(log, rep.betti, tag);
        for (int n = 0; n <= 20; ++n) {
            const std::uint64_t want = n % 2 ? 0 : 1 + static_cast<std::uint64_t>(q) * (n / 2);
            log.check(rep.betti.rows[n].rank == want, tag + ": b != 1 + qn" + deg(n));
            log.check(charge1_oracle(q, n) == want, tag + ": enumeration oracle disagrees" + deg(n));
        }
    }
}

// ---- 2 ----
void baselines(CheckLog& log, std::uint64_t) {
    const BettiTable q0 = closed_form_betti(2, 0, 24), q1 = closed_form_betti(2, 1, 24);
    for (int n = 0; n <= 24; ++n) {
        log.check(q0.rows[n].rank == count_all({2, 4}, n), "q=0 differs from Z[2,4]" + deg(n));
        log.check(q1.rows[n].rank == count_all({2, 2, 4, 4}, n), "q=1 differs from Z[2,2,4,4]" + deg(n));
    }
    const std::vector<std::uint64_t> head{1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 3};
    for (int n = 0; n <= 10; ++n) log.check(q0.rows[n].rank == head[n], "q=0 leading values" + deg(n));
    check_clean(log, q0, "q=0");
    check_clean(log, q1, "q=1");
}

// ---- 3 ----
void triple_agreement(CheckLog& log, std::uint64_t) {
    const SpectralReport cech = compute_pages(build_cover_charge2_q2(), 24);
    const BettiTable simplex = simplex_assembly_betti(2, 24);
    const BettiTable closed = closed_form_betti(2, 2, 24);
    log.check(cech.betti == closed, "Cech table differs from the closed form");
    log.check(simplex == closed, "simplex assembly differs from the closed form");
    check_clean(log, cech.betti, "Cech table");
    check_clean(log, simplex, "simplex table");
    for (int n = 0; n <= 24; ++n)
        log.check(closed.rows[n].rank == charge2_oracle(2, n), "closed form differs from enumeration" + deg(n));
    log.check(charge2_oracle(2, 2) == 3 && cech.betti.rows[2].rank == 3, "b2 != 3");
    log.check(charge2_oracle(2, 4) == 9 && cech.betti.rows[4].rank == 9, "b4 != 9");
    log.check(charge2_oracle(2, 6) == 18 && cech.betti.rows[6].rank == 18, "b6 != 18");
}

// ---- 4 ----
void kernel_identities(CheckLog& log, std::uint64_t) {
    const Charge2Pieces& p = charge2_pieces();
    auto unit = [](const GradedRing& r, const std::vector<std::string>& names) {
        Exponent e(r.size(), 0);
        for (const auto& n : names) e[r.index_of(n)] += 1;
        return e;
    };
    const auto kc = GradedModuleSpec::monomial_ideal(p.N2, {unit(p.N2, {"cDL", "cDR"})});
    const auto kal = GradedModuleSpec::monomial_ideal(p.AL, {unit(p.AL, {"aD1L"}), unit(p.AL, {"aD2L"})});
    const auto kar = GradedModuleSpec::monomial_ideal(p.AR, {unit(p.AR, {"aD1R"}), unit(p.AR, {"aD2R"})});
    for (int n = 0; n <= 24; ++n) {
        log.check(kernel_hilbert({p.N2_NL, p.N2_NR}, n) == hilbert(kc, n), "K_C kernel differs from (cDL cDR)" + deg(n));
        log.check(kernel_hilbert({p.AL_A0}, n) == hilbert(kal, n), "K_AL kernel differs from (aD1L, aD2L)" + deg(n));
        log.check(kernel_hilbert({p.AR_A0}, n) == hilbert(kar, n), "K_AR kernel differs from (aD1R, aD2R)" + deg(n));
        // oracle for the ideals themselves
        log.check(hilbert(kc, n) == count_monomials({2, 2, 2, 2}, n, [](const std::vector<int>& e) { return e[0] > 0 && e[2] > 0; }),
                  "ideal (cDL cDR) count" + deg(n));
        log.check(hilbert(kal, n) == count_monomials({2, 2, 4, 4}, n, [](const std::vector<int>& e) { return e[0] > 0 || e[2] > 0; }),
                  "ideal (aD1L, aD2L) count" + deg(n));
    }
}

// ---- 5 ----
void decomposition(CheckLog& log, std::uint64_t) {
    const DecompositionReport rep = decomposition_check_q2(24);
    log.check(rep.ok, "decomposition check reports a failure");
    log.check(rep.rows.size() == 25, "decomposition table length");
    for (const auto& row : rep.rows) {
        log.check(row.ok && row.total == row.kc + row.ka, "rank split fails" + deg(row.degree));
        log.check(row.total == charge2_oracle(2, row.degree), "total differs from enumeration" + deg(row.degree));
    }
    if (rep.rows.size() > 4) {
        log.check(rep.rows[0].total == 1 && rep.rows[0].kc == 0 && rep.rows[0].ka == 1, "degree 0: 1 = 0 + 1");
        log.check(rep.rows[2].total == 3 && rep.rows[2].kc == 0 && rep.rows[2].ka == 3, "degree 2: 3 = 0 + 3");
        log.check(rep.rows[4].total == 9 && rep.rows[4].kc == 1 && rep.rows[4].ka == 8, "degree 4: 9 = 1 + 8");
    }
}

// ---- 6 ----
void general_q(CheckLog& log, std::uint64_t) {
    for (int q = 2; q <= 5; ++q) {
        const std::string tag = "q=" + std::to_string(q);
        const SimplexReport rep = simplex_assembly(q, 16);
        log.check(rep.betti == closed_form_betti(2, q, 16), tag + ": simplex assembly differs from the closed form");
        log.check(rep.middle_exact, tag + ": middle complex is not exact");
        log.check(rep.surjective, tag + ": d1 onto the top column is not surjective");
        log.check(rep.bottom_exact, tag + ": bottom complex is not exact in the middle");
        check_clean(log, rep.betti, tag);
        for (int n = 0; n <= 16; ++n)
            log.check(rep.betti.rows[n].rank == charge2_oracle(q, n), tag + ": enumeration oracle disagrees" + deg(n));
    }
    const SpectralReport cech = compute_pages(build_cover_charge2_q2(), 16);
    log.check(cech.top_surjective, "q=2 Cech: d1 onto the top column is not surjective");
    log.check(cech.collapse_certified, "q=2 Cech: E2 has terms off the first column");
}

// ---- 7 ----

Config0 glued0(Sampler& s) {
    for (;;) {
        const Config0 l = s.config0_k1(2), r = s.config0_k1(2);
        if (!(l.a1 == r.a1)) return boxplus0(l, r);
    }
}

bool residual_is_defect(const MonadPolynomial& p, const MatrixC& defect) {
    const Mono5 x3sq{0, 0, 2, 0, 0};
    if (defect.is_zero()) return p.is_zero();
    if (p.terms().size() != 1 || p.terms().begin()->first != x3sq) return false;
    MatrixC rest = p.terms().begin()->second;
    const std::size_t k = defect.rows();
    if (!(rest.block(0, 0, k, k) == defect)) return false;
    rest.set_block(0, 0, MatrixC(k, k));
    return rest.is_zero();
}

// d a_i has characteristic polynomial t (t - z_i), and c d b = 0.
bool c_image_condition(const Config1& m, const Point2& z) {
    if (!(m.c * m.d * m.b).is_zero()) return false;
    const MatrixC da1 = m.d * m.a1, da2 = m.d * m.a2;
    return trace(da1) == z.x1 && det2(da1).is_zero() && trace(da2) == z.x2 && det2(da2).is_zero();
}

void monad_properties(CheckLog& log, std::uint64_t seed) {
    Sampler s(seed);
    const int trials = 200;

    // gluing keeps integrability; degeneracy iff a framing vector vanishes
    for (int t = 0; t < trials; ++t) {
        const bool zb1 = s.coin(1, 5), zc1 = !zb1 && s.coin(1, 5), zb2 = s.coin(1, 5), zc2 = !zb2 && s.coin(1, 5);
        const bool vanishing = zb1 || zc1 || zb2 || zc2;
        const Config0 l = s.config0_k1(2, zb1, zc1);
        Config0 r = s.config0_k1(2, zb2, zc2);
        if (l.a1 == r.a1) r.a1(0, 0) += G(1);
        const Config0 g0 = boxplus0(l, r);
        log.check(integrable(g0), "boxplus0 lost integrability");
        log.check(nondegenerate(g0) == !vanishing, "boxplus0 degeneracy criterion");
        const Config1 m1 = s.config1_k1(2, s.scalar(), zb1, zc1);
        if (r.a1(0, 0) == m1.d(0, 0) * m1.a1(0, 0)) r.a1(0, 0) += G(1);
        const Config1 gl = boxplusL(m1, r);
        // effectiveness needs a nonzero entry among a1'', a2'', b''
        const bool point_effective = !(r.a1.is_zero() && r.a2.is_zero() && r.b.is_zero());
        log.check(integrability_defect(gl).is_zero(), "boxplusL lost integrability");
        log.check(effective(gl) == point_effective, "boxplusL effectiveness");
        log.check(nondegenerate(gl) == !vanishing, "boxplusL degeneracy criterion");
    }

    // residual of the monad complex is the defect times x3^2
    for (int t = 0; t < trials; ++t) {
        const std::size_t k = s.uniform(1, 2), r = s.uniform(1, 2);
        const Config0 g(s.matrix(k, k), s.matrix(k, k), s.matrix(k, r), s.matrix(r, k));
        log.check(residual_is_defect(monad_residual(g), integrability_defect(g)), "plane residual != defect x3^2");
        Config1 m = pullback_blowup(glued0(s), {s.scalar(), s.scalar()});
        log.check(monad_residual(m).is_zero(), "blow-up residual of an integrable pullback");
        m.a2(0, 0) += s.nonzero_scalar();
        log.check(residual_is_defect(monad_residual(m), integrability_defect(m)), "blow-up residual != defect x3^2");
    }

    // direct image of the pullback is the translate; pullback commutes with gluing
    for (int t = 0; t < trials; ++t) {
        const Config0 y = glued0(s);
        const Point2 x{s.scalar(), s.scalar()};
        log.check(direct_image(pullback_blowup(y, x)) == translate_tau(y, x), "direct image of pullback != translate");
        const Config0 m1 = s.config0_k1(2), m2 = s.config0_k1(2);
        if (m1.a1 == m2.a1) continue;
        const Config1 lhs = pullback_blowup(boxplus0(m1, m2), x);
        const Config1 rhs = boxplusL(pullback_blowup(m1, x), translate_tau(m2, x));
        log.check(same_orbit(lhs, rhs), "pullback of boxplus0 != boxplusL of pullbacks");
    }

    // two-point homotopy
    const std::vector<Rational> times{0, frac(1, 4), frac(1, 2), frac(3, 4), 1};
    const Sampler::SurfaceKind kinds[] = {Sampler::SurfaceKind::Both, Sampler::SurfaceKind::LeftOnly,
                                          Sampler::SurfaceKind::RightOnly, Sampler::SurfaceKind::C};
    for (int t = 0; t < trials; ++t) {
        const BlowupCenters c = s.centers();
        const NeighborhoodSpec nb = NeighborhoodSpec::default_for(c);
        const SurfacePoint x = s.surface_point(c, nb, kinds[t % 4]);
        const SurfacePoint one = homotopy_H2(x, c, nb, 1);
        log.check(same_orbit(surface_left(one, c), surface_left(x, c)) &&
                      same_orbit(surface_right(one, c), surface_right(x, c)),
                  "H2(x, 1) != x");
        const SurfacePoint zero = homotopy_H2(x, c, nb, 0);
        log.check(zero.kind == SurfacePoint::Kind::CPoint, "H2(x, 0) is not in C");
        log.check(classify_C_image(surface_left(zero, c), c.z()).in_image &&
                      classify_C_image(surface_right(zero, c), -c.z()).in_image,
                  "H2(x, 0) does not classify into C");
        for (const auto& tt : times) log.check(check_H2(x, c, nb, tt).ok(), "H2 defining equations fail");
    }

    // classification against the direct eigenvalue condition
    for (int t = 0; t < trials; ++t) {
        const Point2 z = s.centers().z();
        const int family = t % 3;
        // family 1 has c'' b'' != 0, family 2 the wrong eigenvalue
        Config0 point = s.config0_k1(2, false, family != 1);
        point.a1(0, 0) = z.x1;
        point.a2(0, 0) = z.x2;
        if (family == 2) point.a1(0, 0) += s.nonzero_scalar();
        if (point.a1(0, 0).is_zero()) point.a1(0, 0) = z.x1 + z.x1;
        const Config1 m = group_act(boxplusL(s.config1_k1(2, 0), point), s.invertible(2), s.invertible(2));
        const CImageResult res = classify_C_image(m, z);
        const bool condition = c_image_condition(m, z);
        log.check(res.in_image == (family == 0), "classification of a constructed family");
        log.check(res.in_image == condition, "classification disagrees with the eigenvalue condition");
        if (res.in_image) log.check(same_orbit(res.block_form, m), "block form is not in the orbit");
    }
}

// ---- 8 ----
void spectral_guards(CheckLog& log, std::uint64_t) {
    std::vector<CoverDescription> covers;
    for (int q = 0; q <= 5; ++q) covers.push_back(build_cover_charge1(q));
    covers.push_back(build_cover_charge2_q2());
    for (const auto& c : covers) {
        const SpectralReport rep = compute_pages(c, 24);
        log.check(rep.d_squared_zero, c.name + ": d1 d1 != 0");
        log.check(rep.odd_rows_vanish, c.name + ": odd E1 rows");
        for (const auto& page : rep.pages) {
            if (page.degree % 2 == 0) continue;
            for (std::size_t p = 0; p < page.e1.size(); ++p)
                log.check(page.e1[p] == 0, c.name + ": E1^{" + std::to_string(p) + ",odd} != 0" + deg(page.degree));
        }
        for (int n = 0; n <= 24; ++n) {
            const int top = c.top_dimension();
            for (int p = 0; p + 2 <= top; ++p) {
                const IntMatrix prod = d1_matrix(c, p + 1, n) * d1_matrix(c, p, n);
                log.check(prod.is_zero(), c.name + ": explicit d1 d1 product" + deg(n));
            }
        }
    }
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> all{
        {1, "charge-1 Betti numbers", "spectral charge1 cech", 5, charge1_betti},
        {2, "charge-2 baselines q=0,1", "spectral baseline closed-form", 1, baselines},
        {3, "q=2 triple agreement", "spectral charge2 cech simplex closed-form", 30, triple_agreement},
        {4, "kernel identities", "spectral kernel graded", 10, kernel_identities},
        {5, "q=2 decomposition", "spectral decomposition", 10, decomposition},
        {6, "general q simplex assembly", "spectral simplex", 60, general_q},
        {7, "monad and gluing properties", "monad gluing homotopy", 60, monad_properties},
        {8, "spectral guards", "spectral guards cech", 5, spectral_guards},
    };
    return all;
}

bool criterion_matches(const Criterion& c, const std::string& filter) {
    if (filter.empty() || filter == std::to_string(c.id)) return true;
    if (c.name.find(filter) != std::string::npos) return true;
    std::istringstream tags(c.tags);
    for (std::string tag; tags >> tag;)
        if (tag.find(filter) != std::string::npos) return true;
    return false;
}

CriterionResult run_criterion(const Criterion& c, std::uint64_t seed) {
    CriterionResult res;
    res.id = c.id;
    res.name = c.name;
    res.budget_seconds = c.budget_seconds;
    CheckLog log;
    const auto start = std::chrono::steady_clock::now();
    try {
        c.run(log, seed);
    } catch (const std::exception& e) {
        log.check(false, std::string("exception: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.checks_passed = log.passed() && log.checks() > 0;
    res.checks = log.checks();
    res.messages = log.messages();
    if (log.failed() > log.messages().size())
        res.messages.push_back("... " + std::to_string(log.failed() - log.messages().size()) + " more failures");
    return res;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::string& filter) {
    std::vector<CriterionResult> out;
    for (const auto& c : acceptance_criteria())
        if (criterion_matches(c, filter)) out.push_back(run_criterion(c, seed));
    return out;
}

std::string CriterionResult::report(bool with_timing) const {
    char timing[96];
    if (with_timing)
        std::snprintf(timing, sizeof timing, "%.2f s of %g s", seconds, budget_seconds);
    else
        std::snprintf(timing, sizeof timing, "%s %g s", within_budget() ? "within" : "over", budget_seconds);
    std::string line = std::string(passed() ? "PASS" : "FAIL") + "  [" + std::to_string(id) + "] " + name + " (" +
                       std::to_string(checks) + " checks, " + timing + ")";
    if (checks_passed && !within_budget()) line += "\n      runtime budget exceeded";
    for (const auto& m : messages) line += "\n      " + m;
    return line;
}

}  // namespace adhm
