#include "adhm/gluing.hpp"

namespace adhm {

namespace {

void require_k(const char* op, std::size_t k, std::size_t want) {
    if (k != want)
        throw InvalidArgument(std::string(op) + " needs charge " + std::to_string(want) + ", got " + std::to_string(k));
}

void require_t(const Rational& t) {
    if (t < 0 || t > 1) throw InvalidArgument("homotopy parameter " + rational_to_string(t) + " outside [0,1]");
}

MatrixC scalar_matrix(std::size_t n, const GaussianRational& x) {
    MatrixC m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = x;
    return m;
}

std::vector<GaussianRational> rational_vector(const VectorQ& v) {
    std::vector<GaussianRational> out;
    for (const auto& x : v) out.push_back(x.to_base());
    return out;
}

MatrixC columns(const std::vector<GaussianRational>& a, const std::vector<GaussianRational>& b) {
    return {{a[0], b[0]}, {a[1], b[1]}};
}

Config1 factor1(const Config1& m, std::size_t j) {
    return Config1(m.a1.block(j, j, 1, 1), m.a2.block(j, j, 1, 1), m.d.block(j, j, 1, 1), m.b.block(j, 0, 1, m.r()),
                   m.c.block(0, j, m.r(), 1));
}

Config0 factor0(const Config1& m, std::size_t j) {
    return Config0(m.a1.block(j, j, 1, 1), m.a2.block(j, j, 1, 1), m.b.block(j, 0, 1, m.r()),
                   m.c.block(0, j, m.r(), 1));
}

Config0 factor0(const Config0& m, std::size_t j) {
    return Config0(m.a1.block(j, j, 1, 1), m.a2.block(j, j, 1, 1), m.b.block(j, 0, 1, m.r()),
                   m.c.block(0, j, m.r(), 1));
}

// Ideal configuration of charge one at the point x.
Config0 point_config(const Point2& x, std::size_t r) {
    return Config0({{x.x1}}, {{x.x2}}, MatrixC(1, r), MatrixC(r, 1));
}

struct SplitL {
    MatrixC g0, g1;
    Config1 block;  // group_act(m, g0, g1), diagonal in a1 and d
};

// Eigenbases v_j of a1 d and w_j of d a1 for the ordered eigenvalues mu0, mu1,
// with w1 = d v1 whenever that is nonzero.
SplitL split_L(const Config1& m, const QuadExt& mu0, const QuadExt& mu1) {
    const MatrixC ad = m.a1 * m.d, da = m.d * m.a1;
    const auto v0 = rational_vector(eigenspace(ad, mu0).front());
    const auto v1 = rational_vector(eigenspace(ad, mu1).front());
    const auto w0 = rational_vector(eigenspace(da, mu0).front());
    auto w1 = (m.d * MatrixC::column(v1)).col(0);
    if (w1[0].is_zero() && w1[1].is_zero()) w1 = rational_vector(eigenspace(da, mu1).front());
    SplitL s;
    s.g0 = columns(v0, v1);
    s.g1 = columns(w0, w1);
    s.block = group_act(m, s.g0, s.g1);
    return s;
}

// Orders the a1 d eigenvalues as (near 0, near z1); throws NotInNL otherwise.
SplitL split_near(const Config1& m, const GaussianRational& z1, const NeighborhoodSpec& nb) {
    require_k("boxplusL_inverse", m.k(), 2);
    const Eig2 e = eig2(m.a1 * m.d);
    if (!e.distinct) throw NotInNL("a1 d has a repeated eigenvalue");
    if (!e.rational) throw NotSplitOverQi("a1 d has eigenvalues outside Q(i)");
    const GaussianRational l0 = e.values[0].to_base(), l1 = e.values[1].to_base();
    const NeighborhoodSpec n0 = nb.around(0), nz = nb.around(z1);
    if (n0.contains(l0) && nz.contains(l1)) return split_L(m, l0, l1);
    if (n0.contains(l1) && nz.contains(l0)) return split_L(m, l1, l0);
    throw NotInNL("eigenvalues " + l0.to_string() + ", " + l1.to_string() + " not near 0 and " + z1.to_string());
}

struct Split0 {
    MatrixC g;
    Config0 block;
};

Split0 split_0(const Config0& m, const BlowupCenters& centers, const NeighborhoodSpec& nb) {
    require_k("boxplus0_inverse", m.k(), 2);
    const Eig2 e = eig2(m.a1);
    if (!e.distinct) throw NotInNL("a1 has a repeated eigenvalue");
    if (!e.rational) throw NotSplitOverQi("a1 has eigenvalues outside Q(i)");
    const NeighborhoodSpec nl = nb.around(centers.xL.x1), nr = nb.around(centers.xR.x1);
    std::size_t first;
    if (nl.contains(e.values[0].to_base()) && nr.contains(e.values[1].to_base())) first = 0;
    else if (nl.contains(e.values[1].to_base()) && nr.contains(e.values[0].to_base())) first = 1;
    else throw NotInNL("a1 eigenvalues not near x1L and x1R");
    const auto vl = rational_vector(e.vectors[first].second);
    const auto vr = rational_vector(e.vectors[1 - first].second);
    Split0 s;
    s.g = columns(vl, vr);
    s.block = group_act(m, s.g);
    return s;
}

bool can_split(const Config1& m, const GaussianRational& z1, const NeighborhoodSpec& nb) {
    try {
        split_near(m, z1, nb);
        return true;
    } catch (const NotInNL&) {
        return false;
    } catch (const NotSplitOverQi&) {
        return false;
    } catch (const InvalidArgument&) {
        return false;
    }
}

}  // namespace

BlowupCenters::BlowupCenters(Point2 left, Point2 right) : xL(std::move(left)), xR(std::move(right)) {
    if (xL.x1 == xR.x1) throw InvalidArgument("blow-up centers need distinct first coordinates");
}

NeighborhoodSpec NeighborhoodSpec::from_radius(const Rational& delta, GaussianRational center) {
    if (delta <= 0) throw InvalidArgument("neighborhood radius must be positive");
    return {delta * delta, std::move(center)};
}

NeighborhoodSpec NeighborhoodSpec::default_for(const BlowupCenters& centers) {
    return {centers.z().x1.norm() / 25, centers.z().x1};
}

Config1 pullback_blowup(const Config0& m, const Point2& x) {
    const std::size_t k = m.k();
    return Config1(m.a1 - scalar_matrix(k, x.x1), m.a2 - scalar_matrix(k, x.x2), MatrixC::identity(k), m.b, m.c);
}

Config0 direct_image(const Config1& m) { return Config0(m.d * m.a1, m.d * m.a2, m.d * m.b, m.c); }

Config0 translate_tau(const Config0& m, const Point2& x) {
    const std::size_t k = m.k();
    return Config0(m.a1 - scalar_matrix(k, x.x1), m.a2 - scalar_matrix(k, x.x2), m.b, m.c);
}

Config0 boxplus0(const Config0& mL, const Config0& mR) {
    require_k("boxplus0", mL.k(), 1);
    require_k("boxplus0", mR.k(), 1);
    if (mL.r() != mR.r()) throw ShapeMismatch("boxplus0 factors have different rank");
    const GaussianRational gap = mR.a1(0, 0) - mL.a1(0, 0);
    if (gap.is_zero()) throw EigenvalueCollision("a1L = a1R = " + gap.to_string());
    const std::size_t r = mL.r();
    const GaussianRational lr = (mL.b * mR.c)(0, 0), rl = (mR.b * mL.c)(0, 0);
    MatrixC a1{{mL.a1(0, 0), 0}, {0, mR.a1(0, 0)}};
    MatrixC a2{{mL.a2(0, 0), lr / gap}, {-rl / gap, mR.a2(0, 0)}};
    MatrixC b(2, r), c(r, 2);
    b.set_block(0, 0, mL.b);
    b.set_block(1, 0, mR.b);
    c.set_block(0, 0, mL.c);
    c.set_block(0, 1, mR.c);
    return Config0(a1, a2, b, c);
}

Config1 boxplusL(const Config1& m1, const Config0& m2) {
    require_k("boxplusL", m1.k(), 1);
    require_k("boxplusL", m2.k(), 1);
    if (m1.r() != m2.r()) throw ShapeMismatch("boxplusL factors have different rank");
    const GaussianRational gap = m2.a1(0, 0) - m1.d(0, 0) * m1.a1(0, 0);
    if (gap.is_zero()) throw EigenvalueCollision("a1'' = d' a1' = " + m2.a1(0, 0).to_string());
    const std::size_t r = m1.r();
    const GaussianRational bc12 = (m1.b * m2.c)(0, 0), bc21 = (m2.b * m1.c)(0, 0);
    MatrixC a1{{m1.a1(0, 0), 0}, {0, m2.a1(0, 0)}};
    MatrixC a2{{m1.a2(0, 0), bc12 / gap}, {-bc21 / gap, m2.a2(0, 0)}};
    MatrixC d{{m1.d(0, 0), 0}, {0, 1}};
    MatrixC b(2, r), c(r, 2);
    b.set_block(0, 0, m1.b);
    b.set_block(1, 0, m2.b);
    c.set_block(0, 0, m1.c);
    c.set_block(0, 1, m2.c);
    return Config1(a1, a2, d, b, c);
}

std::pair<Config0, Config0> boxplus0_inverse(const Config0& m, const BlowupCenters& centers,
                                             const NeighborhoodSpec& nb) {
    const Split0 s = split_0(m, centers, nb);
    return {factor0(s.block, 0), factor0(s.block, 1)};
}

std::pair<Config1, Config0> boxplusL_inverse(const Config1& m, const GaussianRational& z1,
                                             const NeighborhoodSpec& nb) {
    const SplitL s = split_near(m, z1, nb);
    return {factor1(s.block, 0), factor0(s.block, 1)};
}

// ---- orbit representatives ----

std::optional<Config0> canonical_form(const Config0& m) {
    if (m.k() == 0) return m;
    if (m.k() == 1) return normalize_k1(m);
    if (m.k() != 2) return std::nullopt;
    const Eig2 e = eig2(m.a1);
    if (!e.distinct || !e.rational) return std::nullopt;
    const Config0 t = group_act(m, columns(rational_vector(e.vectors[0].second), rational_vector(e.vectors[1].second)));
    std::vector<GaussianRational> s;
    for (std::size_t j = 0; j < 2; ++j) s.push_back(torus_normalizer(factor0(t, j)).s);
    return group_act(t, MatrixC::diagonal(s));
}

std::optional<Config1> canonical_form(const Config1& m) {
    if (m.k() == 0) return m;
    if (m.k() == 1) return normalize_k1(m);
    if (m.k() != 2) return std::nullopt;
    const Eig2 e = eig2(m.a1 * m.d);
    if (!e.distinct || !e.rational) return std::nullopt;
    const Config1 t = split_L(m, e.values[0], e.values[1]).block;
    std::vector<GaussianRational> s, u;
    for (std::size_t j = 0; j < 2; ++j) {
        const TorusScale ts = torus_normalizer(factor1(t, j));
        s.push_back(ts.s);
        u.push_back(ts.u);
    }
    return group_act(t, MatrixC::diagonal(s), MatrixC::diagonal(u));
}

bool same_orbit(const Config0& a, const Config0& b) {
    if (a.k() != b.k() || a.r() != b.r()) return false;
    const auto ca = canonical_form(a), cb = canonical_form(b);
    if (ca && cb) return *ca == *cb;
    if (ca || cb) return false;
    return a == b;
}

bool same_orbit(const Config1& a, const Config1& b) {
    if (a.k() != b.k() || a.r() != b.r()) return false;
    const auto ca = canonical_form(a), cb = canonical_form(b);
    if (ca && cb) return *ca == *cb;
    if (ca || cb) return false;
    return a == b;
}

// ---- image of C ----

CImageResult classify_C_image(const Config1& m, const Point2& z) {
    require_k("classify_C_image", m.k(), 2);
    if (z.x1.is_zero()) throw InvalidArgument("z1 must be nonzero");
    CImageResult res;
    if (!(m.c * m.d * m.b).is_zero()) {
        res.reason = "c d b is nonzero";
        return res;
    }
    for (int i = 0; i < 2; ++i) {
        const MatrixC da = m.d * (i == 0 ? m.a1 : m.a2);
        const GaussianRational& zi = i == 0 ? z.x1 : z.x2;
        if (!(trace(da) == zi) || !det2(da).is_zero()) {
            res.reason = "eigenvalues of d a" + std::to_string(i + 1) + " are not {0, " + zi.to_string() + "}";
            return res;
        }
    }
    const Config1 t = split_L(m, QuadExt(0), QuadExt(z.x1)).block;
    const Config1 s0 = normalize_k1(factor1(t, 0));
    const Config0 pf = normalize_k1(factor0(t, 1));
    if (!s0.d.is_zero()) {
        res.reason = "first factor has d' != 0";
        return res;
    }
    if (!(pf.c * pf.b).is_zero()) {
        res.reason = "c'' b'' is nonzero";
        return res;
    }
    res.in_image = true;
    res.s0_factor = s0;
    res.point_factor = pf;
    res.block_form = boxplusL(s0, pf);
    return res;
}

CImageResult classify_C_image(const Config1& m, const BlowupCenters& centers) {
    return classify_C_image(m, centers.z());
}

// ---- membership ----

const char* cover_piece_name(CoverPiece p) {
    switch (p) {
        case CoverPiece::S0: return "S0";
        case CoverPiece::NPrime: return "Nprime";
        case CoverPiece::Nz: return "Nz";
        case CoverPiece::NLCanonical: return "NL-canonical";
    }
    return "?";
}

bool membership(const Config1& m, CoverPiece piece, const NeighborhoodSpec& nb) {
    switch (piece) {
        case CoverPiece::S0:
            return m.d.is_zero();
        case CoverPiece::NPrime:
            require_k("N' membership", m.k(), 1);
            return nb.around(0).contains(m.d(0, 0) * m.a1(0, 0));
        case CoverPiece::NLCanonical:
            return can_split(m, nb.center, nb);
        case CoverPiece::Nz:
            break;
    }
    throw InvalidArgument(std::string(cover_piece_name(piece)) + " membership is for plane configurations");
}

bool membership(const Config0& m, CoverPiece piece, const NeighborhoodSpec& nb) {
    if (piece != CoverPiece::Nz)
        throw InvalidArgument(std::string(cover_piece_name(piece)) + " membership is for blow-up configurations");
    require_k("Nz membership", m.k(), 1);
    return nb.contains(m.a1(0, 0));
}

bool in_NL(const Config1& m, const GaussianRational& z1, const NeighborhoodSpec& nb) {
    return m.k() == 2 && can_split(m, z1, nb) && nondegenerate(m);
}

// ---- homotopies ----

Config0 homotopy_xy(const Config0& m, const Point2& x, const Rational& t) {
    require_t(t);
    const GaussianRational tt(t), t2(t * t), rest(1 - t * t);
    const std::size_t k = m.k();
    return Config0(m.a1 * t2 + scalar_matrix(k, rest * x.x1), m.a2 * t2 + scalar_matrix(k, rest * x.x2), m.b * tt,
                   m.c * tt);
}

Config1 homotopy_1(const Config1& m, const Rational& t) {
    require_t(t);
    return Config1(m.a1, m.a2, m.d * GaussianRational(t * t), m.b, m.c);
}

Config1 homotopy_L(const Config1& m, const Point2& z, const NeighborhoodSpec& nb, const Rational& t) {
    require_t(t);
    const SplitL s = split_near(m, z.x1, nb);
    if (t == 1) return m;
    const Config1 glued = boxplusL(homotopy_1(factor1(s.block, 0), t), homotopy_xy(factor0(s.block, 1), z, t));
    return group_act(glued, inverse(s.g0), inverse(s.g1));
}

Config0 homotopy_0(const Config0& y, const BlowupCenters& centers, const NeighborhoodSpec& nb, const Rational& t) {
    require_t(t);
    const Split0 s = split_0(y, centers, nb);
    if (t == 1) return y;
    const Config0 glued = boxplus0(homotopy_xy(factor0(s.block, 0), centers.xL, t),
                                   homotopy_xy(factor0(s.block, 1), centers.xR, t));
    return group_act(glued, inverse(s.g));
}

// ---- the two-point blow-up ----

SurfacePoint SurfacePoint::from_left(const Config1& l, const BlowupCenters& centers) {
    return pair(l, pullback_blowup(direct_image(l), centers.z()));
}

SurfacePoint SurfacePoint::from_right(const Config1& r, const BlowupCenters& centers) {
    return pair(pullback_blowup(direct_image(r), -centers.z()), r);
}

Config1 surface_left(const SurfacePoint& x, const BlowupCenters& centers) {
    if (x.kind == SurfacePoint::Kind::Pair) return x.left;
    return boxplusL(x.left, point_config(centers.z(), x.left.r()));
}

Config1 surface_right(const SurfacePoint& x, const BlowupCenters& centers) {
    if (x.kind == SurfacePoint::Kind::Pair) return x.right;
    return boxplusL(x.right, point_config(-centers.z(), x.right.r()));
}

SurfacePoint homotopy_H2(const SurfacePoint& x, const BlowupCenters& centers, const NeighborhoodSpec& nb,
                         const Rational& t) {
    require_t(t);
    if (x.kind == SurfacePoint::Kind::CPoint) return x;
    const Point2 z = centers.z();
    const bool left_n = in_NL(x.left, z.x1, nb);
    const bool right_n = !left_n && in_NL(x.right, -z.x1, nb);
    if (!left_n && !right_n) throw InconsistentPair("neither side lies in its N piece");
    if (left_n ? !same_orbit(x.right, pullback_blowup(direct_image(x.left), z))
               : !same_orbit(x.left, pullback_blowup(direct_image(x.right), -z)))
        throw InconsistentPair("the two sides do not come from one point");
    if (t == 1) return x;

    if (t == 0) {
        if (!can_split(x.left, z.x1, nb) || !can_split(x.right, -z.x1, nb))
            throw InconsistentPair("a side does not factor near the exceptional curve");
        const CImageResult cl = classify_C_image(homotopy_L(x.left, z, nb, 0), z);
        const CImageResult cr = classify_C_image(homotopy_L(x.right, -z, nb, 0), -z);
        if (!cl.in_image || !cr.in_image)
            throw InconsistentPair("endpoint misses C: " + (cl.in_image ? cr.reason : cl.reason));
        return SurfacePoint::c_point(cl.s0_factor, cr.s0_factor);
    }
    if (left_n) return SurfacePoint::from_left(homotopy_L(x.left, z, nb, t), centers);
    return SurfacePoint::from_right(homotopy_L(x.right, -z, nb, t), centers);
}

H2Check check_H2(const SurfacePoint& x, const BlowupCenters& centers, const NeighborhoodSpec& nb, const Rational& t) {
    const SurfacePoint y = homotopy_H2(x, centers, nb, t);
    const Point2 z = centers.z();
    H2Check out;
    const Config1 l = surface_left(x, centers);
    if (can_split(l, z.x1, nb)) {
        out.left_checked = true;
        out.left_ok = same_orbit(homotopy_L(l, z, nb, t), surface_left(y, centers));
    }
    const Config1 r = surface_right(x, centers);
    if (can_split(r, -z.x1, nb)) {
        out.right_checked = true;
        out.right_ok = same_orbit(homotopy_L(r, -z, nb, t), surface_right(y, centers));
    }
    return out;
}

}  // namespace adhm
