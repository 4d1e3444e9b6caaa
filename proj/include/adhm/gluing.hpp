#pragma once

#include <optional>
#include <string>
#include <utility>

#include "adhm/monad.hpp"

namespace adhm {

struct Point2 {
    GaussianRational x1, x2;
    Point2 operator-() const { return {-x1, -x2}; }
    bool operator==(const Point2&) const = default;
};

/// The two blown-up points; z = xR - xL.
struct BlowupCenters {
    Point2 xL, xR;

    BlowupCenters() = default;
    /// Throws InvalidArgument when x1L = x1R.
    BlowupCenters(Point2 left, Point2 right);
    Point2 z() const { return {xR.x1 - xL.x1, xR.x2 - xL.x2}; }
};

/// Open disc of radius sqrt(delta_sq) around `center`; comparisons are exact.
struct NeighborhoodSpec {
    Rational delta_sq;
    GaussianRational center;

    /// Throws InvalidArgument unless delta > 0.
    static NeighborhoodSpec from_radius(const Rational& delta, GaussianRational center = 0);
    /// delta^2 = |z1|^2 / 25, so the discs around 0 and z1 are far apart.
    static NeighborhoodSpec default_for(const BlowupCenters& centers);

    NeighborhoodSpec around(GaussianRational c) const { return {delta_sq, std::move(c)}; }
    bool contains(const GaussianRational& x) const { return (x - center).norm() < delta_sq; }
};

Config1 pullback_blowup(const Config0& m, const Point2& x);
Config0 direct_image(const Config1& m);
Config0 translate_tau(const Config0& m, const Point2& x);

/// Throws EigenvalueCollision when a1L = a1R.
Config0 boxplus0(const Config0& mL, const Config0& mR);
/// Throws EigenvalueCollision when a1'' = d' a1'.
Config1 boxplusL(const Config1& m1, const Config0& m2);

/// Factors (mL, mR) with boxplus0(mL, mR) in the orbit of m. The a1-eigenvalues
/// must be distinct, in Q(i), and lie near x1L and x1R respectively.
std::pair<Config0, Config0> boxplus0_inverse(const Config0& m, const BlowupCenters& centers,
                                             const NeighborhoodSpec& nb);
/// Factors (m', m'') with boxplusL(m', m'') in the orbit of m; the eigenvalues
/// of a1 d must be distinct, in Q(i), one near 0 and one near z1. Throws NotInNL.
std::pair<Config1, Config0> boxplusL_inverse(const Config1& m, const GaussianRational& z1,
                                             const NeighborhoodSpec& nb);

/// Orbit representatives: eigenbasis block form with torus-normalized blocks.
/// Empty when the relevant eigenvalues repeat or leave Q(i).
std::optional<Config0> canonical_form(const Config0& m);
std::optional<Config1> canonical_form(const Config1& m);
/// Compares canonical forms; falls back to literal equality without one.
bool same_orbit(const Config0& a, const Config0& b);
bool same_orbit(const Config1& a, const Config1& b);

struct CImageResult {
    bool in_image = false;
    std::string reason;     // why not, when not
    Config1 block_form;     // boxplusL(s0_factor, point_factor)
    Config1 s0_factor;      // charge-one factor with d = 0
    Config0 point_factor;   // (z1, z2, b'', c'')
};

/// Tests cdb = 0 and that d a_i has eigenvalues {0, z_i}.
CImageResult classify_C_image(const Config1& m, const Point2& z);
CImageResult classify_C_image(const Config1& m, const BlowupCenters& centers);

enum class CoverPiece { S0, NPrime, Nz, NLCanonical };
const char* cover_piece_name(CoverPiece p);
/// S0: d = 0. N': |d a1|^2 < delta^2. NL-canonical: boxplusL_inverse succeeds
/// with z1 = nb.center.
bool membership(const Config1& m, CoverPiece piece, const NeighborhoodSpec& nb);
/// Nz: |a1 - center|^2 < delta^2 for charge one.
bool membership(const Config0& m, CoverPiece piece, const NeighborhoodSpec& nb);
/// NL-canonical and non-degenerate.
bool in_NL(const Config1& m, const GaussianRational& z1, const NeighborhoodSpec& nb);

// Homotopies; t must lie in [0, 1].
Config0 homotopy_xy(const Config0& m, const Point2& x, const Rational& t);
Config1 homotopy_1(const Config1& m, const Rational& t);
/// H1 on the first factor and H_z on the second, in the basis of m.
Config1 homotopy_L(const Config1& m, const Point2& z, const NeighborhoodSpec& nb, const Rational& t);
/// H_{xL} and H_{xR} factor-wise through boxplus0.
Config0 homotopy_0(const Config0& y, const BlowupCenters& centers, const NeighborhoodSpec& nb, const Rational& t);

/// A point of the charge-2 moduli space of the two-point blow-up: either the
/// pair of its direct images to the one-point blow-ups (left in coordinates
/// centered at xL, right centered at xR), or a point of C given by two
/// charge-one configurations with d = 0.
struct SurfacePoint {
    enum class Kind { Pair, CPoint };
    Kind kind = Kind::Pair;
    Config1 left, right;

    static SurfacePoint pair(Config1 l, Config1 r) { return {Kind::Pair, std::move(l), std::move(r)}; }
    static SurfacePoint c_point(Config1 sl, Config1 sr) { return {Kind::CPoint, std::move(sl), std::move(sr)}; }
    /// Completes a left configuration by pulling back its direct image at z.
    static SurfacePoint from_left(const Config1& l, const BlowupCenters& centers);
    static SurfacePoint from_right(const Config1& r, const BlowupCenters& centers);
};

/// Image on the left one-point blow-up (charge 2).
Config1 surface_left(const SurfacePoint& x, const BlowupCenters& centers);
Config1 surface_right(const SurfacePoint& x, const BlowupCenters& centers);

/// Throws InconsistentPair when neither side lies in its N piece or the two
/// sides disagree.
SurfacePoint homotopy_H2(const SurfacePoint& x, const BlowupCenters& centers, const NeighborhoodSpec& nb,
                         const Rational& t);

struct H2Check {
    bool left_checked = false, left_ok = true;
    bool right_checked = false, right_ok = true;
    bool ok() const { return left_ok && right_ok && (left_checked || right_checked); }
};

/// Evaluates both defining equations of H2 wherever H_L / H_R are defined.
H2Check check_H2(const SurfacePoint& x, const BlowupCenters& centers, const NeighborhoodSpec& nb, const Rational& t);

}  // namespace adhm
