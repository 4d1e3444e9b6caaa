#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adhm/eigen.hpp"

namespace adhm {

/// Configuration (a1, a2, b, c) for the plane: a_i in End(W), b : C^r -> W,
/// c : W -> C^r.
struct Config0 {
    MatrixC a1, a2, b, c;

    Config0() = default;
    Config0(MatrixC a1_, MatrixC a2_, MatrixC b_, MatrixC c_);
    /// Empty configuration of charge 0 and rank r.
    static Config0 empty(std::size_t r);

    std::size_t k() const { return a1.rows(); }
    std::size_t r() const { return b.cols(); }
    /// Throws ShapeMismatch when the blocks disagree.
    void validate() const;
    bool operator==(const Config0&) const = default;
};

/// Configuration (a1, a2, d, b, c) for the one-point blow-up: a_i : W -> V,
/// d : V -> W, b : C^r -> V, c : W -> C^r.
struct Config1 {
    MatrixC a1, a2, d, b, c;

    Config1() = default;
    Config1(MatrixC a1_, MatrixC a2_, MatrixC d_, MatrixC b_, MatrixC c_);
    static Config1 empty(std::size_t r);

    std::size_t k() const { return a1.rows(); }
    std::size_t r() const { return b.cols(); }
    void validate() const;
    bool operator==(const Config1&) const = default;
};

MatrixC integrability_defect(const Config0& m);  // [a1,a2] + bc
MatrixC integrability_defect(const Config1& m);  // a1 d a2 - a2 d a1 + bc
bool effective(const Config1& m);                 // columns of [a1|a2|b] span V
bool integrable(const Config0& m);
/// Integrability together with effectiveness.
bool integrable(const Config1& m);

/// Monomial x1^e0 x2^e1 x3^e2 y1^e3 y2^e4.
using Mono5 = std::array<int, 5>;

/// Polynomial in x1, x2, x3, y1, y2 with matrix coefficients. With the
/// relation flag set, terms are kept reduced modulo x1 y1 + x2 y2 by
/// rewriting x1 y1 -> -x2 y2.
class MonadPolynomial {
public:
    MonadPolynomial() = default;
    MonadPolynomial(std::size_t rows, std::size_t cols, bool relation = false)
        : rows_(rows), cols_(cols), relation_(relation) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool relation() const { return relation_; }
    const std::map<Mono5, MatrixC>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Zero matrix when the monomial is absent.
    MatrixC coefficient(const Mono5& m) const;

    void add_term(const Mono5& m, const MatrixC& coeff);
    void set_relation(bool on);
    friend MonadPolynomial operator*(const MonadPolynomial& a, const MonadPolynomial& b);

private:
    void add_reduced(Mono5 m, MatrixC coeff);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    bool relation_ = false;
    std::map<Mono5, MatrixC> terms_;
};

std::string mono_to_string(const Mono5& m);

MonadPolynomial monad_A(const Config0& m);
MonadPolynomial monad_B(const Config0& m);
MonadPolynomial monad_A(const Config1& m);
MonadPolynomial monad_B(const Config1& m);
/// B * A, reduced modulo x1 y1 + x2 y2 for the blow-up monad.
MonadPolynomial monad_residual(const Config0& m);
MonadPolynomial monad_residual(const Config1& m);

struct SpecialSubspace {
    enum class Kind { B, C };
    Kind kind = Kind::B;
    bool pair = false;
    VectorQ v;      // W' for the plane, V' for pairs
    VectorQ w;      // W' for pairs
    bool family = false;  // representative of infinitely many lines
};

struct SpecialReport {
    std::vector<SpecialSubspace> lines;  // proper special lines / pairs of lines
    bool b_zero = false;  // 0 (resp. (0,0)) is b-special
    bool c_zero = false;  // W (resp. (V,W)) is c-special
    bool empty() const { return lines.empty() && !b_zero && !c_zero; }
};

/// Throws ChargeTooLarge for k > 2.
SpecialReport special_subspaces(const Config0& m);
SpecialReport special_subspaces(const Config1& m);

bool is_b_special(const Config0& m, const VectorQ& v);
bool is_c_special(const Config0& m, const VectorQ& v);
bool is_b_special(const Config1& m, const VectorQ& v, const VectorQ& w);
bool is_c_special(const Config1& m, const VectorQ& v, const VectorQ& w);

bool nondegenerate(const Config0& m);
bool nondegenerate(const Config1& m);

/// g . (a1, a2, b, c) = (g^-1 a1 g, g^-1 a2 g, g^-1 b, c g).
Config0 group_act(const Config0& m, const MatrixC& g);
/// (g0, g1) . m = (g0^-1 a_i g1, g1^-1 d g0, g0^-1 b, c g1).
Config1 group_act(const Config1& m, const MatrixC& g0, const MatrixC& g1);

struct DUPoint {
    enum class Surface { Plane, Blowup };
    Surface surface = Surface::Plane;
    QuadExt l1, l2;
    // [mu1 : mu2] with (mu1 a1 + mu2 a2) v = 0; absent on the plane or when
    // both a-entries vanish.
    std::optional<std::pair<QuadExt, QuadExt>> mu;

    /// lambda lies on the line mu1 x + mu2 y = 0 (always true on the plane).
    bool incident() const;
    std::string to_string() const;
};

bool same_point(const DUPoint& a, const DUPoint& b);
bool same_points(std::vector<DUPoint> a, std::vector<DUPoint> b);

struct Reduction0 {
    Config0 reduced;
    std::vector<QuadExt> a1_delta, a2_delta;  // diagonal of the ideal block
    std::vector<DUPoint> points;
    bool was_nondegenerate = false;
};

struct Reduction1 {
    Config1 reduced;
    std::vector<QuadExt> a1_delta, a2_delta, d_delta;
    std::vector<DUPoint> points;
    bool was_nondegenerate = false;
};

/// Throws NotIntegrable, ChargeTooLarge, or NotSplitOverQi when the reduced
/// part is irrational in every normalization.
Reduction0 canonical_reduction(const Config0& m);
Reduction1 canonical_reduction(const Config1& m);

/// Torus normal forms for charge one (first nonzero entry scaled to 1).
Config0 normalize_k1(const Config0& m);
Config1 normalize_k1(const Config1& m);

/// Scalars (s, u) with normalize_k1(m) = group_act(m, s, u); s = u for the plane.
struct TorusScale {
    GaussianRational s{1}, u{1};
};
TorusScale torus_normalizer(const Config0& m);
TorusScale torus_normalizer(const Config1& m);

}  // namespace adhm
