#include "adhm/monad.hpp"

#include <sstream>

namespace adhm {

namespace {

void require_shape(const MatrixC& m, std::size_t rows, std::size_t cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols)
        throw ShapeMismatch(std::string(name) + " is " + m.shape_string() + ", expected " +
                            std::to_string(rows) + "x" + std::to_string(cols));
}

VectorQ to_vec(const std::vector<GaussianRational>& v) { return {v.begin(), v.end()}; }

VectorQ unit(std::size_t i) {
    VectorQ e(2, QuadExt(0));
    e[i] = 1;
    return e;
}

// Some standard basis vector independent of v.
VectorQ complement(const VectorQ& v) { return parallel(v, unit(0)) ? unit(1) : unit(0); }

MatrixQ from_columns(const VectorQ& a, const VectorQ& b) {
    MatrixQ m(2, 2);
    m(0, 0) = a[0];
    m(1, 0) = a[1];
    m(0, 1) = b[0];
    m(1, 1) = b[1];
    return m;
}

// Rescales b by 1/s, c by u, a by u/s, d by s/u; the generic charge-one torus.
template <class T>
struct Piece {
    T a1, a2, d;
    std::vector<T> b, c;
    bool has_d = false;

    bool degenerate() const { return all_zero(b) || all_zero(c); }
    static bool all_zero(const std::vector<T>& v) {
        for (const auto& x : v)
            if (!is_zero_value(x)) return false;
        return true;
    }
    static const T* first_nonzero(const std::vector<T>& v) {
        for (const auto& x : v)
            if (!is_zero_value(x)) return &x;
        return nullptr;
    }

    void apply(const T& s, const T& u) {
        a1 = a1 * u / s;
        a2 = a2 * u / s;
        d = d * s / u;
        for (auto& x : b) x /= s;
        for (auto& x : c) x *= u;
    }

    void normalize() {
        const auto [s, u] = scales();
        apply(s, u);
    }

    std::pair<T, T> scales() const {
        T s(1), u(1);
        if (!has_d) {
            // Only s = u survives.
            if (const T* p = first_nonzero(b)) s = *p;
            else if (const T* p = first_nonzero(c)) s = T(1) / *p;
            return {s, s};
        }
        if (const T* pb = first_nonzero(b)) {
            s = *pb;
            if (!is_zero_value(d)) u = d * s;
            else if (const T* pc = first_nonzero(c)) u = T(1) / *pc;
            else if (!is_zero_value(a1)) u = s / a1;
            else if (!is_zero_value(a2)) u = s / a2;
            else u = T(1);
        } else if (const T* pc = first_nonzero(c)) {
            u = T(1) / *pc;
            if (!is_zero_value(d)) s = u / d;
            else if (!is_zero_value(a1)) s = a1 * u;
            else if (!is_zero_value(a2)) s = a2 * u;
        } else {
            if (!is_zero_value(d)) u = d;
            else if (!is_zero_value(a1)) u = T(1) / a1;
            else if (!is_zero_value(a2)) u = T(1) / a2;
        }
        return {s, u};
    }
};

Config0 piece_to_config0(const Piece<QuadExt>& p) {
    const std::size_t r = p.b.size();
    Config0 m(MatrixC(1, 1), MatrixC(1, 1), MatrixC(1, r), MatrixC(r, 1));
    m.a1(0, 0) = p.a1.to_base();
    m.a2(0, 0) = p.a2.to_base();
    for (std::size_t j = 0; j < r; ++j) {
        m.b(0, j) = p.b[j].to_base();
        m.c(j, 0) = p.c[j].to_base();
    }
    return m;
}

Config1 piece_to_config1(const Piece<QuadExt>& p) {
    const std::size_t r = p.b.size();
    Config1 m(MatrixC(1, 1), MatrixC(1, 1), MatrixC(1, 1), MatrixC(1, r), MatrixC(r, 1));
    m.a1(0, 0) = p.a1.to_base();
    m.a2(0, 0) = p.a2.to_base();
    m.d(0, 0) = p.d.to_base();
    for (std::size_t j = 0; j < r; ++j) {
        m.b(0, j) = p.b[j].to_base();
        m.c(j, 0) = p.c[j].to_base();
    }
    return m;
}

template <class T>
Piece<T> piece_of(const Matrix<T>& a1, const Matrix<T>& a2, const Matrix<T>* d, const Matrix<T>& b,
                  const Matrix<T>& c, std::size_t j) {
    Piece<T> p;
    p.a1 = a1(j, j);
    p.a2 = a2(j, j);
    if (d) {
        p.d = (*d)(j, j);
        p.has_d = true;
    }
    p.b = b.row(j);
    p.c = c.col(j);
    return p;
}

void add_line(std::vector<SpecialSubspace>& out, SpecialSubspace s) {
    for (const auto& o : out)
        if (o.kind == s.kind && parallel(o.v, s.v) && (!s.pair || parallel(o.w, s.w))) return;
    out.push_back(std::move(s));
}

struct Lines {
    std::vector<VectorQ> lines;
    bool family = false;  // every line qualifies; `lines` holds one representative
};

// Lines invariant under both p and q (2x2).
Lines common_eigenlines(const MatrixC& p, const MatrixC& q) {
    auto scalar = [](const MatrixC& m) { return m(0, 1).is_zero() && m(1, 0).is_zero() && m(0, 0) == m(1, 1); };
    Lines out;
    const MatrixC* primary = nullptr;
    const MatrixC* other = nullptr;
    if (!scalar(p)) {
        primary = &p;
        other = &q;
    } else if (!scalar(q)) {
        primary = &q;
        other = &p;
    } else {
        out.lines.push_back(unit(0));
        out.family = true;
        return out;
    }
    for (const auto& [lambda, v] : eig2(*primary).vectors)
        if (parallel(mat_vec(*other, v), v)) out.lines.push_back(v);
    return out;
}

VectorQ nonzero_of(const VectorQ& x, const VectorQ& y) { return is_zero_vector(x) ? y : x; }

struct PairLines {
    std::vector<std::pair<VectorQ, VectorQ>> pairs;  // (v, w)
    std::vector<bool> family;
};

// Lines V' = span v, W' = span w with a_i(W') in V' and d(V') in W'.
PairLines invariant_pairs(const Config1& m) {
    PairLines out;
    auto push = [&](VectorQ v, VectorQ w, bool fam) {
        for (const auto& [ov, ow] : out.pairs)
            if (parallel(ov, v) && parallel(ow, w)) return;
        out.pairs.emplace_back(std::move(v), std::move(w));
        out.family.push_back(fam);
    };
    // d v != 0: w = d v and v is a common eigenline of a1 d, a2 d.
    const Lines eig = common_eigenlines(m.a1 * m.d, m.a2 * m.d);
    if (eig.family) {
        VectorQ v = unit(0);
        if (is_zero_vector(mat_vec(m.d, v))) v = unit(1);
        if (!is_zero_vector(mat_vec(m.d, v))) push(v, mat_vec(m.d, v), true);
    } else {
        for (const auto& v : eig.lines) {
            VectorQ dv = mat_vec(m.d, v);
            if (!is_zero_vector(dv)) push(v, dv, false);
        }
    }
    // d v = 0.
    const std::size_t rd = rank(m.d);
    if (rd == 1) {
        const VectorQ v = to_vec(null_space(m.d).col(0));
        const VectorQ vperp{-v[1], v[0]};
        MatrixQ R(2, 2);
        for (int i = 0; i < 2; ++i) {
            const MatrixC& a = i == 0 ? m.a1 : m.a2;
            for (std::size_t j = 0; j < 2; ++j)
                R(i, j) = vperp[0] * QuadExt(a(0, j)) + vperp[1] * QuadExt(a(1, j));
        }
        const MatrixQ ns = null_space(R);
        if (ns.cols() == 1) push(v, ns.col(0), false);
        else if (ns.cols() == 2) push(v, unit(0), true);
    } else if (rd == 0) {
        auto Q = [&](const VectorQ& w) {
            const VectorQ p = mat_vec(m.a1, w), q = mat_vec(m.a2, w);
            return p[0] * q[1] - p[1] * q[0];
        };
        auto from_root = [&](const VectorQ& w, bool fam) {
            const VectorQ s = nonzero_of(mat_vec(m.a1, w), mat_vec(m.a2, w));
            if (is_zero_vector(s)) push(unit(0), w, true);
            else push(s, w, fam);
        };
        const QuadExt alpha = Q(unit(0)), gamma = Q(unit(1));
        const QuadExt beta = Q(VectorQ{1, 1}) - alpha - gamma;
        if (alpha.is_zero() && beta.is_zero() && gamma.is_zero()) {
            from_root(unit(0), true);
        } else if (gamma.is_zero()) {
            from_root(unit(1), false);
            if (!beta.is_zero()) from_root(VectorQ{1, -alpha / beta}, false);
        } else {
            const auto [t1, t2] = solve_monic_quadratic((beta / gamma).to_base(), (alpha / gamma).to_base());
            from_root(VectorQ{1, t1}, false);
            from_root(VectorQ{1, t2}, false);
        }
    }
    return out;
}

void require_k(std::size_t k) {
    if (k > 2) throw ChargeTooLarge("charge " + std::to_string(k) + " exceeds 2");
}

std::string qstr(const QuadExt& x) { return x.to_string(); }

}  // namespace

// ---- configurations ----

Config0::Config0(MatrixC a1_, MatrixC a2_, MatrixC b_, MatrixC c_)
    : a1(std::move(a1_)), a2(std::move(a2_)), b(std::move(b_)), c(std::move(c_)) {
    validate();
}

Config0 Config0::empty(std::size_t r) { return Config0(MatrixC(0, 0), MatrixC(0, 0), MatrixC(0, r), MatrixC(r, 0)); }

void Config0::validate() const {
    const std::size_t n = a1.rows();
    require_shape(a1, n, n, "a1");
    require_shape(a2, n, n, "a2");
    if (b.rows() != n) throw ShapeMismatch("b has " + std::to_string(b.rows()) + " rows, expected " + std::to_string(n));
    require_shape(c, b.cols(), n, "c");
}

Config1::Config1(MatrixC a1_, MatrixC a2_, MatrixC d_, MatrixC b_, MatrixC c_)
    : a1(std::move(a1_)), a2(std::move(a2_)), d(std::move(d_)), b(std::move(b_)), c(std::move(c_)) {
    validate();
}

Config1 Config1::empty(std::size_t r) {
    return Config1(MatrixC(0, 0), MatrixC(0, 0), MatrixC(0, 0), MatrixC(0, r), MatrixC(r, 0));
}

void Config1::validate() const {
    const std::size_t n = a1.rows();
    require_shape(a1, n, n, "a1");
    require_shape(a2, n, n, "a2");
    require_shape(d, n, n, "d");
    if (b.rows() != n) throw ShapeMismatch("b has " + std::to_string(b.rows()) + " rows, expected " + std::to_string(n));
    require_shape(c, b.cols(), n, "c");
}

MatrixC integrability_defect(const Config0& m) { return commutator(m.a1, m.a2) + m.b * m.c; }

MatrixC integrability_defect(const Config1& m) { return m.a1 * m.d * m.a2 - m.a2 * m.d * m.a1 + m.b * m.c; }

bool effective(const Config1& m) {
    MatrixC joined(m.k(), 2 * m.k() + m.r());
    joined.set_block(0, 0, m.a1);
    joined.set_block(0, m.k(), m.a2);
    joined.set_block(0, 2 * m.k(), m.b);
    return rank(joined) == m.k();
}

bool integrable(const Config0& m) { return integrability_defect(m).is_zero(); }

bool integrable(const Config1& m) { return integrability_defect(m).is_zero() && effective(m); }

// ---- monad polynomials ----

MatrixC MonadPolynomial::coefficient(const Mono5& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? MatrixC(rows_, cols_) : it->second;
}

void MonadPolynomial::add_term(const Mono5& m, const MatrixC& coeff) {
    if (coeff.rows() != rows_ || coeff.cols() != cols_)
        throw ShapeMismatch("coefficient " + coeff.shape_string() + " in " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " polynomial");
    add_reduced(m, coeff);
}

void MonadPolynomial::add_reduced(Mono5 m, MatrixC coeff) {
    if (relation_) {
        while (m[0] > 0 && m[3] > 0) {
            --m[0];
            --m[3];
            ++m[1];
            ++m[4];
            coeff = -coeff;
        }
    }
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MonadPolynomial::set_relation(bool on) {
    relation_ = on;
    if (!on) return;
    auto old = std::move(terms_);
    terms_.clear();
    for (auto& [m, c] : old) add_reduced(m, c);
}

MonadPolynomial operator*(const MonadPolynomial& a, const MonadPolynomial& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("monad polynomial product");
    MonadPolynomial out(a.rows_, b.cols_, a.relation_ || b.relation_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Mono5 m;
            for (int i = 0; i < 5; ++i) m[i] = ma[i] + mb[i];
            out.add_reduced(m, ca * cb);
        }
    return out;
}

std::string mono_to_string(const Mono5& m) {
    static const char* names[5] = {"x1", "x2", "x3", "y1", "y2"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 5; ++i) {
        if (m[i] == 0) continue;
        if (!first) os << '*';
        os << names[i];
        if (m[i] > 1) os << '^' << m[i];
        first = false;
    }
    return first ? "1" : os.str();
}

namespace {

constexpr Mono5 X1{1, 0, 0, 0, 0}, X2{0, 1, 0, 0, 0}, X3{0, 0, 1, 0, 0}, Y1{0, 0, 0, 1, 0}, Y2{0, 0, 0, 0, 1};

// Places `blk` at block position (bi, bj) of a matrix whose row/column block
// offsets are given.
MatrixC placed(std::size_t rows, std::size_t cols, std::size_t r0, std::size_t c0, const MatrixC& blk) {
    MatrixC m(rows, cols);
    m.set_block(r0, c0, blk);
    return m;
}

}  // namespace

MonadPolynomial monad_A(const Config0& m) {
    const std::size_t k = m.k(), r = m.r(), rows = 2 * k + r;
    const MatrixC I = MatrixC::identity(k);
    MonadPolynomial A(rows, k);
    A.add_term(X1, placed(rows, k, 0, 0, I));
    A.add_term(X2, placed(rows, k, k, 0, I));
    MatrixC x3(rows, k);
    x3.set_block(0, 0, -m.a1);
    x3.set_block(k, 0, -m.a2);
    x3.set_block(2 * k, 0, m.c);
    A.add_term(X3, x3);
    return A;
}

MonadPolynomial monad_B(const Config0& m) {
    const std::size_t k = m.k(), r = m.r(), cols = 2 * k + r;
    const MatrixC I = MatrixC::identity(k);
    MonadPolynomial B(k, cols);
    B.add_term(X2, placed(k, cols, 0, 0, -I));
    B.add_term(X1, placed(k, cols, 0, k, I));
    MatrixC x3(k, cols);
    x3.set_block(0, 0, m.a2);
    x3.set_block(0, k, -m.a1);
    x3.set_block(0, 2 * k, m.b);
    B.add_term(X3, x3);
    return B;
}

// Rows V, W, V, W, C^r; columns W, V.
MonadPolynomial monad_A(const Config1& m) {
    const std::size_t k = m.k(), r = m.r(), rows = 4 * k + r;
    const MatrixC I = MatrixC::identity(k);
    MonadPolynomial A(rows, 2 * k, true);
    MatrixC x3(rows, 2 * k);
    x3.set_block(0, 0, m.a1);
    x3.set_block(k, 0, -(m.d * m.a1));
    x3.set_block(2 * k, 0, m.a2);
    x3.set_block(3 * k, 0, -(m.d * m.a2));
    x3.set_block(4 * k, 0, m.c);
    A.add_term(X3, x3);
    A.add_term(X1, placed(rows, 2 * k, k, 0, I));
    A.add_term(X2, placed(rows, 2 * k, 3 * k, 0, I));
    A.add_term(Y2, placed(rows, 2 * k, 0, k, -I));
    A.add_term(Y1, placed(rows, 2 * k, 2 * k, k, I));
    return A;
}

// Rows V, W; columns V, W, V, W, C^r.
MonadPolynomial monad_B(const Config1& m) {
    const std::size_t k = m.k(), r = m.r(), cols = 4 * k + r;
    const MatrixC I = MatrixC::identity(k);
    MonadPolynomial B(2 * k, cols, true);
    B.add_term(X2, placed(2 * k, cols, 0, 0, I));
    B.add_term(X1, placed(2 * k, cols, 0, 2 * k, -I));
    MatrixC x3(2 * k, cols);
    x3.set_block(0, k, m.a2);
    x3.set_block(0, 3 * k, -m.a1);
    x3.set_block(0, 4 * k, m.b);
    B.add_term(X3, x3);
    MatrixC y1(2 * k, cols), y2(2 * k, cols);
    y1.set_block(k, 0, m.d);
    y1.set_block(k, k, I);
    y2.set_block(k, 2 * k, m.d);
    y2.set_block(k, 3 * k, I);
    B.add_term(Y1, y1);
    B.add_term(Y2, y2);
    return B;
}

MonadPolynomial monad_residual(const Config0& m) { return monad_B(m) * monad_A(m); }

MonadPolynomial monad_residual(const Config1& m) { return monad_B(m) * monad_A(m); }

// ---- special subspaces ----

bool is_b_special(const Config0& m, const VectorQ& v) {
    if (!parallel(mat_vec(m.a1, v), v) || !parallel(mat_vec(m.a2, v), v)) return false;
    for (std::size_t j = 0; j < m.r(); ++j)
        if (!parallel(to_vec(m.b.col(j)), v)) return false;
    return true;
}

bool is_c_special(const Config0& m, const VectorQ& v) {
    if (!parallel(mat_vec(m.a1, v), v) || !parallel(mat_vec(m.a2, v), v)) return false;
    return is_zero_vector(mat_vec(m.c, v));
}

namespace {

bool pair_invariant(const Config1& m, const VectorQ& v, const VectorQ& w) {
    return parallel(mat_vec(m.a1, w), v) && parallel(mat_vec(m.a2, w), v) && parallel(mat_vec(m.d, v), w);
}

}  // namespace

bool is_b_special(const Config1& m, const VectorQ& v, const VectorQ& w) {
    if (!pair_invariant(m, v, w)) return false;
    for (std::size_t j = 0; j < m.r(); ++j)
        if (!parallel(to_vec(m.b.col(j)), v)) return false;
    return true;
}

bool is_c_special(const Config1& m, const VectorQ& v, const VectorQ& w) {
    return pair_invariant(m, v, w) && is_zero_vector(mat_vec(m.c, w));
}

SpecialReport special_subspaces(const Config0& m) {
    require_k(m.k());
    SpecialReport rep;
    rep.b_zero = m.b.is_zero();
    rep.c_zero = m.c.is_zero();
    if (m.k() < 2) return rep;

    auto add_all_invariant = [&](SpecialSubspace::Kind kind) {
        const Lines inv = common_eigenlines(m.a1, m.a2);
        for (const auto& v : inv.lines) add_line(rep.lines, {kind, false, v, {}, inv.family});
    };
    const std::size_t rb = rank(m.b);
    if (rb == 0) {
        add_all_invariant(SpecialSubspace::Kind::B);
    } else if (rb == 1) {
        VectorQ v;
        for (std::size_t j = 0; j < m.r() && v.empty(); ++j)
            if (!is_zero_vector(to_vec(m.b.col(j)))) v = to_vec(m.b.col(j));
        if (is_b_special(m, v)) add_line(rep.lines, {SpecialSubspace::Kind::B, false, v, {}, false});
    }
    const std::size_t rc = rank(m.c);
    if (rc == 0) {
        add_all_invariant(SpecialSubspace::Kind::C);
    } else if (rc == 1) {
        const VectorQ v = to_vec(null_space(m.c).col(0));
        if (is_c_special(m, v)) add_line(rep.lines, {SpecialSubspace::Kind::C, false, v, {}, false});
    }
    return rep;
}

SpecialReport special_subspaces(const Config1& m) {
    require_k(m.k());
    SpecialReport rep;
    rep.b_zero = m.b.is_zero();
    rep.c_zero = m.c.is_zero();
    if (m.k() < 2) return rep;

    auto add_pair = [&](SpecialSubspace::Kind kind, const VectorQ& v, const VectorQ& w, bool fam) {
        add_line(rep.lines, {kind, true, v, w, fam});
    };
    auto add_all_invariant = [&](SpecialSubspace::Kind kind) {
        const PairLines inv = invariant_pairs(m);
        for (std::size_t i = 0; i < inv.pairs.size(); ++i)
            add_pair(kind, inv.pairs[i].first, inv.pairs[i].second, inv.family[i]);
    };

    const std::size_t rb = rank(m.b);
    if (rb == 0) {
        add_all_invariant(SpecialSubspace::Kind::B);
    } else if (rb == 1) {
        VectorQ v;
        for (std::size_t j = 0; j < m.r() && v.empty(); ++j)
            if (!is_zero_vector(to_vec(m.b.col(j)))) v = to_vec(m.b.col(j));
        const VectorQ dv = mat_vec(m.d, v);
        if (!is_zero_vector(dv)) {
            if (pair_invariant(m, v, dv)) add_pair(SpecialSubspace::Kind::B, v, dv, false);
        } else {
            const VectorQ vperp{-v[1], v[0]};
            MatrixQ R(2, 2);
            for (int i = 0; i < 2; ++i) {
                const MatrixC& a = i == 0 ? m.a1 : m.a2;
                for (std::size_t j = 0; j < 2; ++j)
                    R(i, j) = vperp[0] * QuadExt(a(0, j)) + vperp[1] * QuadExt(a(1, j));
            }
            const MatrixQ ns = null_space(R);
            if (ns.cols() == 1) add_pair(SpecialSubspace::Kind::B, v, ns.col(0), false);
            else if (ns.cols() == 2) add_pair(SpecialSubspace::Kind::B, v, unit(0), true);
        }
    }

    const std::size_t rc = rank(m.c);
    if (rc == 0) {
        add_all_invariant(SpecialSubspace::Kind::C);
    } else if (rc == 1) {
        const VectorQ w = to_vec(null_space(m.c).col(0));
        const VectorQ p = mat_vec(m.a1, w), q = mat_vec(m.a2, w);
        const bool spans_plane = !(p[0] * q[1] - p[1] * q[0]).is_zero();
        if (!spans_plane) {
            const VectorQ s = nonzero_of(p, q);
            if (!is_zero_vector(s)) {
                if (parallel(mat_vec(m.d, s), w)) add_pair(SpecialSubspace::Kind::C, s, w, false);
            } else {
                // Any V' with d(V') inside span w.
                const VectorQ wperp{-w[1], w[0]};
                MatrixQ row(1, 2);
                for (std::size_t j = 0; j < 2; ++j)
                    row(0, j) = wperp[0] * QuadExt(m.d(0, j)) + wperp[1] * QuadExt(m.d(1, j));
                const MatrixQ ns = null_space(row);
                if (ns.cols() == 1) add_pair(SpecialSubspace::Kind::C, ns.col(0), w, false);
                else add_pair(SpecialSubspace::Kind::C, unit(0), w, true);
            }
        }
    }
    return rep;
}

bool nondegenerate(const Config0& m) {
    require_k(m.k());
    if (m.k() == 0) return true;
    if (m.b.is_zero() || m.c.is_zero()) return false;
    return special_subspaces(m).lines.empty();
}

bool nondegenerate(const Config1& m) {
    require_k(m.k());
    if (m.k() == 0) return true;
    if (m.b.is_zero() || m.c.is_zero()) return false;
    return special_subspaces(m).lines.empty();
}

// ---- group actions ----

Config0 group_act(const Config0& m, const MatrixC& g) {
    require_shape(g, m.k(), m.k(), "g");
    const MatrixC gi = inverse(g);
    return Config0(gi * m.a1 * g, gi * m.a2 * g, gi * m.b, m.c * g);
}

Config1 group_act(const Config1& m, const MatrixC& g0, const MatrixC& g1) {
    require_shape(g0, m.k(), m.k(), "g0");
    require_shape(g1, m.k(), m.k(), "g1");
    const MatrixC g0i = inverse(g0), g1i = inverse(g1);
    return Config1(g0i * m.a1 * g1, g0i * m.a2 * g1, g1i * m.d * g0, g0i * m.b, m.c * g1);
}

// ---- Donaldson-Uhlenbeck points ----

bool DUPoint::incident() const {
    if (surface == Surface::Plane || !mu) return true;
    return (mu->first * l1 + mu->second * l2).is_zero();
}

std::string DUPoint::to_string() const {
    std::string s = "(" + qstr(l1) + ", " + qstr(l2) + ")";
    if (surface == Surface::Blowup) {
        s += mu ? " [" + qstr(mu->first) + " : " + qstr(mu->second) + "]" : " [*]";
    }
    return s;
}

bool same_point(const DUPoint& a, const DUPoint& b) {
    try {
        if (a.surface != b.surface || !(a.l1 == b.l1) || !(a.l2 == b.l2)) return false;
        if (a.mu.has_value() != b.mu.has_value()) return false;
        if (!a.mu) return true;
        return (a.mu->first * b.mu->second - a.mu->second * b.mu->first).is_zero();
    } catch (const NotSplitOverQi&) {
        return false;  // values in different extensions cannot agree
    }
}

bool same_points(std::vector<DUPoint> a, std::vector<DUPoint> b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        auto it = b.begin();
        while (it != b.end() && !same_point(p, *it)) ++it;
        if (it == b.end()) return false;
        b.erase(it);
    }
    return true;
}

// ---- canonical reduction ----

Config0 normalize_k1(const Config0& m) {
    if (m.k() != 1) throw InvalidArgument("normalize_k1 needs charge 1");
    Piece<GaussianRational> p = piece_of<GaussianRational>(m.a1, m.a2, nullptr, m.b, m.c, 0);
    p.normalize();
    Config0 out = m;
    for (std::size_t j = 0; j < m.r(); ++j) {
        out.b(0, j) = p.b[j];
        out.c(j, 0) = p.c[j];
    }
    return out;
}

Config1 normalize_k1(const Config1& m) {
    if (m.k() != 1) throw InvalidArgument("normalize_k1 needs charge 1");
    Piece<GaussianRational> p = piece_of<GaussianRational>(m.a1, m.a2, &m.d, m.b, m.c, 0);
    p.normalize();
    Config1 out = m;
    out.a1(0, 0) = p.a1;
    out.a2(0, 0) = p.a2;
    out.d(0, 0) = p.d;
    for (std::size_t j = 0; j < m.r(); ++j) {
        out.b(0, j) = p.b[j];
        out.c(j, 0) = p.c[j];
    }
    return out;
}

TorusScale torus_normalizer(const Config0& m) {
    if (m.k() != 1) throw InvalidArgument("torus_normalizer needs charge 1");
    const auto [s, u] = piece_of<GaussianRational>(m.a1, m.a2, nullptr, m.b, m.c, 0).scales();
    return {s, u};
}

TorusScale torus_normalizer(const Config1& m) {
    if (m.k() != 1) throw InvalidArgument("torus_normalizer needs charge 1");
    const auto [s, u] = piece_of<GaussianRational>(m.a1, m.a2, &m.d, m.b, m.c, 0).scales();
    return {s, u};
}

namespace {

DUPoint plane_point(const QuadExt& a1, const QuadExt& a2) {
    DUPoint p;
    p.surface = DUPoint::Surface::Plane;
    p.l1 = a1;
    p.l2 = a2;
    return p;
}

DUPoint blowup_point(const QuadExt& a1, const QuadExt& a2, const QuadExt& d) {
    DUPoint p;
    p.surface = DUPoint::Surface::Blowup;
    p.l1 = d * a1;
    p.l2 = d * a2;
    if (!a1.is_zero() || !a2.is_zero()) p.mu = std::make_pair(a2, -a1);
    return p;
}

}  // namespace

Reduction0 canonical_reduction(const Config0& m) {
    require_k(m.k());
    if (!integrable(m)) throw NotIntegrable("[a1,a2] + bc is nonzero");
    Reduction0 out;
    if (nondegenerate(m)) {
        out.reduced = m;
        out.was_nondegenerate = true;
        return out;
    }
    out.reduced = Config0::empty(m.r());
    std::vector<Piece<QuadExt>> pieces;
    if (m.k() == 1) {
        const MatrixQ a1 = convert<QuadExt>(m.a1), a2 = convert<QuadExt>(m.a2);
        pieces.push_back(piece_of<QuadExt>(a1, a2, nullptr, convert<QuadExt>(m.b), convert<QuadExt>(m.c), 0));
    } else {
        const SpecialReport rep = special_subspaces(m);
        if (rep.lines.empty()) throw InvalidArgument("degenerate configuration without a special line");
        const VectorQ v = rep.lines.front().v;
        const MatrixQ P = from_columns(v, complement(v));
        const MatrixQ Pi = inverse(P);
        const MatrixQ a1 = Pi * convert<QuadExt>(m.a1) * P;
        const MatrixQ a2 = Pi * convert<QuadExt>(m.a2) * P;
        const MatrixQ b = Pi * convert<QuadExt>(m.b);
        const MatrixQ c = convert<QuadExt>(m.c) * P;
        for (std::size_t j = 0; j < 2; ++j) pieces.push_back(piece_of<QuadExt>(a1, a2, nullptr, b, c, j));
    }
    for (auto& p : pieces) {
        if (p.degenerate()) {
            out.a1_delta.push_back(p.a1);
            out.a2_delta.push_back(p.a2);
            out.points.push_back(plane_point(p.a1, p.a2));
        } else {
            p.normalize();
            out.reduced = piece_to_config0(p);
        }
    }
    return out;
}

Reduction1 canonical_reduction(const Config1& m) {
    require_k(m.k());
    if (!integrability_defect(m).is_zero()) throw NotIntegrable("a1 d a2 - a2 d a1 + bc is nonzero");
    Reduction1 out;
    if (nondegenerate(m)) {
        out.reduced = m;
        out.was_nondegenerate = true;
        return out;
    }
    out.reduced = Config1::empty(m.r());
    std::vector<Piece<QuadExt>> pieces;
    if (m.k() == 1) {
        const MatrixQ d = convert<QuadExt>(m.d);
        pieces.push_back(piece_of<QuadExt>(convert<QuadExt>(m.a1), convert<QuadExt>(m.a2), &d,
                                           convert<QuadExt>(m.b), convert<QuadExt>(m.c), 0));
    } else {
        const SpecialReport rep = special_subspaces(m);
        if (rep.lines.empty()) throw InvalidArgument("degenerate configuration without a special pair");
        const VectorQ v = rep.lines.front().v, w = rep.lines.front().w;
        const MatrixQ g0 = from_columns(v, complement(v)), g1 = from_columns(w, complement(w));
        const MatrixQ g0i = inverse(g0), g1i = inverse(g1);
        const MatrixQ a1 = g0i * convert<QuadExt>(m.a1) * g1;
        const MatrixQ a2 = g0i * convert<QuadExt>(m.a2) * g1;
        const MatrixQ d = g1i * convert<QuadExt>(m.d) * g0;
        const MatrixQ b = g0i * convert<QuadExt>(m.b);
        const MatrixQ c = convert<QuadExt>(m.c) * g1;
        for (std::size_t j = 0; j < 2; ++j) pieces.push_back(piece_of<QuadExt>(a1, a2, &d, b, c, j));
    }
    for (auto& p : pieces) {
        if (p.degenerate()) {
            out.a1_delta.push_back(p.a1);
            out.a2_delta.push_back(p.a2);
            out.d_delta.push_back(p.d);
            out.points.push_back(blowup_point(p.a1, p.a2, p.d));
        } else {
            p.normalize();
            out.reduced = piece_to_config1(p);
        }
    }
    return out;
}

}  // namespace adhm
