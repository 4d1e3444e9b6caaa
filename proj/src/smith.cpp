#include "adhm/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace adhm {

namespace {

struct Overflow {};

using Small = long;

inline Small checked_mul(Small a, Small b) {
    Small r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline Small checked_sub(Small a, Small b) {
    Small r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline Small checked_add(Small a, Small b) {
    Small r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline Small checked_neg(Small a) { return checked_sub(0, a); }

inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer checked_add(const Integer& a, const Integer& b) { return a + b; }
inline Integer checked_neg(const Integer& a) { return -a; }

inline bool abs_less(Small a, Small b) {
    // |a| < |b| without overflow on LONG_MIN
    const unsigned long ua = a < 0 ? 0UL - static_cast<unsigned long>(a) : static_cast<unsigned long>(a);
    const unsigned long ub = b < 0 ? 0UL - static_cast<unsigned long>(b) : static_cast<unsigned long>(b);
    return ua < ub;
}
inline bool abs_less(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }

inline Small trunc_div(Small a, Small b) {
    if (b == -1) return checked_neg(a);
    return a / b;
}
inline Integer trunc_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(Small a, Small b) { return a == -1 || a == 1 || b % a == 0; }
inline bool divides(const Integer& a, const Integer& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }

template <class E>
void row_axpy(Matrix<E>& m, std::size_t target, std::size_t src, const E& q, std::size_t from) {
    // row_target -= q * row_src
    for (std::size_t j = from; j < m.cols(); ++j)
        if (!is_zero_value(m(src, j))) m(target, j) = checked_sub(m(target, j), checked_mul(q, m(src, j)));
}

template <class E>
void col_axpy(Matrix<E>& m, std::size_t target, std::size_t src, const E& q, std::size_t from) {
    for (std::size_t i = from; i < m.rows(); ++i)
        if (!is_zero_value(m(i, src))) m(i, target) = checked_sub(m(i, target), checked_mul(q, m(i, src)));
}

template <class E>
void swap_rows(Matrix<E>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

template <class E>
void swap_cols(Matrix<E>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// Diagonalizes m in place. When U/V are given the elimination also enforces
// divisibility along the diagonal and records the transforms so that
// U * m_in * V = m_out. Returns the number of nonzero pivots.
template <class E>
std::size_t eliminate(Matrix<E>& m, Matrix<E>* U, Matrix<E>* V) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::size_t pi = rows;
        std::size_t pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!is_zero_value(m(i, j)) && (pi == rows || abs_less(m(i, j), m(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        swap_rows(m, t, pi);
        if (U) swap_rows(*U, t, pi);
        swap_cols(m, t, pj);
        if (V) swap_cols(*V, t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (is_zero_value(m(i, t))) continue;
                const E q = trunc_div(m(i, t), m(t, t));
                row_axpy(m, i, t, q, t);
                if (U) row_axpy(*U, i, t, q, 0);
                if (!is_zero_value(m(i, t))) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (is_zero_value(m(t, j))) continue;
                const E q = trunc_div(m(t, j), m(t, t));
                col_axpy(m, j, t, q, t);
                if (V) col_axpy(*V, j, t, q, 0);
                if (!is_zero_value(m(t, j))) clean = false;
            }
            if (clean && U) {
                // divisibility: pull a non-multiple into the pivot row
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (!divides(m(t, t), m(i, j))) {
                            row_axpy(m, t, i, E(-1), t);
                            row_axpy(*U, t, i, E(-1), 0);
                            clean = false;
                            break;
                        }
            }
            if (clean) break;
            // move the smallest remainder on the cross into the pivot
            std::size_t bi = t;
            std::size_t bj = t;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (!is_zero_value(m(i, t)) && abs_less(m(i, t), m(bi, bj))) {
                    bi = i;
                    bj = t;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (!is_zero_value(m(t, j)) && abs_less(m(t, j), m(bi, bj))) {
                    bi = t;
                    bj = j;
                }
            if (bi != t) {
                swap_rows(m, t, bi);
                if (U) swap_rows(*U, t, bi);
            }
            if (bj != t) {
                swap_cols(m, t, bj);
                if (V) swap_cols(*V, t, bj);
            }
        }
        if (m(t, t) < 0) {
            for (std::size_t j = t; j < cols; ++j) m(t, j) = checked_neg(m(t, j));
            if (U)
                for (std::size_t j = 0; j < rows; ++j) (*U)(t, j) = checked_neg((*U)(t, j));
        }
    }
    return t;
}

bool fits_small(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).fits_slong_p()) return false;
    return true;
}

Matrix<Small> to_small(const IntMatrix& m) {
    Matrix<Small> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_si();
    return r;
}

std::vector<Integer> normalize_diagonal(std::vector<Integer> d) {
    // gcd/lcm exchange turns any diagonal into the divisibility chain
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (divides(d[i], d[j])) continue;
            Integer g;
            Integer l;
            mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            d[i] = g;
            d[j] = l;
        }
    return d;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm out;
    IntMatrix work = m;
    out.U = IntMatrix::identity(m.rows());
    out.V = IntMatrix::identity(m.cols());
    out.rank = eliminate(work, &out.U, &out.V);
    for (std::size_t i = 0; i < out.rank; ++i) out.invariants.push_back(work(i, i));
    return out;
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
    std::vector<Integer> diag;
    bool done = false;
    if (fits_small(m)) {
        try {
            Matrix<Small> work = to_small(m);
            const std::size_t r = eliminate<Small>(work, nullptr, nullptr);
            for (std::size_t i = 0; i < r; ++i) diag.emplace_back(work(i, i));
            done = true;
        } catch (const Overflow&) {
            diag.clear();
        }
    }
    if (!done) {
        IntMatrix work = m;
        const std::size_t r = eliminate<Integer>(work, nullptr, nullptr);
        for (std::size_t i = 0; i < r; ++i) diag.push_back(work(i, i));
    }
    return normalize_diagonal(std::move(diag));
}

std::size_t integer_rank(const IntMatrix& m) { return smith_invariants(m).size(); }

KernelInfo kernel_rank_over_Z(const IntMatrix& m) {
    const auto inv = smith_invariants(m);
    KernelInfo k;
    k.kernel_rank = m.cols() - inv.size();
    for (const auto& d : inv)
        if (d != 1) k.cokernel_torsion.push_back(d);
    return k;
}

IntMatrix integer_kernel_basis(const IntMatrix& m) {
    const SmithForm s = smith_normal_form(m);
    return s.V.block(0, s.rank, m.cols(), m.cols() - s.rank);
}

AbelianGroup cochain_cohomology(const IntMatrix& f, const IntMatrix& g, std::size_t b) {
    if (f.cols() > 0 && f.rows() != b) throw ShapeMismatch("incoming map does not land in the middle term");
    if (g.rows() > 0 && g.cols() != b) throw ShapeMismatch("outgoing map does not start at the middle term");
    const std::size_t rank_g = g.rows() == 0 ? 0 : integer_rank(g);
    AbelianGroup h;
    std::vector<Integer> inv_f;
    if (f.cols() > 0) inv_f = smith_invariants(f);
    // ker g is saturated, so torsion of ker g / im f is torsion of Z^b / im f
    h.rank = b - rank_g - inv_f.size();
    for (const auto& d : inv_f)
        if (d != 1) h.torsion.push_back(d);
    return h;
}

AbelianGroup lattice_quotient(const IntMatrix& outer, const IntMatrix& inner) {
    const std::size_t n = outer.rows();
    if (inner.cols() > 0 && inner.rows() != n) throw ShapeMismatch("lattice_quotient ambient dimensions differ");
    const SmithForm s = smith_normal_form(outer);
    AbelianGroup q;
    if (s.rank == 0) return q;
    if (inner.cols() == 0) {
        q.rank = s.rank;
        return q;
    }
    const IntMatrix uy = s.U * inner;
    IntMatrix coords(s.rank, inner.cols());
    for (std::size_t j = 0; j < inner.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= s.rank) {
                if (sgn(uy(i, j)) != 0) throw InvalidArgument("inner lattice not contained in outer lattice");
                continue;
            }
            if (!divides(s.invariants[i], uy(i, j)))
                throw InvalidArgument("inner lattice not contained in outer lattice");
            coords(i, j) = uy(i, j) / s.invariants[i];
        }
    }
    const auto inv = smith_invariants(coords);
    q.rank = s.rank - inv.size();
    for (const auto& d : inv)
        if (d != 1) q.torsion.push_back(d);
    return q;
}

AbelianGroup quotient_complex_cohomology(const PresentedModule& src, const IntMatrix& phi,
                                         const PresentedModule& mid, const IntMatrix& psi,
                                         const PresentedModule& dst) {
    const std::size_t n = mid.dim;
    if (phi.cols() != src.dim || phi.rows() != n) throw ShapeMismatch("phi shape");
    if (psi.cols() != n || psi.rows() != dst.dim) throw ShapeMismatch("psi shape");

    // kernel lattice: x with psi x in span(dst relations)
    IntMatrix kernel_gens;
    if (dst.dim == 0) {
        kernel_gens = IntMatrix::identity(n);
    } else {
        const IntMatrix stacked = hconcat(psi, dst.relations);
        const IntMatrix k = integer_kernel_basis(stacked);
        kernel_gens = k.block(0, 0, n, k.cols());
    }
    const IntMatrix image_gens = hconcat(phi, mid.relations);
    return lattice_quotient(kernel_gens, image_gens);
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("hconcat " + a.shape_string() + " and " + b.shape_string());
    IntMatrix r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw ShapeMismatch("vconcat " + a.shape_string() + " and " + b.shape_string());
    IntMatrix r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

}  // namespace adhm
