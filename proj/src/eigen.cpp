#include "adhm/eigen.hpp"

namespace adhm {

MatrixC to_base(const MatrixQ& m) {
    MatrixC r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_base();
    return r;
}

std::vector<VectorQ> eigenspace(const MatrixC& a, const QuadExt& lambda) {
    MatrixQ shifted = convert<QuadExt>(a);
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lambda;
    const MatrixQ basis = null_space(shifted);
    std::vector<VectorQ> out;
    for (std::size_t k = 0; k < basis.cols(); ++k) out.push_back(basis.col(k));
    return out;
}

Eig2 eig2(const MatrixC& a) {
    if (a.rows() != 2 || a.cols() != 2) throw ShapeMismatch("eig2 needs 2x2, got " + a.shape_string());
    Eig2 e;
    const GaussianRational tr = trace(a);
    const GaussianRational det = det2(a);
    const GaussianRational half = tr / GaussianRational(2);
    e.discriminant = half * half - det;
    auto roots = solve_monic_quadratic(-tr, det);
    e.values = {roots.first, roots.second};
    e.rational = roots.first.in_base_field();
    if (e.rational && lex_less(roots.second.base(), roots.first.base())) std::swap(e.values[0], e.values[1]);
    e.distinct = !e.discriminant.is_zero();

    if (e.distinct) {
        for (const auto& lambda : e.values) {
            auto space = eigenspace(a, lambda);
            e.vectors.emplace_back(lambda, space.front());
        }
        e.diagonalizable = true;
    } else {
        for (auto& v : eigenspace(a, e.values[0])) e.vectors.emplace_back(e.values[0], std::move(v));
        e.diagonalizable = e.vectors.size() == 2;
    }
    return e;
}

VectorQ mat_vec(const MatrixC& a, const VectorQ& v) {
    if (a.cols() != v.size()) throw ShapeMismatch("matrix-vector product");
    VectorQ out(a.rows(), QuadExt(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) out[i] += QuadExt(a(i, j)) * v[j];
    return out;
}

VectorQ mat_vec(const MatrixQ& a, const VectorQ& v) {
    if (a.cols() != v.size()) throw ShapeMismatch("matrix-vector product");
    VectorQ out(a.rows(), QuadExt(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) out[i] += a(i, j) * v[j];
    return out;
}

bool is_zero_vector(const VectorQ& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

bool parallel(const VectorQ& v, const VectorQ& w) {
    if (v.size() != 2 || w.size() != 2) throw ShapeMismatch("parallel expects 2-vectors");
    return (v[0] * w[1] - v[1] * w[0]).is_zero();
}

}  // namespace adhm
