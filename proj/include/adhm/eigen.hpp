#pragma once

#include <array>
#include <utility>
#include <vector>

#include "adhm/matrix.hpp"

namespace adhm {

using VectorQ = std::vector<QuadExt>;

struct Eig2 {
    std::array<QuadExt, 2> values;
    // One entry per independent eigenvector; a scalar matrix yields two
    // entries sharing the same eigenvalue.
    std::vector<std::pair<QuadExt, VectorQ>> vectors;
    GaussianRational discriminant;  // tr^2/4 - det
    bool distinct = false;
    bool rational = false;  // both values in Q(i)
    bool diagonalizable = false;
};

/// Exact eigen-analysis of a 2x2 matrix. Eigenvalues are sorted so that
/// rational pairs come out in (re, im) order.
Eig2 eig2(const MatrixC& a);

/// Basis of ker(a - lambda I) over the extension field.
std::vector<VectorQ> eigenspace(const MatrixC& a, const QuadExt& lambda);

VectorQ mat_vec(const MatrixC& a, const VectorQ& v);
VectorQ mat_vec(const MatrixQ& a, const VectorQ& v);
bool is_zero_vector(const VectorQ& v);
/// True when v and w are linearly dependent (2-vectors).
bool parallel(const VectorQ& v, const VectorQ& w);

}  // namespace adhm
