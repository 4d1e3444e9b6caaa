#pragma once

#include <cstddef>
#include <vector>

#include "adhm/matrix.hpp"

namespace adhm {

struct SmithForm {
    std::vector<Integer> invariants;  // d1 | d2 | ... , all positive
    std::size_t rank = 0;
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix V;  // cols x cols, unimodular; U * M * V = diag(invariants)
};

/// Full Smith normal form with transforms.
SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero invariant factors only. Cheaper: no transforms are tracked and
/// elimination runs on machine integers until an overflow forces bignums.
std::vector<Integer> smith_invariants(const IntMatrix& m);

std::size_t integer_rank(const IntMatrix& m);

struct KernelInfo {
    std::size_t kernel_rank = 0;
    std::vector<Integer> cokernel_torsion;  // invariants != 1
};

KernelInfo kernel_rank_over_Z(const IntMatrix& m);

/// Columns form a basis of the integer kernel of m.
IntMatrix integer_kernel_basis(const IntMatrix& m);

struct AbelianGroup {
    std::size_t rank = 0;
    std::vector<Integer> torsion;

    bool operator==(const AbelianGroup&) const = default;
};

/// Cohomology at the middle of Z^a --f--> Z^b --g--> Z^c. Either map may be
/// empty (zero rows or columns); `b` fixes the middle dimension.
AbelianGroup cochain_cohomology(const IntMatrix& f, const IntMatrix& g, std::size_t b);

/// Quotient of the lattice spanned by the columns of `outer` by the sublattice
/// spanned by the columns of `inner`. Requires span(inner) inside span(outer).
AbelianGroup lattice_quotient(const IntMatrix& outer, const IntMatrix& inner);

/// Finitely presented module Z^dim / span(relations columns).
struct PresentedModule {
    std::size_t dim = 0;
    IntMatrix relations;  // dim x k
};

/// Cohomology at `mid` of  src --phi--> mid --psi--> dst  where the maps are
/// given on ambient lattices and must respect the relations.
AbelianGroup quotient_complex_cohomology(const PresentedModule& src, const IntMatrix& phi,
                                         const PresentedModule& mid, const IntMatrix& psi,
                                         const PresentedModule& dst);

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

}  // namespace adhm
