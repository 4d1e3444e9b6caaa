#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adhm/graded.hpp"

namespace adhm {

struct CoverFace {
    std::string name;
    int dimension = 0;  // number of cover members intersected, minus one
    GradedRing ring;
};

/// Restriction from a face of dimension p to one of dimension p+1.
struct CoverArrow {
    std::size_t from = 0;
    std::size_t to = 0;
    RingMap map;  // carries the Cech sign
};

struct CoverDescription {
    std::string name;
    std::vector<CoverFace> faces;
    std::vector<CoverArrow> arrows;

    int top_dimension() const;
    std::vector<std::size_t> faces_of_dimension(int p) const;
    std::size_t face_index(const std::string& face_name) const;
    /// Throws InvalidArgument when arrows do not connect consecutive
    /// dimensions or rings do not match the faces.
    void validate() const;
};

/// Cover of the charge-1 moduli space of X_q: all nonempty subsets of the q
/// blow-up charts. q = 0 is the single chart of the plane.
CoverDescription build_cover_charge1(int q);

/// Rings and restriction maps of the charge-2, two-point cover.
struct Charge2Pieces {
    GradedRing AL, AR, N2, A0, NL, NR, N0;
    RingMap AL_A0, AR_A0, AL_NL, AR_NR, N2_NL, N2_NR, A0_N0, NL_N0, NR_N0;
};
const Charge2Pieces& charge2_pieces();
CoverDescription build_cover_charge2_q2();

/// Block matrix of d1 : E1^{p,n} -> E1^{p+1,n}.
IntMatrix d1_matrix(const CoverDescription& cover, int p, int n);
std::size_t e1_rank(const CoverDescription& cover, int p, int n);

struct BettiEntry {
    std::uint64_t rank = 0;
    std::vector<Integer> torsion;
    bool operator==(const BettiEntry&) const = default;
};

struct BettiTable {
    std::vector<BettiEntry> rows;  // index = degree

    int max_degree() const { return static_cast<int>(rows.size()) - 1; }
    bool has_torsion() const;
    bool odd_vanishes() const;
    std::string to_tsv() const;
    bool operator==(const BettiTable&) const = default;
};

struct DegreePage {
    int degree = 0;
    std::vector<std::size_t> e1;     // per column p
    std::vector<AbelianGroup> e2;    // per column p
    bool d_squared_zero = true;
};

struct PagesOptions {
    bool strict = false;            // throw NonCollapsing on surviving p >= 1 terms
    bool check_d_squared = true;
};

struct SpectralReport {
    std::vector<DegreePage> pages;  // index = internal degree
    BettiTable betti;
    bool d_squared_zero = true;
    bool odd_rows_vanish = true;
    bool top_surjective = true;     // E2 of the top column vanishes everywhere
    bool collapse_certified = true; // every E2^{p>=1} vanishes
    std::vector<std::string> surviving;  // "E2^{p,n}" labels of nonzero p >= 1 terms
};

/// Per-degree E1/E2 computation, degrees evaluated concurrently.
SpectralReport compute_pages(const CoverDescription& cover, int maxdeg, const PagesOptions& opts = {});
/// Same result computed on one thread; kept as the reference implementation.
SpectralReport compute_pages_serial(const CoverDescription& cover, int maxdeg, const PagesOptions& opts = {});

GradedModuleSpec charge2_module_spec(int q);
BettiTable closed_form_betti(int charge, int q, int maxdeg);

struct SimplexContribution {
    int degree = 0;
    std::uint64_t top = 0;               // (I): pairs
    AbelianGroup middle_kernel, middle_h1;   // (II)
    AbelianGroup bottom_kernel, bottom_h1, bottom_coker;  // (III)
};

struct SimplexReport {
    BettiTable betti;
    std::vector<SimplexContribution> contributions;
    bool middle_exact = true;   // (II) has no H^1
    bool bottom_exact = true;   // (III) exact in the middle
    bool surjective = true;     // (III) onto the top column
};

SimplexReport simplex_assembly(int q, int maxdeg);
BettiTable simplex_assembly_betti(int q, int maxdeg);

struct DecompositionRow {
    int degree = 0;
    std::uint64_t total = 0;
    std::uint64_t kc = 0;
    std::uint64_t ka = 0;
    bool ok = false;
};

struct DecompositionReport {
    std::vector<DecompositionRow> rows;
    bool ok = true;
};

DecompositionReport decomposition_check_q2(int maxdeg);

}  // namespace adhm
