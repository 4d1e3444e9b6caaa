#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "adhm/smith.hpp"

namespace adhm {

struct Generator {
    std::string name;
    int degree = 2;
};

/// Polynomial ring over Z on even-degree generators.
class GradedRing {
public:
    GradedRing() = default;
    explicit GradedRing(std::vector<Generator> generators);

    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    int degree(std::size_t i) const { return gens_[i].degree; }
    /// Throws InvalidArgument for unknown names.
    std::size_t index_of(const std::string& name) const;

    bool operator==(const GradedRing& o) const;

private:
    std::vector<Generator> gens_;
};

using Exponent = std::vector<int>;

int weighted_degree(const GradedRing& ring, const Exponent& e);

/// Integer polynomial in the generators of some ring.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Integer& c);
    static Polynomial monomial(const Exponent& e, const Integer& c = 1);
    static Polynomial variable(const GradedRing& ring, const std::string& name);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Exponent& e, const Integer& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    /// True when every term has weighted degree `deg` (zero counts).
    bool is_homogeneous(const GradedRing& ring, int deg) const;

private:
    std::size_t nvars_ = 0;
    std::map<Exponent, Integer> terms_;
};

/// Ring homomorphism given by generator images; `sign` multiplies the
/// induced matrices when the map is used as a differential component.
struct RingMap {
    GradedRing source;
    GradedRing target;
    std::vector<Polynomial> images;
    int sign = 1;

    static RingMap from_strings(const GradedRing& source, const GradedRing& target,
                                const std::vector<std::string>& images, int sign = 1);
    /// f then g (g after f). Signs multiply.
    static RingMap compose(const RingMap& g, const RingMap& f);
    /// Throws DegreeMismatch when an image is not homogeneous of the right degree.
    void validate() const;
    Polynomial apply(const Exponent& source_monomial) const;
};

/// Parses "x*y^2 + 2*z - w"-style expressions over the ring's generator names.
Polynomial parse_polynomial(const GradedRing& ring, const std::string& text);
std::string polynomial_to_string(const GradedRing& ring, const Polynomial& p);

/// All exponent vectors of weighted degree n, descending lexicographic order.
std::vector<Exponent> monomial_basis(const GradedRing& ring, int n);

struct GradedModuleSpec {
    enum class Kind { FreeRing, MonomialIdeal, DirectSum };
    Kind kind = Kind::FreeRing;
    GradedRing ring;
    std::vector<Exponent> ideal_generators;
    std::vector<GradedModuleSpec> summands;
    std::vector<std::size_t> multiplicities;

    static GradedModuleSpec free_ring(GradedRing r);
    static GradedModuleSpec monomial_ideal(GradedRing r, std::vector<Exponent> gens);
    GradedModuleSpec& add_summand(GradedModuleSpec s, std::size_t multiplicity = 1);
};

std::uint64_t free_ring_hilbert(const GradedRing& ring, int n);
std::uint64_t hilbert(const GradedModuleSpec& spec, int n);

/// Matrix of f in degree n: columns follow the source basis, rows the target
/// basis. The sign of f is applied.
IntMatrix map_matrix(const RingMap& f, int n);

/// Kernel rank in degree n of the maps stacked on their common source.
std::size_t kernel_hilbert(const std::vector<RingMap>& maps, int n);

}  // namespace adhm
