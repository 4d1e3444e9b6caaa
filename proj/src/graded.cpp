#include "adhm/graded.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace adhm {

GradedRing::GradedRing(std::vector<Generator> generators) : gens_(std::move(generators)) {
    std::set<std::string> seen;
    for (const auto& g : gens_) {
        if (g.degree <= 0 || g.degree % 2 != 0)
            throw InvalidArgument("generator '" + g.name + "' must have even positive degree");
        if (g.name.empty()) throw InvalidArgument("generator name is empty");
        if (!seen.insert(g.name).second) throw InvalidArgument("duplicate generator '" + g.name + "'");
    }
}

std::size_t GradedRing::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    throw InvalidArgument("unknown generator '" + name + "'");
}

bool GradedRing::operator==(const GradedRing& o) const {
    if (gens_.size() != o.gens_.size()) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree) return false;
    return true;
}

int weighted_degree(const GradedRing& ring, const Exponent& e) {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * ring.degree(i);
    return d;
}

Polynomial Polynomial::constant(std::size_t nvars, const Integer& c) {
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Polynomial Polynomial::monomial(const Exponent& e, const Integer& c) {
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
}

Polynomial Polynomial::variable(const GradedRing& ring, const std::string& name) {
    Exponent e(ring.size(), 0);
    e[ring.index_of(name)] = 1;
    return monomial(e);
}

void Polynomial::add_term(const Exponent& e, const Integer& c) {
    if (e.size() != nvars_) throw ShapeMismatch("monomial has wrong number of variables");
    if (sgn(c) == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw ShapeMismatch("polynomials over different rings");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw ShapeMismatch("polynomials over different rings");
    Polynomial r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

bool Polynomial::is_homogeneous(const GradedRing& ring, int deg) const {
    for (const auto& [e, c] : terms_)
        if (weighted_degree(ring, e) != deg) return false;
    return true;
}

RingMap RingMap::from_strings(const GradedRing& source, const GradedRing& target,
                              const std::vector<std::string>& images, int sign) {
    if (images.size() != source.size()) throw ShapeMismatch("one image per source generator required");
    RingMap f{source, target, {}, sign};
    for (const auto& s : images) f.images.push_back(parse_polynomial(target, s));
    f.validate();
    return f;
}

RingMap RingMap::compose(const RingMap& g, const RingMap& f) {
    if (!(f.target == g.source)) throw ShapeMismatch("composition of non-composable ring maps");
    RingMap h{f.source, g.target, {}, f.sign * g.sign};
    for (const auto& img : f.images) {
        Polynomial acc(g.target.size());
        for (const auto& [e, c] : img.terms()) {
            Polynomial t = g.apply(e);
            for (const auto& [te, tc] : t.terms()) acc.add_term(te, tc * c);
        }
        h.images.push_back(std::move(acc));
    }
    return h;
}

void RingMap::validate() const {
    if (images.size() != source.size()) throw ShapeMismatch("one image per source generator required");
    if (sign != 1 && sign != -1) throw InvalidArgument("ring map sign must be +1 or -1");
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].nvars() != target.size()) throw ShapeMismatch("image lives in the wrong ring");
        if (!images[i].is_homogeneous(target, source.degree(i)))
            throw DegreeMismatch("image of '" + source.generators()[i].name + "' is not homogeneous of degree " +
                                 std::to_string(source.degree(i)));
    }
}

Polynomial RingMap::apply(const Exponent& m) const {
    Polynomial acc = Polynomial::constant(target.size(), 1);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) acc = acc * images[i];
    return acc;
}

namespace {

class PolyParser {
public:
    PolyParser(const GradedRing& ring, const std::string& text) : ring_(ring), text_(text) {}

    Polynomial parse() {
        Polynomial acc(ring_.size());
        skip();
        if (pos_ == text_.size()) fail("empty polynomial");
        bool first = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Polynomial t = term();
            acc += sign < 0 ? -t : t;
            first = false;
            skip();
        }
        return acc;
    }

private:
    Polynomial term() {
        Polynomial t = factor();
        skip();
        while (peek() == '*') {
            ++pos_;
            skip();
            t = t * factor();
            skip();
        }
        return t;
    }

    Polynomial factor() {
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            return Polynomial::constant(ring_.size(), Integer(read_while(isdigit_), 10));
        }
        const std::string name = read_while(isname_);
        if (name.empty()) fail("expected a generator name");
        Polynomial v = Polynomial::variable(ring_, name);
        skip();
        if (peek() == '^') {
            ++pos_;
            skip();
            const std::string digits = read_while(isdigit_);
            if (digits.empty()) fail("expected exponent");
            Polynomial r = Polynomial::constant(ring_.size(), 1);
            for (int k = std::stoi(digits); k > 0; --k) r = r * v;
            return r;
        }
        return v;
    }

    static bool isdigit_(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
    static bool isname_(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

    template <class Pred>
    std::string read_while(Pred p) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && p(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at position " + std::to_string(pos_) + " in '" + text_ + "'");
    }

    const GradedRing& ring_;
    std::string text_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const GradedRing& ring, const std::string& text) { return PolyParser(ring, text).parse(); }

std::string polynomial_to_string(const GradedRing& ring, const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // descending order matches the monomial basis order
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Integer mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        bool need_star = false;
        if (mag != 1 || constant) {
            os << mag.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            os << ring.generators()[i].name;
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

namespace {

void enumerate(const GradedRing& ring, std::size_t i, int remaining, Exponent& cur, std::vector<Exponent>& out) {
    if (i == ring.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    const int d = ring.degree(i);
    for (int k = remaining / d; k >= 0; --k) {
        cur[i] = k;
        enumerate(ring, i + 1, remaining - k * d, cur, out);
    }
    cur[i] = 0;
}

}  // namespace

std::vector<Exponent> monomial_basis(const GradedRing& ring, int n) {
    std::vector<Exponent> out;
    if (n < 0 || n % 2 != 0) return out;
    Exponent cur(ring.size(), 0);
    enumerate(ring, 0, n, cur, out);
    return out;
}

GradedModuleSpec GradedModuleSpec::free_ring(GradedRing r) {
    GradedModuleSpec s;
    s.kind = Kind::FreeRing;
    s.ring = std::move(r);
    return s;
}

GradedModuleSpec GradedModuleSpec::monomial_ideal(GradedRing r, std::vector<Exponent> gens) {
    for (const auto& g : gens)
        if (g.size() != r.size()) throw ShapeMismatch("ideal generator has wrong number of exponents");
    GradedModuleSpec s;
    s.kind = Kind::MonomialIdeal;
    s.ring = std::move(r);
    s.ideal_generators = std::move(gens);
    return s;
}

GradedModuleSpec& GradedModuleSpec::add_summand(GradedModuleSpec s, std::size_t multiplicity) {
    kind = Kind::DirectSum;
    summands.push_back(std::move(s));
    multiplicities.push_back(multiplicity);
    return *this;
}

std::uint64_t free_ring_hilbert(const GradedRing& ring, int n) {
    if (n < 0) return 0;
    // coin-change count over generator degrees
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(n) + 1, 0);
    ways[0] = 1;
    for (const auto& g : ring.generators())
        for (int d = g.degree; d <= n; ++d) ways[d] += ways[d - g.degree];
    return ways[n];
}

std::uint64_t hilbert(const GradedModuleSpec& spec, int n) {
    switch (spec.kind) {
        case GradedModuleSpec::Kind::FreeRing:
            return free_ring_hilbert(spec.ring, n);
        case GradedModuleSpec::Kind::MonomialIdeal: {
            const auto& gens = spec.ideal_generators;
            if (gens.size() >= 63) throw InvalidArgument("too many ideal generators");
            std::int64_t total = 0;
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << gens.size()); ++mask) {
                Exponent lcm(spec.ring.size(), 0);
                int bits = 0;
                for (std::size_t g = 0; g < gens.size(); ++g) {
                    if ((mask >> g & 1U) == 0) continue;
                    ++bits;
                    for (std::size_t i = 0; i < lcm.size(); ++i) lcm[i] = std::max(lcm[i], gens[g][i]);
                }
                const auto h = static_cast<std::int64_t>(free_ring_hilbert(spec.ring, n - weighted_degree(spec.ring, lcm)));
                total += bits % 2 == 1 ? h : -h;
            }
            return static_cast<std::uint64_t>(total);
        }
        case GradedModuleSpec::Kind::DirectSum: {
            std::uint64_t total = 0;
            for (std::size_t k = 0; k < spec.summands.size(); ++k)
                total += spec.multiplicities[k] * hilbert(spec.summands[k], n);
            return total;
        }
    }
    return 0;
}

IntMatrix map_matrix(const RingMap& f, int n) {
    f.validate();
    const auto src = monomial_basis(f.source, n);
    const auto tgt = monomial_basis(f.target, n);
    std::map<Exponent, std::size_t> row_of;
    for (std::size_t i = 0; i < tgt.size(); ++i) row_of.emplace(tgt[i], i);

    // images of lower-degree monomials are reused: m = g_k * (m / g_k)
    std::map<Exponent, Polynomial> memo;
    memo.emplace(Exponent(f.source.size(), 0), Polynomial::constant(f.target.size(), 1));
    auto image = [&](auto&& self, const Exponent& m) -> const Polynomial& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        std::size_t k = 0;
        while (m[k] == 0) ++k;
        Exponent rest = m;
        --rest[k];
        Polynomial p = self(self, rest) * f.images[k];
        return memo.emplace(m, std::move(p)).first->second;
    };

    IntMatrix mat(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        const Polynomial& p = image(image, src[j]);
        for (const auto& [e, c] : p.terms()) mat(row_of.at(e), j) = f.sign < 0 ? Integer(-c) : c;
    }
    return mat;
}

std::size_t kernel_hilbert(const std::vector<RingMap>& maps, int n) {
    if (maps.empty()) throw InvalidArgument("kernel_hilbert needs at least one map");
    for (const auto& f : maps)
        if (!(f.source == maps.front().source)) throw ShapeMismatch("maps must share their source ring");
    IntMatrix stacked = map_matrix(maps.front(), n);
    for (std::size_t k = 1; k < maps.size(); ++k) stacked = vconcat(stacked, map_matrix(maps[k], n));
    return stacked.cols() - integer_rank(stacked);
}

}  // namespace adhm
