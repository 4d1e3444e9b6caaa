#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "adhm/errors.hpp"

namespace adhm {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" (optional leading sign). Throws ParseError on
/// malformed text or a zero denominator; the result is canonical.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);  // always "p/q"
bool is_rational_square(const Rational& q, Rational* root = nullptr);

/// Exact element re + im*i of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {0, 1}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    GaussianRational conj() const { return {re_, -im_}; }
    /// re^2 + im^2
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    /// Total order (re, then im); only used to make outputs deterministic.
    friend bool lex_less(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    /// "p/q" when real, otherwise "p/q+r/si" / "p/q-r/si".
    std::string to_string() const;
    static GaussianRational parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// Square root inside Q(i), if one exists.
std::optional<GaussianRational> sqrt_exact(const GaussianRational& z);

/// Element p + q*sqrt(D) of a quadratic extension of Q(i). When q = 0 the
/// discriminant is irrelevant and stored as zero; when D is a square in Q(i)
/// the value collapses to a plain GaussianRational.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(int v) : p_(v) {}                            // NOLINT(google-explicit-constructor)
    QuadExt(GaussianRational p) : p_(std::move(p)) {}    // NOLINT(google-explicit-constructor)
    QuadExt(GaussianRational p, GaussianRational q, GaussianRational disc);

    const GaussianRational& base() const { return p_; }
    const GaussianRational& radical_coeff() const { return q_; }
    const GaussianRational& discriminant() const { return d_; }

    bool is_zero() const { return p_.is_zero() && q_.is_zero(); }
    bool in_base_field() const { return q_.is_zero(); }
    /// Throws NotSplitOverQi when the value is irrational over Q(i).
    GaussianRational to_base() const;

    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
    QuadExt operator-() const;

    friend bool operator==(const QuadExt& a, const QuadExt& b) { return (a - b).is_zero(); }

    std::string to_string() const;

private:
    // Rewrites `o` so that it shares this value's radical; throws when the
    // two radicals generate different extensions.
    QuadExt aligned(const QuadExt& o) const;
    void normalize();

    GaussianRational p_;
    GaussianRational q_;
    GaussianRational d_;
};

std::ostream& operator<<(std::ostream& os, const QuadExt& z);

/// Roots of t^2 + b t + c via the quadratic formula, exact.
std::pair<QuadExt, QuadExt> solve_monic_quadratic(const GaussianRational& b, const GaussianRational& c);

}  // namespace adhm
