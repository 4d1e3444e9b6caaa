#include "adhm/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace adhm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Integer parse_integer(std::string_view s, bool allow_sign) {
    std::string_view body = s;
    bool negative = false;
    if (allow_sign && !body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) throw ParseError("malformed integer '" + std::string(s) + "'");
    Integer v(std::string(body), 10);
    return negative ? Integer(-v) : v;
}

bool is_integer_square(const Integer& n, Integer* root) {
    if (sgn(n) < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (root != nullptr) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty rational");
    const auto slash = text.find('/');
    Integer num = parse_integer(text.substr(0, slash), true);
    Integer den = 1;
    if (slash != std::string_view::npos) {
        den = parse_integer(text.substr(slash + 1), false);
        if (sgn(den) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_rational_square(const Rational& q, Rational* root) {
    Integer rn;
    Integer rd;
    if (!is_integer_square(q.get_num(), &rn) || !is_integer_square(q.get_den(), &rd)) return false;
    if (root != nullptr) {
        *root = Rational(rn, rd);
        root->canonicalize();
    }
    return true;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw DivisionByZero("Gaussian rational division by zero");
    const Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string GaussianRational::to_string() const {
    if (is_real()) return rational_to_string(re_);
    std::string out = rational_to_string(re_);
    out += sgn(im_) < 0 ? "-" : "+";
    out += rational_to_string(abs(im_));
    out += "i";
    return out;
}

GaussianRational GaussianRational::parse(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty scalar");
    if (text.back() != 'i') return {parse_rational(text), 0};

    std::string_view body = text.substr(0, text.size() - 1);
    // The split sign is the last '+'/'-' that is not the leading sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    std::string_view re_text;
    std::string_view im_text = body;
    if (split != std::string_view::npos) {
        re_text = body.substr(0, split);
        im_text = body.substr(split);
    }
    Rational im;
    if (im_text.empty() || im_text == "+") {
        im = 1;
    } else if (im_text == "-") {
        im = -1;
    } else {
        im = parse_rational(im_text);
    }
    Rational re = re_text.empty() ? Rational(0) : parse_rational(re_text);
    return {re, im};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

std::optional<GaussianRational> sqrt_exact(const GaussianRational& z) {
    const Rational& a = z.re();
    const Rational& b = z.im();
    Rational root;
    if (sgn(b) == 0) {
        if (sgn(a) >= 0) {
            if (!is_rational_square(a, &root)) return std::nullopt;
            return GaussianRational(root, 0);
        }
        if (!is_rational_square(Rational(-a), &root)) return std::nullopt;
        return GaussianRational(0, root);
    }
    // (x + yi)^2 = a + bi  =>  x^2 = (a + |z|)/2, y = b / (2x)
    Rational modulus;
    if (!is_rational_square(z.norm(), &modulus)) return std::nullopt;
    Rational x_sq = (a + modulus) / 2;
    Rational x;
    if (!is_rational_square(x_sq, &x)) return std::nullopt;
    Rational y = b / (2 * x);
    return GaussianRational(x, y);
}

QuadExt::QuadExt(GaussianRational p, GaussianRational q, GaussianRational disc)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(disc)) {
    normalize();
}

void QuadExt::normalize() {
    if (q_.is_zero()) {
        d_ = 0;
        return;
    }
    if (auto s = sqrt_exact(d_)) {
        p_ += q_ * *s;
        q_ = 0;
        d_ = 0;
    }
}

GaussianRational QuadExt::to_base() const {
    if (!in_base_field()) throw NotSplitOverQi("value " + to_string() + " is not in Q(i)");
    return p_;
}

QuadExt QuadExt::aligned(const QuadExt& o) const {
    if (in_base_field() || o.in_base_field() || o.d_ == d_) return o;
    // sqrt(D') = s sqrt(D) when D'/D = s^2
    if (auto s = sqrt_exact(o.d_ / d_)) {
        QuadExt r;
        r.p_ = o.p_;
        r.q_ = o.q_ * *s;
        r.d_ = d_;
        return r;
    }
    throw NotSplitOverQi("mixing sqrt(" + d_.to_string() + ") with sqrt(" + o.d_.to_string() + ")");
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    const QuadExt b = aligned(o);
    if (in_base_field()) d_ = b.d_;
    p_ += b.p_;
    q_ += b.q_;
    normalize();
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) { return *this += -o; }

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    const QuadExt b = aligned(o);
    const GaussianRational disc = in_base_field() ? b.d_ : d_;
    GaussianRational p = p_ * b.p_ + q_ * b.q_ * disc;
    GaussianRational q = p_ * b.q_ + q_ * b.p_;
    p_ = std::move(p);
    q_ = std::move(q);
    d_ = disc;
    normalize();
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    if (o.is_zero()) throw DivisionByZero("quadratic-extension division by zero");
    const QuadExt b = aligned(o);
    // 1/(p + q sqrt D) = (p - q sqrt D) / (p^2 - q^2 D)
    const GaussianRational n = b.p_ * b.p_ - b.q_ * b.q_ * b.d_;
    QuadExt conj(b.p_, -b.q_, b.d_);
    *this *= conj;
    p_ /= n;
    q_ /= n;
    normalize();
    return *this;
}

QuadExt QuadExt::operator-() const {
    QuadExt r = *this;
    r.p_ = -r.p_;
    r.q_ = -r.q_;
    return r;
}

std::string QuadExt::to_string() const {
    if (in_base_field()) return p_.to_string();
    return "(" + p_.to_string() + ")+(" + q_.to_string() + ")*sqrt(" + d_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const QuadExt& z) { return os << z.to_string(); }

std::pair<QuadExt, QuadExt> solve_monic_quadratic(const GaussianRational& b, const GaussianRational& c) {
    const GaussianRational half_b = b / GaussianRational(2);
    const GaussianRational disc = half_b * half_b - c;
    const GaussianRational centre = -half_b;
    if (auto s = sqrt_exact(disc)) return {QuadExt(centre + *s), QuadExt(centre - *s)};
    return {QuadExt(centre, 1, disc), QuadExt(centre, -1, disc)};
}

}  // namespace adhm
