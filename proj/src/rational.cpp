#include "crquad/rational.hpp"

#include <cctype>
#include <ostream>

namespace crquad {

Rational::Rational(long num, long den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    // mpq_class accepts more than we want (whitespace, hex); validate first.
    auto bad = [&]() { return ParseError("malformed rational '" + s + "'"); };
    std::size_t pos = 0;
    auto digits = [&](std::size_t from) {
        std::size_t p = from;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
        std::size_t start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == start) throw bad();
        return p;
    };
    if (s.empty()) throw bad();
    pos = digits(0);
    if (pos != s.size()) {
        if (s[pos] != '/') throw bad();
        std::size_t q = digits(pos + 1);
        if (q != s.size()) throw bad();
        if (s[pos + 1] == '-' || s[pos + 1] == '+') throw bad();  // sign lives in the numerator
    }
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw bad();
    if (v.get_den() == 0) throw ValidationError("rational with zero denominator: '" + s + "'");
    v.canonicalize();
    return Rational(v);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ValidationError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw ValidationError("inverse of zero");
    return Rational(mpq_class(1) / v_);
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw ValidationError("inverse of zero");
    Rational n = norm();
    return {re_ / n, -im_ / n};
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
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

std::string GaussianRational::str() const {
    auto imag_part = [&]() -> std::string {
        if (im_.is_one()) return "i";
        if (im_ == Rational(-1)) return "-i";
        return im_.str() + "*i";
    };
    if (im_.is_zero()) return re_.str();
    if (re_.is_zero()) return imag_part();
    std::string out = re_.str();
    if (im_.sign() > 0) out += "+";
    out += imag_part();
    return out;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << z.str();
}

}  // namespace crquad
