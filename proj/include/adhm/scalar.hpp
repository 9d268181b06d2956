#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace adhm {

// Default relative tolerance for all floating-point predicates.
inline constexpr double kDefaultTol = 1e-9;

enum class FieldKind {
    Rational,          // arbitrary-precision rationals
    GaussianRational,  // a + b*i with rational a, b
    Complex64,         // complex<double>
};

inline bool is_exact(FieldKind k) { return k != FieldKind::Complex64; }

inline const char* field_name(FieldKind k) {
    switch (k) {
        case FieldKind::Rational: return "rational";
        case FieldKind::GaussianRational: return "gaussian_rational";
        case FieldKind::Complex64: return "complex64";
    }
    return "?";
}

struct FieldError : std::runtime_error {
    explicit FieldError(const std::string& m) : std::runtime_error(m) {}
};

// One scalar of a fixed field. Exact kinds carry (re, im) as canonical
// rationals; Complex64 carries a complex<double>. Arithmetic between
// different kinds is a programming error, not a silent promotion.
class Scalar {
public:
    Scalar() : kind_(FieldKind::Rational) {}

    static Scalar zero(FieldKind k) {
        Scalar s;
        s.kind_ = k;
        return s;
    }
    static Scalar one(FieldKind k) { return integer(1, k); }
    static Scalar integer(long v, FieldKind k) {
        Scalar s;
        s.kind_ = k;
        if (k == FieldKind::Complex64)
            s.c_ = {static_cast<double>(v), 0.0};
        else
            s.re_ = v;
        return s;
    }
    static Scalar rational(const mpq_class& q) {
        Scalar s;
        s.kind_ = FieldKind::Rational;
        s.re_ = q;
        s.re_.canonicalize();
        return s;
    }
    static Scalar rational(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return rational(q);
    }
    static Scalar gaussian(const mpq_class& a, const mpq_class& b) {
        Scalar s;
        s.kind_ = FieldKind::GaussianRational;
        s.re_ = a;
        s.im_ = b;
        s.re_.canonicalize();
        s.im_.canonicalize();
        return s;
    }
    static Scalar complex64(std::complex<double> z) {
        Scalar s;
        s.kind_ = FieldKind::Complex64;
        s.c_ = z;
        return s;
    }
    static Scalar complex64(double re, double im = 0.0) {
        return complex64(std::complex<double>(re, im));
    }

    FieldKind field() const { return kind_; }
    bool exact() const { return is_exact(kind_); }

    const mpq_class& rat_re() const { return re_; }
    const mpq_class& rat_im() const { return im_; }
    std::complex<double> cplx() const { return c_; }

    bool is_zero() const {
        if (kind_ == FieldKind::Complex64) return c_ == std::complex<double>(0.0, 0.0);
        return re_ == 0 && im_ == 0;
    }
    bool is_one() const {
        if (kind_ == FieldKind::Complex64) return c_ == std::complex<double>(1.0, 0.0);
        return re_ == 1 && im_ == 0;
    }

    // Magnitude as a double; used only for pivot preferences and reports.
    double abs() const {
        if (kind_ == FieldKind::Complex64) return std::abs(c_);
        double a = re_.get_d(), b = im_.get_d();
        return std::sqrt(a * a + b * b);
    }

    std::complex<double> to_complex() const {
        if (kind_ == FieldKind::Complex64) return c_;
        return {re_.get_d(), im_.get_d()};
    }

    // Promotion only: Rational -> GaussianRational -> Complex64.
    Scalar to_field(FieldKind k) const {
        if (k == kind_) return *this;
        if (kind_ == FieldKind::Rational && k == FieldKind::GaussianRational)
            return gaussian(re_, 0);
        if (k == FieldKind::Complex64) return complex64(to_complex());
        throw FieldError("scalar: demotion from an inexact or wider field");
    }

    Scalar operator-() const {
        Scalar s = *this;
        if (kind_ == FieldKind::Complex64)
            s.c_ = -s.c_;
        else {
            s.re_ = -s.re_;
            s.im_ = -s.im_;
        }
        return s;
    }

    Scalar conj() const {
        Scalar s = *this;
        if (kind_ == FieldKind::Complex64)
            s.c_ = std::conj(s.c_);
        else
            s.im_ = -s.im_;
        return s;
    }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar s = *this;
        if (kind_ == FieldKind::Complex64)
            s.c_ += o.c_;
        else {
            s.re_ += o.re_;
            s.im_ += o.im_;
        }
        return s;
    }
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar s = zero(kind_);
        if (kind_ == FieldKind::Complex64)
            s.c_ = c_ * o.c_;
        else {
            s.re_ = re_ * o.re_ - im_ * o.im_;
            s.im_ = re_ * o.im_ + im_ * o.re_;
        }
        return s;
    }
    Scalar inv() const {
        if (is_zero()) throw FieldError("scalar: division by zero");
        Scalar s = zero(kind_);
        if (kind_ == FieldKind::Complex64)
            s.c_ = 1.0 / c_;
        else {
            mpq_class n = re_ * re_ + im_ * im_;
            s.re_ = re_ / n;
            s.im_ = -im_ / n;
        }
        return s;
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ == FieldKind::Complex64) return c_ == o.c_;
        return re_ == o.re_ && im_ == o.im_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const {
        if (kind_ == FieldKind::Complex64) {
            return "(" + std::to_string(c_.real()) + "," + std::to_string(c_.imag()) + ")";
        }
        std::string out = re_.get_str();
        if (im_ != 0) out += (sgn(im_) > 0 ? "+" : "") + im_.get_str() + "*i";
        return out;
    }

private:
    void check(const Scalar& o) const {
        if (kind_ != o.kind_) throw FieldError("scalar: mixed-field arithmetic");
    }

    FieldKind kind_;
    mpq_class re_, im_;
    std::complex<double> c_{0.0, 0.0};
};

}  // namespace adhm
