#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace pdm {

// Gaussian rational a + b i with a, b in Q.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long v) : re_(v), im_(0) {}
    Scalar(int v) : re_(v), im_(0) {}
    Scalar(const mpq_class& re) : re_(re), im_(0) { re_.canonicalize(); }
    Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im)
    {
        re_.canonicalize();
        im_.canonicalize();
    }
    static Scalar frac(long n, long d) { return Scalar(mpq_class(n, d)); }
    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_integer() const { return is_real() && re_.get_den() == 1; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar& operator+=(const Scalar& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o)
    {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = m;
        return *this;
    }
    Scalar& operator/=(const Scalar& o)
    {
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        Scalar c = o.conj();
        *this *= c;
        re_ /= n;
        im_ /= n;
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(long n) const
    {
        if (n < 0)
            return Scalar(1) / pow(-n);
        Scalar r(1), b(*this);
        while (n) {
            if (n & 1)
                r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    // Grammar form: "3", "-3/2", "(complex 1/2 -3)".
    std::string str() const
    {
        if (is_real())
            return re_.get_str();
        return "(complex " + re_.get_str() + " " + im_.get_str() + ")";
    }

private:
    mpq_class re_, im_;
};

}  // namespace pdm
