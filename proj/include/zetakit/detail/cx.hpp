#pragma once

// Minimal complex arithmetic over an arbitrary real type. std::complex is only
// specified for the built-in floating types, so the multiprecision engine uses
// this instead; the long double instantiation is the hot path for zero finding.

#include <cmath>
#include <complex>

namespace zetakit::detail {

template <class R>
struct Cx {
    R re{0};
    R im{0};

    Cx() = default;
    Cx(R r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

    Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cx& operator-=(const Cx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cx& operator*=(const Cx& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Cx& operator*=(const R& k) {
        re *= k;
        im *= k;
        return *this;
    }
    Cx& operator/=(const Cx& o) {
        const R d = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }

    friend Cx operator+(Cx a, const Cx& b) { return a += b; }
    friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
    friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
    friend Cx operator*(Cx a, const R& k) { return a *= k; }
    friend Cx operator*(const R& k, Cx a) { return a *= k; }
    friend Cx operator/(Cx a, const Cx& b) { return a /= b; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
};

template <class R>
Cx<R> conj(const Cx<R>& z) {
    return {z.re, -z.im};
}

template <class R>
R norm2(const Cx<R>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class R>
R abs(const Cx<R>& z) {
    using std::sqrt;
    return sqrt(norm2(z));
}

template <class R>
R arg(const Cx<R>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

template <class R>
Cx<R> exp(const Cx<R>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    const R m = exp(z.re);
    if (z.im == 0) return {m, R(0)};
    return {m * cos(z.im), m * sin(z.im)};
}

template <class R>
Cx<R> log(const Cx<R>& z) {
    using std::log;
    return {log(abs(z)), arg(z)};
}

/// x^{-s} for real x > 0 given log x.
template <class R>
Cx<R> pow_neg(const R& log_x, const Cx<R>& s) {
    return exp(Cx<R>{-s.re * log_x, -s.im * log_x});
}

template <class R>
std::complex<long double> to_std(const Cx<R>& z) {
    return {static_cast<long double>(z.re), static_cast<long double>(z.im)};
}

template <class R>
Cx<R> from_std(const std::complex<long double>& z) {
    return {R(z.real()), R(z.imag())};
}

}  // namespace zetakit::detail
