#pragma once

#include <stdexcept>

#include "rce/rational.hpp"

namespace rce {

// Element a + b*eps of Q[eps]/(eps^2). Invertible iff a != 0.
struct Dual {
    Rational a;  // base
    Rational b;  // slope

    Dual() = default;
    Dual(Rational base) : a(std::move(base)) {}
    Dual(long base) : a(base) {}
    Dual(Rational base, Rational slope) : a(std::move(base)), b(std::move(slope)) {}

    static Dual eps() { return Dual(Rational(0), Rational(1)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
    Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
    Dual& operator*=(const Dual& o) {
        // (a + b eps)(c + d eps) = ac + (ad + bc) eps
        b = a * o.b + b * o.a;
        a *= o.a;
        return *this;
    }
    Dual& operator/=(const Dual& o) { return *this *= inverse(o); }

    friend Dual inverse(const Dual& x) {
        if (x.a.is_zero()) throw std::domain_error("Dual: base singular");
        Rational ia = inverse(x.a);
        return Dual(ia, -x.b * ia * ia);
    }

    friend Dual operator+(Dual x, const Dual& y) { return x += y; }
    friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
    friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
    friend Dual operator/(Dual x, const Dual& y) { return x /= y; }
    friend Dual operator-(const Dual& x) { return Dual(-x.a, -x.b); }
    friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }

    std::string str() const { return a.str() + "+" + b.str() + "e"; }
};

template <>
struct scalar_traits<Dual> {
    static Dual zero() { return Dual(); }
    static Dual one() { return Dual(Rational(1)); }
    static bool is_unit(const Dual& x) { return !x.a.is_zero(); }
    static Dual inv(const Dual& x) { return inverse(x); }
    static std::string str(const Dual& x) { return x.str(); }
};

}  // namespace rce
