#ifndef ORBCAT_SCALAR_HPP
#define ORBCAT_SCALAR_HPP

#include <complex>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orbcat {

using Cplx = std::complex<double>;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(what) {}
};

// Exact rational over int64. Always normalized: den > 0, gcd(num, den) = 1.
struct Rational {
    std::int64_t num{0};
    std::int64_t den{1};

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw OverflowError("exact arithmetic overflow; instance too large for exact mode");
        return static_cast<std::int64_t>(v);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
        __int128 d = (__int128)a.den * b.den;
        return reduced(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num * b.den - (__int128)b.num * a.den;
        __int128 d = (__int128)a.den * b.den;
        return reduced(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return reduced((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw Error("rational division by zero");
        return reduced((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    Rational operator-() const { return Rational(-num, den); }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    double to_double() const { return double(num) / double(den); }

private:
    static Rational reduced(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num = checked(n);
        r.den = checked(d);
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a ? a : 1;
    }
};

// Recover p/q exactly from a double: smallest denominator whose quotient
// rounds back to the identical double. Used when loading exact-mode instances.
inline Rational rationalize(double x, std::int64_t max_den = (1 << 20)) {
    if (!std::isfinite(x)) throw Error("cannot rationalize non-finite value");
    // Stern-Brocot walk.
    double v = x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > 9e18 || fl < -9e18) break;
        auto a = (std::int64_t)fl;
        std::int64_t p2 = Rational::checked((__int128)a * p1 + p0);
        std::int64_t q2 = Rational::checked((__int128)a * q1 + q0);
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Rational cand(p1, q1);
        if (cand.to_double() == x) return cand;
        double rem = frac - fl;
        if (rem == 0.0) break;
        frac = 1.0 / rem;
    }
    throw Error("value " + std::to_string(x) + " is not representable in exact mode");
}

// Gaussian rational: exact element of Q(i).
struct GaussRational {
    Rational re, im;

    GaussRational() = default;
    GaussRational(Rational r) : re(r) {}
    GaussRational(Rational r, Rational i) : re(r), im(i) {}

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n.num == 0) throw Error("division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussRational operator-() const { return {-re, -im}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    Cplx to_complex() const { return {re.to_double(), im.to_double()}; }
};

// The scalar interface both engines share. K is std::complex<double> (float
// mode, tolerance-based zero tests) or GaussRational (exact mode).
template <class K>
struct ScalarOps;

template <>
struct ScalarOps<Cplx> {
    static constexpr bool exact = false;
    static Cplx zero() { return {0.0, 0.0}; }
    static Cplx one() { return {1.0, 0.0}; }
    static Cplx from_int(long n) { return {double(n), 0.0}; }
    static Cplx from_ratio(long n, long d) { return {double(n) / double(d), 0.0}; }
    static Cplx from_complex(Cplx z) { return z; }
    static Cplx conj(Cplx z) { return std::conj(z); }
    static Cplx inv(Cplx z) { return 1.0 / z; }
    static double abs(Cplx z) { return std::abs(z); }
    static Cplx to_complex(Cplx z) { return z; }
    static bool is_zero(Cplx z, double tol) { return std::abs(z) <= tol; }
};

template <>
struct ScalarOps<GaussRational> {
    static constexpr bool exact = true;
    static GaussRational zero() { return {}; }
    static GaussRational one() { return {Rational(1)}; }
    static GaussRational from_int(long n) { return {Rational(n)}; }
    static GaussRational from_ratio(long n, long d) { return {Rational(n, d)}; }
    static GaussRational from_complex(Cplx z) {
        return {rationalize(z.real()), rationalize(z.imag())};
    }
    static GaussRational conj(GaussRational z) { return {z.re, -z.im}; }
    static GaussRational inv(GaussRational z) { return one() / z; }
    static double abs(GaussRational z) { return std::abs(z.to_complex()); }
    static Cplx to_complex(GaussRational z) { return z.to_complex(); }
    static bool is_zero(GaussRational z, double) { return z.re.num == 0 && z.im.num == 0; }
};

} // namespace orbcat

#endif
