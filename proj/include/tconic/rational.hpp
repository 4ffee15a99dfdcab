#ifndef TCONIC_RATIONAL_HPP
#define TCONIC_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <stdexcept>
#include <cstdint>

namespace tconic {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "p", "-p", "p/q".
inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return r;
}

// Element of Q(i).  All operations exact.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(const Rat& r) : re(r), im(0) {}
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }
    GaussRat operator/(const GaussRat& o) const {
        Rat n = o.norm();
        if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
        GaussRat t = *this * o.conj();
        return {t.re / n, t.im / n};
    }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }
};

inline bool is_zero(const GaussRat& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }

inline std::string gauss_to_string(const GaussRat& z) {
    if (sgn(z.im) == 0) return rat_to_string(z.re);
    std::string s = "(" + rat_to_string(z.re);
    s += sgn(z.im) < 0 ? " - " : " + ";
    Rat a = abs(z.im);
    s += (a == 1 ? std::string("i") : rat_to_string(a) + "*i") + ")";
    return s;
}

// Deterministic small PRNG (splitmix64) for seeded test-plane generation.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    long range(long lo, long hi) { return lo + long(below(std::uint64_t(hi - lo + 1))); }
};

} // namespace tconic

#endif
