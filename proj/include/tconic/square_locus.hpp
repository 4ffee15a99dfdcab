#ifndef TCONIC_SQUARE_LOCUS_HPP
#define TCONIC_SQUARE_LOCUS_HPP

// The locus of perfect-square binary quartics a*s^4 + b*s^3 t + c*s^2 t^2
// + d*s t^3 + e*t^4 inside P^4, cut out by seven quintic-point conditions;
// these are the eliminants of the squaring map (xi*s^2 + eta*s*t + zeta*t^2)^2.

#include <vector>
#include <string>

#include "tconic/multipoly.hpp"

namespace tconic {

inline const std::vector<std::string>& square_locus_vars() {
    static const std::vector<std::string> v{"a", "b", "c", "d", "e"};
    return v;
}

inline const std::vector<std::string>& square_param_vars() {
    static const std::vector<std::string> v{"xi", "eta", "zeta", "a", "b", "c", "d", "e"};
    return v;
}

// the seven polynomials in (a,b,c,d,e) that vanish exactly on the squares
inline const std::vector<QPolyN>& square_locus_eliminants() {
    static const std::vector<QPolyN> polys = [] {
        const auto& v = square_locus_vars();
        std::vector<QPolyN> out;
        out.push_back(parse_poly(v, "8*a^2*d - 4*c*b*a + b^3"));
        out.push_back(parse_poly(v, "c*b^2 + 2*a*b*d - 4*a*c^2 + 16*a^2*e"));
        out.push_back(parse_poly(v, "b^2*d + 8*b*e*a - 4*a*c*d"));
        out.push_back(parse_poly(v, "a*d^2 - e*b^2"));
        out.push_back(parse_poly(v, "b*d^2 - 4*c*e*b + 8*e*a*d"));
        out.push_back(parse_poly(v, "d^2*c - 4*e*c^2 + 2*e*b*d + 16*e^2*a"));
        out.push_back(parse_poly(v, "d^3 - 4*e*d*c + 8*e^2*b"));
        return out;
    }();
    return polys;
}

// generators of the graph ideal of the squaring map: a - xi^2, b - 2 xi eta,
// c - (eta^2 + 2 xi zeta), d - 2 eta zeta, e - zeta^2
inline const std::vector<QPolyN>& square_param_gens() {
    static const std::vector<QPolyN> polys = [] {
        const auto& v = square_param_vars();
        std::vector<QPolyN> out;
        out.push_back(parse_poly(v, "xi^2 - a"));
        out.push_back(parse_poly(v, "2*xi*eta - b"));
        out.push_back(parse_poly(v, "2*xi*zeta - c + eta^2"));
        out.push_back(parse_poly(v, "2*eta*zeta - d"));
        out.push_back(parse_poly(v, "zeta^2 - e"));
        return out;
    }();
    return polys;
}

// evaluate all seven eliminants at given quartic coefficients
template <class F>
std::vector<F> square_locus_values(const std::array<F, 5>& q) {
    const F &a = q[0], &b = q[1], &c = q[2], &d = q[3], &e = q[4];
    std::vector<F> r;
    r.push_back(F(8) * a * a * d - F(4) * c * b * a + b * b * b);
    r.push_back(c * b * b + F(2) * a * b * d - F(4) * a * c * c + F(16) * a * a * e);
    r.push_back(b * b * d + F(8) * b * e * a - F(4) * a * c * d);
    r.push_back(a * d * d - e * b * b);
    r.push_back(b * d * d - F(4) * c * e * b + F(8) * e * a * d);
    r.push_back(d * d * c - F(4) * e * c * c + F(2) * e * b * d + F(16) * e * e * a);
    r.push_back(d * d * d - F(4) * e * d * c + F(8) * e * e * b);
    return r;
}

} // namespace tconic

#endif
