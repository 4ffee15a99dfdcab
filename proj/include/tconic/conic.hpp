#ifndef TCONIC_CONIC_HPP
#define TCONIC_CONIC_HPP

// Ternary quadratic forms and their symmetric 3x3 coefficient matrices.

#include <array>
#include <stdexcept>

#include "tconic/multipoly.hpp"

namespace tconic {

template <class F>
struct ConicForm {
    // coefficients of x^2, y^2, z^2, xy, xz, yz
    std::array<F, 6> c{F(0), F(0), F(0), F(0), F(0), F(0)};

    ConicForm() = default;
    explicit ConicForm(std::array<F, 6> coeffs) : c(std::move(coeffs)) {}

    static ConicForm from_poly(const MultiPoly<F>& p) {
        if (p.nvars() != 3) throw std::invalid_argument("ConicForm::from_poly: need 3 variables");
        ConicForm r;
        for (auto& [e, coef] : p.terms) {
            if (e[0] + e[1] + e[2] != 2) throw std::invalid_argument("ConicForm::from_poly: not a quadratic form");
            if (e[0] == 2) r.c[0] += coef;
            else if (e[1] == 2) r.c[1] += coef;
            else if (e[2] == 2) r.c[2] += coef;
            else if (e[0] == 1 && e[1] == 1) r.c[3] += coef;
            else if (e[0] == 1 && e[2] == 1) r.c[4] += coef;
            else r.c[5] += coef;
        }
        return r;
    }

    MultiPoly<F> to_poly(std::vector<std::string> vars) const {
        MultiPoly<F> p(std::move(vars));
        p.add_term({2, 0, 0}, c[0]);
        p.add_term({0, 2, 0}, c[1]);
        p.add_term({0, 0, 2}, c[2]);
        p.add_term({1, 1, 0}, c[3]);
        p.add_term({1, 0, 1}, c[4]);
        p.add_term({0, 1, 1}, c[5]);
        return p;
    }

    // symmetric matrix with halved off-diagonal entries
    std::array<std::array<F, 3>, 3> matrix() const {
        F h(Rat(1, 2));
        std::array<std::array<F, 3>, 3> m;
        m[0] = {c[0], c[3] * h, c[4] * h};
        m[1] = {c[3] * h, c[1], c[5] * h};
        m[2] = {c[4] * h, c[5] * h, c[2]};
        return m;
    }

    F det() const {
        auto m = matrix();
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
             - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
             + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    F eval(const F& x, const F& y, const F& z) const {
        return c[0] * x * x + c[1] * y * y + c[2] * z * z
             + c[3] * x * y + c[4] * x * z + c[5] * y * z;
    }

    ConicForm operator*(const F& k) const {
        ConicForm r = *this;
        for (auto& v : r.c) v *= k;
        return r;
    }
    ConicForm operator+(const ConicForm& o) const {
        ConicForm r = *this;
        for (size_t i = 0; i < 6; ++i) r.c[i] += o.c[i];
        return r;
    }
    bool operator==(const ConicForm& o) const { return c == o.c; }
};

template <class F>
F det_conic(const ConicForm<F>& cf) { return cf.det(); }

using QConic = ConicForm<Rat>;
using GConic = ConicForm<GaussRat>;

} // namespace tconic

#endif
