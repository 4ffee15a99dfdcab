#ifndef TCONIC_MULTIPOLY_HPP
#define TCONIC_MULTIPOLY_HPP

// Sparse multivariate polynomials over an exact field (Q or Q(i)).
// Terms are kept in a map from exponent vector to nonzero coefficient,
// which fixes a canonical term order for printing and comparison.

#include <map>
#include <vector>
#include <string>
#include <sstream>
#include <stdexcept>
#include <algorithm>
#include <functional>
#include <cctype>

#include "tconic/rational.hpp"

namespace tconic {

using Expvec = std::vector<int>;

template <class F>
class MultiPoly {
public:
    std::vector<std::string> vars;
    std::map<Expvec, F> terms;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> variables) : vars(std::move(variables)) {}

    static MultiPoly constant(std::vector<std::string> variables, const F& v) {
        MultiPoly p(std::move(variables));
        if (!is_zero(v)) p.terms.emplace(Expvec(p.vars.size(), 0), v);
        return p;
    }
    static MultiPoly variable(std::vector<std::string> variables, size_t idx, int power = 1) {
        MultiPoly p(std::move(variables));
        Expvec e(p.vars.size(), 0);
        e.at(idx) = power;
        p.terms.emplace(std::move(e), F(1));
        return p;
    }

    bool is_zero_poly() const { return terms.empty(); }
    size_t nvars() const { return vars.size(); }

    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : terms) {
            int t = 0;
            for (int x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    int degree_in(size_t v) const {
        int d = -1;
        for (auto& [e, c] : terms) d = std::max(d, e[v]);
        return d;
    }

    bool is_homogeneous() const {
        int d = -1;
        for (auto& [e, c] : terms) {
            int t = 0;
            for (int x : e) t += x;
            if (d < 0) d = t;
            else if (t != d) return false;
        }
        return true;
    }

    void add_term(const Expvec& e, const F& c) {
        if (is_zero(c)) return;
        auto it = terms.find(e);
        if (it == terms.end()) terms.emplace(e, c);
        else {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(vars);
        for (auto& [e, c] : terms) r.terms.emplace(e, -c);
        return r;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r(vars);
        for (auto& [e1, c1] : terms)
            for (auto& [e2, c2] : o.terms) {
                Expvec e(e1.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    MultiPoly operator*(const F& k) const {
        MultiPoly r(vars);
        if (is_zero(k)) return r;
        for (auto& [e, c] : terms) r.terms.emplace(e, c * k);
        return r;
    }
    bool operator==(const MultiPoly& o) const { return vars == o.vars && terms == o.terms; }

    MultiPoly pow(int n) const {
        MultiPoly r = constant(vars, F(1));
        MultiPoly b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    MultiPoly partial(size_t v) const {
        MultiPoly r(vars);
        for (auto& [e, c] : terms) {
            if (e[v] == 0) continue;
            Expvec ne = e;
            ne[v] -= 1;
            r.add_term(ne, c * F(e[v]));
        }
        return r;
    }

    F eval(const std::vector<F>& x) const {
        if (x.size() != vars.size()) throw std::invalid_argument("eval: wrong arity");
        F acc(0);
        for (auto& [e, c] : terms) {
            F t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    // Substitute images[i] (a polynomial in the images' variable set) for
    // variable i.
    MultiPoly compose(const std::vector<MultiPoly>& images) const {
        if (images.size() != vars.size()) throw std::invalid_argument("compose: wrong arity");
        std::vector<std::string> tvars = images.empty() ? vars : images[0].vars;
        MultiPoly r(tvars);
        for (auto& [e, c] : terms) {
            MultiPoly t = constant(tvars, c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t = t * images[i];
            r = r + t;
        }
        return r;
    }

    // Coefficient of var v^k, as a polynomial in the same variable set.
    MultiPoly coeff_of(size_t v, int k) const {
        MultiPoly r(vars);
        for (auto& [e, c] : terms) {
            if (e[v] != k) continue;
            Expvec ne = e;
            ne[v] = 0;
            r.add_term(ne, c);
        }
        return r;
    }

    const F* leading_coeff_lex() const {
        if (terms.empty()) return nullptr;
        return &terms.rbegin()->second;
    }

private:
    void check_vars(const MultiPoly& o) const {
        if (vars != o.vars) throw std::invalid_argument("variable sets differ");
    }
};

using QPolyN = MultiPoly<Rat>;
using GPolyN = MultiPoly<GaussRat>;

inline GPolyN to_gauss(const QPolyN& p) {
    GPolyN r(p.vars);
    for (auto& [e, c] : p.terms) r.terms.emplace(e, GaussRat(c));
    return r;
}

// Canonical projective normalization over Q: clear denominators, divide by
// content, make the lexicographically-first term's coefficient positive.
inline QPolyN normalized(const QPolyN& p) {
    if (p.terms.empty()) return p;
    Int den(1);
    for (auto& [e, c] : p.terms)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    Int num(0);
    for (auto& [e, c] : p.terms) {
        Rat v = c * Rat(den);
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_num().get_mpz_t());
    }
    Rat scale = rat(den, num);
    if (sgn(p.terms.begin()->second) < 0) scale = -scale;
    return p * scale;
}

// projective equality over Q: equal up to a nonzero scalar
inline bool proportional(const QPolyN& a, const QPolyN& b) {
    if (a.is_zero_poly() || b.is_zero_poly()) return a.is_zero_poly() && b.is_zero_poly();
    return normalized(a) == normalized(b);
}

// ---- text grammar ------------------------------------------------------
// terms joined by +/-, coefficients p/q or integers, variables named by the
// poly's variable list, '^' for powers, '*' for products.
// Example: x0^2*x1 - 3/4*x2^3

template <class F>
std::string poly_to_string(const MultiPoly<F>& p,
                           const std::function<std::string(const F&)>& coeff_str) {
    if (p.terms.empty()) return "0";
    // print in descending (total degree, lex) order
    std::vector<const std::pair<const Expvec, F>*> ts;
    for (auto& t : p.terms) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
        int da = 0, db = 0;
        for (int x : a->first) da += x;
        for (int x : b->first) db += x;
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        const auto& [e, c] = *t;
        std::string cs = coeff_str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        std::vector<std::string> factors;
        bool allzero = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            allzero = false;
            factors.push_back(e[i] == 1 ? p.vars[i]
                                        : p.vars[i] + "^" + std::to_string(e[i]));
        }
        if (allzero) {
            os << cs;
        } else {
            if (cs != "1") os << cs << "*";
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) os << "*";
                os << factors[i];
            }
        }
    }
    return os.str();
}

inline std::string to_string(const QPolyN& p) {
    return poly_to_string<Rat>(p, [](const Rat& r) { return rat_to_string(r); });
}
inline std::string to_string(const GPolyN& p) {
    return poly_to_string<GaussRat>(p, [](const GaussRat& z) { return gauss_to_string(z); });
}

QPolyN parse_poly(const std::vector<std::string>& vars, const std::string& text);

namespace detail {

struct PolyLexer {
    const std::string& s;
    size_t i = 0;
    explicit PolyLexer(const std::string& str) : s(str) {}
    void skip_ws() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool eof() { skip_ws(); return i >= s.size(); }
    char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }
    char get() { skip_ws(); return s[i++]; }
};

} // namespace detail

inline QPolyN parse_poly(const std::vector<std::string>& vars, const std::string& text) {
    detail::PolyLexer lx(text);
    QPolyN result(vars);

    auto parse_uint = [&]() -> Int {
        lx.skip_ws();
        size_t start = lx.i;
        while (lx.i < lx.s.size() && std::isdigit((unsigned char)lx.s[lx.i])) ++lx.i;
        if (lx.i == start) throw std::invalid_argument("expected integer at '" + lx.s.substr(start, 8) + "'");
        return Int(lx.s.substr(start, lx.i - start));
    };
    auto parse_ident = [&]() -> std::string {
        lx.skip_ws();
        size_t start = lx.i;
        while (lx.i < lx.s.size() &&
               (std::isalnum((unsigned char)lx.s[lx.i]) || lx.s[lx.i] == '_'))
            ++lx.i;
        return lx.s.substr(start, lx.i - start);
    };

    bool expect_term = true;
    int sign = 1;
    while (!lx.eof()) {
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.get();
            if (c == '-') sign = -sign;
            expect_term = true;
            continue;
        }
        if (!expect_term) throw std::invalid_argument("expected '+' or '-' near '" + lx.s.substr(lx.i, 8) + "'");
        // term: factors joined by '*'
        Rat coeff(sign);
        Expvec e(vars.size(), 0);
        bool more = true;
        while (more) {
            char p = lx.peek();
            if (std::isdigit((unsigned char)p)) {
                Int num = parse_uint();
                Int den(1);
                if (lx.peek() == '/') { lx.get(); den = parse_uint(); }
                coeff *= rat(num, den);
            } else if (std::isalpha((unsigned char)p) || p == '_') {
                std::string name = parse_ident();
                auto it = std::find(vars.begin(), vars.end(), name);
                if (it == vars.end()) throw std::invalid_argument("unknown variable '" + name + "'");
                int pw = 1;
                if (lx.peek() == '^') {
                    lx.get();
                    pw = int(parse_uint().get_si());
                }
                e[size_t(it - vars.begin())] += pw;
            } else {
                throw std::invalid_argument(std::string("unexpected character '") + p + "'");
            }
            if (lx.peek() == '*') { lx.get(); more = true; } else more = false;
        }
        result.add_term(e, coeff);
        sign = 1;
        expect_term = false;
    }
    if (expect_term) throw std::invalid_argument("dangling sign in polynomial text");
    return result;
}

} // namespace tconic

#endif
