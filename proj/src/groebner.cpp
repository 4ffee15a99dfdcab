#include "tconic/groebner.hpp"

#include <algorithm>
#include <stdexcept>

namespace tconic::groebner {

const std::pair<const Expvec, Rat>& leading_term(const QPolyN& f) {
    if (f.terms.empty()) throw std::domain_error("leading term of zero polynomial");
    return *f.terms.rbegin();
}

bool divides_exp(const Expvec& a, const Expvec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Expvec lcm_exp(const Expvec& a, const Expvec& b) {
    Expvec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

namespace {

QPolyN monomial_times(const QPolyN& f, const Expvec& e, const Rat& c) {
    QPolyN r(f.vars);
    for (auto& [fe, fc] : f.terms) {
        Expvec ne(fe.size());
        for (size_t i = 0; i < ne.size(); ++i) ne[i] = fe[i] + e[i];
        r.terms.emplace(std::move(ne), fc * c);
    }
    return r;
}

int total(const Expvec& e) {
    int t = 0;
    for (int x : e) t += x;
    return t;
}

} // namespace

QPolyN s_polynomial(const QPolyN& f, const QPolyN& g) {
    if (f.is_zero_poly() || g.is_zero_poly())
        throw std::domain_error("s_polynomial of zero polynomial");
    auto& [ef, cf] = leading_term(f);
    auto& [eg, cg] = leading_term(g);
    Expvec l = lcm_exp(ef, eg);
    Expvec mf(l.size()), mg(l.size());
    for (size_t i = 0; i < l.size(); ++i) {
        mf[i] = l[i] - ef[i];
        mg[i] = l[i] - eg[i];
    }
    return monomial_times(f, mf, Rat(1) / cf) - monomial_times(g, mg, Rat(1) / cg);
}

QPolyN reduce(const QPolyN& f, const std::vector<QPolyN>& basis) {
    QPolyN rem(f.vars);
    QPolyN work = f;
    while (!work.terms.empty()) {
        // largest term of work
        auto it = std::prev(work.terms.end());
        const Expvec e = it->first;
        const Rat c = it->second;
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero_poly()) continue;
            auto& [eg, cg] = leading_term(g);
            if (!divides_exp(eg, e)) continue;
            Expvec m(e.size());
            for (size_t i = 0; i < e.size(); ++i) m[i] = e[i] - eg[i];
            work = work - monomial_times(g, m, c / cg);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(e, c);
            work.terms.erase(std::prev(work.terms.end()));
        }
    }
    return rem;
}

namespace {

// content-normalize with positive leading coefficient
QPolyN normalize_gen(const QPolyN& f) {
    if (f.terms.empty()) return f;
    QPolyN n = normalized(f);
    if (sgn(leading_term(n).second) < 0) n = n * Rat(-1);
    // normalized() makes the lexicographically-first coefficient positive;
    // for basis comparison we want the *leading* coefficient positive.
    return n;
}

} // namespace

IdealBasis buchberger(const std::vector<QPolyN>& gens) {
    if (gens.empty()) throw std::invalid_argument("buchberger: empty generator list");
    std::vector<QPolyN> g;
    for (auto& f : gens)
        if (!f.is_zero_poly()) g.push_back(normalize_gen(f));
    if (g.empty()) throw std::invalid_argument("buchberger: all generators zero");

    struct Pair {
        int i, j, deg;
    };
    auto pair_less = [](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };
    std::vector<Pair> queue;
    auto push_pairs_for = [&](int jnew) {
        for (int i = 0; i < jnew; ++i) {
            Expvec l = lcm_exp(leading_term(g[size_t(i)]).first, leading_term(g[size_t(jnew)]).first);
            queue.push_back({i, jnew, total(l)});
        }
        std::sort(queue.begin(), queue.end(), pair_less);
    };
    for (int j = 1; j < int(g.size()); ++j) push_pairs_for(j);

    while (!queue.empty()) {
        Pair pr = queue.front();
        queue.erase(queue.begin());
        const QPolyN& fi = g[size_t(pr.i)];
        const QPolyN& fj = g[size_t(pr.j)];
        auto& ei = leading_term(fi).first;
        auto& ej = leading_term(fj).first;
        // Buchberger's coprimality criterion
        bool coprime = true;
        for (size_t k = 0; k < ei.size(); ++k)
            if (ei[k] > 0 && ej[k] > 0) { coprime = false; break; }
        if (coprime) continue;
        QPolyN s = reduce(s_polynomial(fi, fj), g);
        if (s.is_zero_poly()) continue;
        g.push_back(normalize_gen(s));
        push_pairs_for(int(g.size()) - 1);
    }

    // minimalize: drop generators whose leading term is divisible by another's
    std::vector<QPolyN> minimal;
    for (size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g.size(); ++j) {
            if (i == j) continue;
            auto& ei = leading_term(g[i]).first;
            auto& ej = leading_term(g[j]).first;
            if (divides_exp(ej, ei) && (ei != ej || j < i)) { redundant = true; break; }
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    // inter-reduce tails
    std::vector<QPolyN> reduced_basis;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<QPolyN> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced_basis.push_back(normalize_gen(reduce(minimal[i], others)));
    }
    std::sort(reduced_basis.begin(), reduced_basis.end(), [](const QPolyN& a, const QPolyN& b) {
        return leading_term(a).first < leading_term(b).first;
    });

    IdealBasis out;
    out.gens = std::move(reduced_basis);
    std::pair<int,int> bad;
    out.is_groebner = verify_groebner(out.gens, &bad);
    if (!out.is_groebner) throw std::logic_error("buchberger produced a non-Groebner set");
    return out;
}

bool verify_groebner(const std::vector<QPolyN>& basis, std::pair<int,int>* bad) {
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            QPolyN s = s_polynomial(basis[i], basis[j]);
            if (!reduce(s, basis).is_zero_poly()) {
                if (bad) *bad = {int(i), int(j)};
                return false;
            }
        }
    return true;
}

std::vector<QPolyN> elimination_ideal(const IdealBasis& basis, const std::set<size_t>& drop) {
    if (!basis.is_groebner)
        throw std::invalid_argument("elimination_ideal needs a verified Groebner basis");
    // dropped variables must form the top-ranked block
    for (size_t v : drop)
        if (v >= drop.size())
            throw std::invalid_argument("elimination_ideal: dropped variables must be the highest-ranked block");
    std::vector<QPolyN> out;
    for (const auto& f : basis.gens) {
        bool free = true;
        for (size_t v : drop)
            if (f.degree_in(v) > 0) { free = false; break; }
        if (free) out.push_back(f);
    }
    return out;
}

bool in_ideal(const QPolyN& f, const std::vector<QPolyN>& gb) {
    return reduce(f, gb).is_zero_poly();
}

} // namespace tconic::groebner
