#ifndef TCONIC_GROEBNER_HPP
#define TCONIC_GROEBNER_HPP

// Buchberger-based Groebner bases in lexicographic order, sized for the
// elimination computations this project needs (a handful of variables,
// low degrees).  Deterministic: normal pair selection with index tie-break.

#include <vector>
#include <set>
#include <string>

#include "tconic/multipoly.hpp"

namespace tconic::groebner {

// The monomial order is lexicographic with vars[0] ranked highest; an
// exponent vector compares by its natural std::vector ordering, so the
// map's last entry is the leading term.

struct IdealBasis {
    std::vector<QPolyN> gens;
    bool is_groebner = false;   // set only after verification
};

// leading exponent/coefficient of a nonzero polynomial
const std::pair<const Expvec, Rat>& leading_term(const QPolyN& f);

bool divides_exp(const Expvec& a, const Expvec& b);     // a | b componentwise
Expvec lcm_exp(const Expvec& a, const Expvec& b);

QPolyN s_polynomial(const QPolyN& f, const QPolyN& g);

// full normal form of f modulo basis (every term irreducible)
QPolyN reduce(const QPolyN& f, const std::vector<QPolyN>& basis);

// reduced Groebner basis; generators content-normalized, positive leading
// coefficient, sorted by leading monomial
IdealBasis buchberger(const std::vector<QPolyN>& gens);

// verify the Groebner property by S-pair reduction; on failure, returns the
// offending pair indices in *bad
bool verify_groebner(const std::vector<QPolyN>& basis, std::pair<int,int>* bad = nullptr);

// subset of basis elements free of the dropped variables (which must be the
// top-ranked block of the variable list)
std::vector<QPolyN> elimination_ideal(const IdealBasis& basis, const std::set<size_t>& drop);

// f lies in the ideal generated by a Groebner basis
bool in_ideal(const QPolyN& f, const std::vector<QPolyN>& gb);

} // namespace tconic::groebner

#endif
