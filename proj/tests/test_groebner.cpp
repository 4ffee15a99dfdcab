#include "doctest.h"

#include <fstream>

#include "tconic/groebner.hpp"
#include "tconic/square_locus.hpp"
#include "tconic/data_io.hpp"

using namespace tconic;
using namespace tconic::groebner;

namespace {

std::vector<QPolyN> bundled_basis() {
    return load_poly_file(std::string(TCONIC_DATA_DIR) + "/square-locus-basis.txt", square_param_vars());
}

// the square-map generators viewed in the 8-variable ring
std::vector<QPolyN> graph_gens() { return square_param_gens(); }

} // namespace

TEST_CASE("reduce: self-reduction and basics") {
    const auto& v = square_param_vars();
    auto f = parse_poly(v, "xi^2*eta - 3*a*b + c");
    CHECK(reduce(f, {f}).is_zero_poly());
    auto g = parse_poly(v, "xi - a");
    auto r = reduce(parse_poly(v, "xi^2"), {g});
    CHECK(r == parse_poly(v, "a^2"));
}

TEST_CASE("s_polynomial cancels leading monomials") {
    const auto& v = square_param_vars();
    auto f = parse_poly(v, "xi^2 - a");
    auto g = parse_poly(v, "2*xi*eta - b");
    auto s = s_polynomial(f, g);
    // lcm is xi^2*eta; both leading contributions cancel, so the S-polynomial
    // has strictly smaller leading monomial
    REQUIRE(!s.is_zero_poly());
    auto lead = leading_term(s).first;
    Expvec lcm{2, 1, 0, 0, 0, 0, 0, 0};
    CHECK(lead < lcm);
    CHECK_THROWS(s_polynomial(QPolyN(v), f));
}

TEST_CASE("buchberger on a single generator") {
    std::vector<std::string> v{"x"};
    auto b = buchberger({parse_poly(v, "x - 1")});
    REQUIRE(b.gens.size() == 1);
    CHECK(b.gens[0] == parse_poly(v, "x - 1"));
    CHECK(b.is_groebner);
}

TEST_CASE("the bundled basis matches the built-in eliminants and passes S-pair checks") {
    auto basis = bundled_basis();
    REQUIRE(basis.size() == 27);
    // the last seven are free of xi, eta, zeta and match the built-ins
    const auto& elim = square_locus_eliminants();
    for (int i = 0; i < 7; ++i) {
        const QPolyN& from_file = basis[size_t(20 + i)];
        for (size_t var = 0; var < 3; ++var) CHECK(from_file.degree_in(var) <= 0);
        // compare after moving the built-in into the 8-variable ring
        QPolyN lifted(square_param_vars());
        for (auto& [e, c] : elim[size_t(i)].terms) {
            Expvec e8(8, 0);
            for (size_t k = 0; k < 5; ++k) e8[3 + k] = e[k];
            lifted.add_term(e8, c);
        }
        CHECK(proportional(from_file, lifted));
    }
    std::pair<int,int> bad;
    CHECK(verify_groebner(basis, &bad));
}

TEST_CASE("negative control: a corrupted basis fails with an identified S-pair") {
    auto basis = bundled_basis();
    // flip one sign in the first eliminant
    QPolyN& victim = basis[20];
    auto it = victim.terms.begin();
    it->second = -it->second;
    std::pair<int,int> bad{-1, -1};
    CHECK(!verify_groebner(basis, &bad));
    CHECK(bad.first >= 0);
    CHECK(bad.second > bad.first);
}

TEST_CASE("buchberger regenerates the bundled basis from the squaring map") {
    auto gb = buchberger(graph_gens());
    CHECK(gb.is_groebner);
    auto bundled = bundled_basis();
    // elimination parts agree up to scalar/sign
    std::set<size_t> drop{0, 1, 2};
    auto mine = elimination_ideal(gb, drop);
    REQUIRE(mine.size() == 7);
    std::vector<QPolyN> theirs(bundled.begin() + 20, bundled.end());
    // match as multisets under proportionality
    for (auto& m : mine) {
        bool found = false;
        for (auto& t : theirs)
            if (proportional(m, t)) { found = true; break; }
        CHECK(found);
    }
    // first eliminant present: 8 a^2 d - 4 c b a + b^3
    bool has_first = false;
    for (auto& m : mine)
        if (proportional(m, parse_poly(square_param_vars(), "8*a^2*d - 4*c*b*a + b^3"))) has_first = true;
    CHECK(has_first);

    // mutual ideal equality: every bundled element reduces to zero against
    // the regenerated basis, and every regenerated element against bundled
    for (auto& t : bundled) CHECK(in_ideal(t, gb.gens));
    IdealBasis bundled_basis{bundled, true};
    for (auto& m : gb.gens) CHECK(in_ideal(m, bundled));

    // ideal membership example: a d^2 - e b^2
    CHECK(in_ideal(parse_poly(square_param_vars(), "a*d^2 - e*b^2"), gb.gens));
}

TEST_CASE("buchberger is self-stable") {
    auto gb = buchberger(graph_gens());
    auto again = buchberger(gb.gens);
    REQUIRE(gb.gens.size() == again.gens.size());
    for (size_t i = 0; i < gb.gens.size(); ++i)
        CHECK(gb.gens[i] == again.gens[i]);
}

TEST_CASE("normal form is independent of basis ordering") {
    auto gb = buchberger(graph_gens());
    SplitMix64 rng(53);
    const auto& v = square_param_vars();
    for (int trial = 0; trial < 10; ++trial) {
        QPolyN f(v);
        for (int t = 0; t < 6; ++t) {
            Expvec e(8, 0);
            for (auto& x : e) x = int(rng.below(3));
            f.add_term(e, rat(rng.range(-9, 9)));
        }
        QPolyN nf = reduce(f, gb.gens);
        for (int shuffle = 0; shuffle < 4; ++shuffle) {
            auto perm = gb.gens;
            for (size_t i = perm.size(); i > 1; --i)
                std::swap(perm[i - 1], perm[rng.below(i)]);
            CHECK(reduce(f, perm) == nf);
        }
    }
}

TEST_CASE("elimination ideal edge cases") {
    auto gb = buchberger(graph_gens());
    // eliminate nothing -> whole basis
    auto all = elimination_ideal(gb, {});
    CHECK(all.size() == gb.gens.size());
    // proper ideal: eliminating every variable of {x-1} leaves nothing
    std::vector<std::string> v{"x"};
    auto b = buchberger({parse_poly(v, "x - 1")});
    auto none = elimination_ideal(b, {0});
    CHECK(none.empty());
    // dropped variables must be the top block
    CHECK_THROWS(elimination_ideal(gb, std::set<size_t>{5}));
}

TEST_CASE("random points of the squaring map annihilate the eliminants") {
    SplitMix64 rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        Rat xi = rat(rng.range(-20, 20), rng.range(1, 7));
        Rat eta = rat(rng.range(-20, 20), rng.range(1, 7));
        Rat zeta = rat(rng.range(-20, 20), rng.range(1, 7));
        std::array<Rat, 5> q{xi * xi, 2 * xi * eta, eta * eta + 2 * xi * zeta,
                             2 * eta * zeta, zeta * zeta};
        for (auto& val : square_locus_values<Rat>(q)) CHECK(sgn(val) == 0);
    }
}
