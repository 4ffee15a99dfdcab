#include "doctest.h"

#include "tconic/quartic13.hpp"
#include "tconic/data_io.hpp"

using namespace tconic;
using namespace tconic::quartic13;

TEST_CASE("build: the two quartic expressions agree and the real node is singular") {
    auto S = build(QuarticSpec::diagonal_half());   // throws if 4F != Q^2 - E1E2E3E4
    std::vector<Rat> P{Rat(0), Rat(0), Rat(0), Rat(1)};
    CHECK(sgn(S.F.eval(P)) == 0);
    for (size_t v = 0; v < 4; ++v) CHECK(sgn(S.F.partial(v).eval(P)) == 0);
    CHECK(S.F.total_degree() == 4);
    CHECK(S.F.is_homogeneous());

    // a couple of random specs: identity still holds, node still singular
    SplitMix64 rng(71);
    for (int trial = 0; trial < 5; ++trial) {
        QuarticSpec spec;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) spec.a[size_t(i)][size_t(j)] = rat(rng.range(-2, 2), rng.range(2, 5));
        auto T = build(spec);
        CHECK(sgn(T.F.eval(P)) == 0);
        for (size_t v = 0; v < 4; ++v) CHECK(sgn(T.F.partial(v).eval(P)) == 0);
    }
}

TEST_CASE("build accepts the degenerate zero spec but validate rejects it") {
    QuarticSpec zero;
    auto S = build(zero);
    CHECK(S.F.is_homogeneous());
    auto rep = validate(zero);
    CHECK(!rep.independent);
    CHECK(!rep.ok());
}

TEST_CASE("validate: diagonal spec passes all checks") {
    auto rep = validate(QuarticSpec::diagonal_half());
    CHECK(rep.independent);
    CHECK(rep.full_rank);
    CHECK(rep.conic_smooth[0]);
    CHECK(rep.conic_smooth[1]);
    CHECK(rep.conic_smooth[2]);
    CHECK(rep.twelve_points);
    CHECK(rep.positive_definite[0]);
    CHECK(rep.positive_definite[1]);
    CHECK(rep.positive_definite[2]);
    CHECK(rep.ok());
    CHECK(rep.failures.empty());
}

TEST_CASE("validate: repeated column fails independence") {
    QuarticSpec s = QuarticSpec::diagonal_half();
    for (int i = 0; i < 3; ++i) s.a[size_t(i)][1] = s.a[size_t(i)][0];   // L1 = L0
    auto rep = validate(s);
    CHECK(!rep.independent);
    CHECK(!rep.ok());
}

TEST_CASE("validate: L0 = x0 makes the first conic rank-deficient") {
    QuarticSpec s = QuarticSpec::diagonal_half();
    s.a[0][0] = Rat(1);
    auto rep = validate(s);
    CHECK(!rep.conic_smooth[0]);
    CHECK(!rep.ok());
}

TEST_CASE("nodes: diagonal spec has 1 + 6x2 = 13 ordinary nodes") {
    auto S = build(QuarticSpec::diagonal_half());
    auto N = nodes(S);   // internal identities verified during construction
    CHECK(N.count() == 13);
    CHECK(N.conjugate_pairs.size() == 6);
    // Hessian rank 3 at the real node (ordinary double point)
    CHECK(hessian_rank_at(S.F, N.real_node) == 3);
    // each line's restricted quadric has two distinct roots (checked in
    // construction); the discriminant is negative for a conjugate pair
    for (const auto& nl : N.conjugate_pairs) {
        const auto& q = nl.restricted_Q.coeffs;
        Rat disc = q[1] * q[1] - 4 * q[0] * q[2];
        CHECK(sgn(disc) < 0);
    }
}

TEST_CASE("branch sextic: degree six, tangent exceptional conic, distinct contacts") {
    auto S = build(QuarticSpec::diagonal_half());
    auto B = branch_sextic(S);   // projection-discriminant identity checked inside
    CHECK(B.sextic.total_degree() == 6);
    CHECK(B.sextic.is_homogeneous());
    CHECK(B.contact_witness.deg == 6);
    CHECK(!B.contact_witness.is_zero_form());
    CHECK(B.witness_squarefree);
    // the sextic is a product of three smooth conics: determinant product
    // nonzero (equivalently each factor smooth, already in validate)
    auto rep = validate(QuarticSpec::diagonal_half());
    CHECK((rep.conic_smooth[0] && rep.conic_smooth[1] && rep.conic_smooth[2]));
}

TEST_CASE("qspec file round trip") {
    auto vals = load_rationals_file(std::string(TCONIC_DATA_DIR) + "/diagonal-half.qspec");
    REQUIRE(vals.size() == 9);
    auto spec = QuarticSpec::from_values(vals);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(spec.a[size_t(i)][size_t(j)] == (i == j ? rat(1, 2) : Rat(0)));
    CHECK_THROWS(QuarticSpec::from_values(std::vector<Rat>(8, Rat(1))));
}
