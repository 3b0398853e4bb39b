#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strengthlab/multilinear.hpp"
#include "testutil.hpp"

using namespace strengthlab;
using testutil::Rng;

namespace {

std::vector<FieldElem> unit(const Field& k, uint32_t n, uint32_t i) {
    std::vector<FieldElem> v(n, k.zero());
    v[i] = k.one();
    return v;
}

}  // namespace

TEST_CASE("eval of the diagonal trilinear form") {
    auto F5 = make_field(Field::prime(5));
    auto P = testutil::diagonal_trilinear(F5, 2);
    const Field& k = *F5;
    CHECK(eval(P, {unit(k, 2, 0), unit(k, 2, 0), unit(k, 2, 0)}) == k.one());
    CHECK(eval(P, {unit(k, 2, 0), unit(k, 2, 1), unit(k, 2, 0)}) == k.zero());

    Rng rng(3);
    for (int it = 0; it < 20; ++it) {
        auto Q = testutil::random_form(F5, {2, 3, 2}, rng);
        auto u = testutil::random_vector(k, 2, rng);
        auto u2 = testutil::random_vector(k, 2, rng);
        auto v = testutil::random_vector(k, 3, rng);
        auto w = testutil::random_vector(k, 2, rng);
        std::vector<FieldElem> usum(2);
        for (int i = 0; i < 2; ++i) usum[i] = k.add(u[i], u2[i]);
        CHECK(eval(Q, {usum, v, w}) == k.add(eval(Q, {u, v, w}), eval(Q, {u2, v, w})));
    }
}

TEST_CASE("outer product against slotwise evaluation") {
    auto F5 = make_field(Field::prime(5));
    const Field& k = *F5;

    // eps_1 on factor {0} times eta_1 (x) zeta_1 on {1,2} is the tensor x1 y1 z1
    MultilinearForm eps(F5, {2});
    eps.set_coeff({0}, k.one());
    MultilinearForm etazeta(F5, {2, 2});
    etazeta.set_coeff({0, 0}, k.one());
    auto part = IndexPartition::from_I({0}, 3);
    auto P = outer_product(eps, etazeta, part);
    CHECK(P.coeff({0, 0, 0}) == k.one());
    for (size_t f = 1; f < P.total_size(); ++f) CHECK(P.coeffs()[f] == k.zero());

    // zero factor gives the zero form
    MultilinearForm zero2(F5, {2, 2});
    CHECK(outer_product(eps, zero2, part).is_zero());

    // eval multiplicativity on random factors, d = 4 with split {0,1} | {2,3}
    Rng rng(9);
    auto part4 = IndexPartition::from_I({0, 1}, 4);
    for (int it = 0; it < 10; ++it) {
        auto A = testutil::random_form(F5, {2, 2}, rng);
        auto B = testutil::random_form(F5, {2, 2}, rng);
        auto Q = outer_product(A, B, part4);
        auto v1 = testutil::random_vector(k, 2, rng);
        auto v2 = testutil::random_vector(k, 2, rng);
        auto v3 = testutil::random_vector(k, 2, rng);
        auto v4 = testutil::random_vector(k, 2, rng);
        CHECK(eval(Q, {v1, v2, v3, v4}) ==
              k.mul(eval(A, {v1, v2}), eval(B, {v3, v4})));
    }
}

TEST_CASE("restriction of the diagonal form") {
    auto F5 = make_field(Field::prime(5));
    const Field& k = *F5;
    auto P = testutil::diagonal_trilinear(F5, 2);

    // restrict factor 0 to span(e_0): x y_1 z_1 survives
    auto R = restrict_factor(P, 0, {unit(k, 2, 0)});
    CHECK(R.shape() == std::vector<uint32_t>{1, 2, 2});
    CHECK(R.coeff({0, 0, 0}) == k.one());
    CHECK(R.coeff({0, 1, 1}) == k.zero());

    // restriction to the full standard basis is the identity on coefficients
    auto Rfull = restrict_factor(P, 0, {unit(k, 2, 0), unit(k, 2, 1)});
    CHECK(Rfull == P);

    // dependent basis rejected
    CHECK_THROWS_AS(restrict_factor(P, 0, {unit(k, 2, 0), unit(k, 2, 0)}),
                    std::invalid_argument);

    // restricting in distinct factors commutes
    Rng rng(17);
    auto Q = testutil::random_form(F5, {3, 3, 2}, rng);
    std::vector<std::vector<FieldElem>> b0 = {testutil::random_vector(k, 3, rng),
                                              testutil::random_vector(k, 3, rng)};
    std::vector<std::vector<FieldElem>> b1 = {testutil::random_vector(k, 3, rng)};
    Mat m0(2, 3), m1(1, 3);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c) m0.at(r, c) = b0[r][c];
    for (int c = 0; c < 3; ++c) m1.at(0, c) = b1[0][c];
    REQUIRE(rank_of(k, m0) == 2);
    REQUIRE(rank_of(k, m1) == 1);
    auto AB = restrict_factor(restrict_factor(Q, 0, b0), 1, b1);
    auto BA = restrict_factor(restrict_factor(Q, 1, b1), 0, b0);
    CHECK(AB == BA);
}

TEST_CASE("tensor ideal membership") {
    auto F5 = make_field(Field::prime(5));
    const Field& k = *F5;

    MultilinearForm eps1(F5, {2});
    eps1.set_coeff({0}, k.one());
    TensorIdealGens gens;
    gens.gens.push_back({{0}, eps1});

    // x1 y1 z1 = eps_1 * (y1 z1)
    MultilinearForm P(F5, {2, 2, 2});
    P.set_coeff({0, 0, 0}, k.one());
    auto m = ideal_membership(P, gens);
    REQUIRE(m.member);
    REQUIRE(m.cofactors.size() == 1);
    CHECK(m.cofactors[0].coeff({0, 0}) == k.one());
    CHECK(outer_product(eps1, m.cofactors[0], IndexPartition::from_I({0}, 3)) == P);

    // the diagonal rank-2 form is not in the ideal of eps_1 alone
    auto D = testutil::diagonal_trilinear(F5, 2);
    CHECK_FALSE(ideal_membership(D, gens).member);

    // zero form is always a member, with zero cofactors
    MultilinearForm Z(F5, {2, 2, 2});
    auto mz = ideal_membership(Z, gens);
    CHECK(mz.member);
    CHECK(mz.cofactors[0].is_zero());

    // outer products land in the ideal of their I-side factor
    Rng rng(23);
    for (int it = 0; it < 10; ++it) {
        auto A = testutil::random_form(F5, {2, 2}, rng);
        auto B = testutil::random_form(F5, {2}, rng);
        auto part = IndexPartition::from_I({0, 2}, 3);
        auto Q = outer_product(A, B, part);
        TensorIdealGens g2;
        g2.gens.push_back({{0, 2}, A});
        auto r = ideal_membership(Q, g2);
        CHECK(r.member);
        if (r.member) CHECK(outer_product(A, r.cofactors[0], part) == Q);
    }
}

TEST_CASE("kernel of restriction cuts out exactly the vanishing forms") {
    auto F5 = make_field(Field::prime(5));
    const Field& k = *F5;

    // V' = span(e_0) in F_5^2: the annihilator is eps_2
    auto gens = kernel_of_restriction(F5, {2, 2, 2}, 0, {unit(k, 2, 0)});
    REQUIRE(gens.gens.size() == 1);
    CHECK(gens.gens[0].I == std::vector<uint32_t>{0});
    CHECK(gens.gens[0].form.coeff({0}) == k.zero());
    CHECK(gens.gens[0].form.coeff({1}) == k.one());

    // full basis: nothing vanishes
    auto gfull = kernel_of_restriction(F5, {2, 2, 2}, 0, {unit(k, 2, 0), unit(k, 2, 1)});
    CHECK(gfull.gens.empty());

    // a form vanishing on the subspace is a member; one not vanishing is not
    Rng rng(31);
    std::vector<std::vector<FieldElem>> basis = {testutil::random_vector(k, 3, rng)};
    while (basis[0] == std::vector<FieldElem>(3, k.zero()))
        basis[0] = testutil::random_vector(k, 3, rng);
    auto g3 = kernel_of_restriction(F5, {3, 2}, 0, basis);
    for (int it = 0; it < 20; ++it) {
        auto P = testutil::random_form(F5, {3, 2}, rng);
        bool vanishes = restrict_factor(P, 0, basis).is_zero();
        CHECK(ideal_membership(P, g3).member == vanishes);
    }
}
