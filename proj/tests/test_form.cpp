#include "doctest.h"
#include "folcoh/form.hpp"
#include "test_helpers.hpp"

using namespace folcoh;
using namespace folcoh::testing;

TEST_CASE("scalar parsing and canonical form") {
    CHECK(scalar_from_string("3/6") == Scalar(1, 2));
    CHECK(scalar_from_string("-4/2") == Scalar(-2));
    CHECK(scalar_to_string(scalar_from_string("-3/9")) == "-1/3");
    CHECK(scalar_to_string(Scalar(7)) == "7");
    CHECK_THROWS_AS(scalar_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_string("2x"), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_string(""), std::invalid_argument);

    // Lowest terms, positive denominator.
    Scalar s = scalar_from_string("6/-4");
    CHECK(numerator(s) == -3);
    CHECK(denominator(s) == 2);
}

TEST_CASE("form term bookkeeping") {
    Form f(2);
    f.add_term({0, 1}, Scalar(2));
    f.add_term({0, 1}, Scalar(-2));
    CHECK(f.is_zero());
    f.add_term({1, 2}, Scalar(1, 3));
    CHECK(f.coefficient({1, 2}) == Scalar(1, 3));
    CHECK(f.coefficient({0, 2}) == 0);
    CHECK_THROWS_AS(Form::monomial({2, 1}), std::invalid_argument);
}

TEST_CASE("wedge is graded-commutative and associative") {
    const int n = 5;
    for (int r = 0; r <= n; ++r)
        for (int s = 0; s + r <= n; ++s)
            for (const auto& a : all_monomials(n, r))
                for (const auto& b : all_monomials(n, s)) {
                    Form ab = wedge(a, b);
                    Form ba = wedge(b, a);
                    int sign = (r * s) % 2 == 0 ? 1 : -1;
                    CHECK(ab == ba * Scalar(sign));
                }
    // Associativity on a spot sample of triples.
    auto ones = all_monomials(n, 1);
    auto twos = all_monomials(n, 2);
    for (const auto& a : ones)
        for (const auto& b : ones)
            for (const auto& c : twos)
                CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(Form::monomial({0}), Form::monomial({0})).is_zero());
}

TEST_CASE("monomials are orthonormal") {
    const int n = 4;
    for (int r = 0; r <= n; ++r) {
        auto mons = all_monomials(n, r);
        for (std::size_t i = 0; i < mons.size(); ++i)
            for (std::size_t j = 0; j < mons.size(); ++j)
                CHECK(inner_product(mons[i], mons[j]) == Scalar(i == j ? 1 : 0));
    }
}

// Oracle for the contraction sign convention: the interior product is the
// pointwise adjoint of the exterior product, <a . b, c> = <b, a ^ c>.
// Checked exhaustively for n = 5, which pins every sign.
TEST_CASE("contraction satisfies the wedge adjunction") {
    const int n = 5;
    for (int ra = 0; ra <= n; ++ra)
        for (int rb = ra; rb <= n; ++rb)
            for (const auto& a : all_monomials(n, ra))
                for (const auto& b : all_monomials(n, rb)) {
                    Form ab = contract(a, b);
                    for (const auto& c : all_monomials(n, rb - ra))
                        CHECK(inner_product(ab, c) == inner_product(b, wedge(a, c)));
                }
}

TEST_CASE("contraction conventions, pinned values") {
    Form e1 = Form::monomial({1});
    Form e2 = Form::monomial({2});
    Form e12 = Form::monomial({1, 2});
    CHECK(contract(e2, e12) == -e1);
    CHECK(contract(e1, e12) == e2);
    CHECK(contract(Form::monomial({0}), e12).is_zero());
    // deg a > deg b contracts to zero.
    CHECK(contract(e12, e1).is_zero());
    // Contraction by a 0-form is scalar multiplication.
    CHECK(contract(Form::scalar(Scalar(3)), e12) == e12 * Scalar(3));
}

// Oracle for the Hodge star: a ^ hodge(b) = <a,b> vol characterizes the
// operator completely over an orthonormal oriented basis.
TEST_CASE("hodge satisfies its defining pairing") {
    for (int n = 1; n <= 6; ++n) {
        Form vol = Form::monomial(all_indices(n, n)[0]);
        for (int r = 0; r <= n; ++r)
            for (const auto& a : all_monomials(n, r))
                for (const auto& b : all_monomials(n, r))
                    CHECK(wedge(a, hodge(b, n)) == vol * inner_product(a, b));
    }
}

TEST_CASE("hodge involution sign") {
    for (int n = 1; n <= 6; ++n)
        for (int r = 0; r <= n; ++r)
            for (const auto& a : all_monomials(n, r)) {
                int sign = (r * (n - r)) % 2 == 0 ? 1 : -1;
                CHECK(hodge(hodge(a, n), n) == a * Scalar(sign));
            }
}

TEST_CASE("hodge anchor on the 3-sphere coframe") {
    // Generators (xi, e1, e2) in orientation order: star of the flow
    // direction is the transverse area form.
    CHECK(hodge(Form::monomial({0}), 3) == Form::monomial({1, 2}));
    CHECK(hodge(Form::scalar(Scalar(1)), 3) == Form::monomial({0, 1, 2}));
}

TEST_CASE("form rendering") {
    std::vector<std::string> names{"alpha", "beta", "gamma"};
    Form f(2);
    f.add_term({0, 1}, Scalar(-1, 2));
    f.add_term({1, 2}, Scalar(3));
    CHECK(f.to_string(names) == "-1/2 alpha^beta + 3 beta^gamma");
    CHECK(Form::zero(1).to_string(names) == "0");
    CHECK(Form::scalar(Scalar(5)).to_string(names) == "5");
}
