#include <catch2/catch_amalgamated.hpp>

#include <grsat/free_module.hpp>
#include <grsat/parser.hpp>

#include "support/gen.hpp"

using namespace grsat;

TEST_CASE("scalar arithmetic stays canonical") {
    Rat a(1, 3), b(2, 5);
    CHECK(to_string(a + b) == "11/15");
    CHECK(to_string(Rat(2, 4)) == "1/2");
    CHECK(to_string(Rat(-3, -6)) == "1/2");
    CHECK((a / a).is_one());

    GFp x(7, 5), y(11, 5);
    CHECK(x.residue() == 2);
    CHECK((x * y).residue() == 2); // 7*11 = 77 = 2 mod 5
    CHECK((x * x.inv()).is_one());
    CHECK((GFp() + x) == x);
    CHECK_THROWS(GFp(1, 5) + GFp(1, 7));
}

TEST_CASE("parse basic polynomials") {
    Ctx<Rat> ctx(BaseRing::rationals(), 1);
    auto z = parse_poly(ctx, "0");
    CHECK(z.is_zero());
    CHECK(print_poly(ctx, z) == "0");

    auto x0 = parse_poly(ctx, "x0");
    CHECK(x0.xdeg() == 1);
    CHECK(x0.num_terms() == 1);
    CHECK(print_poly(ctx, x0) == "x0");

    auto p = parse_poly(ctx, "(x0 + 1)^2 - 2*x0 - 1");
    CHECK(p == parse_poly(ctx, "x0^2"));

    auto q = parse_poly(ctx, "1/2*x0*x1 - x1^2");
    CHECK(q.xdeg() == 2);
    CHECK(print_poly(ctx, q) == "1/2*x0*x1 - x1^2");
}

TEST_CASE("parser reports positions and inhomogeneity") {
    Ctx<Rat> ctx(BaseRing::rationals(), 2);
    CHECK_THROWS_AS(parse_poly(ctx, "x0 + @"), ParseError);
    try {
        parse_poly(ctx, "x0 + (");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.pos >= 5);
    }
    CHECK_THROWS_WITH(parse_poly(ctx, "x0 + x1*x2"),
                      Catch::Matchers::ContainsSubstring("degrees 2 and 1"));
    CHECK_THROWS_AS(parse_poly(ctx, "zz"), ParseError);
}

TEST_CASE("parse over prime field and polynomial base") {
    Ctx<GFp> ctx(BaseRing::prime_field(7), 1);
    auto p = parse_poly(ctx, "10*x0 - x1");
    CHECK(print_poly(ctx, p) == "3*x0 + 6*x1");
    auto inv = parse_poly(ctx, "1/3"); // 3^{-1} = 5 mod 7
    CHECK(inv.unit_value().residue() == 5);

    Ctx<Rat> cy(BaseRing::poly_over_rationals({"y1", "y2"}), 1);
    auto q = parse_poly(cy, "x0*y1 - x1*y2^2");
    CHECK(q.xdeg() == 1);
    CHECK(print_poly(cy, q) == "x0*y1 - x1*y2^2");
}

TEMPLATE_TEST_CASE_SIG("print/parse round trip on random polynomials",
                       "[property]",
                       ((typename K, int KIND), K, KIND),
                       (Rat, 0), (GFp, 1), (Rat, 2), (GFp, 3)) {
    BaseRing base;
    switch (KIND) {
        case 0: base = BaseRing::rationals(); break;
        case 1: base = BaseRing::prime_field(32003); break;
        case 2: base = BaseRing::poly_over_rationals({"y1", "y2"}); break;
        case 3: base = BaseRing::poly_over_prime_field(101, {"y1"}); break;
    }
    std::mt19937_64 rng(42 + KIND);
    Ctx<K> ctx(base, 2);
    for (int i = 0; i < 1000; ++i) {
        auto p = testgen::random_poly(rng, ctx, (int)(rng() % 5));
        auto printed = print_poly(ctx, p);
        auto back = parse_poly(ctx, printed);
        REQUIRE(back == p);
    }
}

TEST_CASE("monomial basis enumeration") {
    Ctx<Rat> c2(BaseRing::rationals(), 2);
    CHECK(monomial_basis(c2, 2).size() == 6);
    Ctx<Rat> c1(BaseRing::rationals(), 1);
    auto b0 = monomial_basis(c1, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].is_one());
    Ctx<Rat> c3(BaseRing::rationals(), 3);
    CHECK(monomial_basis(c3, 3).size() == 20);
    CHECK(monomial_basis(c3, -1).empty());

    for (int n = 0; n <= 4; ++n) {
        Ctx<Rat> c(BaseRing::rationals(), n);
        for (int d = 0; d <= 8; ++d) {
            auto mb = monomial_basis(c, d);
            REQUIRE((long long)mb.size() == binomial(n + d, n));
            // strictly descending in the context order
            for (size_t i = 1; i < mb.size(); ++i)
                REQUIRE(c.order().cmp(mb[i - 1], mb[i]) > 0);
        }
    }
}

TEST_CASE("monomial basis order matches the paper's display for n=1") {
    // degree 2 over B[x0,x1] should list x0^2, x0*x1, x1^2
    Ctx<Rat> ctx(BaseRing::rationals(), 1);
    auto mb = monomial_basis(ctx, 2);
    REQUIRE(mb.size() == 3);
    CHECK(mb[0].e == std::vector<int32_t>{2, 0});
    CHECK(mb[1].e == std::vector<int32_t>{1, 1});
    CHECK(mb[2].e == std::vector<int32_t>{0, 2});
}

TEST_CASE("graded matrix degree checking") {
    Ctx<Rat> ctx(BaseRing::rationals(), 1);
    // m = (x0 x1): S(-1)^2 -> S
    auto m = parse_matrix(ctx, FreeModule::standard(1), FreeModule::standard(2, 1),
                          {{"x0", "x1"}});
    CHECK(m.rows() == 1);
    CHECK(m.cols() == 2);
    // wrong degree rejected
    CHECK_THROWS(parse_matrix(ctx, FreeModule::standard(1), FreeModule::standard(2, 1),
                              {{"x0^2", "x1"}}));

    auto id = GradedMatrix<Rat>::identity(ctx, m.source());
    auto m_id = compose(m, id);
    CHECK(m_id.at(0, 0) == m.at(0, 0));
    CHECK(m_id.at(0, 1) == m.at(0, 1));

    auto zero = GradedMatrix<Rat>::zero(ctx, FreeModule::standard(1, 5), FreeModule::standard(1));
    CHECK_THROWS(compose(m, zero)); // shape mismatch

    // Koszul relation (x0 x1) o (x1, -x0)^T = 0
    auto k = parse_matrix(ctx, FreeModule::standard(2, 1), FreeModule::standard(1, 2),
                          {{"x1"}, {"-x0"}});
    CHECK(compose(m, k).is_zero());
}

TEST_CASE("random degree corruption is rejected") {
    std::mt19937_64 rng(7);
    Ctx<Rat> ctx(BaseRing::rationals(), 2);
    for (int i = 0; i < 100; ++i) {
        FreeModule tgt = FreeModule::graded({0, 1});
        FreeModule src = FreeModule::graded({2, 2, 3});
        std::vector<std::vector<Poly<Rat>>> e(2, std::vector<Poly<Rat>>(3));
        for (size_t r = 0; r < 2; ++r)
            for (size_t c = 0; c < 3; ++c)
                e[r][c] = testgen::random_poly(rng, ctx, src.deg(c) - tgt.deg(r));
        GradedMatrix<Rat> ok(ctx, tgt, src, e); // fine
        // corrupt one entry's degree
        size_t r = rng() % 2, c = rng() % 3;
        e[r][c] = testgen::random_nonzero_poly(rng, ctx, src.deg(c) - tgt.deg(r) + 1);
        CHECK_THROWS(GradedMatrix<Rat>(ctx, tgt, src, e));
    }
}
