#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "quadcode/gf.hpp"

using namespace quadcode;

namespace {

// Encoding of a0 + a1 x.
Element enc(int a0, int a1, int p) { return static_cast<Element>(a0 + a1 * p); }

}  // namespace

TEST_CASE("construction") {
    CHECK(make_field(2, 1)->order() == 2);
    auto f9 = make_field(3, 2);
    CHECK(f9->order() == 9);
    CHECK(f9->reduction_polynomial() == std::vector<int>{1, 0, 1});
    CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_field_of_order(6), std::invalid_argument);
    CHECK_THROWS_AS(make_field_of_order(512), std::invalid_argument);
    CHECK_THROWS_AS(make_field_of_order(32), std::invalid_argument);  // degree 5
    CHECK(make_field_of_order(81)->order() == 81);
    CHECK(make_field_of_order(251)->order() == 251);
}

TEST_CASE("fixed reduction polynomials") {
    // low degree first, monic
    CHECK(make_field(2, 2)->reduction_polynomial() == std::vector<int>{1, 1, 1});
    CHECK(make_field(2, 3)->reduction_polynomial() == std::vector<int>{1, 1, 0, 1});
    CHECK(make_field(3, 2)->reduction_polynomial() == std::vector<int>{1, 0, 1});
    CHECK(make_field(2, 4)->reduction_polynomial() == std::vector<int>{1, 1, 0, 0, 1});
    CHECK(make_field(5, 2)->reduction_polynomial() == std::vector<int>{2, 0, 1});
    CHECK(make_field(3, 3)->reduction_polynomial() == std::vector<int>{1, 2, 0, 1});
    for (int q : {4, 8, 9, 16, 25, 27, 49, 81, 121, 125, 169}) {
        auto f = make_field_of_order(q);
        CHECK(is_irreducible(f->reduction_polynomial(), f->characteristic()));
    }
}

TEST_CASE("worked products and inverses") {
    auto f4 = make_field(2, 2);
    const Element x = enc(0, 1, 2);
    CHECK(f4->mul(x, x) == enc(1, 1, 2));
    CHECK(f4->inv(x) == enc(1, 1, 2));

    auto f9 = make_field(3, 2);
    const Element y = enc(0, 1, 3);
    CHECK(f9->mul(y, y) == 2);

    auto f5 = make_field(5, 1);
    CHECK(f5->inv(2) == 3);
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        auto f = make_field_of_order(q);
        CHECK(f->inv(1) == 1);
        CHECK_THROWS_AS(f->inv(0), std::domain_error);
        for (int a = 0; a < q; ++a) CHECK(f->mul(static_cast<Element>(a), 1) == a);
    }
}

TEST_CASE("field axioms exhaustively for q <= 27") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27}) {
        CAPTURE(q);
        auto f = make_field_of_order(q);
        bool ok = true;
        for (int a = 0; a < q && ok; ++a) {
            const Element A = static_cast<Element>(a);
            ok = ok && f->add(A, 0) == A && f->add(A, f->neg(A)) == 0;
            if (a) ok = ok && f->mul(A, f->inv(A)) == 1 && f->pow(A, q - 1) == 1;
            for (int b = 0; b < q && ok; ++b) {
                const Element B = static_cast<Element>(b);
                ok = ok && f->add(A, B) == f->add(B, A) && f->mul(A, B) == f->mul(B, A);
                ok = ok && f->sub(f->add(A, B), B) == A;
                if (b) ok = ok && f->mul(f->div(A, B), B) == A;
                for (int c = 0; c < q && ok; ++c) {
                    const Element C = static_cast<Element>(c);
                    ok = ok && f->add(f->add(A, B), C) == f->add(A, f->add(B, C));
                    ok = ok && f->mul(f->mul(A, B), C) == f->mul(A, f->mul(B, C));
                    ok = ok && f->mul(A, f->add(B, C)) == f->add(f->mul(A, B), f->mul(A, C));
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("Frobenius and discrete logs") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81, 251}) {
        CAPTURE(q);
        auto f = make_field_of_order(q);
        const int p = f->characteristic();
        bool frob = true;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                const Element A = static_cast<Element>(a), B = static_cast<Element>(b);
                frob = frob && f->pow(f->add(A, B), p) == f->add(f->pow(A, p), f->pow(B, p));
            }
        CHECK(frob);
        std::vector<bool> seen(q, false);
        for (int k = 0; k < q - 1; ++k) {
            const Element e = f->exp(k);
            CHECK(e != 0);
            CHECK_FALSE(seen[e]);
            seen[e] = true;
            CHECK(f->log(e) == k);
        }
        for (int a = 1; a < q; ++a) CHECK(f->exp(f->log(static_cast<Element>(a))) == a);
    }
}

TEST_CASE("square roots in characteristic 2") {
    for (int q : {2, 4, 8, 16}) {
        auto f = make_field_of_order(q);
        for (int a = 0; a < q; ++a) {
            const Element r = f->sqrt_char2(static_cast<Element>(a));
            CHECK(f->mul(r, r) == a);
        }
    }
    CHECK_THROWS(make_field_of_order(3)->sqrt_char2(1));
}
