#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclolines/galois_ring.hpp"
#include "cyclolines/semifield.hpp"

using namespace cyclolines;

TEST_CASE("GF(4) traces match the hand oracle") {
    // tr(x) = x + x^2 on GF(4) with modulus x^2+x+1: tr(0)=0, tr(1)=0,
    // tr(w)=1, tr(w^2)=1
    FiniteField F = FiniteField::make(2, 2);
    REQUIRE(F.modulus() == std::vector<int>{1, 1, 1});
    auto oracle = [&](int x) { return F.add(x, F.mul(x, x)); };
    for (int x = 0; x < 4; ++x) CHECK(F.trace(x) == oracle(x));
    int w = F.primitive_element();
    CHECK(F.trace(0) == 0);
    CHECK(F.trace(1) == 0);
    CHECK(F.trace(w) == 1);
    CHECK(F.trace(F.mul(w, w)) == 1);
}

TEST_CASE("GF(3) trace is the identity") {
    FiniteField F = FiniteField::make(3, 1);
    for (int x = 0; x < 3; ++x) CHECK(F.trace(x) == x);
}

TEST_CASE("non-prime characteristic rejected") {
    CHECK_THROWS_AS(FiniteField::make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(FiniteField::make(1, 1), std::invalid_argument);
}

TEST_CASE("field axioms and trace linearity, exhaustive at small q") {
    for (auto [p, n] : {std::pair<int, int>{2, 3}, {3, 2}, {5, 1}, {7, 1}, {2, 4}}) {
        FiniteField F = FiniteField::make(p, n);
        const int q = static_cast<int>(F.order());
        // multiplicative group cyclic of order q-1: the stored generator
        int g = F.primitive_element();
        int acc = 1;
        std::set<int> seen;
        for (int e = 0; e < q - 1; ++e) {
            seen.insert(acc);
            acc = F.mul(acc, g);
        }
        CHECK(static_cast<int>(seen.size()) == q - 1);
        CHECK(acc == 1);
        // tr(x + y) = tr(x) + tr(y) and tr(x^p) = tr(x)
        for (int x = 0; x < q; ++x) {
            CHECK(F.trace(F.pow(x, p)) == F.trace(x));
            for (int y = 0; y < q; ++y)
                CHECK(F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % p);
        }
        // trace is surjective onto GF(p)
        std::set<int> values;
        for (int x = 0; x < q; ++x) values.insert(F.trace(x));
        CHECK(static_cast<int>(values.size()) == p);
    }
}

TEST_CASE("GR(4): the ring of integers mod 4") {
    GaloisRing R = GaloisRing::make(1);
    CHECK(R.size() == 4);
    CHECK(R.teichmuller() == std::vector<int>{0, 1});
    for (int a = 0; a < 4; ++a) CHECK(R.trace(a) == a);
    CHECK(R.add(3, 2) == 1);
    CHECK(R.mul(3, 3) == 1);
}

TEST_CASE("GR(16) with modulus x^2+x+1") {
    GaloisRing R = GaloisRing::make(2);
    CHECK(R.modulus() == std::vector<int>{1, 1, 1});
    // xi^3 = 1, against the polynomial-multiplication oracle
    int xi = R.xi();
    CHECK(R.mul(xi, R.mul(xi, xi)) == 1);
    CHECK(R.mul(xi, xi) != 1);
    CHECK(static_cast<int>(R.teichmuller().size()) == 4);
}

TEST_CASE("GR(64): Teichmuller set closed under multiplication") {
    GaloisRing R = GaloisRing::make(3);
    const auto& T = R.teichmuller();
    CHECK(static_cast<int>(T.size()) == 8);
    for (int a : T)
        for (int b : T) CHECK(R.in_teichmuller(R.mul(a, b)));
}

TEST_CASE("Galois ring structure, n = 1..4") {
    for (int n = 1; n <= 4; ++n) {
        GaloisRing R = GaloisRing::make(n);
        const auto& T = R.teichmuller();
        const int q = static_cast<int>(R.residue_order());
        REQUIRE(static_cast<int>(T.size()) == q);

        // mod-2 reduction is a ring homomorphism onto GF(2^n) and restricts
        // to a bijection T -> GF(2^n)
        FiniteField F = FiniteField::make(2, n);
        REQUIRE(F.order() == q);
        std::set<int> images;
        for (int t : T) images.insert(R.mod2(t));
        CHECK(static_cast<int>(images.size()) == q);
        for (int a = 0; a < R.size(); ++a)
            for (int b = 0; b < R.size(); ++b) {
                CHECK(R.mod2(R.add(a, b)) == F.add(R.mod2(a), R.mod2(b)));
                CHECK(R.mod2(R.mul(a, b)) == F.mul(R.mod2(a), R.mod2(b)));
            }

        // unique decomposition a = x + 2y with x, y in T
        for (int a = 0; a < R.size(); ++a) {
            auto [x, y] = R.decompose(a);
            CHECK(R.in_teichmuller(x));
            CHECK(R.in_teichmuller(y));
            CHECK(R.add(x, R.scalar_mul(2, y)) == a);
        }

        // Frobenius fixes exactly the subring generated by 1 (Z4)
        int fixed = 0;
        for (int a = 0; a < R.size(); ++a)
            if (R.frobenius(a) == a) ++fixed;
        CHECK(fixed == 4);

        // tr(x^2) = tr(x) on T
        for (int t : T) CHECK(R.trace(R.mul(t, t)) == R.trace(t));

        // trace additivity
        for (int a = 0; a < R.size(); ++a)
            for (int b = 0; b < R.size(); ++b)
                CHECK(R.trace(R.add(a, b)) == (R.trace(a) + R.trace(b)) % 4);
    }
}

TEST_CASE("teich_sqrt") {
    GaloisRing R2 = GaloisRing::make(2);
    CHECK(R2.teich_sqrt(1) == 1);
    CHECK(R2.teich_sqrt(0) == 0);
    // in GR(16): sqrt(xi) = xi^2 since xi^4 = xi; exhaustive oracle over T
    int xi = R2.xi();
    CHECK(R2.teich_sqrt(xi) == R2.mul(xi, xi));
    for (int n = 1; n <= 4; ++n) {
        GaloisRing R = GaloisRing::make(n);
        for (int t : R.teichmuller()) {
            int s = R.teich_sqrt(t);
            CHECK(R.in_teichmuller(s));
            CHECK(R.mul(s, s) == t);
            // uniqueness: exhaustive search
            int hits = 0;
            for (int u : R.teichmuller())
                if (R.mul(u, u) == t) ++hits;
            CHECK(hits == 1);
        }
    }
    CHECK_THROWS_AS(GaloisRing::make(2).teich_sqrt(2), std::invalid_argument);
}

TEST_CASE("fields are semifields") {
    Semifield E = Semifield::from_field(FiniteField::make(3, 2));
    SemifieldReport rep = semifield_verify(E);
    CHECK(rep.ok);
    CHECK(rep.commutative);
    CHECK(!E.nonassociativity_witness().has_value());

    Semifield E8 = Semifield::from_field(FiniteField::make(2, 3));
    CHECK(semifield_verify(E8).ok);
}

TEST_CASE("integers mod 4 fail the zero-divisor axiom") {
    // addition and multiplication mod 4 on {0,1,2,3}
    std::vector<int> add(16), mul(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            add[static_cast<std::size_t>(a * 4 + b)] = (a + b) % 4;
            mul[static_cast<std::size_t>(a * 4 + b)] = (a * b) % 4;
        }
    Semifield Z4 = Semifield::from_tables(2, 2, add, mul, "Z4 with mod-4 multiplication");
    SemifieldReport rep = semifield_verify(Z4);
    CHECK(!rep.ok);
    CHECK(!rep.no_zero_divisors);  // 2 o 2 = 0
}

TEST_CASE("Dickson semifield of order 81") {
    Semifield D = Semifield::dickson(9);
    CHECK(D.order() == 81);
    SemifieldReport rep = semifield_verify(D);
    CHECK(rep.ok);
    auto witness = D.nonassociativity_witness();
    REQUIRE(witness.has_value());
    auto [a, b, c] = *witness;
    CHECK(D.mul(D.mul(a, b), c) != D.mul(a, D.mul(b, c)));
}

TEST_CASE("Dickson preconditions") {
    CHECK_THROWS_AS(Semifield::dickson(4), std::invalid_argument);   // even base
    CHECK_THROWS_AS(Semifield::dickson(3), std::invalid_argument);   // no nontrivial sigma
    CHECK_THROWS_AS(Semifield::dickson(6), std::invalid_argument);   // not a prime power
    // j must be a nonsquare
    CHECK_THROWS_AS(Semifield::dickson(9, 1, 1), std::invalid_argument);
}

TEST_CASE("semifields of order p and p^2 from these constructors are fields") {
    // associativity holds whenever dim <= 2 (order p or p^2)
    for (auto [p, n] : {std::pair<int, int>{3, 1}, {5, 1}, {3, 2}, {5, 2}, {2, 2}}) {
        Semifield E = Semifield::from_field(FiniteField::make(p, n));
        CHECK(!E.nonassociativity_witness().has_value());
    }
}

TEST_CASE("affine plane automorphisms") {
    // GF(3): all 9 translations and 9 shears preserve incidence
    Semifield E3 = Semifield::from_field(FiniteField::make(3, 1));
    AffinePlaneReport rep3 = affine_plane_check(E3);
    CHECK(rep3.ok);
    CHECK(rep3.translations_ok);
    CHECK(rep3.shears_ok);

    // GF(4): the Hughes product rule holds for all pairs
    Semifield E4 = Semifield::from_field(FiniteField::make(2, 2));
    AffinePlaneReport rep4 = affine_plane_check(E4);
    CHECK(rep4.ok);
    CHECK(rep4.hughes_product_ok);

    // Dickson(9) has order 81 > the default cap
    CHECK_THROWS_AS(affine_plane_check(Semifield::dickson(9)), std::domain_error);
}

TEST_CASE("Z4 module embedding of an even-order semifield") {
    for (int n : {2, 3, 4}) {
        Semifield E = Semifield::from_field(FiniteField::make(2, n));
        Z4ModuleEmbedding M(E);
        const int q = static_cast<int>(E.order());
        for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y) {
                int hx = M.hat(x), hy = M.hat(y);
                // 2(x^ + y^) = 2 (x+y)^
                CHECK(M.scalar_mul(2, M.add(hx, hy)) == M.scalar_mul(2, M.hat(E.add(x, y))));
                // 2 x^ y^ = 2 (x o y)^
                CHECK(M.scalar_mul(2, M.mul(hx, hy)) == M.scalar_mul(2, M.hat(E.mul(x, y))));
                // (x^ + y^)^2 = ((x+y)^)^2
                CHECK(M.square(M.add(hx, hy)) == M.square(M.hat(E.add(x, y))));
            }
    }
    CHECK_THROWS_AS(Z4ModuleEmbedding(Semifield::from_field(FiniteField::make(3, 1))),
                    std::invalid_argument);
}

TEST_CASE("module multiplication matches the Galois ring for field carriers") {
    // for E = GF(2^n) the module with Teichmuller basis lifts is GR(4^n);
    // scalar products differ, but squares agree through the lift
    for (int n : {1, 2, 3}) {
        Semifield E = Semifield::from_field(FiniteField::make(2, n));
        Z4ModuleEmbedding M(E);
        const int q = static_cast<int>(E.order());
        for (int x = 0; x < q; ++x) {
            // 2 (x^)^2 = 2 (x o x)^ links the module square to the carrier
            CHECK(M.scalar_mul(2, M.square(M.hat(x))) == M.scalar_mul(2, M.hat(E.mul(x, x))));
        }
    }
}
