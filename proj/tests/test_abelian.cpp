#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cyclolines/abelian.hpp"

using namespace cyclolines;

namespace {

// independent oracle: count differences d1 - d2 directly in Z_v
bool difference_oracle(int v, const std::vector<int>& D, int lambda) {
    std::vector<int> cnt(static_cast<std::size_t>(v), 0);
    for (int a : D)
        for (int b : D)
            if (a != b) ++cnt[static_cast<std::size_t>(((a - b) % v + v) % v)];
    for (int g = 1; g < v; ++g)
        if (cnt[static_cast<std::size_t>(g)] != lambda) return false;
    return true;
}

}  // namespace

TEST_CASE("difference sets in Z7") {
    ProductGroup z7 = ProductGroup::cyclic(7);
    // {1,2,4}: every nonzero residue appears once as a difference
    REQUIRE(difference_oracle(7, {1, 2, 4}, 1));
    CHECK(is_difference_set(z7, {1, 2, 4}, 7, 3, 1).ok);

    // {1,2,3}: difference 1 occurs twice
    REQUIRE(!difference_oracle(7, {1, 2, 3}, 1));
    DifferenceSetCheck bad = is_difference_set(z7, {1, 2, 3}, 7, 3, 1);
    CHECK(!bad.ok);
    CHECK(bad.witness.has_value());

    // singleton: D D^-1 = 1_G
    CHECK(is_difference_set(z7, {3}, 7, 1, 0).ok);
}

TEST_CASE("relative difference sets") {
    // Z4, N = {0,2}, D = {0,1}: exhaustive oracle gives DD^-1 = 2*0 + 1 + 3
    ProductGroup z4 = ProductGroup::cyclic(4);
    RelativeDifferenceSetCheck rds = is_relative_difference_set(z4, {0, 2}, {0, 1});
    CHECK(rds.ok);
    CHECK(rds.m == 2);
    CHECK(rds.n == 2);
    CHECK(rds.k == 2);
    CHECK(rds.lambda == 1);
    CHECK(rds.semiregular);

    // a set with repeated differences inside N fails
    RelativeDifferenceSetCheck bad = is_relative_difference_set(z4, {0, 2}, {0, 2});
    CHECK(!bad.ok);

    // N must be a subgroup
    CHECK(!is_relative_difference_set(z4, {0, 1}, {0, 1}).ok);
}

TEST_CASE("Hughes group of GF(3): the canonical (q,q,q,1) set") {
    HughesGroup H(Semifield::from_field(FiniteField::make(3, 1)));
    CHECK(H.order() == 9);
    RelativeDifferenceSetCheck rds =
        is_relative_difference_set(H, H.forbidden_subgroup(), H.h0());
    CHECK(rds.ok);
    CHECK(rds.m == 3);
    CHECK(rds.n == 3);
    CHECK(rds.k == 3);
    CHECK(rds.lambda == 1);
    CHECK(rds.semiregular);
}

TEST_CASE("group axioms verified exhaustively up to the cap") {
    verify_group_axioms(ProductGroup({2, 4}));
    verify_group_axioms(ProductGroup::cyclic(13));
    verify_group_axioms(HughesGroup(Semifield::from_field(FiniteField::make(3, 1))));
    verify_group_axioms(HughesGroup(Semifield::from_field(FiniteField::make(2, 2))));
    // generator-based associativity beyond the cap
    verify_group_axioms(HughesGroup(Semifield::from_field(FiniteField::make(3, 2))));
    verify_group_axioms(ProductGroup({3, 7, 7}));
}

TEST_CASE("Hughes (q,q,q,1) across semifields") {
    std::vector<Semifield> fields;
    fields.push_back(Semifield::from_field(FiniteField::make(2, 2)));
    fields.push_back(Semifield::from_field(FiniteField::make(5, 1)));
    fields.push_back(Semifield::from_field(FiniteField::make(2, 3)));
    fields.push_back(Semifield::from_field(FiniteField::make(3, 2)));
    for (const Semifield& E : fields) {
        HughesGroup H(E);
        RelativeDifferenceSetCheck rds =
            is_relative_difference_set(H, H.forbidden_subgroup(), H.h0());
        CHECK(rds.ok);
        CHECK(rds.lambda == 1);
        CHECK(rds.k == E.order());
        CHECK(rds.semiregular);
    }
}

TEST_CASE("Singer difference sets") {
    for (std::int64_t q : {2, 3, 4, 5}) {
        SingerSet s = singer_difference_set(q);
        CHECK(s.v == q * q + q + 1);
        CHECK(static_cast<std::int64_t>(s.D.size()) == q + 1);
        CHECK(difference_oracle(static_cast<int>(s.v), s.D, 1));
    }
    CHECK_THROWS_AS(singer_difference_set(6), std::invalid_argument);
}

TEST_CASE("brute force difference set search") {
    // lexicographically first (7,3,1) set
    auto d = brute_force_difference_set(7, 3, 1);
    REQUIRE(d.has_value());
    CHECK(*d == std::vector<int>{0, 1, 3});

    CHECK(!brute_force_difference_set(8, 3, 1).has_value());

    // D = G always works with lambda = v
    auto full = brute_force_difference_set(5, 5, 5);
    REQUIRE(full.has_value());
    CHECK(*full == std::vector<int>{0, 1, 2, 3, 4});

    CHECK_THROWS_AS(brute_force_difference_set(41, 5, 1), std::invalid_argument);

    // brute-force output certifies against the group-ring check
    ProductGroup z7 = ProductGroup::cyclic(7);
    CHECK(is_difference_set(z7, *d, 7, 3, 1).ok);
}

TEST_CASE("characters of product groups") {
    ProductGroup G({2, 4});
    std::vector<Character> chars = characters_of(G);
    CHECK(chars.size() == 8);
    CHECK(chars[0].is_trivial());

    // orthogonality: sum_g chi_a(g) conj(chi_b(g)) = |G| [a = b]
    for (const Character& a : chars)
        for (const Character& b : chars) {
            Cyclotomic acc(0);
            for (int g = 0; g < G.order(); ++g)
                acc += a.value(g) * b.value(g).conjugate();
            CHECK(acc == (a.label == b.label ? Cyclotomic(8) : Cyclotomic(0)));
        }
}

TEST_CASE("characters of Hughes groups are multiplicative and distinct") {
    // odd: the explicit phi_ab over GF(3); the 9 characters satisfy
    // phi(H_{x,y}) phi(H_{w,z}) = phi(H_{x+w, y+z+x o w}) exhaustively
    HughesGroup H3(Semifield::from_field(FiniteField::make(3, 1)));
    std::vector<Character> chars3 = characters_of(H3);
    CHECK(chars3.size() == 9);
    for (const Character& chi : chars3)
        for (int g = 0; g < 9; ++g)
            for (int h = 0; h < 9; ++h)
                CHECK(chi.value(H3.op(g, h)) == chi.value(g) * chi.value(h));

    // even: characters through the Z4 module over GF(4)
    HughesGroup H4(Semifield::from_field(FiniteField::make(2, 2)));
    std::vector<Character> chars4 = characters_of(H4);
    CHECK(chars4.size() == 16);
    for (const Character& chi : chars4)
        for (int g = 0; g < 16; ++g)
            for (int h = 0; h < 16; ++h)
                CHECK(chi.value(H4.op(g, h)) == chi.value(g) * chi.value(h));

    // phi_{0,0} is trivial
    CHECK(chars3[0].is_trivial());
    CHECK(chars4[0].is_trivial());
}

TEST_CASE("even Hughes characters through a Dickson-like custom basis order") {
    // GF(8) gives 64 characters valued in powers of i
    HughesGroup H8(Semifield::from_field(FiniteField::make(2, 3)));
    std::vector<Character> chars = characters_of(H8);
    CHECK(chars.size() == 64);
}

TEST_CASE("character sums over subsets") {
    ProductGroup z7 = ProductGroup::cyclic(7);
    std::vector<Character> chars = characters_of(z7);
    std::vector<int> D{1, 2, 4};

    // trivial character counts the subset
    CHECK(chars[0].sum_over(D) == Cyclotomic(3));

    // nontrivial character over the full group vanishes
    std::vector<int> full{0, 1, 2, 3, 4, 5, 6};
    CHECK(chars[1].sum_over(full) == Cyclotomic(0));

    // |chi(D)|^2 = k - 1 = 2 for every nontrivial character of a (7,3,1) set
    for (int label = 1; label < 7; ++label)
        CHECK(chars[static_cast<std::size_t>(label)].sum_over(D).abs_squared() == Cyclotomic(2));
    CHECK(chars[0].sum_over(D).abs_squared() == Cyclotomic(9));
}

TEST_CASE("character-sum trichotomy for semiregular sets") {
    // |chi(D)|^2 is k^2, 0, or k according to chi trivial / in the
    // annihilator of N / outside it
    HughesGroup H(Semifield::from_field(FiniteField::make(3, 1)));
    std::vector<int> N = H.forbidden_subgroup();
    std::vector<int> D = H.h0();
    std::vector<int> ann_labels = annihilator_labels(H, N);
    std::set<int> ann(ann_labels.begin(), ann_labels.end());
    for (int label = 0; label < H.order(); ++label) {
        Character chi{&H, label};
        Cyclotomic a2 = chi.sum_over(D).abs_squared();
        if (chi.is_trivial())
            CHECK(a2 == Cyclotomic(9));
        else if (ann.count(label))
            CHECK(a2 == Cyclotomic(0));
        else
            CHECK(a2 == Cyclotomic(3));
    }
}

TEST_CASE("restriction classes partition the dual") {
    HughesGroup H(Semifield::from_field(FiniteField::make(2, 2)));
    std::vector<int> N = H.forbidden_subgroup();
    auto classes = labels_by_restriction(H, N);
    CHECK(classes.size() == 4);
    std::set<int> all;
    for (const auto& cls : classes) {
        CHECK(cls.size() == 4);
        all.insert(cls.begin(), cls.end());
    }
    CHECK(all.size() == 16);
    // the first class is the annihilator itself (contains the trivial label)
    CHECK(classes[0].front() == 0);
    auto ann = annihilator_labels(H, N);
    CHECK(classes[0] == ann);
}

TEST_CASE("group ring identities") {
    ProductGroup z6 = ProductGroup::cyclic(6);
    GroupRingElement a = GroupRingElement::from_subset(z6, {0, 1, 3});
    GroupRingElement b = a.inverted();
    CHECK(b.coeff(0) == 1);
    CHECK(b.coeff(5) == 1);
    CHECK(b.coeff(3) == 1);
    // convolution degree count: (sum of coefficients) multiplies
    GroupRingElement p = a * b;
    std::int64_t total = 0;
    for (int g = 0; g < 6; ++g) total += p.coeff(g);
    CHECK(total == 9);
}

TEST_CASE("generator-based multiplicativity matches the full check") {
    // ProductGroup of order > 128 exercises the generator path
    ProductGroup big({3, 7, 7});
    std::vector<Character> chars = characters_of(big);
    CHECK(chars.size() == 147);
    // spot check full multiplicativity on a few labels
    for (int label : {1, 17, 146})
        for (int g = 0; g < 147; g += 7)
            for (int h = 0; h < 147; h += 5) {
                Character chi{&big, label};
                CHECK(chi.value(big.op(g, h)) == chi.value(g) * chi.value(h));
            }
}
