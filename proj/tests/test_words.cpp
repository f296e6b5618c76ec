#include <doctest.h>

#include <random>

#include "mtor/words.hpp"

using namespace mtor;

namespace {

std::vector<int> random_raw(std::mt19937& rng, int rank, int len) {
    std::uniform_int_distribution<int> gen(1, rank);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<int> raw;
    for (int i = 0; i < len; i++) {
        int g = gen(rng);
        raw.push_back(sign(rng) ? g : -g);
    }
    return raw;
}

}  // namespace

TEST_CASE("free reduction basics") {
    CHECK(reduce_word({1, -1}).empty());
    CHECK(reduce_word({1, 2, -2, -1}).empty());
    CHECK(reduce_word({2, 1, -1, 2}).letters == std::vector<int>{2, 2});
    CHECK(reduce_word({}).empty());
    CHECK_THROWS_AS(reduce_word({3}, 2), semantic_error);
    CHECK_THROWS_AS(reduce_word({0}, 2), semantic_error);
}

TEST_CASE("reduction is idempotent and concat is a homomorphism") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; trial++) {
        auto a = random_raw(rng, 3, 12);
        auto b = random_raw(rng, 3, 12);
        Word wa = reduce_word(a);
        Word wb = reduce_word(b);
        CHECK(reduce_word(wa.letters) == wa);
        std::vector<int> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK(concat(wa, wb) == reduce_word(ab));
        CHECK(concat(wa, wa.inverse()).empty());
    }
}

TEST_CASE("cyclic reduction") {
    // x1 x2 x1^-1 reduces cyclically to x2
    CHECK(cyclically_reduce(reduce_word({1, 2, -1})).letters == std::vector<int>{2});
    Word w = reduce_word({1, 2});
    CHECK(cyclically_reduce(w) == w);
}

TEST_CASE("exponent vectors") {
    Word w = reduce_word({1, 2, 1, -2, -2});
    auto v = w.exponent_vector(3);
    CHECK(v == std::vector<Int>{2, -1, 0});
}

TEST_CASE("automorphism validation and composition") {
    // x1 -> x1, x2 -> x2 x1 is triangular with unipotent abelianization
    auto a = FreeAutomorphism::make(2, {reduce_word({1}), reduce_word({2, 1})});
    CHECK(a.is_triangular());
    auto sq = compose(a, a);
    CHECK(sq.images[1].letters == std::vector<int>{2, 1, 1});
    CHECK(power(a, 3).images[1].letters == std::vector<int>{2, 1, 1, 1});
    CHECK(power(a, 0).images[0].letters == std::vector<int>{1});

    // x1 -> x1^2 fails det = +-1
    CHECK_THROWS_AS(FreeAutomorphism::make(2, {reduce_word({1, 1}), reduce_word({2})}),
                    semantic_error);

    // swap is a valid automorphism but not triangular
    auto swap = FreeAutomorphism::make(2, {reduce_word({2}), reduce_word({1})});
    int offender = 0;
    CHECK_FALSE(swap.is_triangular(&offender));
}

TEST_CASE("abelianization is multiplicative on random triangular pairs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; trial++) {
        // random triangular automorphisms compose to triangular ones
        auto make_tri = [&](int rank) {
            std::vector<Word> im;
            for (int i = 1; i <= rank; i++) {
                std::vector<int> raw = {i};
                if (i > 1) {
                    auto u = random_raw(rng, i - 1, 3);
                    raw.insert(raw.end(), u.begin(), u.end());
                }
                im.push_back(reduce_word(raw));
            }
            return FreeAutomorphism::make(rank, std::move(im));
        };
        auto a = make_tri(4);
        auto b = make_tri(4);
        CHECK(abelianization_matrix(compose(a, b)) ==
              abelianization_matrix(a) * abelianization_matrix(b));
    }
}

TEST_CASE("least unipotent power") {
    // identity: k = 1
    CHECK(least_unipotent_power(IntMatrix::identity(3)) == 1);

    // swap on F2: order 2
    IntMatrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    CHECK(least_unipotent_power(swap) == 2);

    // unipotent but not identity: k = 1
    IntMatrix u(2, 2);
    u.at(0, 0) = 1;
    u.at(1, 1) = 1;
    u.at(0, 1) = 5;
    CHECK(least_unipotent_power(u) == 1);

    // order-4 rotation composed with unipotent part
    IntMatrix rot(2, 2);
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    CHECK(least_unipotent_power(rot) == 4);

    // Anosov matrix (2 1 / 1 1): eigenvalues not roots of unity
    IntMatrix an(2, 2);
    an.at(0, 0) = 2;
    an.at(0, 1) = 1;
    an.at(1, 0) = 1;
    an.at(1, 1) = 1;
    CHECK_FALSE(least_unipotent_power(an).has_value());
}

TEST_CASE("growth degree estimate") {
    auto id = FreeAutomorphism::identity(2);
    CHECK(growth_degree_estimate(id, 8) == 0);
    // x2 -> x2 x1 grows linearly
    auto lin = FreeAutomorphism::make(2, {reduce_word({1}), reduce_word({2, 1})});
    CHECK(growth_degree_estimate(lin, 8) == 1);
    // x3 -> x3 x2, x2 -> x2 x1 grows quadratically
    auto quad = FreeAutomorphism::make(
        3, {reduce_word({1}), reduce_word({2, 1}), reduce_word({3, 2})});
    CHECK(growth_degree_estimate(quad, 10) == 2);
}

TEST_CASE("word printing") {
    std::vector<std::string> names = {"x1", "x2", "t"};
    CHECK(word_to_string(reduce_word({-3, 2, 3}), names) == "t^-1 x2 t");
    CHECK(word_to_string(Word{}, names) == "1");
}
