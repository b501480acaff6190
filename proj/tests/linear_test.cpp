#include "pcalc/linear.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "pcalc/closure.hpp"

using namespace pcalc;

namespace {

RationalMatrix lit(const std::string& text) { return parse_matrix(text); }

const char* kMagicSquare =
    "n 3 3\n"
    " 2 -1  0\n"
    "-1  0  2\n"
    " 0  2 -1\n";

const char* kRotation =
    "n 2 2\n"
    "3/5 -4/5\n"
    "4/5 3/5\n";

std::vector<Partition> all_up_to(int max_points) {
    std::vector<Partition> out;
    for (int k = 0; k <= max_points; ++k)
        for (int l = 0; k + l <= max_points; ++l)
            for (auto& p : enumerate_partitions(Pred::All, k, l)) out.push_back(std::move(p));
    return out;
}

std::vector<RationalMatrix> permutation_matrices(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<RationalMatrix> out;
    do {
        RationalMatrix m(n, n);
        for (int j = 0; j < n; ++j) m.at(perm[j], j) = 1;
        out.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

RationalMatrix random_matrix(std::mt19937& gen, int n) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Rational(num(gen)) / Rational(den(gen));
    return m;
}

}  // namespace

TEST(Matrix, ParseAndPrintRoundTrip) {
    RationalMatrix m = lit(kRotation);
    EXPECT_EQ(m.rows, 2);
    EXPECT_EQ(m.at(0, 1), Rational(-4) / 5);
    EXPECT_EQ(parse_matrix(to_text(m)), m);

    RationalMatrix w = lit(kMagicSquare);
    EXPECT_EQ(w.at(0, 0), 2);
    EXPECT_EQ(parse_matrix(to_text(w)), w);
}

TEST(Matrix, ParseErrors) {
    EXPECT_THROW(parse_matrix("m 2 2\n1 0 0 1"), SyntaxError);
    EXPECT_THROW(parse_matrix("n 2\n1 0 0 1"), SyntaxError);
    EXPECT_THROW(parse_matrix("n 2 2\n1 0 0"), SyntaxError);
    EXPECT_THROW(parse_matrix("n 2 2\n1 0 0 1 5"), SyntaxError);
    EXPECT_THROW(parse_matrix("n 2 2\n1 0 0 1/0"), SyntaxError);
    EXPECT_THROW(parse_matrix("n 2 2\n1 0 0 x"), SyntaxError);
    EXPECT_THROW(parse_matrix("n 0 2\n"), SyntaxError);
    try {
        parse_matrix("n 2 2\n1 0 0 bad");
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.position, 12u);
    }
}

TEST(Matrix, Arithmetic) {
    RationalMatrix u = lit(kRotation);
    EXPECT_EQ(matmul(u, transpose(u)), identity_matrix(2));
    EXPECT_THROW(matmul(u, identity_matrix(3)), ShapeError);
    EXPECT_THROW(identity_matrix(0), RangeError);
}

TEST(Relation, MagicSquareModelSplitsSingletonsFromPairs) {
    RationalMatrix w = lit(kMagicSquare);
    EXPECT_TRUE(check_relation(up1(), w).holds);
    EXPECT_TRUE(check_relation(down1(), w).holds);

    CheckOutcome c = check_relation(pair(), w);
    ASSERT_FALSE(c.holds);
    EXPECT_TRUE(c.alpha.empty());
    EXPECT_EQ(c.beta, (std::vector<int>{1, 1}));
    EXPECT_EQ(c.lhs, 1);
    EXPECT_EQ(c.rhs, 5);

    c = check_relation(copair(), w);
    ASSERT_FALSE(c.holds);
    EXPECT_EQ(c.alpha, (std::vector<int>{1, 1}));
    EXPECT_TRUE(c.beta.empty());
    EXPECT_EQ(c.lhs, 5);
    EXPECT_EQ(c.rhs, 1);
}

TEST(Relation, RotationModelSplitsPairsFromSingletons) {
    RationalMatrix u = lit(kRotation);
    EXPECT_TRUE(check_relation(pair(), u).holds);
    EXPECT_TRUE(check_relation(copair(), u).holds);

    CheckOutcome c = check_relation(up1(), u);
    ASSERT_FALSE(c.holds);
    EXPECT_TRUE(c.alpha.empty());
    EXPECT_EQ(c.beta, (std::vector<int>{1}));
    EXPECT_EQ(c.lhs, 1);
    EXPECT_EQ(c.rhs, Rational(-1) / 5);
}

TEST(Relation, IdentityPartitionsHoldForAnyMatrix) {
    std::mt19937 gen(7);
    std::vector<RationalMatrix> ms = {lit(kMagicSquare), lit(kRotation), random_matrix(gen, 3)};
    for (const auto& m : ms)
        for (int s = 0; s <= 3; ++s) EXPECT_TRUE(check_relation(identity(s), m).holds);
}

TEST(Relation, PermutationMatricesSatisfyEverySmallPartition) {
    for (const auto& u : permutation_matrices(3))
        for (const auto& p : all_up_to(4)) EXPECT_TRUE(check_relation(p, u).holds);
}

TEST(Relation, TwoCheckersAgreeIncludingFirstCounterexample) {
    std::mt19937 gen(20240817);
    std::vector<RationalMatrix> ms = {lit(kMagicSquare), lit(kRotation)};
    for (int i = 0; i < 6; ++i) ms.push_back(random_matrix(gen, 2));
    for (int i = 0; i < 4; ++i) ms.push_back(random_matrix(gen, 3));

    const std::vector<Partition> ps = all_up_to(4);
    for (const auto& u : ms)
        for (const auto& p : ps) {
            CheckOutcome a = check_relation(p, u);
            CheckOutcome b = check_intertwiner(p, u);
            ASSERT_EQ(a.holds, b.holds) << p.to_text();
            if (!a.holds) {
                EXPECT_EQ(a.alpha, b.alpha);
                EXPECT_EQ(a.beta, b.beta);
                EXPECT_EQ(a.lhs, b.lhs);
                EXPECT_EQ(a.rhs, b.rhs);
            }
        }
}

TEST(TensorMap, ExplicitSmallMaps) {
    SparseTensorMap t = t_map(pair(), 2);
    EXPECT_EQ(t.entries, (decltype(t.entries){{0, 0}, {3, 0}}));
    t = t_map(up1(), 2);
    EXPECT_EQ(t.entries, (decltype(t.entries){{0, 0}, {1, 0}}));
    t = t_map(identity(1), 3);
    EXPECT_EQ(t.entries, (decltype(t.entries){{0, 0}, {1, 1}, {2, 2}}));
    t = t_map(Partition(), 5);
    EXPECT_EQ(t.entries, (decltype(t.entries){{0, 0}}));

    for (const auto& p : all_up_to(4)) {
        std::uint64_t expect = 1;
        for (std::size_t i = 0; i < p.blocks().size(); ++i) expect *= 3;
        EXPECT_EQ(t_map(p, 3).entries.size(), expect);
    }
}

TEST(TensorMap, KroneckerMatchesTensor) {
    const std::vector<Partition> ps = all_up_to(3);
    for (const auto& p : ps)
        for (const auto& q : ps)
            ASSERT_EQ(kron(t_map(p, 2), t_map(q, 2)), t_map(tensor(p, q), 2))
                << p.to_text() << " x " << q.to_text();
    EXPECT_EQ(kron(t_map(b(3), 3), t_map(crossline(), 3)),
              t_map(tensor(b(3), crossline()), 3));
}

TEST(TensorMap, TransposeMatchesInvolution) {
    for (const auto& p : all_up_to(3)) {
        EXPECT_EQ(transpose_map(t_map(p, 2)), t_map(involute(p), 2));
        EXPECT_EQ(transpose_map(t_map(p, 3)), t_map(involute(p), 3));
    }
}

TEST(TensorMap, CompositionMatchesProductUpToLoopFactor) {
    const std::vector<Partition> ps = all_up_to(3);
    for (const auto& bottom : ps)
        for (const auto& top : ps) {
            if (top.lower_arity() != bottom.upper_arity()) continue;
            ASSERT_TRUE(compose_matches(bottom, top, 2))
                << bottom.to_text() << " under " << top.to_text();
        }
    // The loop case: pair over copair removes one loop, so the product
    // carries a factor n on the single surviving entry.
    EXPECT_TRUE(compose_matches(copair(), pair(), 3));
}

TEST(Shadows, ProductOfModelsStaysAModel) {
    RationalMatrix u = lit(kRotation);
    RationalMatrix v = lit(
        "n 2 2\n"
        "-3/5 4/5\n"
        "-4/5 -3/5\n");
    EXPECT_EQ(coproduct_shadow_check(pair(), u, v), ShadowOutcome::Holds);
    EXPECT_EQ(coproduct_shadow_check(pair(), u, lit(kMagicSquare) /* wrong size */),
              ShadowOutcome::Skipped);
    EXPECT_EQ(coproduct_shadow_check(up1(), u, v), ShadowOutcome::Skipped);
}

TEST(Shadows, TransposeTracksRowSwap) {
    std::mt19937 gen(99);
    std::vector<RationalMatrix> ms = {lit(kMagicSquare), lit(kRotation), random_matrix(gen, 2),
                                      random_matrix(gen, 3)};
    for (const auto& u : ms)
        for (const auto& p : all_up_to(4)) EXPECT_TRUE(antipode_shadow_check(p, u));
}

TEST(InverseWitness, PairGivesTheTranspose) {
    RationalMatrix u = lit(kRotation);
    RationalMatrix t = right_inverse_witness(pair(), u);
    EXPECT_EQ(t, transpose(u));
    EXPECT_EQ(matmul(u, t), identity_matrix(2));
}

TEST(InverseWitness, NestedPairUsesBlockLabels) {
    RationalMatrix u = lit(kRotation);
    Partition nested = Partition::from_text("P(0,4): {l1,l4}{l2,l3}");
    RationalMatrix t = right_inverse_witness(nested, u);
    RationalMatrix expect = lit(
        "n 2 2\n"
        "3/5 4/5\n"
        "-4/5 3/5\n");
    EXPECT_EQ(t, expect);
    EXPECT_EQ(matmul(u, t), identity_matrix(2));

    // Permutation models pass too, with singleton side blocks in play.
    for (const auto& m : permutation_matrices(3)) {
        Partition p = Partition::from_text("P(0,3): {l1,l2}{l3}");
        EXPECT_EQ(matmul(m, right_inverse_witness(p, m)), identity_matrix(3));
    }
}

TEST(InverseWitness, RefusalsAreTyped) {
    RationalMatrix u = lit(kRotation);
    EXPECT_THROW(right_inverse_witness(b(3), u), Unsupported);
    EXPECT_THROW(right_inverse_witness(up1(), u), Unsupported);
    EXPECT_THROW(right_inverse_witness(identity(1), u), PreconditionError);
    EXPECT_THROW(right_inverse_witness(pair(), lit(kMagicSquare)), PreconditionError);
}
