// Acceptance gate: ten end-to-end checks over the whole engine, each
// printed as one PASS/FAIL line.  Exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcalc/closure.hpp"
#include "pcalc/expr.hpp"
#include "pcalc/linear.hpp"

using namespace pcalc;

namespace {

int failures = 0;

void run(int number, const std::string& name, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-34s %s (%.1fs)%s%s\n", number, name.c_str(),
                ok ? "PASS" : "FAIL", secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFailure(msg);
}

std::vector<Partition> box(int kmax, int lmax) {
    std::vector<Partition> out;
    for (int k = 0; k <= kmax; ++k)
        for (int l = 0; l <= lmax; ++l)
            for (auto& p : enumerate_partitions(Pred::All, k, l)) out.push_back(std::move(p));
    return out;
}

std::vector<Partition> up_to(int max_points) {
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

RationalMatrix magic_square() {
    return parse_matrix("n 3 3\n2 -1 0\n-1 0 2\n0 2 -1\n");
}

RationalMatrix rotation() { return parse_matrix("n 2 2\n3/5 -4/5\n4/5 3/5\n"); }

Partition one_block(int a, int bp) {
    Block all;
    for (int i = 1; i <= a; ++i) all.push_back(U(i));
    for (int j = 1; j <= bp; ++j) all.push_back(L(j));
    return Partition(a, bp, {all});
}

bool same_block(const Partition& p, int i, int j) {
    return p.block_of(L(i)) == p.block_of(L(j));
}

// The standard test matrix pool: the two fixed rational models, identities,
// and every permutation matrix with n <= 4.
std::vector<RationalMatrix> structured_models() {
    std::vector<RationalMatrix> ms = {magic_square(), rotation(), identity_matrix(2),
                                      identity_matrix(3), identity_matrix(4)};
    for (int n = 1; n <= 4; ++n)
        for (auto& m : permutation_matrices(n)) ms.push_back(std::move(m));
    return ms;
}

void criterion_functor_identities() {
    for (int n : {2, 3}) {
        std::vector<Partition> ps = box(3, 3);
        require(ps.size() == 381, "expected 381 partitions in the 3x3 box");
        std::vector<SparseTensorMap> tm;
        tm.reserve(ps.size());
        std::map<Partition, std::size_t> index;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            tm.push_back(t_map(ps[i], n));
            index[ps[i]] = i;
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            require(transpose_map(tm[i]) == tm[index.at(involute(ps[i]))],
                    "transpose mismatch at " + ps[i].to_text());
        }
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = 0; j < ps.size(); ++j) {
                require(kron(tm[i], tm[j]) == t_map(tensor(ps[i], ps[j]), n),
                        "tensor mismatch at " + ps[i].to_text() + " x " + ps[j].to_text());
            }
        for (const Partition& bottom : ps)
            for (const Partition& top : ps) {
                if (top.lower_arity() != bottom.upper_arity()) continue;
                require(compose_matches(bottom, top, n),
                        "composition mismatch at " + bottom.to_text() + " under " +
                            top.to_text());
            }
    }
}

void criterion_checker_agreement() {
    std::mt19937 gen(424243);
    std::vector<RationalMatrix> ms;
    for (int i = 0; i < 45; ++i) ms.push_back(random_matrix(gen, 2));
    for (int i = 0; i < 15; ++i) ms.push_back(random_matrix(gen, 3));
    for (auto& m : structured_models()) ms.push_back(std::move(m));

    const std::vector<Partition> ps = up_to(5);
    require(ps.size() == 416, "expected 416 partitions with at most 5 points");
    for (const auto& u : ms)
        for (const auto& p : ps) {
            CheckOutcome a = check_relation(p, u);
            CheckOutcome b = check_intertwiner(p, u);
            bool agree = a.holds == b.holds &&
                         (a.holds || (a.alpha == b.alpha && a.beta == b.beta &&
                                      a.lhs == b.lhs && a.rhs == b.rhs));
            require(agree, "checkers disagree on " + p.to_text());
        }
}

void criterion_magic_square_example() {
    RationalMatrix w = magic_square();
    require(check_relation(up1(), w).holds, "up1 should hold");
    require(check_relation(down1(), w).holds, "down1 should hold");
    CheckOutcome c = check_relation(pair(), w);
    require(!c.holds && c.alpha.empty() && c.beta == std::vector<int>({1, 1}) &&
                c.lhs == 1 && c.rhs == 5,
            "pair counterexample mismatch");
    c = check_relation(copair(), w);
    require(!c.holds && c.beta.empty() && c.alpha == std::vector<int>({1, 1}) &&
                c.lhs == 5 && c.rhs == 1,
            "copair counterexample mismatch");
}

void criterion_model_suites() {
    for (int n : {2, 3, 4}) {
        RationalMatrix id = identity_matrix(n);
        for (const auto& p : up_to(6))
            require(check_relation(p, id).holds, "identity fails " + p.to_text());
    }
    for (int n = 1; n <= 4; ++n)
        for (const auto& u : permutation_matrices(n))
            for (const auto& p : up_to(5))
                require(check_relation(p, u).holds, "permutation fails " + p.to_text());
    require(check_relation(pair(), rotation()).holds, "rotation should satisfy pair");
    require(check_relation(copair(), rotation()).holds, "rotation should satisfy copair");
}

void criterion_shadows() {
    std::mt19937 gen(99991);
    std::vector<RationalMatrix> ms = {magic_square(), rotation(), identity_matrix(3)};
    for (int i = 0; i < 6; ++i) ms.push_back(random_matrix(gen, 2));
    for (int i = 0; i < 6; ++i) ms.push_back(random_matrix(gen, 3));
    const std::vector<Partition> ps = up_to(4);
    for (const auto& u : ms)
        for (const auto& p : ps)
            require(antipode_shadow_check(p, u), "transpose duality fails " + p.to_text());

    RationalMatrix r1 = rotation();
    RationalMatrix r2 = parse_matrix("n 2 2\n-3/5 4/5\n-4/5 -3/5\n");
    for (const auto& p : ps) {
        ShadowOutcome s = coproduct_shadow_check(p, r1, r2);
        require(s != ShadowOutcome::Fails, "product model fails " + p.to_text());
    }
    require(coproduct_shadow_check(pair(), r1, r2) == ShadowOutcome::Holds, "pair should hold");
    require(coproduct_shadow_check(copair(), r1, r2) == ShadowOutcome::Holds,
            "copair should hold");
    for (const auto& u : permutation_matrices(3))
        for (const auto& v : permutation_matrices(3))
            for (const auto& p : ps)
                require(coproduct_shadow_check(p, u, v) == ShadowOutcome::Holds,
                        "permutation product fails " + p.to_text());
}

void criterion_graded_noncrossing_program() {
    require(enumerate_partitions(Pred::Noncrossing, 0, 4).size() == 14, "|NC(0,4)| != 14");
    require(enumerate_partitions(Pred::Noncrossing, 0, 6).size() == 132, "|NC(0,6)| != 132");
    std::vector<Partition> g3 = enumerate_partitions(Pred::NCm, 0, 3, 3);
    require(g3.size() == 1 && g3[0] == b(3), "graded slice at three points should be {b(3)}");

    for (int m : {1, 2, 3}) {
        std::vector<Partition> slice;
        for (int k = 0; k <= 6; ++k)
            for (int l = 0; k + l <= 6; ++l)
                for (auto& p : enumerate_partitions(Pred::NCm, k, l, m))
                    slice.push_back(std::move(p));
        SliceReport rep = verify_generalized_category(slice, 6);
        require(rep.closed, "slice not closed at modulus " + std::to_string(m));
    }

    // Every single-block partition with the modulus-3 grading and at most
    // six points must come out of the generator program, trace and all.
    std::set<Partition> expected;
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; k + l <= 6; ++l)
            for (const auto& p : enumerate_partitions(Pred::NCm, k, l, 3))
                if (p.blocks().size() == 1) expected.insert(p);
    std::set<Partition> built;
    for (int a = 0; a <= 6; ++a)
        for (int bp = 0; a + bp <= 6; ++bp) {
            if (a + bp == 0 || (a - bp) % 3 != 0) continue;
            Constructed c = single_block(a, bp, 3);
            require(c.result == one_block(a, bp), "wrong single block");
            // A generator itself arrives with an empty trace; everything
            // else must replay.
            if (c.trace.steps.empty())
                require(c.result == b(3), "only the generator may skip the trace");
            else
                require(replay_trace(c.trace) == c.result, "single block trace broken");
            built.insert(c.result);
        }
    require(built == expected && built.size() == 9, "single-block coverage mismatch");
}

void criterion_construction_invariants() {
    for (int l = 1; l <= 5; ++l)
        for (const auto& p : enumerate_partitions(Pred::All, 0, l)) {
            bool doubled_ok = false;
            for (const Block& bl : p.blocks())
                if (bl.size() >= 2) doubled_ok = true;
            if (!doubled_ok) continue;
            for (int s = 1; s <= l; ++s) {
                Partition q = partial_doubling(p, s).result;
                require(q == involute(q), "doubling not self-adjoint");
                require(compose(q, q).result == q, "doubling not idempotent");
                require(projection_symmetry_check(q), "doubling not row-symmetric");
            }
        }

    Constructed fig = multi_nest(b(3), 1, 4);
    require(fig.result == Partition::from_text(
                              "P(0,12): {l1,l11,l12}{l2,l9,l10}{l3,l7,l8}{l4,l5,l6}"),
            "nesting figure mismatch");

    // Rotation clauses, checked pointwise and independently of the
    // constructors' own verification.
    std::vector<Partition> weak_caps = {down1(), copair(), involute(b(3)),
                                        involute(tensor(up1(), pair()))};
    std::vector<Partition> full_caps = {copair(), involute(b(3)), involute(crossline()),
                                        involute(tensor(pair(), up1()))};
    for (int l = 1; l <= 4; ++l)
        for (const auto& p : enumerate_partitions(Pred::All, 0, l)) {
            for (const auto& q : weak_caps) {
                Partition r = weak_line_rotate(p, q).result;
                for (int i = 2; i < l; ++i)
                    for (int j = i + 1; j <= l; ++j)
                        require(same_block(p, i, j) == same_block(r, i - 1, j - 1),
                                "weak rotation interior clause fails");
            }
            for (const auto& q : full_caps) {
                Partition r = line_rotate(p, q).result;
                for (int i = 2; i < l; ++i)
                    for (int j = i + 1; j <= l; ++j)
                        require(same_block(p, i, j) == same_block(r, i - 1, j - 1),
                                "full rotation interior clause fails");
                for (int x = 1; x < l; ++x)
                    require(same_block(r, x, l) == same_block(p, x + 1, 1),
                            "full rotation wrap clause fails");
            }
        }

    Partition p7 = Partition::from_text("P(0,7): {l1,l4,l6,l7}{l2}{l3,l5}");
    Constructed weak = weak_line_rotate(p7, down1());
    require(weak.result == Partition::from_text("P(0,7): {l1}{l2,l4}{l3,l5,l6}{l7}") &&
                weak.removed_loops == 2,
            "weak rotation figure mismatch");
    Constructed full = line_rotate(p7, involute(p7));
    require(full.result == Partition::from_text("P(0,7): {l1}{l2,l4}{l3,l5,l6,l7}") &&
                full.removed_loops == 2,
            "full rotation figure mismatch");
}

void criterion_classifier() {
    for (int l = 1; l <= 6; ++l) {
        Partition allsingle = up1();
        for (int i = 1; i < l; ++i) allsingle = tensor(allsingle, up1());
        for (const auto& p : enumerate_partitions(Pred::All, 0, l)) {
            if (p == allsingle) continue;
            OrthoClassification c = classify_orthogonality(p);
            require(!c.cases.empty() && c.conclusion != OrthoConclusion::None,
                    "classifier not total at " + p.to_text());

            bool has_singleton = false, has_big = false, all_pairs = true;
            for (const Block& bl : p.blocks()) {
                if (bl.size() == 1) has_singleton = true;
                if (bl.size() >= 3) has_big = true;
                if (bl.size() != 2) all_pairs = false;
            }
            auto has_case = [&](OrthoCase oc) {
                return std::find(c.cases.begin(), c.cases.end(), oc) != c.cases.end();
            };
            require((l % 2 == 1) == has_case(OrthoCase::A_OddLength), "case A mismatch");
            if (l % 2 == 0) {
                bool odd_gap = false, even_gap = false;
                if (has_singleton)
                    for (const Block& bl : p.blocks())
                        for (std::size_t i = 0; i < bl.size(); ++i)
                            for (std::size_t j = i + 1; j < bl.size(); ++j)
                                ((bl[j].index - bl[i].index) % 2 ? odd_gap : even_gap) = true;
                require(has_case(OrthoCase::B_SingletonOddGap) == odd_gap, "case B mismatch");
                require(has_case(OrthoCase::C_SingletonEvenGap) == even_gap, "case C mismatch");
                require(has_case(OrthoCase::D_NoSingletonBigBlock) ==
                            (!has_singleton && has_big),
                        "case D mismatch");
                require(has_case(OrthoCase::E_AllPairs) == all_pairs, "case E mismatch");
                if (all_pairs) {
                    int m = c.pair_interval;
                    require(partial_doubling(rotate_line(p, c.rotation), m).result == tau(m),
                            "doubling after rotation misses tau at " + p.to_text());
                    if (m == 2)
                        require(c.conclusion == OrthoConclusion::InPO && c.tau_m == 2,
                                "tau(2) should close the case");
                    else
                        require(c.conclusion == OrthoConclusion::ImpliesTau && c.tau_m == m,
                                "expected an implied tau");
                }
            }
        }
    }
    OrthoClassification cl = classify_orthogonality(crossline());
    require(cl.cases == std::vector<OrthoCase>{OrthoCase::E_AllPairs} && cl.pair_interval == 3 &&
                conclusion_text(cl) == "ImpliesTau(3)",
            "crossline should imply tau(3)");
    OrthoClassification pp = classify_orthogonality(tensor(pair(), pair()));
    require(pp.conclusion == OrthoConclusion::InPO && pp.tau_m == 2,
            "doubled pair should land via tau(2)");
}

void criterion_semantic_closure() {
    ClosureConfig cfg;
    cfg.max_total_points = 7;
    cfg.max_elements = 400;
    cfg.semantic_rules = true;
    ClosureResult res = closure({b(3), involute(b(3))}, cfg);
    require(res.members.count(pair()) == 1, "pair not derived from the triple block");
    require(res.members.count(copair()) == 1, "copair not derived from the triple block");
    for (const Partition& m : res.members) {
        Membership mem = member_of(res, m);
        require(mem.found, "member without a derivation");
        require(replay_trace(mem.trace) == m, "trace does not replay to " + m.to_text());
        if (res.origin.at(m).op == "semantic")
            require(!mem.citations.empty(), "semantic member without a citation");
    }
    require(!member_of(res, pair()).citations.empty(), "pair should cite its rule");

    ClosureConfig small;
    small.max_total_points = 4;
    small.semantic_rules = true;
    ClosureResult four =
        closure({fourblock(), tensor(up1(), up1()), tensor(down1(), down1())}, small);
    require(four.members.count(pair()) == 1 && four.members.count(copair()) == 1,
            "pair and copair not derived from the four-point block");
}

void criterion_inverse_witness() {
    RationalMatrix u = rotation();
    RationalMatrix t = right_inverse_witness(pair(), u);
    require(matmul(u, t) == identity_matrix(2), "pair witness is not a right inverse");
    Partition nested = Partition::from_text("P(0,4): {l1,l4}{l2,l3}");
    t = right_inverse_witness(nested, u);
    require(matmul(u, t) == identity_matrix(2), "nested witness is not a right inverse");
    bool refused = false;
    try {
        right_inverse_witness(b(3), u);
    } catch (const Unsupported&) {
        refused = true;
    }
    require(refused, "triple block should be refused");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    run(1, "tensor map functor identities", criterion_functor_identities);
    run(2, "relation/intertwiner agreement", criterion_checker_agreement);
    run(3, "magic square example splits", criterion_magic_square_example);
    run(4, "identity/permutation/rotation", criterion_model_suites);
    run(5, "product and transpose shadows", criterion_shadows);
    run(6, "graded noncrossing program", criterion_graded_noncrossing_program);
    run(7, "construction invariants", criterion_construction_invariants);
    run(8, "orthogonality classifier", criterion_classifier);
    run(9, "semantic closure derives pairs", criterion_semantic_closure);
    run(10, "right-inverse witness", criterion_inverse_witness);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (failures == 0)
        std::printf("all 10 criteria pass (%.1fs)\n", secs);
    else
        std::printf("%d of 10 criteria FAILED (%.1fs)\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
