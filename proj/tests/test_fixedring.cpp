#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "presentations.hpp"
#include "preproj/fixedring.hpp"

namespace {

using namespace fixtures;
using preproj::Presentation;
using preproj::SimplePath;

std::vector<SimplePath> sorted_paths(const preproj::GeneratorReport& rep) {
    auto p = rep.paths();
    std::sort(p.begin(), p.end());
    return p;
}

std::vector<SimplePath> sorted(std::vector<SimplePath> v) {
    std::sort(v.begin(), v.end());
    return v;
}

bool contains(const std::vector<SimplePath>& v, const SimplePath& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

TEST(FixedPaths, StarNegationDegreeTwo) {
    auto f = preproj::fixed_paths_up_to(cyclic(star_negation()), 2);
    for (int i = 1; i <= 3; ++i) {
        EXPECT_TRUE(contains(f, SimplePath{i, 1, 0}));
        EXPECT_TRUE(contains(f, SimplePath{i, 0, 2}));
        EXPECT_FALSE(contains(f, SimplePath{i, 0, 1}));
    }
}

TEST(FixedPaths, TrivialGroupDegreeOne) {
    auto f = preproj::fixed_paths_up_to(cyclic(DiagonalAut::identity(4)), 1);
    EXPECT_EQ(f.size(), 4u + 8u);
}

TEST(FixedPaths, OrderSixDegreeFour) {
    auto f = preproj::fixed_paths_up_to(cyclic(order_six()), 4);
    EXPECT_TRUE(contains(f, SimplePath{3, 3, 0}));
    EXPECT_TRUE(contains(f, SimplePath{3, 0, 3}));
    EXPECT_TRUE(contains(f, SimplePath{2, 2, 0}));
}

TEST(MinimalGenerators, StarNegation) {
    auto rep = preproj::minimal_generators(cyclic(star_negation()), 4);
    EXPECT_EQ(sorted_paths(rep), sorted({{1, 1, 0}, {2, 1, 0}, {3, 1, 0}, {1, 0, 2}, {2, 0, 2}, {3, 0, 2}}));
    EXPECT_TRUE(rep.warnings.empty());
}

TEST(MinimalGenerators, OrderSix) {
    auto rep = preproj::minimal_generators(cyclic(order_six()), 4);
    EXPECT_EQ(sorted_paths(rep), sorted({{1, 1, 0}, {2, 2, 0}, {1, 0, 3}, {2, 0, 3}, {3, 3, 0}, {3, 0, 3}}));
    // the default order puts s before the star generators of the same degree
    std::vector<std::string> labels;
    for (const auto& g : rep.generators) labels.push_back(g.label);
    EXPECT_EQ(labels, (std::vector<std::string>{"a1", "a2a3", "a3a1a2", "a3*a2*a1*", "a1*a3*a2*", "a2*a1*a3*"}));
}

TEST(MinimalGenerators, OrderThree) {
    auto rep = preproj::minimal_generators(cyclic(order_three()), 4);
    EXPECT_EQ(sorted_paths(rep), sorted({{2, 1, 0}, {2, 0, 1}, {3, 2, 0}, {1, 0, 2}, {1, 3, 0}, {3, 0, 3}}));
    EXPECT_EQ(rep.generators[1].label, "a1*");
    EXPECT_EQ(rep.generators[3].label, "a3*a2*");
}

TEST(MinimalGenerators, StableUnderLargerBounds) {
    for (const auto& g : {star_negation(), order_six(), order_three()}) {
        auto G = cyclic(g);
        EXPECT_EQ(sorted_paths(preproj::minimal_generators(G, 4)),
                  sorted_paths(preproj::minimal_generators(G, preproj::default_generator_bound(G))));
    }
}

TEST(MinimalGenerators, WarnsWhenBoundTooSmall) {
    auto rep = preproj::minimal_generators(cyclic(order_six()), 2);
    EXPECT_FALSE(rep.warnings.empty());
}

TEST(VerifyGenerators, Examples) {
    auto G1 = cyclic(star_negation());
    EXPECT_TRUE(preproj::verify_generators(G1, preproj::minimal_generators(G1, 4).paths(), 10).complete);
    auto G2 = cyclic(order_six());
    auto gens = preproj::minimal_generators(G2, 4).paths();
    gens.erase(std::find(gens.begin(), gens.end(), SimplePath{1, 0, 3}));
    auto chk = preproj::verify_generators(G2, gens, 6);
    EXPECT_FALSE(chk.complete);
    EXPECT_EQ(chk.first_failing_degree, 3);
    auto T = cyclic(DiagonalAut::identity(3));
    std::vector<SimplePath> arrows;
    for (int i = 1; i <= 3; ++i) {
        arrows.push_back({i, 1, 0});
        arrows.push_back({i, 0, 1});
    }
    EXPECT_TRUE(preproj::verify_generators(T, arrows, 8).complete);
}

TEST(Presentation, RejectsMalformedRelations) {
    EXPECT_THROW(make_presentation(3, {{"a1", {1, 1, 0}}, {"a2", {2, 1, 0}}}, {{"a1", "a2"}}),
                 preproj::PreconditionError);
    EXPECT_THROW(make_presentation(3, {{"a1", {1, 1, 0}}, {"a2", {2, 1, 0}}}, {{"a2 a1", "a1 a2"}}),
                 preproj::PreconditionError);
    EXPECT_THROW(make_presentation(3, {{"a1", {1, 1, 0}}}, {{"a1 b", "a1"}}), preproj::PreconditionError);
}

TEST(Presentation, LeadingWordsFollowTheOrder) {
    auto p = order_six_presentation();
    std::vector<std::string> leads;
    for (const auto& r : p.relations) leads.push_back(p.word_string(r.lhs));
    EXPECT_EQ(leads, (std::vector<std::string>{"t s", "u2 x", "u1 a1"}));
    auto q = order_three_presentation();
    leads.clear();
    for (const auto& r : q.relations) leads.push_back(q.word_string(r.lhs));
    EXPECT_EQ(leads, (std::vector<std::string>{"u1 y", "a1* y a2", "a1* u1", "u2 x"}));
}

TEST(Ambiguities, NoneForStarNegationAndOrderSix) {
    for (const auto& p : {star_negation_presentation(), order_six_presentation()}) {
        auto rep = preproj::check_ambiguities(p);
        EXPECT_TRUE(rep.resolvable.empty());
        EXPECT_TRUE(rep.unresolvable.empty());
    }
}

TEST(Ambiguities, OrderThreeSingleOverlapResolves) {
    auto p = order_three_presentation();
    auto rep = preproj::check_ambiguities(p);
    ASSERT_EQ(rep.resolvable.size(), 1u);
    EXPECT_TRUE(rep.unresolvable.empty());
    const auto& a = rep.resolvable.front();
    EXPECT_EQ(a.kind, preproj::Ambiguity::Kind::Overlap);
    EXPECT_EQ(p.word_string(a.word), "a1* u1 y");
    EXPECT_EQ(*a.left, *a.right);
}

TEST(Ambiguities, DetectsUnresolvedOverlap) {
    // b and c come first in the order, so a1 a2 -> b and a2 a3 -> c leave a1 a2 a3 ambiguous
    Presentation p = make_presentation(3,
                                       {{"b", {1, 2, 0}}, {"c", {2, 2, 0}}, {"a1", {1, 1, 0}},
                                        {"a2", {2, 1, 0}}, {"a3", {3, 1, 0}}},
                                       {{"a1 a2", "b"}, {"a2 a3", "c"}});
    auto rep = preproj::check_ambiguities(p);
    ASSERT_EQ(rep.unresolvable.size(), 1u);
    EXPECT_EQ(p.word_string(rep.unresolvable[0].word), "a1 a2 a3");
    EXPECT_EQ(p.word_string(*rep.unresolvable[0].left), "b a3");
    EXPECT_EQ(p.word_string(*rep.unresolvable[0].right), "a1 c");
    EXPECT_TRUE(preproj::check_ambiguities(p, 2).unresolvable.empty());
}

TEST(Ambiguities, DetectsInclusion) {
    Presentation p = make_presentation(3,
                                       {{"b", {1, 3, 0}}, {"c", {2, 2, 0}}, {"a1", {1, 1, 0}},
                                        {"a2", {2, 1, 0}}, {"a3", {3, 1, 0}}},
                                       {{"a1 a2 a3", "b"}, {"a2 a3", "c"}});
    auto rep = preproj::check_ambiguities(p);
    ASSERT_EQ(rep.unresolvable.size(), 1u);
    EXPECT_EQ(rep.unresolvable[0].kind, preproj::Ambiguity::Kind::Inclusion);
    EXPECT_TRUE(rep.resolvable.empty());
}

TEST(Discovery, StarNegation) {
    auto G = cyclic(star_negation());
    auto skel = make_presentation(3,
                                  {{"a1", {1, 1, 0}}, {"a2", {2, 1, 0}}, {"a3", {3, 1, 0}},
                                   {"x", {1, 0, 2}}, {"y", {2, 0, 2}}, {"z", {3, 0, 2}}},
                                  {});
    auto p = preproj::discover_relations(skel, 8);
    auto expected = star_negation_presentation();
    ASSERT_EQ(p.relations.size(), expected.relations.size());
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
        EXPECT_EQ(p.relations[r].lhs, expected.relations[r].lhs);
        EXPECT_EQ(p.relations[r].rhs, expected.relations[r].rhs);
    }
    EXPECT_TRUE(preproj::verify_presentation(p, G).passed());
}

TEST(Discovery, OrderSixRecoversKnownRelations) {
    auto expected = order_six_presentation();
    Presentation skel = expected;
    skel.relations.clear();
    auto p = preproj::discover_relations(skel, 12);
    ASSERT_EQ(p.relations.size(), 3u);
    std::vector<std::string> got, want;
    for (const auto& r : p.relations) got.push_back(p.word_string(r.lhs) + " = " + p.word_string(r.rhs));
    for (const auto& r : expected.relations) want.push_back(expected.word_string(r.lhs) + " = " + expected.word_string(r.rhs));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
}

TEST(Discovery, OrderThreeRecoversKnownRelations) {
    auto expected = order_three_presentation();
    Presentation skel = expected;
    skel.relations.clear();
    auto p = preproj::discover_relations(skel, 12);
    std::vector<std::string> got, want;
    for (const auto& r : p.relations) got.push_back(p.word_string(r.lhs) + " = " + p.word_string(r.rhs));
    for (const auto& r : expected.relations) want.push_back(expected.word_string(r.lhs) + " = " + expected.word_string(r.rhs));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
}

TEST(Discovery, TrivialGroupGivesPreprojectiveRelations) {
    for (int n = 3; n <= 5; ++n) {
        std::vector<SimplePath> arrows;
        for (int i = 1; i <= n; ++i) {
            arrows.push_back({i, 1, 0});
            arrows.push_back({i, 0, 1});
        }
        auto p = preproj::discover_relations(preproj::presentation_skeleton(n, arrows), 6);
        ASSERT_EQ(p.relations.size(), static_cast<std::size_t>(n));
        for (const auto& r : p.relations) {
            ASSERT_EQ(r.lhs.size(), 2u);
            ASSERT_EQ(r.rhs.size(), 2u);
            auto path = p.path(r.lhs);
            ASSERT_TRUE(path.has_value());
            EXPECT_EQ(path->m, 1);
            EXPECT_EQ(path->k, 1);
            // a_{i-1}* a_{i-1} -> a_i a_i*
            EXPECT_EQ(p.generators[static_cast<std::size_t>(r.rhs[0])].path, (SimplePath{path->start, 1, 0}));
        }
        auto counts = preproj::count_irreducible_words(p);
        EXPECT_EQ(counts.matrix, preproj::matrix_hilbert_A(n));
        EXPECT_TRUE(preproj::verify_presentation(p, cyclic(DiagonalAut::identity(n))).passed());
    }
}

TEST(Counting, ExamplePresentations) {
    auto c1 = preproj::count_irreducible_words(star_negation_presentation());
    EXPECT_EQ(c1.total, rf("3/((1-t)^2*(1+t))"));
    auto c2 = preproj::count_irreducible_words(order_six_presentation());
    EXPECT_EQ(c2.total, rf("(3+t+t^2)/(1-t^3)^2"));
    preproj::RatMatrix expected(3, 3);
    auto s = rf("1/(1-t^3)^2");
    expected(0, 0) = s;
    expected(0, 1) = rf("t") * s;
    expected(1, 0) = rf("t^2") * s;
    expected(1, 1) = s;
    expected(2, 2) = s;
    EXPECT_EQ(c2.matrix, expected);
    auto c3 = preproj::count_irreducible_words(order_three_presentation());
    EXPECT_EQ(c3.total, rf("(3+2*t+2*t^2+2*t^3)/(1-t^3)^2"));
}

TEST(Counting, FreePathAlgebra) {
    std::vector<SimplePath> arrows;
    for (int i = 1; i <= 3; ++i) {
        arrows.push_back({i, 1, 0});
        arrows.push_back({i, 0, 1});
    }
    auto free = preproj::presentation_skeleton(3, arrows);
    EXPECT_EQ(preproj::count_irreducible_words(free).total, rf("3/(1-2*t)"));
}

TEST(Counting, MatchesEnumeration) {
    for (const auto& p : {star_negation_presentation(), order_six_presentation(), order_three_presentation()}) {
        auto counts = preproj::count_irreducible_words(p);
        // brute force: grow irreducible words degree by degree
        std::vector<std::vector<preproj::Word>> by_deg(13);
        std::vector<long> total(13, 0);
        total[0] = 3;
        for (int d = 1; d <= 12; ++d)
            for (std::size_t g = 0; g < p.generators.size(); ++g) {
                const int rest = d - p.generators[g].path.degree();
                if (rest < 0) continue;
                std::vector<preproj::Word> heads = rest == 0 ? std::vector<preproj::Word>{{}} : by_deg[static_cast<std::size_t>(rest)];
                for (auto w : heads) {
                    if (!w.empty() && p.path(w)->end(3) != p.generators[g].path.start) continue;
                    w.push_back(static_cast<int>(g));
                    if (!preproj::is_irreducible(p, w)) continue;
                    by_deg[static_cast<std::size_t>(d)].push_back(w);
                    ++total[static_cast<std::size_t>(d)];
                }
            }
        auto s = preproj::series_expand(counts.total, 12);
        for (int d = 0; d <= 12; ++d) ASSERT_EQ(s[static_cast<std::size_t>(d)], CycNum(total[static_cast<std::size_t>(d)]));
    }
}

TEST(Verify, ExamplePresentationsPass) {
    EXPECT_TRUE(preproj::verify_presentation(star_negation_presentation(), cyclic(star_negation())).passed());
    auto chk = preproj::verify_presentation(order_six_presentation(), cyclic(order_six()));
    EXPECT_TRUE(chk.passed());
    EXPECT_EQ(chk.matrix_matches, true);
    EXPECT_TRUE(preproj::verify_presentation(order_three_presentation(), cyclic(order_three())).passed());
}

TEST(Verify, MissingRelationOvercounts) {
    auto p = order_six_presentation();
    p.relations.erase(p.relations.begin() + 1);
    auto chk = preproj::verify_presentation(p, cyclic(order_six()));
    EXPECT_FALSE(chk.passed());
    EXPECT_FALSE(chk.total_matches);
    auto got = preproj::series_expand(chk.counts.total, 20);
    auto want = preproj::series_expand(rf("(3+t+t^2)/(1-t^3)^2"), 20);
    bool larger_somewhere = false;
    for (std::size_t d = 0; d <= 20; ++d) {
        auto diff = (got[d] - want[d]).coefficients()[0];
        ASSERT_GE(diff, 0);
        larger_somewhere = larger_somewhere || diff > 0;
    }
    EXPECT_TRUE(larger_somewhere);
}

TEST(Verify, WrongGroupFails) {
    EXPECT_FALSE(preproj::verify_presentation(star_negation_presentation(), cyclic(order_six())).passed());
}

TEST(Properties, GeneratorsAreFixedAndIndecomposable) {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 15; ++trial) {
        auto G = cyclic(random_aut(rng, 3, 6, 8));
        const int D = preproj::default_generator_bound(G);
        auto rep = preproj::minimal_generators(G, D);
        preproj::FixedPathTable table(G, D);
        for (const auto& g : rep.generators) {
            for (const auto& h : G.elements()) ASSERT_TRUE(preproj::path_eigenvalue(h, g.path).is_one());
            for (int m1 = 0; m1 <= g.path.m; ++m1)
                for (int k1 = 0; k1 <= g.path.k; ++k1) {
                    if (m1 + k1 == 0 || m1 + k1 == g.degree) continue;
                    SimplePath q{g.path.start, m1, k1};
                    SimplePath r{q.end(G.n()), g.path.m - m1, g.path.k - k1};
                    ASSERT_FALSE(table.fixed(q) && table.fixed(r));
                }
        }
    }
}

TEST(Properties, CertifiedGeneratorSetsMeetTheLowerBound) {
    std::mt19937_64 rng(97);
    int certified = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto G = cyclic(random_aut(rng, 3, 8, 12));
        const int D = preproj::default_generator_bound(G);
        auto rep = preproj::minimal_generators(G, D);
        if (!preproj::verify_generators(G, rep.paths(), D).complete) continue;
        ++certified;
        ASSERT_GE(rep.count_with_idempotents(G.n()), static_cast<std::size_t>(3 * G.n()));
        ASSERT_TRUE(rep.warnings.empty());
    }
    EXPECT_GT(certified, 0);
}

TEST(Properties, DiscoveredPresentationsVerify) {
    std::mt19937_64 rng(101);
    int verified = 0;
    for (int trial = 0; trial < 6; ++trial) {
        auto G = cyclic(random_aut(rng, 3, 4, 4));
        auto gens = preproj::minimal_generators(G, preproj::default_generator_bound(G));
        auto skel = preproj::presentation_skeleton(G.n(), gens.paths());
        auto p = preproj::discover_relations(skel, static_cast<int>(preproj::default_relation_bound(skel)) + 4);
        for (const auto& r : p.relations) ASSERT_EQ(p.path(r.lhs), p.path(r.rhs));
        if (preproj::verify_presentation(p, G).passed()) ++verified;
    }
    EXPECT_GT(verified, 0);
}

}  // namespace
