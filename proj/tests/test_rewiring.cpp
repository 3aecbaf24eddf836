#include <doctest.h>

#include <array>

#include "netmode/classification.hpp"
#include "netmode/errors.hpp"
#include "netmode/matching.hpp"
#include "netmode/rewiring.hpp"
#include "test_support.hpp"

using namespace netmode;
using testsupport::graph_of;

namespace {

const AlternatingComponent& largest_of(const std::vector<AlternatingComponent>& comps) {
    return largest_input_component(comps);
}

std::vector<DirectedGraph> rewiring_corpus() {
    auto corpus = testsupport::random_corpus(777, 300, 2, 8, 0.3);
    for (auto& g : testsupport::example_graphs()) corpus.push_back(std::move(g));
    return corpus;
}

}  // namespace

TEST_CASE("skip_add_condition fixtures") {
    SUBCASE("unmatched source in-copy") {
        // State after removing 0->2 from {0->1, 0->2}.
        const DirectedGraph g = graph_of(3, {{0, 1}});
        const Matching m(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
        CHECK(skip_add_condition(g, m, 0));
    }
    SUBCASE("matched source out of driver reach") {
        // State after removing 0->2 from {0->1, 0->2, 3->0}.
        const DirectedGraph g = graph_of(4, {{0, 1}, {3, 0}});
        const Matching m(4, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {3, 0}});
        CHECK_FALSE(skip_add_condition(g, m, 0));
    }
    SUBCASE("driver processing its own self-loop") {
        const DirectedGraph g(1);  // after the self-loop was removed
        const Matching m(1, {});
        CHECK(skip_add_condition(g, m, 0));
    }
    SUBCASE("matched source reachable through another driver") {
        // 2_in is unmatched; 1_in is reachable via the non-matched edge
        // (0,2) and the matched edge (0,1).
        const DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const Matching m(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
        CHECK(skip_add_condition(g, m, 1));
    }
    SUBCASE("reach from a driver being detached does not count") {
        // Same graph: 1_in is reachable only through driver 2's in-edge,
        // so once 2 is being detached that path is already doomed.
        const DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const Matching m(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
        const std::vector<NodeId> detaching{2};
        CHECK_FALSE(skip_add_condition(g, m, 1, detaching));
        const std::vector<NodeId> keeping{};
        CHECK(skip_add_condition(g, m, 1, keeping));
        // Drivers themselves always skip.
        CHECK(skip_add_condition(g, m, 0, detaching));
        CHECK(skip_add_condition(g, m, 2, detaching));
    }
}

TEST_CASE("classify_reversal_case fixtures") {
    SUBCASE("augmenting-path hazard is Case4") {
        const DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const Matching m(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
        const auto comps = alternating_components(g, m);
        CHECK(classify_reversal_case(g, m, largest_of(comps), 0, 2) == CaseTag::Case4);
    }
    SUBCASE("detached source and unconnected driver out-copy is Case1") {
        const DirectedGraph g = graph_of(4, {{0, 1}, {0, 2}, {3, 0}});
        const Matching m = maximum_matching(g);
        REQUIRE(m.out_partner(0) == 1);
        REQUIRE(m.out_partner(3) == 0);
        const auto comps = alternating_components(g, m);
        const AlternatingComponent& target = largest_of(comps);
        REQUIRE(target.members == std::vector<NodeId>{1, 2});
        CHECK(classify_reversal_case(g, m, target, 0, 2) == CaseTag::Case1);
    }
    SUBCASE("self-loop in-edge of a driver is Case4") {
        const DirectedGraph g = graph_of(2, {{0, 0}, {0, 1}});
        const Matching m(2, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
        const auto comps = alternating_components(g, m);
        const AlternatingComponent& target = largest_of(comps);
        REQUIRE(target.drivers == std::vector<NodeId>{0});
        CHECK(classify_reversal_case(g, m, target, 0, 0) == CaseTag::Case4);
    }
    SUBCASE("errors") {
        const DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const Matching m(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
        const auto comps = alternating_components(g, m);
        const AlternatingComponent& target = largest_of(comps);
        CHECK_THROWS_AS(classify_reversal_case(g, m, target, 0, 1), NotADriver);
        CHECK_THROWS_AS(classify_reversal_case(g, m, target, 1, 2), EdgeNotFound);
    }
}

TEST_CASE("detach_driver fixtures") {
    SUBCASE("fork driver: remove only") {
        DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const Matching m = maximum_matching(g);
        const auto comps = alternating_components(g, m);
        const auto ops = detach_driver(g, m, largest_of(comps), 2);
        REQUIRE(ops.size() == 1);
        CHECK(ops[0] == RewireOp{EdgeOp::remove(0, 2), CaseTag::Case4});
        CHECK(g == graph_of(3, {{0, 1}}));
    }
    SUBCASE("fed fork driver: reversal keeps the matching maximum") {
        DirectedGraph g = graph_of(4, {{0, 1}, {0, 2}, {3, 0}});
        const Matching m = maximum_matching(g);
        const auto comps = alternating_components(g, m);
        const auto ops = detach_driver(g, m, largest_of(comps), 2);
        REQUIRE(ops.size() == 1);
        CHECK(ops[0] == RewireOp{EdgeOp::reverse(0, 2), CaseTag::Case1});
        CHECK(g == graph_of(4, {{0, 1}, {2, 0}, {3, 0}}));
        CHECK(verify_maximum_matching(g, m).valid_maximum());
    }
    SUBCASE("driver with no in-edges is a no-op") {
        DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}});
        const Matching m = maximum_matching(g);
        const auto comps = alternating_components(g, m);
        CHECK(detach_driver(g, m, largest_of(comps), 0).empty());
        CHECK(g == graph_of(3, {{0, 1}, {1, 2}}));
    }
    SUBCASE("2-cycle in-edge of a driver becomes a removal") {
        // Reversing (1,2) would duplicate the existing edge 2->1.
        DirectedGraph g = graph_of(3, {{1, 2}, {2, 1}, {0, 2}, {2, 0}});
        const Matching m(3, std::vector<std::pair<NodeId, NodeId>>{{1, 2}, {2, 1}});
        const auto comps = alternating_components(g, m);
        const AlternatingComponent& target = largest_of(comps);
        REQUIRE(target.drivers == std::vector<NodeId>{0});
        const auto ops = detach_driver(g, m, target, 0);
        REQUIRE(ops.size() == 1);
        CHECK(ops[0] == RewireOp{EdgeOp::remove(2, 0), CaseTag::Case4});
    }
    SUBCASE("rejects a non-driver") {
        DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const Matching m = maximum_matching(g);
        const auto comps = alternating_components(g, m);
        CHECK_THROWS_AS(detach_driver(g, m, largest_of(comps), 1), NotADriver);
    }
}

TEST_CASE("alter_to_centralized fixtures") {
    SUBCASE("fork") {
        DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const RewireOutcome out = alter_to_centralized(g);
        REQUIRE(out.ops.size() == 1);
        CHECK(out.ops[0] == RewireOp{EdgeOp::remove(0, 2), CaseTag::Case4});
        CHECK(out.report_before.in_fraction == doctest::Approx(1.0));
        CHECK(out.report_after.in_fraction == doctest::Approx(2.0 / 3.0));
        CHECK(out.num_modified == 1);
        CHECK(out.p_m == doctest::Approx(0.5));
        CHECK(out.p_r == 0.0);
        CHECK(out.delta_nd == doctest::Approx(1.0 / 3.0));
        CHECK(out.delta_ic == doctest::Approx(0.5));
        CHECK(g == graph_of(3, {{0, 1}}));
    }
    SUBCASE("fed fork") {
        DirectedGraph g = graph_of(4, {{0, 1}, {0, 2}, {3, 0}});
        const RewireOutcome out = alter_to_centralized(g);
        REQUIRE(out.ops.size() == 1);
        CHECK(out.ops[0] == RewireOp{EdgeOp::reverse(0, 2), CaseTag::Case1});
        CHECK(out.report_before.in_fraction == doctest::Approx(3.0 / 4.0));
        CHECK(out.report_after.in_fraction == doctest::Approx(2.0 / 4.0));
        CHECK(out.p_m == doctest::Approx(1.0 / 3.0));
        CHECK(out.p_r == doctest::Approx(1.0));
        CHECK(out.delta_nd == doctest::Approx(1.0 / 4.0));
        CHECK(out.delta_ic == doctest::Approx(0.5));
    }
    SUBCASE("driver-only component is a no-op") {
        DirectedGraph g = graph_of(3, {{0, 1}, {1, 2}});
        const RewireOutcome out = alter_to_centralized(g);
        CHECK(out.ops.empty());
        REQUIRE(out.target_component.has_value());
        CHECK(out.target_component->members == std::vector<NodeId>{0});
        CHECK(out.report_before.in_fraction == out.report_after.in_fraction);
        CHECK(out.p_m == 0.0);
        CHECK(out.delta_ic == 0.0);
        CHECK(g == graph_of(3, {{0, 1}, {1, 2}}));
    }
    SUBCASE("no input component at all") {
        DirectedGraph g = graph_of(2, {{0, 1}, {1, 0}});
        const RewireOutcome out = alter_to_centralized(g);
        CHECK(out.ops.empty());
        CHECK_FALSE(out.target_component.has_value());
        CHECK(out.report_before.perfect_matching);
        CHECK(out.delta_nd == 0.0);
    }
    SUBCASE("empty graph is rejected") {
        DirectedGraph g(0);
        CHECK_THROWS_AS(alter_to_centralized(g), EmptyGraph);
    }
}

TEST_CASE("rewire_metrics") {
    SUBCASE("from the fork run") {
        DirectedGraph g = graph_of(3, {{0, 1}, {0, 2}});
        const RewireOutcome out = alter_to_centralized(g);
        const TableRecord rec = rewire_metrics(out.report_before, out.report_after, out);
        CHECK(rec.n == 3);
        CHECK(rec.l == 2);
        CHECK(rec.ic_max_before == doctest::Approx(2.0 / 3.0));
        CHECK(rec.p_m == doctest::Approx(0.5));
        CHECK(rec.p_r == 0.0);
        CHECK(rec.delta_nd == doctest::Approx(1.0 / 3.0));
        CHECK(rec.delta_ic == doctest::Approx(0.5));
    }
    SUBCASE("no-op run gives zeros") {
        DirectedGraph g = graph_of(2, {{0, 1}, {1, 0}});
        const RewireOutcome out = alter_to_centralized(g);
        const TableRecord rec = rewire_metrics(out.report_before, out.report_after, out);
        CHECK(rec.p_m == 0.0);
        CHECK(rec.p_r == 0.0);
        CHECK(rec.delta_nd == 0.0);
        CHECK(rec.delta_ic == 0.0);
    }
    SUBCASE("node-set mismatch") {
        DirectedGraph a = graph_of(3, {{0, 1}, {0, 2}});
        DirectedGraph b = graph_of(4, {{0, 1}, {0, 2}});
        const RewireOutcome oa = alter_to_centralized(a);
        const Matching mb = maximum_matching(b);
        CHECK_THROWS_AS(rewire_metrics(oa.report_before, control_report(b, mb), oa),
                        MismatchedGraphs);
    }
}

TEST_CASE("rewiring corpus: matching preservation and detachment") {
    std::array<std::int64_t, 4> case_counts{0, 0, 0, 0};
    for (const auto& original : rewiring_corpus()) {
        if (original.node_count() == 0) continue;
        DirectedGraph g = original;
        const Matching initial_matching = maximum_matching(original);
        const ControlClassification before = classify_nodes(original, initial_matching);

        RewireOutcome out;
        try {
            out = alter_to_centralized(g);
        } catch (const PostConditionViolation& e) {
            FAIL("post-condition violated: " << e.what());
            continue;
        }

        // The initial matching is untouched and still maximum afterwards.
        const MatchingDiagnostics diag = verify_maximum_matching(g, initial_matching);
        REQUIRE(diag.valid_maximum());
        CHECK(out.report_after.n_d == out.report_before.n_d);

        const ControlClassification after = classify_nodes(g, maximum_matching(g));
        if (out.target_component.has_value()) {
            const auto& target = *out.target_component;
            std::int64_t indeg_sum = 0;
            bool all_members_input_before = true;
            for (NodeId d : target.drivers)
                indeg_sum += static_cast<std::int64_t>(original.in_neighbors(d).size());
            for (NodeId v : target.members) {
                const bool is_driver = !initial_matching.in_matched(v);
                if (!is_driver) {
                    CHECK(after.labels[v] == NodeLabel::Redundant);
                    if (before.labels[v] != NodeLabel::Input) all_members_input_before = false;
                } else {
                    CHECK(after.labels[v] == NodeLabel::Input);
                    CHECK(g.in_neighbors(v).empty());
                }
            }
            // Every pre-run in-edge of a target driver is processed once.
            CHECK(out.num_modified == indeg_sum);
            if (all_members_input_before && !target.members.empty()) {
                const double expect =
                    static_cast<double>(target.size() -
                                        static_cast<std::int64_t>(target.drivers.size())) /
                    static_cast<double>(target.size());
                CHECK(out.delta_ic == doctest::Approx(expect));
            }
        } else {
            CHECK(out.num_modified == 0);
        }

        // Nodes outside the target keep their labels.
        for (NodeId v = 0; v < original.node_count(); ++v) {
            const bool member = out.target_component.has_value() &&
                                std::binary_search(out.target_component->members.begin(),
                                                   out.target_component->members.end(), v);
            if (!member) CHECK(after.labels[v] == before.labels[v]);
        }

        CHECK(out.delta_nd >= 0.0);
        for (const auto& rop : out.ops) ++case_counts[static_cast<int>(rop.tag) - 1];
    }
    MESSAGE("observed case tags on the corpus: case1=", case_counts[0],
            " case2=", case_counts[1], " case3=", case_counts[2],
            " case4=", case_counts[3]);
}

TEST_CASE("driver reach only shrinks across the whole run") {
    for (const auto& original : rewiring_corpus()) {
        if (original.node_count() == 0) continue;
        DirectedGraph g = original;
        const Matching initial_matching = maximum_matching(original);
        const auto before = alternating_reach(original, initial_matching, ReachSide::FromUnmatchedIn);
        alter_to_centralized(g);
        const auto after = alternating_reach(g, initial_matching, ReachSide::FromUnmatchedIn);
        for (NodeId v = 0; v < original.node_count(); ++v) {
            if (after.in_copies[v]) CHECK(before.in_copies[v]);
            if (after.out_copies[v]) CHECK(before.out_copies[v]);
        }
    }
}

TEST_CASE("surviving reach is invariant: every refresh cadence agrees") {
    for (const auto& original : rewiring_corpus()) {
        if (original.node_count() == 0) continue;
        DirectedGraph once = original;
        const RewireOutcome base = alter_to_centralized(once);
        for (ReachRefresh refresh : {ReachRefresh::PerDriver, ReachRefresh::PerEdge}) {
            DirectedGraph g = original;
            AlterOptions options;
            options.refresh = refresh;
            const RewireOutcome out = alter_to_centralized(g, options);
            REQUIRE(out.ops == base.ops);
            CHECK(g == once);
        }
    }
}

TEST_CASE("outcome JSON carries the op log") {
    DirectedGraph g = graph_of(4, {{0, 1}, {0, 2}, {3, 0}});
    const RewireOutcome out = alter_to_centralized(g);
    const std::string json = outcome_json(out);
    for (const char* key :
         {"\"ops\"", "\"report_before\"", "\"report_after\"", "\"target_component\"",
          "\"num_modified\"", "\"p_m\"", "\"p_r\"", "\"delta_nd\"", "\"delta_ic\"",
          "\"reverse\"", "\"case\""})
        CHECK(json.find(key) != std::string::npos);
}
