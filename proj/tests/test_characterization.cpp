#include <utility>
#include <vector>

#include "doctest.h"
#include "flts/characterization.hpp"
#include "flts/errors.hpp"
#include "flts/eval.hpp"
#include "flts/fragments.hpp"
#include "flts/model.hpp"
#include "flts/simulation.hpp"
#include "flts/syntax.hpp"
#include "testutil.hpp"

using namespace flts;

namespace {

Degree d(const char* s) { return Degree::parse(s); }

std::vector<Degree> degrees(const std::vector<const char*>& texts) {
    std::vector<Degree> out;
    for (const char* t : texts) out.push_back(d(t));
    return out;
}

const std::vector<Fragment>& all_fragments() {
    static const std::vector<Fragment> fs = {Fragment::FedKDelta, Fragment::FedPdl,
                                             Fragment::FpdK, Fragment::FpdPdl};
    return fs;
}

}  // namespace

TEST_CASE("pooled constants merge both degree pools") {
    CHECK(pooled_constants(testutil::pair1_left(), testutil::pair1_right()) ==
          degrees({"0", "0.4", "0.5", "0.6", "0.7", "0.8", "1"}));
    CHECK(pooled_constants(testutil::pair2_left(), testutil::pair2_right()) ==
          degrees({"0", "0.5", "0.6", "0.7", "0.8", "1"}));
}

TEST_CASE("each fragment names the simulation kind that preserves it") {
    CHECK(fragment_sim_kind(Fragment::FedKDelta) == SimKind::Forward);
    CHECK(fragment_sim_kind(Fragment::FedPdl) == SimKind::Forward);
    CHECK(fragment_sim_kind(Fragment::FpdK) == SimKind::Directed);
    CHECK(fragment_sim_kind(Fragment::FpdPdl) == SimKind::Directed);
}

TEST_CASE("sampled formulas never decrease along the worked simulations") {
    const std::vector<std::pair<Flts, Flts>> pairs = {
        {testutil::pair1_left(), testutil::pair1_right()},
        {testutil::pair2_left(), testutil::pair2_right()}};
    for (const auto& [m, mp] : pairs) {
        for (Fragment frag : all_fragments()) {
            const SimKind kind = fragment_sim_kind(frag);
            const CrispRelation z = refine(m, mp, kind).largest;
            for (TNormKind tnorm : testutil::all_tnorms()) {
                LogicalPreorderParams params;
                params.fragment = frag;
                params.tnorm = tnorm;
                params.max_depth = 5;
                params.constants = pooled_constants(m, mp);
                PreservationReport rep = preservation_test(m, mp, z, params, 60, 0xfeed);
                CAPTURE(fragment_name(frag));
                CAPTURE(tnorm_name(tnorm));
                CHECK(rep.precondition.ok());
                CHECK(rep.samples == 60);
                CHECK(rep.violations.empty());
                CHECK(rep.ok());
            }
        }
    }
}

TEST_CASE("preservation refuses to sample over a non-simulation") {
    const Flts m = testutil::pair1_left();
    const Flts mp = testutil::pair1_right();
    LogicalPreorderParams params;
    params.constants = pooled_constants(m, mp);

    // The full product is not a forward simulation.
    PreservationReport rep =
        preservation_test(m, mp, CrispRelation::full(m, mp), params, 50, 1);
    CHECK_FALSE(rep.precondition.ok());
    CHECK(rep.samples == 0);
    CHECK_FALSE(rep.ok());

    // A forward simulation is not enough for the box fragments.
    params.fragment = Fragment::FpdK;
    PreservationReport dir =
        preservation_test(m, mp, largest_simulation(m, mp), params, 50, 1);
    CHECK_FALSE(dir.precondition.ok());
    CHECK(dir.samples == 0);
}

TEST_CASE("the enumerated logical preorder equals the simulation fixpoint") {
    const std::vector<std::pair<Flts, Flts>> pairs = {
        {testutil::pair1_left(), testutil::pair1_right()},
        {testutil::pair2_left(), testutil::pair2_right()}};
    // Measured saturation depths, kept as stability goldens.
    const int expected_depth[2][2] = {{9, 8}, {7, 6}};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [m, mp] = pairs[i];
        for (Fragment frag : {Fragment::FedKDelta, Fragment::FpdK}) {
            LogicalPreorderParams params;
            params.fragment = frag;
            params.max_depth = 30;
            params.constants = pooled_constants(m, mp);
            HmResult hm = hm_relation(m, mp, params);
            CAPTURE(fragment_name(frag));
            CHECK(hm.converged);
            CHECK(hm.relation == refine(m, mp, fragment_sim_kind(frag)).largest);
            CHECK(hm.depth_reached == expected_depth[i][frag == Fragment::FpdK ? 1 : 0]);
            CHECK(hm.generators > 0);
        }
    }

    const Signature sig({"r"}, {"p"});
    for (std::uint64_t seed = 600; seed < 608; ++seed) {
        const Flts m = random_flts(3, sig, 0.5, testutil::grid5(), seed);
        const Flts mp = random_flts(3, sig, 0.5, testutil::grid5(), seed + 9000);
        for (Fragment frag : {Fragment::FedKDelta, Fragment::FpdK}) {
            LogicalPreorderParams params;
            params.fragment = frag;
            params.max_depth = 30;
            params.constants = pooled_constants(m, mp);
            HmResult hm = hm_relation(m, mp, params);
            CAPTURE(seed);
            CAPTURE(fragment_name(frag));
            CHECK(hm.converged);
            CHECK(hm.relation == refine(m, mp, fragment_sim_kind(frag)).largest);
        }
    }
}

TEST_CASE("the preorder enumeration validates its inputs") {
    const Flts m = testutil::pair1_left();
    const Flts mp = testutil::pair1_right();
    LogicalPreorderParams params;

    params.fragment = Fragment::FedPdl;
    CHECK_THROWS_AS(hm_relation(m, mp, params), ValidationError);
    params.fragment = Fragment::FpdPdl;
    CHECK_THROWS_AS(hm_relation(m, mp, params), ValidationError);

    params.fragment = Fragment::FedKDelta;
    params.max_depth = -1;
    CHECK_THROWS_AS(hm_relation(m, mp, params), ValidationError);

    const Flts other(Signature({"t"}, {"p"}), {"w"}, {}, {});
    CHECK_THROWS_AS(hm_relation(m, other, LogicalPreorderParams{}), ValidationError);
}

TEST_CASE("under other t-norms the enumeration over-approximates the fixpoint") {
    const Flts m = testutil::pair2_left();
    const Flts mp = testutil::pair2_right();
    for (TNormKind tnorm : {TNormKind::Lukasiewicz, TNormKind::Product}) {
        for (Fragment frag : {Fragment::FedKDelta, Fragment::FpdK}) {
            LogicalPreorderParams params;
            params.fragment = frag;
            params.tnorm = tnorm;
            // Non-Goedel residua leave the finite degree universe, so the
            // enumeration is only practical at small depths.
            params.max_depth = 2;
            params.constants = pooled_constants(m, mp);
            HmResult hm = hm_relation(m, mp, params);
            const CrispRelation fix = refine(m, mp, fragment_sim_kind(frag)).largest;
            // Simulation pairs can never be separated, whatever the t-norm.
            for (const auto& pr : fix.pairs()) CHECK(hm.relation.contains(pr.first, pr.second));
        }
    }
}

TEST_CASE("witnesses separate every pair outside the largest relation") {
    std::vector<std::pair<Flts, Flts>> pairs = {
        {testutil::pair1_left(), testutil::pair1_right()},
        {testutil::pair2_left(), testutil::pair2_right()}};
    const Signature sig({"r", "s"}, {"p", "q"});
    for (std::uint64_t seed = 700; seed < 712; ++seed)
        pairs.emplace_back(random_flts(4, sig, 0.5, testutil::grid4(), seed),
                           random_flts(3, sig, 0.5, testutil::grid4(), seed + 7000));

    for (const auto& [m, mp] : pairs) {
        for (SimKind kind : {SimKind::Forward, SimKind::Directed}) {
            const Distinguisher dist(m, mp, kind);
            CHECK(dist.largest() == refine(m, mp, kind).largest);
            const Fragment expected_fragment =
                kind == SimKind::Forward ? Fragment::FedKDelta : Fragment::FpdK;
            for (int x = 0; x < m.state_count(); ++x)
                for (int xp = 0; xp < mp.state_count(); ++xp) {
                    if (dist.largest().contains(x, xp)) {
                        DistinguishResult res = dist.query(x, xp);
                        CHECK(res.related);
                        CHECK(res.witness == nullptr);
                        continue;
                    }
                    for (TNormKind tnorm : testutil::all_tnorms()) {
                        DistinguishResult res = dist.query(x, xp, tnorm);
                        CAPTURE(m.state_name(x));
                        CAPTURE(mp.state_name(xp));
                        CAPTURE(tnorm_name(tnorm));
                        CHECK_FALSE(res.related);
                        REQUIRE(res.witness != nullptr);
                        CHECK(res.fragment == expected_fragment);
                        CHECK(classify(*res.witness).in(expected_fragment));
                        CHECK(res.value_left > res.value_right);
                        // The reported values are honest evaluations.
                        CHECK(eval_formula(m, res.witness, tnorm).at(x) == res.value_left);
                        CHECK(eval_formula(mp, res.witness, tnorm).at(xp) ==
                              res.value_right);
                    }
                }
        }
    }
}

TEST_CASE("worked witness formulas are reproduced exactly") {
    const Flts m = testutil::pair1_left();
    const Flts mp = testutil::pair1_right();
    const int u1 = m.state_index("u1");
    const int u2 = m.state_index("u2");
    const int u4 = m.state_index("u4");
    const int v1 = mp.state_index("v1");

    // Label failure: the label of p shrinks from 0.8 to 0.7.
    DistinguishResult label = distinguishing_formula(m, u4, mp, v1, SimKind::Forward);
    REQUIRE_FALSE(label.related);
    CHECK(to_string(label.witness) == "D (0.8 -> p)");
    CHECK(label.value_left == Degree::one());
    CHECK(label.value_right == Degree::zero());

    // Forward failure bottoms out in the label witness one step deeper.
    DistinguishResult fwd = distinguishing_formula(m, u1, mp, v1, SimKind::Forward);
    REQUIRE_FALSE(fwd.related);
    CHECK(to_string(fwd.witness) == "<r> D (0.6 -> <r> D (0 -> p))");
    CHECK(fwd.value_left == d("0.6"));
    CHECK(fwd.value_right == d("0.5"));

    // (u2,v1) is forward-related but directed-distinguished via a backward box.
    CHECK(distinguishing_formula(m, u2, mp, v1, SimKind::Forward).related);
    DistinguishResult dir = distinguishing_formula(m, u2, mp, v1, SimKind::Directed);
    REQUIRE_FALSE(dir.related);
    CHECK(to_string(dir.witness) ==
          "<r> (D (1 -> [r] 0.45) & D (0.4 -> <r> D (1 -> D (0.8 -> p))))");
    CHECK(dir.value_left == d("0.5"));
    CHECK(dir.value_right == d("0"));
    // The same witness separates the pair under the other t-norms too.
    for (TNormKind tnorm : testutil::all_tnorms()) {
        DistinguishResult r = distinguishing_formula(m, u2, mp, v1, SimKind::Directed, tnorm);
        CHECK(r.value_left > r.value_right);
    }
}

TEST_CASE("witness queries validate their pair") {
    const Flts m = testutil::pair1_left();
    const Flts mp = testutil::pair1_right();
    const Distinguisher dist(m, mp, SimKind::Forward);
    CHECK_THROWS_AS(dist.query(4, 0), ValidationError);
    CHECK_THROWS_AS(dist.query(0, 2), ValidationError);
    CHECK_THROWS_AS(dist.query(-1, 0), ValidationError);
}

TEST_CASE("a signature without propositions limits the existential witnesses") {
    // Left can take an r-step, right cannot; no proposition exists to anchor
    // a crisp existential witness, while the positive fragment has constants.
    const Flts m(Signature({"r"}, {}), {"a", "a2"}, {{"a", "r", "a2", d("1")}}, {});
    const Flts mp(Signature({"r"}, {}), {"b"}, {}, {});

    const Distinguisher fwd(m, mp, SimKind::Forward);
    CHECK_FALSE(fwd.largest().contains(0, 0));
    CHECK_THROWS_AS(fwd.query(0, 0), ValidationError);

    const Distinguisher dir(m, mp, SimKind::Directed);
    CHECK_FALSE(dir.largest().contains(0, 0));
    DistinguishResult res = dir.query(0, 0);
    REQUIRE_FALSE(res.related);
    CHECK(to_string(res.witness) == "<r> 1");
    CHECK(res.value_left == Degree::one());
    CHECK(res.value_right == Degree::zero());
}
