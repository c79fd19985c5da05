/*
 * Copyright 2026 the otsectest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <random>

#include "otsectest/error.hpp"
#include "otsectest/testgen.hpp"
#include "support/oracles.hpp"

using namespace otsectest;
using namespace otsectest::testgen;

namespace {

const char* kSafetyMachine =
    "state normal initial\n"
    "state tripped\n"
    "trans normal -reset/ok-> normal\n"
    "trans normal -shutdown/alarm-> tripped\n"
    "trans tripped -reset/ok-> normal\n"
    "trans tripped -shutdown/alarm-> tripped\n";

Fsm two_state_chain() {
    return make_fsm({"s0", "s1"}, "s0", {{"s0", "a", "s1", std::nullopt}});
}

}  // namespace

TEST_SUITE("testgen") {
    TEST_CASE("make_fsm derives a sorted, deduplicated input alphabet") {
        Fsm fsm = make_fsm({"s0", "s1"}, "s0",
                           {{"s0", "b", "s1", std::nullopt},
                            {"s1", "a", "s0", std::nullopt},
                            {"s1", "b", "s1", std::nullopt}});
        CHECK(fsm.inputs == std::vector<std::string>{"a", "b"});
    }

    TEST_CASE("make_fsm rejects malformed machines") {
        CHECK_THROWS_AS(make_fsm({"s0", "s0"}, "s0", {}), Error);
        CHECK_THROWS_AS(make_fsm({"s0"}, "missing", {}), Error);
        CHECK_THROWS_AS(make_fsm({"s0"}, "s0", {{"s0", "a", "ghost", std::nullopt}}), Error);
        CHECK_THROWS_AS(make_fsm({"s0", "s1"}, "s0",
                                 {{"s0", "a", "s0", std::nullopt},
                                  {"s0", "a", "s1", std::nullopt}}),
                        Error);
        try {
            make_fsm({"s0", "s1"}, "s0",
                     {{"s0", "a", "s0", std::nullopt}, {"s0", "a", "s1", std::nullopt}});
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NondeterministicMachine);
        }
    }

    TEST_CASE("run_inputs walks the machine and reports undefined inputs") {
        Fsm fsm = to_fsm(parse_machine(kSafetyMachine), 64);
        auto steps = run_inputs(fsm, {"shutdown", "reset"});
        REQUIRE(steps.size() == 2);
        CHECK(steps[0].state == "tripped");
        CHECK(steps[0].output == "alarm");
        CHECK(steps[1].state == "normal");
        CHECK(steps[1].output == "ok");

        Fsm chain = two_state_chain();
        CHECK_THROWS_AS(run_inputs(chain, {"a", "a"}), Error);
        try {
            run_inputs(chain, {"a", "a"});
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UndefinedInput);
        }
    }

    TEST_CASE("a single-state machine is covered by the empty sequence") {
        Fsm fsm = make_fsm({"lone"}, "lone", {});
        auto cover = generate_state_cover(fsm);
        REQUIRE(cover.size() == 1);
        CHECK(cover.at("lone").inputs.empty());
    }

    TEST_CASE("state cover finds the one-step path") {
        auto cover = generate_state_cover(two_state_chain());
        REQUIRE(cover.size() == 2);
        CHECK(cover.at("s0").inputs.empty());
        CHECK(cover.at("s1").inputs == std::vector<std::string>{"a"});
        CHECK(cover.at("s1").covered == std::set<std::size_t>{0});
    }

    TEST_CASE("unreachable states are absent from the cover") {
        Fsm fsm = make_fsm({"s0", "s1", "s2"}, "s0", {{"s0", "a", "s1", std::nullopt}});
        auto cover = generate_state_cover(fsm);
        CHECK(cover.count("s2") == 0);
        CHECK(cover.size() == 2);
    }

    TEST_CASE("state cover breaks ties toward the smaller input token") {
        Fsm fsm = make_fsm({"s0", "s1"}, "s0",
                           {{"s0", "b", "s1", std::nullopt}, {"s0", "a", "s1", std::nullopt}});
        auto cover = generate_state_cover(fsm);
        CHECK(cover.at("s1").inputs == std::vector<std::string>{"a"});
    }

    TEST_CASE("a self-loop is toured by its own input") {
        Fsm fsm = make_fsm({"s0"}, "s0", {{"s0", "a", "s0", std::nullopt}});
        TestSequence tour = generate_transition_tour(fsm);
        CHECK(tour.inputs == std::vector<std::string>{"a"});
        CHECK(tour.covered == std::set<std::size_t>{0});
    }

    TEST_CASE("a two-state cycle is toured in one round") {
        Fsm fsm = make_fsm({"s0", "s1"}, "s0",
                           {{"s0", "a", "s1", std::nullopt}, {"s1", "b", "s0", std::nullopt}});
        TestSequence tour = generate_transition_tour(fsm);
        CHECK(tour.inputs == std::vector<std::string>{"a", "b"});
        CHECK(tour.covered == std::set<std::size_t>{0, 1});
    }

    TEST_CASE("a transition out of an unreachable state fails the tour") {
        Fsm fsm = make_fsm({"s0", "s2"}, "s0",
                           {{"s0", "a", "s0", std::nullopt}, {"s2", "a", "s0", std::nullopt}});
        CHECK_THROWS_AS(generate_transition_tour(fsm), Error);
        try {
            generate_transition_tour(fsm);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnreachableTransition);
        }
    }

    TEST_CASE("the shutdown machine is toured with both operations from every state") {
        Fsm fsm = to_fsm(parse_machine(kSafetyMachine), 64);
        TestSequence tour = generate_transition_tour(fsm);
        CHECK(tour.inputs == std::vector<std::string>{"reset", "shutdown", "reset", "shutdown",
                                                      "shutdown"});
        CHECK(tour.covered.size() == 4);
        CHECK(coverage(fsm, {tour}) == 1.0);
        // The tour's expected outputs follow the machine's annotations.
        CHECK(tour.expected_outputs ==
              std::vector<std::optional<std::string>>{"ok", "alarm", "ok", "alarm", "alarm"});
    }

    TEST_CASE("unfolding a variable-free machine keeps the skeleton") {
        Efsm efsm = parse_machine("state a initial\nstate b\ntrans a -x-> b\ntrans b -y-> a\n");
        Fsm fsm = unfold_efsm(efsm, 16);
        CHECK(fsm.states == std::vector<std::string>{"a@", "b@"});
        CHECK(fsm.initial == "a@");
        CHECK(fsm.transitions.size() == 2);
    }

    TEST_CASE("unfolding pairs control states with reachable valuations") {
        Efsm efsm = parse_machine(
            "state run initial\n"
            "var x 0 2 0\n"
            "trans run -tick-> run if x < 2 do x := x + 1\n");
        Fsm fsm = unfold_efsm(efsm, 16);
        CHECK(fsm.states == std::vector<std::string>{"run@x=0", "run@x=1", "run@x=2"});
        CHECK(fsm.transitions.size() == 2);
        CHECK(fsm.initial == "run@x=0");
    }

    TEST_CASE("unfolding stops at the state budget") {
        Efsm efsm = parse_machine(
            "state run initial\n"
            "var x 0 1000000 0\n"
            "trans run -tick-> run if x < 1000000 do x := x + 1\n");
        CHECK_THROWS_AS(unfold_efsm(efsm, 1000), Error);
        try {
            unfold_efsm(efsm, 1000);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::BudgetExceeded);
        }
    }

    TEST_CASE("updates that would leave a variable's range disable the transition") {
        Efsm efsm = parse_machine(
            "state run initial\n"
            "var x 0 2 0\n"
            "trans run -tick-> run do x := x + 1\n");
        // Without a guard the increment stops by bounds alone: x=2 has no step.
        Fsm fsm = unfold_efsm(efsm, 16);
        CHECK(fsm.states.size() == 3);
        CHECK(fsm.transitions.size() == 2);
    }

    TEST_CASE("overlapping guards on one input are rejected during unfolding") {
        Efsm efsm = parse_machine(
            "state run initial\n"
            "var x 0 4 0\n"
            "trans run -tick-> run if x < 3 do x := x + 1\n"
            "trans run -tick/other-> run if x < 2 do x := x + 2\n");
        CHECK_THROWS_AS(unfold_efsm(efsm, 64), Error);
        try {
            unfold_efsm(efsm, 64);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NondeterministicMachine);
        }
    }

    TEST_CASE("guard-separated transitions on one input unfold fine") {
        Efsm efsm = parse_machine(
            "state run initial\n"
            "var x 0 3 0\n"
            "trans run -tick-> run if x < 2 do x := x + 1\n"
            "trans run -tick/wrap-> run if x >= 2 do x := 0\n");
        Fsm fsm = unfold_efsm(efsm, 64);
        CHECK(fsm.states.size() == 3);
        CHECK(fsm.transitions.size() == 3);
    }

    TEST_CASE("coverage counts distinct transitions only") {
        Fsm fsm = make_fsm({"s0", "s1"}, "s0",
                           {{"s0", "a", "s1", std::nullopt}, {"s1", "b", "s0", std::nullopt}});
        TestSequence tour = generate_transition_tour(fsm);
        CHECK(coverage(fsm, {tour}) == 1.0);
        CHECK(coverage(fsm, {}) == 0.0);

        TestSequence half;
        half.inputs = {"a"};
        half.expected_outputs = {std::nullopt};
        CHECK(coverage(fsm, {half}) == 0.5);
    }

    TEST_CASE("coverage of a transitionless machine is full by definition") {
        Fsm fsm = make_fsm({"s0"}, "s0", {});
        CHECK(coverage(fsm, {}) == 1.0);
    }

    TEST_CASE("coverage rejects sequences the machine cannot run") {
        Fsm fsm = two_state_chain();
        TestSequence bad;
        bad.inputs = {"a", "a"};
        bad.expected_outputs = {std::nullopt, std::nullopt};
        CHECK_THROWS_AS(coverage(fsm, {bad}), Error);
        try {
            coverage(fsm, {bad});
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UndefinedInput);
        }
    }

    TEST_CASE("machine descriptions round-trip through their text form") {
        Efsm machine = parse_machine(
            "state run initial\n"
            "state halt\n"
            "var cycle 0 2 0\n"
            "trans run -scan-> run if cycle < 2 do cycle := cycle + 1\n"
            "trans run -stop/stopped-> halt if cycle = 2 do cycle := 0\n");
        CHECK(parse_machine(serialize_machine(machine)) == machine);
        CHECK(machine.variables.at("cycle").max == 2);
        REQUIRE(machine.transitions.size() == 2);
        CHECK(machine.transitions[1].output == "stopped");
    }

    TEST_CASE("machine descriptions skip blanks and comments") {
        Efsm machine = parse_machine("# comment\n\nstate a initial\n\ntrans a -x-> a\n");
        CHECK(machine.states == std::vector<std::string>{"a"});
        CHECK(machine.transitions.size() == 1);
    }

    TEST_CASE("machine descriptions reject unknown directives and bad arrows") {
        CHECK_THROWS_AS(parse_machine("flank a\n"), Error);
        CHECK_THROWS_AS(parse_machine("state a initial\ntrans a x a\n"), Error);
        CHECK_THROWS_AS(parse_machine("trans a -x-> a\n"), Error);  // no states
    }

    TEST_CASE("guards and updates evaluate over integer valuations") {
        Guard guard = parse_guard("x < 2 AND y >= 1");
        CHECK(holds(guard, {{"x", 1}, {"y", 1}}));
        CHECK_FALSE(holds(guard, {{"x", 2}, {"y", 1}}));
        CHECK_FALSE(holds(guard, {{"x", 1}, {"y", 0}}));

        LinExpr expr = parse_linexpr("2 * x + y - 1");
        CHECK(evaluate(expr, {{"x", 3}, {"y", 4}}) == 9);
        CHECK(format_guard(parse_guard(format_guard(guard))) == format_guard(guard));
    }

    TEST_CASE("efsm construction validates variable bounds and references") {
        CHECK_THROWS_AS(make_efsm({"a"}, "a", {{"x", {0, 2, 5}}}, {}), Error);
        EfsmTransition t;
        t.from = "a";
        t.input = "i";
        t.to = "a";
        t.guard = parse_guard("ghost > 0");
        CHECK_THROWS_AS(make_efsm({"a"}, "a", {}, {t}), Error);
    }

    TEST_CASE("a machine without variables converts to its own skeleton") {
        Efsm efsm = parse_machine(kSafetyMachine);
        Fsm fsm = to_fsm(efsm, 64);
        CHECK(fsm.states == std::vector<std::string>{"normal", "tripped"});
        CHECK(fsm.initial == "normal");
        CHECK(fsm.transitions.size() == 4);
    }

    TEST_CASE("guards force the conversion through unfolding") {
        Efsm efsm = parse_machine(
            "state a initial\n"
            "trans a -x-> a if 1 < 2\n");
        Fsm fsm = to_fsm(efsm, 64);
        CHECK(fsm.states == std::vector<std::string>{"a@"});
    }

    TEST_CASE("tours from random machines replay to full coverage") {
        std::mt19937_64 rng(42);
        for (int round = 0; round < 60; ++round) {
            Fsm fsm = testsupport::oracle::random_fsm(rng, 10, 4);
            TestSequence tour = generate_transition_tour(fsm);
            auto covered = testsupport::oracle::replay(fsm, tour.inputs);
            REQUIRE(covered.has_value());
            CHECK(covered->size() == fsm.transitions.size());
            CHECK(coverage(fsm, {tour}) == 1.0);
        }
    }

    TEST_CASE("state-cover sequences are as short as breadth-first distances") {
        std::mt19937_64 rng(43);
        for (int round = 0; round < 60; ++round) {
            Fsm fsm = testsupport::oracle::random_fsm(rng, 10, 4);
            auto cover = generate_state_cover(fsm);
            auto distances = testsupport::oracle::bfs_distances(fsm);
            REQUIRE(cover.size() == distances.size());
            for (const auto& [state, seq] : cover) {
                REQUIRE(distances.count(state) == 1);
                CHECK(seq.inputs.size() == distances.at(state));
            }
        }
    }

    TEST_CASE("generation is deterministic") {
        std::mt19937_64 rng(44);
        Fsm fsm = testsupport::oracle::random_fsm(rng, 8, 3);
        CHECK(generate_transition_tour(fsm) == generate_transition_tour(fsm));
        CHECK(generate_state_cover(fsm) == generate_state_cover(fsm));
    }
}
