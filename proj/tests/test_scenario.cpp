#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "riskeq/errors.hpp"
#include "riskeq/scenario.hpp"

using namespace riskeq;

namespace {

const std::string kBase = R"({
  "states": 2,
  "assets": [[1, 0], [0, 1]],
  "prices": [0.5, 0.5],
  "endowment": [1, 1],
  "wealth": 1.0,
  "ambiguity": [[0.3, 0.7], [0.6, 0.4]],
  "shortfall": {"loss": "identity", "lambda": 0.0}
})";

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/riskeq_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

bool throws_naming(const std::string& text, const std::string& needle) {
    try {
        parse_scenario(text);
    } catch (const InputError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("well-formed text parses into the expected scenario") {
    const Scenario s = parse_scenario(kBase);
    CHECK(s.market.num_states() == 2);
    CHECK(s.market.num_assets() == 2);
    CHECK(s.market.prices()[0] == 0.5);
    CHECK(s.market.wealth() == 1.0);
    CHECK(s.ambiguity.size() == 2);
    CHECK(s.ambiguity.vertex(0)[1] == 0.7);
    CHECK(s.loss.kind == LossKind::Identity);
    CHECK(s.threshold == 0.0);
}

TEST_CASE("parse, serialize, parse is the identity") {
    const Scenario first = parse_scenario(kBase);
    const std::string canon = canonical_scenario_text(first);
    const Scenario second = parse_scenario(canon);
    CHECK(canonical_scenario_text(second) == canon);

    CHECK(second.market.num_states() == first.market.num_states());
    for (std::size_t j = 0; j < first.market.num_assets(); ++j) {
        CHECK(second.market.columns()[j] == first.market.columns()[j]);
        CHECK(second.market.prices()[j] == first.market.prices()[j]);
    }
    CHECK(second.market.endowment() == first.market.endowment());
    CHECK(second.market.wealth() == first.market.wealth());
    for (std::size_t k = 0; k < first.ambiguity.size(); ++k) {
        CHECK(second.ambiguity.vertex(k).weights() ==
              first.ambiguity.vertex(k).weights());
    }
    CHECK(second.loss.kind == first.loss.kind);
    CHECK(second.threshold == first.threshold);
}

TEST_CASE("key order in the file does not affect the canonical form") {
    const std::string shuffled = R"({
      "ambiguity": [[0.3, 0.7], [0.6, 0.4]],
      "wealth": 1.0,
      "shortfall": {"lambda": 0.0, "loss": "identity"},
      "prices": [0.5, 0.5],
      "endowment": [1, 1],
      "assets": [[1, 0], [0, 1]],
      "states": 2
    })";
    CHECK(canonical_scenario_text(parse_scenario(shuffled)) ==
          canonical_scenario_text(parse_scenario(kBase)));
    CHECK(scenario_digest(parse_scenario(shuffled)) ==
          scenario_digest(parse_scenario(kBase)));
}

TEST_CASE("digest moves exactly with semantic changes") {
    const Scenario base = parse_scenario(kBase);
    const std::string base_digest = scenario_digest(base);
    CHECK(base_digest.rfind("fnv1a:", 0) == 0);
    CHECK(base_digest.size() == 6 + 16);

    // identical content, different formatting: same digest
    std::string spaced = kBase;
    spaced.insert(1, "\n\n   ");
    CHECK(scenario_digest(parse_scenario(spaced)) == base_digest);

    const auto mutated_digest = [&](const std::string& from, const std::string& to) {
        std::string text = kBase;
        const auto at = text.find(from);
        REQUIRE(at != std::string::npos);
        text.replace(at, from.size(), to);
        return scenario_digest(parse_scenario(text));
    };

    CHECK(mutated_digest("\"prices\": [0.5, 0.5]", "\"prices\": [0.5, 0.6]") != base_digest);
    CHECK(mutated_digest("\"endowment\": [1, 1]", "\"endowment\": [1, 2]") != base_digest);
    CHECK(mutated_digest("\"wealth\": 1.0", "\"wealth\": 1.5") != base_digest);
    CHECK(mutated_digest("[0.6, 0.4]", "[0.5, 0.5]") != base_digest);
    CHECK(mutated_digest("\"lambda\": 0.0", "\"lambda\": 0.25") != base_digest);
    CHECK(mutated_digest("\"loss\": \"identity\"", "\"loss\": \"positive_part\"") !=
          base_digest);
}

TEST_CASE("validation failures name the offending field") {
    CHECK(throws_naming(R"({"states": 2})", "assets"));

    std::string text = kBase;
    text.replace(text.find("\"assets\": [[1, 0], [0, 1]]"),
                 std::string("\"assets\": [[1, 0], [0, 1]]").size(),
                 "\"assets\": [[1, 0, 0], [0, 1]]");
    CHECK(throws_naming(text, "assets[0]"));

    text = kBase;
    text.replace(text.find("\"prices\": [0.5, 0.5]"),
                 std::string("\"prices\": [0.5, 0.5]").size(),
                 "\"prices\": [0.5]");
    CHECK(throws_naming(text, "prices"));

    text = kBase;
    text.replace(text.find("[0.3, 0.7]"), std::string("[0.3, 0.7]").size(),
                 "[0.3, 0.8]");
    CHECK(throws_naming(text, "ambiguity"));

    text = kBase;
    text.replace(text.find("\"endowment\": [1, 1]"),
                 std::string("\"endowment\": [1, 1]").size(),
                 "\"endowment\": [-1, 1]");
    CHECK_THROWS_AS(parse_scenario(text), InputError);

    // unknown top-level key
    text = kBase;
    text.insert(1, "\"frobnicate\": 1,");
    CHECK(throws_naming(text, "frobnicate"));

    // unknown shortfall key
    text = kBase;
    text.replace(text.find("{\"loss\": \"identity\", \"lambda\": 0.0}"),
                 std::string("{\"loss\": \"identity\", \"lambda\": 0.0}").size(),
                 "{\"loss\": \"identity\", \"lambda\": 0.0, \"gamma\": 1}");
    CHECK(throws_naming(text, "gamma"));

    // malformed JSON
    CHECK_THROWS_AS(parse_scenario("{\"states\": "), InputError);

    // bond column referencing a non-unit column
    text = kBase;
    text.insert(1, "\"bond_column\": 0,");
    CHECK_THROWS_AS(parse_scenario(text), InputError);
}

TEST_CASE("shortfall block round-trips each loss kind") {
    for (const std::string& block :
         {std::string(R"({"loss": "linear", "lambda": 0.5, "slope": 2.0, "intercept": 0.25})"),
          std::string(R"({"loss": "exponential", "lambda": 0.5, "rate": 1.5})"),
          std::string(R"({"loss": "positive_part", "lambda": 0.1})")}) {
        std::string text = kBase;
        text.replace(text.find("{\"loss\": \"identity\", \"lambda\": 0.0}"),
                     std::string("{\"loss\": \"identity\", \"lambda\": 0.0}").size(),
                     block);
        const Scenario s = parse_scenario(text);
        const Scenario back = parse_scenario(canonical_scenario_text(s));
        CHECK(back.loss.kind == s.loss.kind);
        CHECK(back.loss.k == s.loss.k);
        CHECK(back.loss.intercept == s.loss.intercept);
        CHECK(back.threshold == s.threshold);
    }
}

TEST_CASE("repository fixtures parse and carry stable digests") {
    const std::string dir = RISKEQ_SCENARIO_DIR;
    for (const std::string name :
         {"arrow2", "exchange2", "singleton", "bondonly3", "robust2", "mispriced2"}) {
        const Scenario s = load_scenario(dir + "/" + name + ".json");
        CHECK(s.market.num_states() >= 2);
        CHECK(scenario_digest(s) ==
              scenario_digest(parse_scenario(canonical_scenario_text(s))));
    }
}

TEST_CASE("payoff files accept both accepted shapes") {
    const std::string bare = write_temp("payoff_bare.json", "[1, 0, 0]");
    const Payoff a = load_payoff_file(bare, 3);
    CHECK(a.size() == 3);
    CHECK(a[0] == 1.0);

    const std::string wrapped =
        write_temp("payoff_wrapped.json", R"({"values": [2, -1]})");
    const Payoff b = load_payoff_file(wrapped, 2);
    CHECK(b[1] == -1.0);

    const std::string bad_shape = write_temp("payoff_bad.json", R"({"vals": [1]})");
    CHECK_THROWS_AS(load_payoff_file(bad_shape, 1), InputError);

    CHECK_THROWS_AS(load_payoff_file(bare, 2), InputError);  // wrong length
    CHECK_THROWS_AS(load_payoff_file("/tmp/riskeq_missing_file.json", 2), InputError);

    std::remove(bare.c_str());
    std::remove(wrapped.c_str());
    std::remove(bad_shape.c_str());
}

TEST_CASE("inline number lists parse strictly") {
    const std::vector<double> v = parse_number_list("0.9,0.1");
    REQUIRE(v.size() == 2);
    CHECK(v[0] == 0.9);
    CHECK(v[1] == 0.1);

    CHECK(parse_number_list("1").size() == 1);
    CHECK(parse_number_list("-1.5,2e-3,4").size() == 3);
    CHECK_THROWS_AS(parse_number_list(""), InputError);
    CHECK_THROWS_AS(parse_number_list("1,,2"), InputError);
    CHECK_THROWS_AS(parse_number_list("abc"), InputError);
    CHECK_THROWS_AS(parse_number_list("1,2,"), InputError);
}

TEST_CASE("digest helper matches the reference fnv1a vectors") {
    // published reference values for the 64-bit offset-basis variant
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
