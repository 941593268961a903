#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "riskeq/market.hpp"
#include "riskeq/risk.hpp"
#include "riskeq/shortfall.hpp"

namespace riskeq {

// Everything a command needs: the market, the ambiguity set, and the
// shortfall configuration (identity loss at threshold zero unless the
// file says otherwise).
struct Scenario {
    Market market;
    AmbiguitySet ambiguity;
    LossFunction loss = LossFunction::identity();
    double threshold = 0.0;

    Scenario(Market m, AmbiguitySet a);
};

// JSON text -> Scenario, with validation errors naming the field.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Deterministic serialized form: fixed key order, shortest-round-trip
// numbers, no whitespace. parse(canonical(s)) == s field-for-field.
std::string canonical_scenario_text(const Scenario& s);

// Content digest of the canonical form, echoed into every report.
std::string scenario_digest(const Scenario& s);

// A payoff file is either a bare JSON array or {"values": [...]}.
Payoff load_payoff_file(const std::string& path, std::size_t states);

// "0.9,0.1" -> {0.9, 0.1}; used for inline vector flags.
std::vector<double> parse_number_list(const std::string& text);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace riskeq
