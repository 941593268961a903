#include "riskeq/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "riskeq/errors.hpp"

namespace riskeq {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) {
        throw InputError(std::string("scenario is missing field '") + name + "'");
    }
    return *it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw InputError("scenario field '" + where + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError("scenario field '" + where + "' must be finite");
    return d;
}

std::size_t as_count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw InputError("scenario field '" + where + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

std::vector<double> as_vector(const json& v, const std::string& where, std::size_t want) {
    if (!v.is_array()) throw InputError("scenario field '" + where + "' must be an array");
    if (v.size() != want) {
        throw InputError("scenario field '" + where + "' has " + std::to_string(v.size()) +
                         " entries, expected " + std::to_string(want));
    }
    std::vector<double> out;
    out.reserve(want);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

json parse_json_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Scenario::Scenario(Market m, AmbiguitySet a)
    : market(std::move(m)), ambiguity(std::move(a)) {
    if (market.num_states() != ambiguity.dimension()) {
        throw InputError("market has " + std::to_string(market.num_states()) +
                         " states but the ambiguity set has " +
                         std::to_string(ambiguity.dimension()));
    }
}

Scenario parse_scenario(const std::string& text) {
    const json j = parse_json_text(text, "scenario");
    if (!j.is_object()) throw InputError("scenario must be a JSON object");

    static const char* known[] = {"states",    "assets",      "prices", "endowment",
                                  "wealth",    "bond_column", "ambiguity", "shortfall"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw InputError("unknown scenario field '" + it.key() + "'");
    }

    const std::size_t states = as_count(field(j, "states"), "states");
    if (states == 0) throw InputError("scenario field 'states' must be positive");

    const json& assets = field(j, "assets");
    if (!assets.is_array() || assets.empty()) {
        throw InputError("scenario field 'assets' must be a nonempty array of columns");
    }
    std::vector<std::vector<double>> columns;
    columns.reserve(assets.size());
    for (std::size_t a = 0; a < assets.size(); ++a) {
        columns.push_back(as_vector(assets[a], "assets[" + std::to_string(a) + "]", states));
    }

    std::vector<double> prices = as_vector(field(j, "prices"), "prices", columns.size());
    std::vector<double> endowment = as_vector(field(j, "endowment"), "endowment", states);
    const double wealth = as_number(field(j, "wealth"), "wealth");

    std::optional<std::size_t> bond;
    if (j.contains("bond_column")) {
        bond = as_count(j["bond_column"], "bond_column");
    }

    const json& amb = field(j, "ambiguity");
    if (!amb.is_array() || amb.empty()) {
        throw InputError("scenario field 'ambiguity' must be a nonempty array of probability vectors");
    }
    std::vector<ProbabilityVector> vertices;
    vertices.reserve(amb.size());
    for (std::size_t k = 0; k < amb.size(); ++k) {
        const std::string where = "ambiguity[" + std::to_string(k) + "]";
        try {
            vertices.emplace_back(as_vector(amb[k], where, states));
        } catch (const InputError& e) {
            throw InputError("scenario field '" + where + "': " + e.what());
        }
    }

    Market market(std::move(columns), std::move(prices), std::move(endowment), wealth, bond);
    Scenario scenario(std::move(market), AmbiguitySet(std::move(vertices)));

    if (j.contains("shortfall")) {
        const json& sf = j["shortfall"];
        if (!sf.is_object()) throw InputError("scenario field 'shortfall' must be an object");
        for (auto it = sf.begin(); it != sf.end(); ++it) {
            bool ok = false;
            for (const char* key : {"loss", "lambda", "slope", "rate", "intercept"}) {
                if (it.key() == key) ok = true;
            }
            if (!ok) {
                throw InputError("unknown scenario field 'shortfall." + it.key() + "'");
            }
        }
        const json& lk = field(sf, "loss");
        if (!lk.is_string()) throw InputError("scenario field 'shortfall.loss' must be a string");
        double slope = 1.0, intercept = 0.0;
        const std::string kind = lk.get<std::string>();
        if (sf.contains("slope")) slope = as_number(sf["slope"], "shortfall.slope");
        if (sf.contains("rate")) slope = as_number(sf["rate"], "shortfall.rate");
        if (sf.contains("intercept")) intercept = as_number(sf["intercept"], "shortfall.intercept");
        scenario.loss = loss_from_name(kind, slope, intercept);
        scenario.threshold = as_number(field(sf, "lambda"), "shortfall.lambda");
    }
    return scenario;
}

Scenario load_scenario(const std::string& path) {
    return parse_scenario(read_file(path));
}

std::string canonical_scenario_text(const Scenario& s) {
    ojson j;
    j["states"] = s.market.num_states();
    ojson cols = ojson::array();
    for (const auto& c : s.market.columns()) cols.push_back(c);
    j["assets"] = std::move(cols);
    j["prices"] = s.market.prices();
    j["endowment"] = s.market.endowment();
    j["wealth"] = s.market.wealth();
    if (s.market.bond_column()) j["bond_column"] = *s.market.bond_column();
    ojson amb = ojson::array();
    for (std::size_t k = 0; k < s.ambiguity.size(); ++k) {
        amb.push_back(s.ambiguity.vertex(k).weights());
    }
    j["ambiguity"] = std::move(amb);
    ojson sf;
    sf["loss"] = s.loss.name();
    sf["lambda"] = s.threshold;
    if (s.loss.kind == LossKind::Linear) {
        sf["slope"] = s.loss.k;
        sf["intercept"] = s.loss.intercept;
    } else if (s.loss.kind == LossKind::Exponential) {
        sf["rate"] = s.loss.k;
    }
    j["shortfall"] = std::move(sf);
    return j.dump();
}

std::string scenario_digest(const Scenario& s) {
    const std::uint64_t h = fnv1a64(canonical_scenario_text(s));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Payoff load_payoff_file(const std::string& path, std::size_t states) {
    const json j = parse_json_text(read_file(path), "payoff file");
    const json* values = &j;
    if (j.is_object()) {
        values = &field(j, "values");
    }
    return Payoff(as_vector(*values, "values", states));
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    if (!text.empty() && text.back() == ',') {
        throw InputError("trailing comma in number list");
    }
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            const double d = std::stod(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) {
                ++used;
            }
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(d);
        } catch (const std::exception&) {
            throw InputError("'" + token + "' is not a number");
        }
    }
    if (out.empty()) throw InputError("expected a comma-separated list of numbers");
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace riskeq
