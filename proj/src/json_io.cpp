#include "catsim/json_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace catsim {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error("state JSON: complex values must be [re, im] number pairs");
    }
    Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error("state JSON: non-finite complex value");
    }
    return z;
}

}  // namespace

std::string state_to_json(const CatState& state) {
    json terms = json::array();
    for (const auto& t : state.terms()) {
        json labels = json::array();
        for (Complex l : t.labels) labels.push_back(complex_to_json(l));
        terms.push_back({{"coeff", complex_to_json(t.coeff)}, {"labels", labels}});
    }
    json j = {{"modes", state.mode_count()}, {"terms", terms}};
    return j.dump(2);
}

CatState state_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object() || !j.contains("modes") || !j.contains("terms")) {
        throw Error("state JSON: expected {\"modes\": ..., \"terms\": [...]}");
    }
    int modes = j.at("modes").get<int>();
    std::vector<CatTerm> terms;
    for (const auto& jt : j.at("terms")) {
        CatTerm t;
        t.coeff = complex_from_json(jt.at("coeff"));
        for (const auto& jl : jt.at("labels")) t.labels.push_back(complex_from_json(jl));
        terms.push_back(std::move(t));
    }
    return CatState(modes, std::move(terms));
}

void save_state(const CatState& state, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << state_to_json(state) << "\n";
}

CatState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return state_from_json(text);
}

}  // namespace catsim
