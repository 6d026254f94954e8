#include <string>

#include <json.hpp>

#include "privcap/error.hpp"
#include "privcap/matrix_io.hpp"
#include "privcap/turbulence.hpp"

namespace privcap {

namespace {

using nlohmann::json;

std::size_t positive(const json& params, std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
        if (!params.contains(key)) continue;
        const auto& v = params.at(key);
        if (!v.is_number_integer() || v.get<long long>() <= 0) {
            throw ParseError(std::string("ensemble spec: '") + key + "' must be a positive integer");
        }
        return v.get<std::size_t>();
    }
    throw ParseError(std::string("ensemble spec: missing parameter '") + *keys.begin() + "'");
}

}  // namespace

EnsembleSpec parse_ensemble_spec(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("ensemble spec: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
        throw ParseError("ensemble spec: expected an object with a string 'kind'");
    }
    const json params = doc.value("params", json::object());
    if (!params.is_object()) throw ParseError("ensemble spec: 'params' must be an object");

    EnsembleSpec spec;
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) {
            throw ParseError("ensemble spec: 'seed' must be a nonnegative integer");
        }
        spec.seed = doc.at("seed").get<std::uint64_t>();
    }

    const auto kind = doc.at("kind").get<std::string>();
    try {
        if (kind == "haar_subblock" || kind == "HaarSubblock") {
            spec.kind = HaarSubblock{positive(params, {"N", "n"}), positive(params, {"m"}),
                                     positive(params, {"k"})};
        } else if (kind == "randomized_spectrum" || kind == "RandomizedSpectrum") {
            RandomizedSpectrum r;
            if (!params.contains("base_etas") || !params.at("base_etas").is_array()) {
                throw ParseError("ensemble spec: 'base_etas' must be an array");
            }
            r.base_etas = params.at("base_etas").get<std::vector<double>>();
            r.jitter = params.value("jitter", 0.0);
            const auto conj = params.value("conjugation", std::string("haar"));
            if (conj == "haar") r.conjugation = Conjugation::Haar;
            else if (conj == "none") r.conjugation = Conjugation::None;
            else throw ParseError("ensemble spec: conjugation must be 'haar' or 'none'");
            spec.kind = std::move(r);
        } else if (kind == "deterministic" || kind == "Deterministic") {
            if (!params.contains("t_ab")) throw ParseError("ensemble spec: missing 't_ab'");
            spec.kind = Deterministic{parse_matrix_json(params.at("t_ab").dump()).matrix};
        } else {
            throw ParseError("ensemble spec: unknown kind '" + kind + "'");
        }
        validate(spec);
    } catch (const json::exception& e) {
        throw ParseError(std::string("ensemble spec: ") + e.what());
    } catch (const DomainError& e) {
        throw ParseError(std::string("ensemble spec: ") + e.what());
    } catch (const NumericalError& e) {
        throw ParseError(std::string("ensemble spec: ") + e.what());
    }
    return spec;
}

}  // namespace privcap
