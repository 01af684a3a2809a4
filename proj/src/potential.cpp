#include "nd/potential.hpp"

#include <cmath>

namespace nd {

double PotentialSpec::value(double r) const {
    switch (kind) {
        case PotentialKind::Polynomial: {
            double v = 0.0;
            for (const auto& t : terms) v += t.coeff * std::pow(r, t.power);
            return v;
        }
        case PotentialKind::Exponential:
            return xi * std::exp(sigma * r);
        case PotentialKind::LogSquared: {
            const double lg = r * std::log(alpha_scale * r);
            return eta / (lg * lg);
        }
    }
    return 0.0;
}

void PotentialSpec::validate() const {
    if (dimension < 1)
        throw precondition_violated("potential: dimension must be positive");
    switch (kind) {
        case PotentialKind::Polynomial:
            for (std::size_t i = 0; i < terms.size(); ++i)
                for (std::size_t j = i + 1; j < terms.size(); ++j)
                    if (std::abs(terms[i].power - terms[j].power) < 1e-12)
                        throw precondition_violated(
                            "potential: polynomial exponents must be pairwise distinct");
            break;
        case PotentialKind::Exponential:
            if (sigma <= 0.0)
                throw precondition_violated("potential: exponential requires sigma > 0");
            break;
        case PotentialKind::LogSquared:
            if (alpha_scale <= 0.0)
                throw precondition_violated("potential: log-squared requires alpha_scale > 0");
            break;
    }
}

bool term_is_attractive(const PowerTerm& t) {
    return t.power < 0.0 ? t.coeff < 0.0 : t.coeff > 0.0;
}

bool term_supports_bound_states(const PowerTerm& t) {
    return t.coeff < 0.0 && t.power > -2.0 && t.power < 0.0;
}

PotentialSpec potential_from_json(const nlohmann::json& j) {
    PotentialSpec p;
    const std::string kind = j.value("kind", "polynomial");
    p.dimension = j.value("dimension", 3);
    if (kind == "polynomial") {
        p.kind = PotentialKind::Polynomial;
        if (!j.contains("terms") || !j.at("terms").is_array())
            throw precondition_violated("potential json: missing terms array");
        for (const auto& t : j.at("terms"))
            p.terms.push_back({t.at("coeff").get<double>(), t.at("power").get<double>()});
    } else if (kind == "exponential") {
        p.kind = PotentialKind::Exponential;
        p.xi = j.at("xi").get<double>();
        p.sigma = j.at("sigma").get<double>();
    } else if (kind == "log_squared") {
        p.kind = PotentialKind::LogSquared;
        p.eta = j.at("eta").get<double>();
        p.alpha_scale = j.value("alpha_scale", 1.0);
    } else {
        throw precondition_violated("potential json: unknown kind '" + kind + "'");
    }
    p.validate();
    return p;
}

nlohmann::json potential_to_json(const PotentialSpec& p) {
    nlohmann::ordered_json j;
    switch (p.kind) {
        case PotentialKind::Polynomial: {
            j["kind"] = "polynomial";
            auto arr = nlohmann::ordered_json::array();
            for (const auto& t : p.terms)
                arr.push_back({{"coeff", t.coeff}, {"power", t.power}});
            j["terms"] = arr;
            break;
        }
        case PotentialKind::Exponential:
            j["kind"] = "exponential";
            j["xi"] = p.xi;
            j["sigma"] = p.sigma;
            break;
        case PotentialKind::LogSquared:
            j["kind"] = "log_squared";
            j["eta"] = p.eta;
            j["alpha_scale"] = p.alpha_scale;
            break;
    }
    j["dimension"] = p.dimension;
    return j;
}

PotentialSpec potential_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw precondition_violated(std::string("potential json parse error: ") + e.what());
    }
    try {
        return potential_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw precondition_violated(std::string("potential json: ") + e.what());
    }
}

}  // namespace nd
