#ifndef ND_POTENTIAL_HPP
#define ND_POTENTIAL_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "nd/types.hpp"

namespace nd {

enum class PotentialKind { Polynomial, Exponential, LogSquared };

// One power-law term coeff * r^power.  `power` stores the literal exponent
// (the "a+1" of a leading term), never a shifted variant.
struct PowerTerm {
    double coeff = 0.0;
    double power = 0.0;
};

// A central potential U(r): either a sum of distinct power-law terms, or one
// of the two transcendental families xi e^{sigma r} and eta/(r ln(alpha r))^2.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::Polynomial;
    std::vector<PowerTerm> terms;  // Polynomial
    double xi = 0.0, sigma = 0.0;            // Exponential
    double eta = 0.0, alpha_scale = 1.0;     // LogSquared
    int dimension = 3;

    double value(double r) const;
    void validate() const;  // throws precondition_violated on bad invariants
};

// Attractive-sign convention used throughout: coefficient < 0 for negative
// powers and > 0 for positive powers.
bool term_is_attractive(const PowerTerm& t);

// Bound-state existence classifier for a single power term r^b: an attractive
// tail supports bound states iff -2 < b < 0.
bool term_supports_bound_states(const PowerTerm& t);

PotentialSpec potential_from_json(const nlohmann::json& j);
nlohmann::json potential_to_json(const PotentialSpec& p);
PotentialSpec potential_from_json_text(const std::string& text);

}  // namespace nd

#endif
