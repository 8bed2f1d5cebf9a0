#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace hyperlevy {

enum class ClassTag { HG, EHG, EHG_BETA_ONLY, EHG_BETAH_ONLY, EHL };
enum class Regime { Killed, DriftsPlusInfinity, DriftsMinusInfinity, Oscillates };

std::string to_string(ClassTag t);
std::string to_string(Regime r);
ClassTag class_tag_from_string(const std::string& s);

struct HGParams {
    double beta = 0, gamma = 0, betah = 0, gammah = 0;
    double eta() const { return 1 - beta + gamma + betah + gammah; }
    bool operator==(const HGParams&) const = default;
};

struct Classification {
    std::vector<ClassTag> classes;
    Regime regime;
    bool contains(ClassTag t) const;
};

// Unchecked membership tests; eps loosens only the equality-type constraints.
bool in_class(const HGParams& p, ClassTag t, double eps = 0.0);

// Every admissibility set containing p, plus the large-time regime.
// Throws InadmissibleParameters listing the violated inequalities.
Classification classify(const HGParams& p, double eps = 0.0);
Classification classify(double beta, double gamma, double betah, double gammah);

// Regime of p read as a member of class t.
Regime regime_for(const HGParams& p, ClassTag t);

// Parameters of the dual process; p must be EHG.
HGParams dual(const HGParams& p);
double eta(const HGParams& p);

// Value of 1-beta+betah+gamma and 1-beta+betah+gammah.
double right_gap(const HGParams& p);
double left_gap(const HGParams& p);

void to_json(nlohmann::json& j, const HGParams& p);
void from_json(const nlohmann::json& j, HGParams& p);

} // namespace hyperlevy
