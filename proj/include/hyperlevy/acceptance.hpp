#pragma once

#include "hyperlevy/montecarlo.hpp"
#include "hyperlevy/params.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlevy {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    bool quick = false;  // smaller draw and path counts, same tolerances
    unsigned threads = 1;
    std::uint64_t seed = 20240611;
    std::vector<int> only;  // empty: all ten
};

// Runs the acceptance criteria, writing one PASS/FAIL line per criterion.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out);

// Random admissible parameters of class t; for EHG, degenerate = true puts a
// cancelled zero/pole pair on one side.
HGParams random_params(ClassTag t, Rng& g, bool degenerate = false);

} // namespace hyperlevy
