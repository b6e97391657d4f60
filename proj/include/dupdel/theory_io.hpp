#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "dupdel/theory.hpp"

namespace dupdel {

/// `# p=.. regime=.. beta=.. gamma=.. method=.. K=.. tol=.. tail_mass=..`
std::string theory_header_line(const DegreeDistribution& d);

/// Header comment line, then `k,d_k,c_k,asymptotic_k`. A non-finite asymptotic
/// value (overflow right next to p = 1/2) is written as an empty field.
void write_theory_csv(std::ostream& out, const DegreeDistribution& d);

/// Same content; rows under "rows" as {k, d_k, c_k, asymptotic_k} (null when non-finite).
nlohmann::json theory_to_json(const DegreeDistribution& d);

}  // namespace dupdel
