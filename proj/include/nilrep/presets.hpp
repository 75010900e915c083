#ifndef NILREP_PRESETS_HPP
#define NILREP_PRESETS_HPP

#include <nlohmann/json_fwd.hpp>

#include "nilrep/subgroup.hpp"

namespace nilrep {

// Registry keyed by name:
//   "cyclic:n"                  Z/nZ, single generator
//   "heis_mod:n"  (n <= 8)      Heisenberg group over Z/nZ, generators x, y, z
//   "product:A,B,..."           direct product of registered presets
PcPresentationPtr preset_group(const std::string& name);

PcPresentationPtr cyclic_group(long n);
PcPresentationPtr heisenberg_mod(long n);

std::vector<std::string> preset_names();

// JSON presentation format:
// {"ngens": n, "orders": [...],
//  "powers": {"i": [[gen, exp], ...]},
//  "conjugates": {"i,j": [[gen, exp], ...]}}     (1-based generator indices)
PcPresentationPtr presentation_from_json(const nlohmann::json& j);
nlohmann::json presentation_to_json(const PcPresentation& p);

}  // namespace nilrep

#endif
