#ifndef ETSTAB_IO_HPP
#define ETSTAB_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "etstab/approx.hpp"
#include "etstab/charfn.hpp"
#include "etstab/limits.hpp"
#include "etstab/measures.hpp"

namespace etstab {

using Json = nlohmann::json;

// {"dimension": d, "atoms": [{"radius": number | "inf", "direction": [...], "weight": w}]}
Json to_json(const AtomicMeasure& measure);
AtomicMeasure measure_from_json(const Json& j);

// adds {"alpha", "p", "A": [[...]], "b": [...], "nu": <measure>}
Json to_json(const EtsSpec& spec);
EtsSpec ets_from_json(const Json& j);

// {"entries": [{"direction": [...], "sigma_weight": w, "q_atoms": [{"s", "weight"}]}]}
Json to_json(const TemperingSpec& spec);
TemperingSpec tempering_from_json(const Json& j);

// {"points": [[...], ...]}
Json to_json(const CfGrid& grid);
CfGrid grid_from_json(const Json& j);

// [{"c": num, "x": [...], "b_scalar": num}]
Json to_json(const std::vector<ElementaryComponent>& components);
std::vector<ElementaryComponent> components_from_json(const Json& j);

Json to_json(const ValidationReport& report);
Json to_json(const ConvergenceReport& report);

std::string format_double(double value);  // round-trip-exact decimal, <= 17 significant digits

}  // namespace etstab

#endif  // ETSTAB_IO_HPP
