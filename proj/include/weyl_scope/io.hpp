#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "weyl_scope/friedrichs.hpp"
#include "weyl_scope/hainlust.hpp"
#include "weyl_scope/triple.hpp"

namespace weyl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTripleSchema = "triple-v1";

/// A complex number is either a plain number or [re, im].
Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);

/// Dense matrix as a list of rows of [re, im] pairs.
Json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const Json& j);

Json triple_to_json(const FiniteTriple& tr);
/// Every failure (schema tag, malformed matrices, rank-deficient boundary
/// maps, a stored Ttilde that breaks the Green identity) is ConfigInvalid.
TriplePtr triple_from_json(const Json& j);

/// {"q": [breaks, coeffs], "u": ..., "w": ..., "alpha": a, "beta": b}
Json hl_model_to_json(const HLModel& m);
HLModel hl_model_from_json(const Json& j);

/// {"phi": {"poles": [...], "residues": [...], "orders": [...]}, "psi": ..., "B": b}
Json fr_model_to_json(const FriedrichsModel& m);
FriedrichsModel fr_model_from_json(const Json& j);
Json rational_to_json(const RationalH2& f);
RationalH2 rational_from_json(const Json& j);

Json read_json_file(const std::string& path);

/// %.17g, so values round-trip exactly; nan and inf are written as such.
std::string format_double(double x);

/// CSV with a header line; cells are written with format_double.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace weyl
