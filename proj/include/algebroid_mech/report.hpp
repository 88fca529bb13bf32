#pragma once

// JSON and CSV serialization of check reports, trajectories and the gallery catalogue.
// Objects use sorted keys and are dumped with two-space indentation.

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "algebroid_mech/gallery.hpp"

namespace algebroid_mech
{

using Json = nlohmann::json;

Json to_json(const Vec& v);
Json to_json(const Witness& w);
Json to_json(const CheckReport& r);
/// Summary of an HJ sweep: the per-point residuals are reduced to counts and the worst points.
Json to_json(const HJReport& r);
/// Summary of a lift comparison; `worstCount` largest deviations are listed with their times.
Json to_json(const LiftReport& r, int worstCount = 5);
Json to_json(const Box& b);

/// Non-finite doubles become the strings "inf", "-inf" or "nan" so that dumps stay valid.
Json number(double x);

/// [{id, params, references, domains}] for every gallery system at default parameters.
Json gallery_catalogue();

/// Pretty-printed dump followed by a newline.
std::string dump(const Json& j);

/// %.17g formatting used by every CSV cell.
std::string format_double(double x);

/// Header row plus one row per sample; values are written with 17 significant digits.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace algebroid_mech
