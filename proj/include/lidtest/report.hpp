#pragma once

#include <string>

#include <json.hpp>

#include "lidtest/diagnostics.hpp"
#include "lidtest/improvement.hpp"
#include "lidtest/orthogonalize.hpp"
#include "lidtest/pasting.hpp"
#include "lidtest/sdp.hpp"
#include "lidtest/spectral.hpp"
#include "lidtest/strategies.hpp"

namespace lidtest {

using json = nlohmann::json;

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Rounds to 12 significant digits; non-finite values become strings.
json num(double x);
json rational(const Rational& r);  // {"exact": "a/b", "value": double}

json to_json(const TestParams& p);
json to_json(const Goodness& g);
json to_json(const ExactGoodness& g);
json to_json(const McEstimate& e);
json to_json(const BoundReport& b);
json to_json(const OrthogonalizeResult& r);
json to_json(const SdpSolution& s);
json to_json(const SpectrumCheck& c);
json to_json(const PointsVarianceReport& r);
json to_json(const ImproveReport& r);
json to_json(const SliceHypotheses& h);
json to_json(const PastingReport& r);
json to_json(const ChernoffReport& r);
json to_json(const TvCheck& t);
json to_json(const GCommutativity& g);
json to_json(const MainWitness& w);

/// Keys sorted, two-space indent, trailing newline.
std::string dump_json(const json& j);
/// One row per bound report (path,id,measured,bound,margin,kind,vacuous) when the
/// report holds any; otherwise one path,value row per scalar leaf.
std::string to_csv(const json& j);

}  // namespace lidtest
