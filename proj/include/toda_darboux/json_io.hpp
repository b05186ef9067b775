#pragma once

#include "toda_darboux/darboux.hpp"
#include "toda_darboux/lattice.hpp"
#include "toda_darboux/pipeline.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace toda_darboux {

using Json = nlohmann::ordered_json;

// Scalars are [re, im] pairs. Bands are keyed by diagonal offset: "0" is
// the diagonal, "-d" the d-th subdiagonal, "1" the superdiagonal.

Json to_json(Scalar value);
Json to_json(const BandedHessenberg& m);
Json to_json(const UnitLowerBanded& m);
Json to_json(const Bidiagonal& m);
Json to_json(const GammaTable& table);
Json to_json(const ParameterSet& params);
Json to_json(const DarbouxFactors& factors);
Json to_json(const ResidualReport& report);
Json to_json(const RunConfig& config);

/// All readers throw Error(Parse) on malformed input and let the
/// constructors' own checks (InvalidArgument, Size) through.
Scalar scalar_from_json(const Json& j);
BandedHessenberg hessenberg_from_json(const Json& j);
GammaTable table_from_json(const Json& j);
ParameterSet params_from_json(const Json& j);

/// A matrix document may carry the free parameters that go with it.
Instance instance_from_json(const Json& j);
Json to_json(const Instance& instance);

Json parse_json(const std::string& text);

/// Rows `t,entry_id,re,im`; entry ids are a_<i>_<j> and g_<n>.
std::string to_csv(const TodaTrajectory& trajectory);
std::string to_csv(const KdvTrajectory& trajectory);

/// {dt, steps, p, n, C, seed}
Json trajectory_manifest(double dt, int steps, int p, int n, Scalar shift, std::uint64_t seed);

} // namespace toda_darboux
