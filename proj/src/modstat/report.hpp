#pragma once

#include <iosfwd>
#include <string>

#include "modstat/convergence.hpp"
#include "modstat/decompose.hpp"
#include "modstat/lambda.hpp"
#include "modstat/modulus.hpp"
#include "modstat/sequence_io.hpp"

namespace modstat {

inline constexpr const char* kVersion = "0.1.0";

// Verdict fields only; points are added when with_points is set.
Json to_json(const DensityProfile& p, bool with_points);
Json to_json(const ConvergenceReport& r, bool with_points);
Json to_json(const CauchyReport& r);
Json to_json(const ModulusValidationReport& r);
Json to_json(const LambdaValidationReport& r);
Json to_json(const MaddoxEstimate& e);
Json to_json(const LimitRatio& r);
Json to_json(const RatioLiminf& r);
Json to_json(const RatioNOverFLambda& r);
Json to_json(const Thresholds& t);
Json to_json(const DecompositionVerification& v, bool with_points);
Json to_json(const OffTVerification& v);

// `n,ratio` rows.
void write_profile_csv(std::ostream& out, const DensityProfile& p);
// `t,x,y,z` rows.
void write_decomposition_csv(std::ostream& out, const SequencePrefix& x,
                             const Decomposition& dec);

// Compact single-line serialization with a trailing newline.
std::string dump(const Json& j);

}  // namespace modstat
