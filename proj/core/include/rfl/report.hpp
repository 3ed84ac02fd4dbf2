#pragma once

#include "json.hpp"

#include "rfl/estimates.hpp"
#include "rfl/exponents.hpp"
#include "rfl/grid.hpp"
#include "rfl/maximizer.hpp"

namespace rfl {

using Json = nlohmann::ordered_json;

Json to_json(const ParamSet& ps);
Json to_json(const PInterval& iv);
Json to_json(const SigmaResult& s);
Json to_json(const ExponentReport& rep);
Json to_json(const GridMeta& m);
Json to_json(const NamedValues& v);
Json to_json(const BoundProbeReport& rep);
Json to_json(const DecayFit& fit);
Json to_json(const TailMass& m);
Json to_json(const MaximizerResult& res);

/// Fourier convention and the Riesz constant in force for dimension d and
/// exponent alpha, with the alternative constant for comparison.
Json convention_record(int d, double alpha);

}  // namespace rfl
