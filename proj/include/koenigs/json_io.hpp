#pragma once

#include "json.hpp"
#include "koenigs/capacity.hpp"
#include "koenigs/domain.hpp"
#include "koenigs/dynamics.hpp"
#include "koenigs/hardy.hpp"
#include "koenigs/harmonic.hpp"
#include "koenigs/measures.hpp"

namespace koenigs {

using json = nlohmann::ordered_json;

// Non-finite doubles become null.
json num(double x);

json to_json(Point z);
json to_json(const Primitive& p);
json to_json(const CompactSet& s);
json to_json(const DomainSpec& d);
json to_json(const BoundaryPartition& bp);
json to_json(const DiscreteMeasure& m);
json to_json(const AlphaCoefficients& a);
json to_json(const CapacityEstimate& c);
json to_json(const KnRow& r);
json to_json(const WosConfig& c);
json to_json(const HarmonicMeasureEstimate& e);
json to_json(const HardyEstimate& h);
json to_json(const PrescribedDomainResult& r);
json to_json(const OrbitReport& o, std::size_t cap = 10000);
json to_json(const Classification& c);
json to_json(const IntegralMeansResult& r);
json to_json(const SigmaReport& r);

Point point_from_json(const json& j);
Primitive primitive_from_json(const json& j);
CompactSet set_from_json(const json& j);
DomainSpec domain_from_json(const json& j);
DiscreteMeasure measure_from_json(const json& j);

}  // namespace koenigs
