#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hypa/debruijn.hpp"
#include "hypa/hypa.hpp"
#include "hypa/types.hpp"

namespace hypa {

// Descriptive statistics used when reading detections on real itineraries.

// Relabels a 3-node sequence by first occurrence: one of ABC, ABA, AAB, ABB,
// AAA.
std::string motif_class(std::span<const NodeId> triple);

struct MotifBucket {
  std::string cls;
  Count over = 0;
  Count under = 0;
};

// Over/under counts per motif class among labeled second-order detections
// (table must have k = 2). All five classes are reported, zeros included.
std::vector<MotifBucket> motif_distribution(const ScoreTable& table,
                                            const KOrderGraph& g,
                                            double alpha);

struct RatioResult {
  double value = 0.0;
  bool degenerate = false;  // inputs admitted no meaningful ratio
};

// (d_ab - d_bc) / (d_ab + d_bc): positive when the first leg is longer.
RatioResult balance(double d_ab, double d_bc);

// d_ac / (d_ab + d_bc), clamped into [0, 1]; `degenerate` set when the raw
// ratio exceeded 1 (measurement slack around the triangle inequality) or the
// legs were both zero.
RatioResult efficiency(double d_ac, double d_ab, double d_bc);

// Great-circle distance in km, mean earth radius 6371.0.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

// One-sided p-value for "a stochastically greater than b". Exact tail of the
// rank-sum distribution when the pooled values are tie-free and
// |a| * |b| <= 400, tie-corrected normal approximation with continuity
// correction otherwise (zero variance gives 0.5).
double mann_whitney_one_sided(std::span<const double> a,
                              std::span<const double> b);

// Per-node geographic positions, indexed by dictionary id.
struct NodeCoordinates {
  std::vector<double> lat;
  std::vector<double> lon;
  std::vector<std::uint8_t> known;
};

// "label,lat,lon" per line, '#' comments, optional "node,lat,lon" header.
// Labels absent from the dictionary are ignored.
NodeCoordinates parse_coordinates(std::istream& in,
                                  const NodeDictionary& dict);

struct GeoStats {
  double median_over_km = 0.0;   // NaN when no over detections
  double median_under_km = 0.0;  // NaN when no under detections
  double p_value = 0.0;          // over > under; NaN when a class is empty
  std::size_t over_n = 0;
  std::size_t under_n = 0;
  std::size_t skipped = 0;  // labeled rows without coordinates
};

// Start-to-end itinerary distances of labeled detections, compared between
// classes. The table must be classified.
GeoStats geo_distance_stats(const ScoreTable& table, const KOrderGraph& g,
                            const NodeCoordinates& coords);

}  // namespace hypa
