#include "hypa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>

namespace hypa {

std::string motif_class(std::span<const NodeId> triple) {
  if (triple.size() != 3)
    throw std::invalid_argument("motif class needs exactly 3 nodes");
  std::string out;
  out.reserve(3);
  std::array<NodeId, 3> seen{};
  std::size_t distinct = 0;
  for (const NodeId v : triple) {
    std::size_t i = 0;
    while (i < distinct && seen[i] != v) ++i;
    if (i == distinct) seen[distinct++] = v;
    out += static_cast<char>('A' + i);
  }
  return out;
}

std::vector<MotifBucket> motif_distribution(const ScoreTable& table,
                                            const KOrderGraph& g,
                                            double alpha) {
  if (table.k != 2)
    throw std::invalid_argument("motif analysis is defined for k = 2");
  ScoreTable labeled = table;
  classify(labeled, alpha);

  std::vector<MotifBucket> buckets;
  for (const char* cls : {"ABC", "ABA", "AAB", "ABB", "AAA"})
    buckets.push_back({cls, 0, 0});

  for (const ScoreRow& row : labeled.rows) {
    if (row.label != Label::over && row.label != Label::under) continue;
    const auto seq = edge_sequence(g, row.source, row.target);
    const std::string cls = motif_class(seq);
    for (MotifBucket& b : buckets)
      if (b.cls == cls) {
        (row.label == Label::over ? b.over : b.under) += 1;
        break;
      }
  }
  return buckets;
}

RatioResult balance(double d_ab, double d_bc) {
  if (d_ab < 0.0 || d_bc < 0.0)
    throw std::invalid_argument("distances must be nonnegative");
  const double denom = d_ab + d_bc;
  if (denom == 0.0) return {0.0, true};
  return {(d_ab - d_bc) / denom, false};
}

RatioResult efficiency(double d_ac, double d_ab, double d_bc) {
  if (d_ac < 0.0 || d_ab < 0.0 || d_bc < 0.0)
    throw std::invalid_argument("distances must be nonnegative");
  const double denom = d_ab + d_bc;
  if (denom == 0.0) return {0.0, true};
  const double raw = d_ac / denom;
  if (raw > 1.0) return {1.0, true};
  return {raw, false};
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  for (const double lat : {lat1, lat2})
    if (!(std::abs(lat) <= 90.0))
      throw std::invalid_argument("latitude out of range");
  for (const double lon : {lon1, lon2})
    if (!(std::abs(lon) <= 180.0))
      throw std::invalid_argument("longitude out of range");
  constexpr double kRadiusKm = 6371.0;
  constexpr double kDeg = 3.14159265358979323846 / 180.0;
  const double dphi = (lat2 - lat1) * kDeg;
  const double dlam = (lon2 - lon1) * kDeg;
  const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(lat1 * kDeg) * std::cos(lat2 * kDeg) *
                       std::sin(dlam / 2) * std::sin(dlam / 2);
  return 2.0 * kRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

namespace {

// Rank-sum statistic with midranks: U = #(a > b) + 0.5 #(a == b).
double u_statistic(std::span<const double> a, std::span<const double> b,
                   bool* any_tie, double* tie_term) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });

  *any_tie = false;
  *tie_term = 0.0;
  double rank_sum_a = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && pooled[order[j]] == pooled[order[i]]) ++j;
    const double t = static_cast<double>(j - i);
    if (t > 1.0) {
      *any_tie = true;
      *tie_term += t * t * t - t;
    }
    const double midrank = (static_cast<double>(i + 1) +
                            static_cast<double>(j)) / 2.0;
    for (std::size_t r = i; r < j; ++r)
      if (order[r] < a.size()) rank_sum_a += midrank;
    i = j;
  }
  const double na = static_cast<double>(a.size());
  return rank_sum_a - na * (na + 1.0) / 2.0;
}

}  // namespace

double mann_whitney_one_sided(std::span<const double> a,
                              std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("both samples must be nonempty");
  bool ties = false;
  double tie_term = 0.0;
  const double u = u_statistic(a, b, &ties, &tie_term);
  const std::size_t na = a.size(), nb = b.size();

  if (!ties && na * nb <= 400) {
    // Exact tail. Without ties U is an integer, and every assignment of the
    // na + nb sorted slots to the two groups is equally likely. Scan slots
    // from smallest to largest; making slot t an a-value adds the number of
    // b-values already placed to U. dp[i][u] counts prefixes with i a-values
    // and statistic u.
    const std::size_t umax = na * nb;
    std::vector<std::vector<std::uint64_t>> dp(
        na + 1, std::vector<std::uint64_t>(umax + 1, 0));
    dp[0][0] = 1;
    for (std::size_t t = 0; t < na + nb; ++t) {
      for (std::size_t i = std::min(t, na) + 1; i-- > 0;) {
        const std::size_t b_used = t - i;
        if (b_used > nb) continue;
        for (std::size_t v = umax + 1; v-- > 0;) {
          const std::uint64_t c = dp[i][v];
          if (c == 0) continue;
          dp[i][v] = 0;
          if (i < na) dp[i + 1][v + b_used] += c;   // slot t is an a-value
          if (b_used < nb) dp[i][v] += c;           // slot t is a b-value
        }
      }
    }
    const std::uint64_t u_obs = static_cast<std::uint64_t>(std::llround(u));
    std::uint64_t tail = 0, total = 0;
    for (std::size_t v = 0; v <= umax; ++v) {
      total += dp[na][v];
      if (v >= u_obs) tail += dp[na][v];
    }
    return static_cast<double>(tail) / static_cast<double>(total);
  }

  const double n = static_cast<double>(na + nb);
  const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  const double var =
      static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
      ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (var <= 0.0) return 0.5;
  const double z = (u - mu - 0.5) / std::sqrt(var);
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

NodeCoordinates parse_coordinates(std::istream& in,
                                  const NodeDictionary& dict) {
  NodeCoordinates coords;
  coords.lat.assign(dict.size(), 0.0);
  coords.lon.assign(dict.size(), 0.0);
  coords.known.assign(dict.size(), 0);

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;
    const std::size_t c1 = raw.find(',');
    const std::size_t c2 = c1 == std::string::npos
                               ? std::string::npos
                               : raw.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw ParseError(line_no, "expected label,lat,lon");
    const std::string label = raw.substr(0, c1);
    if (line_no == 1 && label == "node") continue;  // header
    double lat = 0.0, lon = 0.0;
    try {
      lat = std::stod(raw.substr(c1 + 1, c2 - c1 - 1));
      lon = std::stod(raw.substr(c2 + 1));
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed coordinate");
    }
    if (std::abs(lat) > 90.0 || std::abs(lon) > 180.0)
      throw ParseError(line_no, "coordinate out of range");
    const auto id = dict.find(label);
    if (!id) continue;
    coords.lat[*id] = lat;
    coords.lon[*id] = lon;
    coords.known[*id] = 1;
  }
  return coords;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

GeoStats geo_distance_stats(const ScoreTable& table, const KOrderGraph& g,
                            const NodeCoordinates& coords) {
  if (std::isnan(table.alpha))
    throw std::invalid_argument("table must be classified first");
  GeoStats stats;
  std::vector<double> over, under;
  for (const ScoreRow& row : table.rows) {
    if (row.label != Label::over && row.label != Label::under) continue;
    const NodeId from = g.gram(row.source).front();
    const NodeId to = g.gram(row.target).back();
    if (!coords.known[from] || !coords.known[to]) {
      ++stats.skipped;
      continue;
    }
    const double d = haversine_km(coords.lat[from], coords.lon[from],
                                  coords.lat[to], coords.lon[to]);
    (row.label == Label::over ? over : under).push_back(d);
  }
  stats.over_n = over.size();
  stats.under_n = under.size();
  stats.median_over_km = median(over);
  stats.median_under_km = median(under);
  stats.p_value = (over.empty() || under.empty())
                      ? std::nan("")
                      : mann_whitney_one_sided(over, under);
  return stats;
}

}  // namespace hypa
