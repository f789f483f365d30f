#include "psymet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "psymet/errors.hpp"

namespace psymet {

DistanceMatrix::DistanceMatrix(std::vector<std::string> item_ids, std::vector<double> values)
    : item_ids_(std::move(item_ids)), values_(std::move(values)) {
  const std::size_t n = item_ids_.size();
  if (values_.size() != n * n) {
    throw SchemaError("distance matrix: storage does not match dimension");
  }
}

DistanceMatrix iic_distance(const CorrelationMatrix& c, bool strict,
                            std::vector<std::string>* warnings) {
  const std::size_t n = c.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v;
      if (c.is_defined(i, j)) {
        v = 1.0 - c.at(i, j);
      } else if (strict) {
        throw NumericError("iic_distance: undefined correlation for pair ('" +
                           c.item_ids()[i] + "', '" + c.item_ids()[j] + "')");
      } else {
        v = 1.0;
        if (warnings) {
          warnings->push_back("undefined correlation for pair ('" + c.item_ids()[i] + "', '" +
                              c.item_ids()[j] + "') mapped to distance 1");
        }
      }
      d[i * n + j] = d[j * n + i] = v;
    }
  }
  return DistanceMatrix(c.item_ids(), std::move(d));
}

namespace {

struct ActiveCluster {
  int id = 0;                    // scipy-style cluster id
  std::vector<int> members;      // leaf indices
  std::string smallest_item_id;  // tie-break key
};

}  // namespace

ClusterAssignment agglomerate(const DistanceMatrix& d, int k) {
  const int n = static_cast<int>(d.size());
  if (n == 0) throw std::invalid_argument("agglomerate: empty distance matrix");
  if (k < 1 || k > n) {
    throw std::invalid_argument("agglomerate: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(n) + "]");
  }

  std::vector<ActiveCluster> active(n);
  for (int i = 0; i < n; ++i) {
    active[i] = {i, {i}, d.item_ids()[i]};
  }
  // Pairwise average-linkage distances between active clusters, kept in step
  // with `active` (same indexing) and updated by the Lance-Williams rule.
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dist[i][j] = d.at(i, j);
  }

  ClusterAssignment out;
  out.item_ids = d.item_ids();
  out.k = k;
  int next_id = n;

  while (static_cast<int>(active.size()) > k) {
    // Pick the closest pair; on equal distance the lexicographically smallest
    // (item_id, item_id) key wins.
    int best_a = -1, best_b = -1;
    double best_d = std::numeric_limits<double>::infinity();
    std::pair<std::string, std::string> best_key;
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double dv = dist[a][b];
        const auto& ida = active[a].smallest_item_id;
        const auto& idb = active[b].smallest_item_id;
        auto key = ida < idb ? std::make_pair(ida, idb) : std::make_pair(idb, ida);
        if (dv < best_d || (dv == best_d && key < best_key)) {
          best_d = dv;
          best_key = key;
          best_a = static_cast<int>(a);
          best_b = static_cast<int>(b);
        }
      }
    }

    ActiveCluster& ca = active[best_a];
    ActiveCluster& cb = active[best_b];
    const double na = static_cast<double>(ca.members.size());
    const double nb = static_cast<double>(cb.members.size());

    out.trace.push_back({std::min(ca.id, cb.id), std::max(ca.id, cb.id), best_d,
                         static_cast<int>(na + nb)});

    // Merge b into a.
    for (std::size_t c = 0; c < active.size(); ++c) {
      if (static_cast<int>(c) == best_a || static_cast<int>(c) == best_b) continue;
      dist[best_a][c] = dist[c][best_a] =
          (na * dist[best_a][c] + nb * dist[best_b][c]) / (na + nb);
    }
    ca.id = next_id++;
    ca.members.insert(ca.members.end(), cb.members.begin(), cb.members.end());
    std::sort(ca.members.begin(), ca.members.end());
    ca.smallest_item_id = std::min(ca.smallest_item_id, cb.smallest_item_id);

    active.erase(active.begin() + best_b);
    dist.erase(dist.begin() + best_b);
    for (auto& row : dist) row.erase(row.begin() + best_b);
  }

  // Label clusters 1..k ordered by smallest member item_id.
  std::sort(active.begin(), active.end(), [](const ActiveCluster& a, const ActiveCluster& b) {
    return a.smallest_item_id < b.smallest_item_id;
  });
  out.labels.assign(n, 0);
  for (std::size_t c = 0; c < active.size(); ++c) {
    for (int leaf : active[c].members) out.labels[leaf] = static_cast<int>(c) + 1;
  }
  return out;
}

double mean_silhouette(const DistanceMatrix& d, const std::vector<int>& labels) {
  const std::size_t n = d.size();
  if (labels.size() != n) throw std::invalid_argument("mean_silhouette: label count mismatch");
  std::vector<int> distinct(labels);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double own_sum = 0.0;
    int own_count = 0;
    double nearest_other = std::numeric_limits<double>::infinity();
    for (int lab : distinct) {
      if (lab == labels[i]) continue;
      double s = 0.0;
      int cnt = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (labels[j] != lab) continue;
        s += d.at(i, j);
        ++cnt;
      }
      if (cnt > 0) nearest_other = std::min(nearest_other, s / cnt);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || labels[j] != labels[i]) continue;
      own_sum += d.at(i, j);
      ++own_count;
    }
    if (own_count == 0 || !std::isfinite(nearest_other)) {
      continue;  // singleton (or single cluster): contributes 0
    }
    const double a = own_sum / own_count;
    const double b = nearest_other;
    const double m = std::max(a, b);
    total += m > 0.0 ? (b - a) / m : 0.0;
  }
  return total / static_cast<double>(n);
}

int select_k(const DistanceMatrix& d, int k_min, int k_max) {
  const int n = static_cast<int>(d.size());
  if (n < 3) throw std::invalid_argument("select_k: needs at least 3 items");
  if (k_min < 2 || k_max > n - 1 || k_min > k_max) {
    throw std::invalid_argument("select_k: range [" + std::to_string(k_min) + ", " +
                                std::to_string(k_max) + "] not within [2, n-1]");
  }
  int best_k = k_min;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= k_max; ++k) {
    const double score = mean_silhouette(d, agglomerate(d, k).labels);
    if (score > best_score) {
      best_score = score;
      best_k = k;
    }
  }
  return best_k;
}

CoMembership comembership(const ClusterAssignment& a, const PopulationTag& population) {
  const std::size_t n = a.item_ids.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.item_ids[x] < a.item_ids[y];
  });

  CoMembership out;
  out.population = population;
  out.pairs.reserve(n * (n - 1) / 2);
  out.same.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t x = order[i], y = order[j];
      out.pairs.emplace_back(a.item_ids[x], a.item_ids[y]);
      out.same.push_back(a.labels[x] == a.labels[y] ? 1 : 0);
    }
  }
  return out;
}

}  // namespace psymet
