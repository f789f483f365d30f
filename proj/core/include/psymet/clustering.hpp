#ifndef PSYMET_CLUSTERING_HPP
#define PSYMET_CLUSTERING_HPP

#include <string>
#include <utility>
#include <vector>

#include "psymet/ctt.hpp"

namespace psymet {

// Symmetric non-negative item distance matrix with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix(std::vector<std::string> item_ids, std::vector<double> values);

  const std::vector<std::string>& item_ids() const { return item_ids_; }
  std::size_t size() const { return item_ids_.size(); }
  double at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

 private:
  std::vector<std::string> item_ids_;
  std::vector<double> values_;
};

// d = 1 - c elementwise. Undefined correlation entries throw NumericError in
// strict mode; otherwise they map to distance 1 (the uncorrelated value) and
// a warning is appended per affected pair.
DistanceMatrix iic_distance(const CorrelationMatrix& c, bool strict = false,
                            std::vector<std::string>* warnings = nullptr);

// One agglomerative merge step; leaf clusters are 0..n-1, the cluster formed
// by merge t is n+t (scipy-style numbering).
struct MergeStep {
  int left = 0;
  int right = 0;
  double height = 0.0;
  int size = 0;  // members in the merged cluster
};

struct ClusterAssignment {
  std::vector<std::string> item_ids;
  std::vector<int> labels;  // 1..k, ordered by each cluster's smallest item_id
  int k = 0;
  std::vector<MergeStep> trace;
};

// Hierarchical agglomerative clustering with average linkage, cut to exactly
// k clusters. Merge ties break toward the smallest lexicographic
// (item_id, item_id) pair, which makes the output independent of input
// order.
ClusterAssignment agglomerate(const DistanceMatrix& d, int k);

// Mean silhouette width of a labeling under the given distances. Singleton
// clusters score zero.
double mean_silhouette(const DistanceMatrix& d, const std::vector<int>& labels);

// Picks k in [k_min, k_max] maximizing the mean silhouette of agglomerate's
// cut; ties go to the smaller k. Requires n >= 3 and 2 <= k_min <= k_max <= n-1.
int select_k(const DistanceMatrix& d, int k_min, int k_max);

// Binary same-cluster indicator over item pairs (i < j lexicographically).
struct CoMembership {
  PopulationTag population;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::uint8_t> same;
};

CoMembership comembership(const ClusterAssignment& a,
                          const PopulationTag& population = PopulationTag{});

}  // namespace psymet

#endif
