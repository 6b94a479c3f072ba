#pragma once

// Lattice geometry on Z^d: hypercubes R^d_n = [1,n]^d, the faces and lines of
// the simplicial decomposition of R^d_{n+1}, traceability, and the canonical
// nearest-neighbour rate function of an induced subgraph.
//
// Vertex and pair indices are 0-based everywhere in the C++ API; the JSON
// formats (see io.hpp) use 1-based indices.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

namespace aldous_lab {

struct LatticePoint {
  std::vector<int> coords;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<int> c) : coords(std::move(c)) {}
  LatticePoint(std::initializer_list<int> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  int operator[](std::size_t i) const { return coords[i]; }

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;
};

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept;
};

int l1_distance(const LatticePoint& a, const LatticePoint& b);

/// An ordered set of distinct lattice points of a common dimension. The order
/// is the vertex enumeration x_1..x_N and is part of the object's identity.
class VertexSet {
 public:
  VertexSet(int dim, std::vector<LatticePoint> points);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  const LatticePoint& operator[](std::size_t i) const { return points_[i]; }

  bool contains(const LatticePoint& p) const { return index_.count(p) != 0; }
  std::optional<std::size_t> index_of(const LatticePoint& p) const;

  /// The first `count` points, as a new vertex set.
  VertexSet prefix(std::size_t count) const;

  bool operator==(const VertexSet& other) const {
    return dim_ == other.dim_ && points_ == other.points_;
  }

 private:
  int dim_;
  std::vector<LatticePoint> points_;
  std::unordered_map<LatticePoint, std::size_t, LatticePointHash> index_;
};

struct HypercubeSpec {
  int dim = 1;
  int side = 1;
};

struct PairRate {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double rate = 0.0;

  bool operator==(const PairRate&) const = default;
};

/// Symmetric nonnegative rates on unordered index pairs {i, j} of 0..size-1.
/// Absent pairs carry rate 0; stored pairs are kept sorted by (i, j).
class RateFunction {
 public:
  explicit RateFunction(std::size_t size);
  RateFunction(std::size_t size, std::vector<PairRate> pairs);

  std::size_t size() const { return size_; }
  const std::vector<PairRate>& pairs() const { return pairs_; }

  double rate(std::size_t i, std::size_t j) const;
  /// Sets q({i,j}); a zero rate removes the pair.
  void set(std::size_t i, std::size_t j, double rate);

  /// max_i sum_j q({i,j}): the largest diagonal entry of -Omega^RW.
  double max_total_rate_at_vertex() const;
  double total_rate() const;

  bool operator==(const RateFunction&) const = default;

 private:
  std::size_t size_;
  std::vector<PairRate> pairs_;
};

VertexSet make_hypercube(const HypercubeSpec& spec);

/// S^d_{n,k} (k is 1-based): x_1..x_{k-1} in [1,n+1], x_k = n+1, the rest in
/// [1,n]. Returned in lexicographic order.
VertexSet face_vertices(int d, int n, int k);

/// K^d_{n,k}(x): coordinate k runs over 1..n+1; x itself is the last element.
VertexSet line_vertices(int d, int n, int k, const LatticePoint& x);

/// Index k (1-based) of the face of the decomposition of R^d_{n+1} containing
/// x, or 0 when x lies in R^d_n. Throws if x lies outside R^d_{n+1}.
int face_of(const LatticePoint& x, int n);

bool is_traceable(const VertexSet& vertices, int d, int n);

/// Enumeration of R^d_{n_max} whose prefixes of length N >= 2 form the
/// traceable sequence V_2, V_3, ...: R^d_n is followed by the faces
/// S^d_{n,1}, ..., S^d_{n,d}, each face in lexicographic order.
VertexSet traceable_order(int d, int n_max);

/// V_2 .. V_{n_max^d} as explicit vertex sets.
std::vector<VertexSet> traceable_sequence(int d, int n_max);

/// A randomly ordered fill of R^d_{n+1} starting with R^d_n (in lexicographic
/// order): each boundary point is drawn uniformly among the points whose line
/// is already present, so every prefix of length >= n^d is R^d_n-traceable.
VertexSet random_traceable_fill(int d, int n, std::mt19937_64& rng);

RateFunction induced_rates(const VertexSet& vertices);

/// Connected subsets of Z^d (nearest-neighbour adjacency) with 1..max_size
/// points, one per translation class: shifted so every coordinate has minimum
/// 1, points in lexicographic order, sets ordered by size and then points.
std::vector<VertexSet> enumerate_connected_sets(int d, int max_size);

/// q_{k+1}({i,j}) >= q_k({i,j}) for all i < j < k, where rates[m] has size m+2.
bool sequence_is_increasing(std::span<const RateFunction> rates);

}  // namespace aldous_lab
