#include "core/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace aldous_lab {

std::size_t LatticePointHash::operator()(const LatticePoint& p) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int c : p.coords) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(c)) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

int l1_distance(const LatticePoint& a, const LatticePoint& b) {
  int total = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

VertexSet::VertexSet(int dim, std::vector<LatticePoint> points)
    : dim_(dim), points_(std::move(points)) {
  require(dim_ >= 1, ErrorCode::kInvalidArgument, "vertex set dimension must be >= 1");
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    require(points_[i].dim() == static_cast<std::size_t>(dim_), ErrorCode::kInvalidArgument,
            "point " + std::to_string(i) + " has the wrong dimension");
    bool inserted = index_.emplace(points_[i], i).second;
    require(inserted, ErrorCode::kInvalidArgument,
            "duplicate point at index " + std::to_string(i));
  }
}

std::optional<std::size_t> VertexSet::index_of(const LatticePoint& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexSet VertexSet::prefix(std::size_t count) const {
  require(count <= points_.size(), ErrorCode::kInvalidArgument, "prefix longer than the set");
  return VertexSet(dim_, std::vector<LatticePoint>(points_.begin(), points_.begin() + count));
}

RateFunction::RateFunction(std::size_t size) : size_(size) {}

RateFunction::RateFunction(std::size_t size, std::vector<PairRate> pairs) : size_(size) {
  for (const PairRate& p : pairs) set(p.i, p.j, p.rate);
}

double RateFunction::rate(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{i, j},
                             [](const PairRate& p, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair{p.i, p.j} < key;
                             });
  if (it != pairs_.end() && it->i == i && it->j == j) return it->rate;
  return 0.0;
}

void RateFunction::set(std::size_t i, std::size_t j, double rate) {
  if (i > j) std::swap(i, j);
  require(i != j, ErrorCode::kInvalidArgument, "rate pair must join distinct indices");
  require(j < size_, ErrorCode::kInvalidArgument,
          "rate pair index " + std::to_string(j) + " out of range for size " +
              std::to_string(size_));
  require(std::isfinite(rate) && rate >= 0.0, ErrorCode::kInvalidArgument,
          "rates must be finite and nonnegative");
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{i, j},
                             [](const PairRate& p, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair{p.i, p.j} < key;
                             });
  bool present = it != pairs_.end() && it->i == i && it->j == j;
  if (rate == 0.0) {
    if (present) pairs_.erase(it);
  } else if (present) {
    it->rate = rate;
  } else {
    pairs_.insert(it, PairRate{i, j, rate});
  }
}

double RateFunction::max_total_rate_at_vertex() const {
  std::vector<double> totals(size_, 0.0);
  for (const PairRate& p : pairs_) {
    totals[p.i] += p.rate;
    totals[p.j] += p.rate;
  }
  return totals.empty() ? 0.0 : *std::max_element(totals.begin(), totals.end());
}

double RateFunction::total_rate() const {
  double total = 0.0;
  for (const PairRate& p : pairs_) total += p.rate;
  return total;
}

namespace {

// Visits every point of the box prod_i [lo[i], hi[i]] in lexicographic order.
template <typename Visit>
void for_each_in_box(const std::vector<int>& lo, const std::vector<int>& hi, Visit&& visit) {
  std::size_t d = lo.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (hi[i] < lo[i]) return;
  }
  std::vector<int> x = lo;
  while (true) {
    visit(LatticePoint(x));
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (x[pos] < hi[pos]) {
        ++x[pos];
        for (std::size_t t = pos + 1; t < d; ++t) x[t] = lo[t];
        break;
      }
      if (pos == 0) return;
    }
  }
}

std::vector<LatticePoint> face_points(int d, int n, int k) {
  std::vector<int> lo(d, 1), hi(d, n);
  for (int i = 0; i < k - 1; ++i) hi[i] = n + 1;
  lo[k - 1] = hi[k - 1] = n + 1;
  std::vector<LatticePoint> out;
  for_each_in_box(lo, hi, [&](LatticePoint p) { out.push_back(std::move(p)); });
  return out;
}

void check_dims(int d, int n) {
  require(d >= 1, ErrorCode::kInvalidArgument, "dimension d must be >= 1");
  require(n >= 1, ErrorCode::kInvalidArgument, "side length n must be >= 1");
}

}  // namespace

VertexSet make_hypercube(const HypercubeSpec& spec) {
  check_dims(spec.dim, spec.side);
  std::vector<LatticePoint> out;
  for_each_in_box(std::vector<int>(spec.dim, 1), std::vector<int>(spec.dim, spec.side),
                  [&](LatticePoint p) { out.push_back(std::move(p)); });
  return VertexSet(spec.dim, std::move(out));
}

VertexSet face_vertices(int d, int n, int k) {
  check_dims(d, n);
  require(k >= 1 && k <= d, ErrorCode::kInvalidArgument,
          "face index k=" + std::to_string(k) + " outside [1, d]");
  return VertexSet(d, face_points(d, n, k));
}

int face_of(const LatticePoint& x, int n) {
  int face = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    require(x[i] >= 1 && x[i] <= n + 1, ErrorCode::kPrecondition,
            "point lies outside R^d_{n+1}");
    if (x[i] == n + 1) face = static_cast<int>(i) + 1;
  }
  return face;
}

VertexSet line_vertices(int d, int n, int k, const LatticePoint& x) {
  check_dims(d, n);
  require(k >= 1 && k <= d, ErrorCode::kInvalidArgument, "line direction k outside [1, d]");
  require(x.dim() == static_cast<std::size_t>(d), ErrorCode::kInvalidArgument,
          "point dimension does not match d");
  require(face_of(x, n) == k, ErrorCode::kPrecondition,
          "point is not in the face S^d_{n,k}");
  std::vector<LatticePoint> out;
  out.reserve(n + 1);
  for (int j = 1; j <= n + 1; ++j) {
    LatticePoint y = x;
    y.coords[k - 1] = j;
    out.push_back(std::move(y));
  }
  return VertexSet(d, std::move(out));
}

bool is_traceable(const VertexSet& vertices, int d, int n) {
  check_dims(d, n);
  require(vertices.dim() == d, ErrorCode::kInvalidArgument, "vertex set dimension differs from d");
  for (const LatticePoint& x : vertices.points()) {
    int k = face_of(x, n);
    if (k == 0) continue;
    LatticePoint y = x;
    for (int j = 1; j <= n; ++j) {
      y.coords[k - 1] = j;
      if (!vertices.contains(y)) return false;
    }
  }
  return true;
}

VertexSet traceable_order(int d, int n_max) {
  check_dims(d, n_max);
  std::vector<LatticePoint> out;
  out.emplace_back(std::vector<int>(d, 1));
  for (int n = 1; n < n_max; ++n) {
    for (int k = 1; k <= d; ++k) {
      for (LatticePoint& p : face_points(d, n, k)) out.push_back(std::move(p));
    }
  }
  return VertexSet(d, std::move(out));
}

std::vector<VertexSet> traceable_sequence(int d, int n_max) {
  require(n_max >= 2, ErrorCode::kInvalidArgument, "traceable_sequence needs n_max >= 2");
  VertexSet order = traceable_order(d, n_max);
  std::vector<VertexSet> out;
  out.reserve(order.size() - 1);
  for (std::size_t count = 2; count <= order.size(); ++count) out.push_back(order.prefix(count));
  return out;
}

VertexSet random_traceable_fill(int d, int n, std::mt19937_64& rng) {
  check_dims(d, n);
  std::vector<LatticePoint> out = make_hypercube({d, n}).points();
  std::vector<LatticePoint> pending;
  for (int k = 1; k <= d; ++k) {
    for (LatticePoint& p : face_points(d, n, k)) pending.push_back(std::move(p));
  }
  std::unordered_map<LatticePoint, bool, LatticePointHash> present;
  for (const LatticePoint& p : out) present.emplace(p, true);

  auto ready = [&](const LatticePoint& x) {
    int k = face_of(x, n);
    LatticePoint y = x;
    for (int j = 1; j <= n; ++j) {
      y.coords[k - 1] = j;
      if (!present.count(y)) return false;
    }
    return true;
  };

  while (!pending.empty()) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (ready(pending[i])) candidates.push_back(i);
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    std::size_t chosen = candidates[pick(rng)];
    present.emplace(pending[chosen], true);
    out.push_back(std::move(pending[chosen]));
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return VertexSet(d, std::move(out));
}

RateFunction induced_rates(const VertexSet& vertices) {
  require(vertices.size() >= 2, ErrorCode::kInvalidArgument,
          "induced_rates needs at least two vertices");
  RateFunction q(vertices.size());
  LatticePoint y;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    y = vertices[a];
    for (int axis = 0; axis < vertices.dim(); ++axis) {
      for (int step : {-1, 1}) {
        y.coords[axis] += step;
        if (auto b = vertices.index_of(y); b && *b > a) q.set(a, *b, 1.0);
        y.coords[axis] -= step;
      }
    }
  }
  return q;
}

std::vector<VertexSet> enumerate_connected_sets(int d, int max_size) {
  require(d >= 1, ErrorCode::kInvalidArgument, "dimension must be >= 1");
  require(max_size >= 1 && max_size <= 10, ErrorCode::kResourceLimit,
          "connected-set enumeration is capped at 10 points");
  using Shape = std::vector<LatticePoint>;
  auto normalize = [d](Shape shape) {
    for (int axis = 0; axis < d; ++axis) {
      int lo = shape.front()[axis];
      for (const LatticePoint& p : shape) lo = std::min(lo, p[axis]);
      for (LatticePoint& p : shape) p.coords[axis] += 1 - lo;
    }
    std::sort(shape.begin(), shape.end());
    return shape;
  };
  std::vector<std::vector<Shape>> by_size(max_size + 1);
  by_size[1].push_back(Shape{LatticePoint(std::vector<int>(d, 1))});
  for (int size = 2; size <= max_size; ++size) {
    std::vector<Shape> grown;
    for (const Shape& shape : by_size[size - 1]) {
      for (const LatticePoint& p : shape) {
        for (int axis = 0; axis < d; ++axis) {
          for (int step : {-1, 1}) {
            LatticePoint y = p;
            y.coords[axis] += step;
            if (std::binary_search(shape.begin(), shape.end(), y)) continue;
            Shape next = shape;
            next.push_back(y);
            grown.push_back(normalize(std::move(next)));
          }
        }
      }
    }
    std::sort(grown.begin(), grown.end());
    grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
    by_size[size] = std::move(grown);
  }
  std::vector<VertexSet> out;
  for (auto& shapes : by_size) {
    for (Shape& shape : shapes) out.emplace_back(d, std::move(shape));
  }
  return out;
}

bool sequence_is_increasing(std::span<const RateFunction> rates) {
  for (std::size_t m = 0; m < rates.size(); ++m) {
    require(rates[m].size() == m + 2, ErrorCode::kInvalidArgument,
            "rate sequence element " + std::to_string(m) + " has size " +
                std::to_string(rates[m].size()) + ", expected " + std::to_string(m + 2));
  }
  for (std::size_t m = 0; m + 1 < rates.size(); ++m) {
    for (const PairRate& p : rates[m].pairs()) {
      if (rates[m + 1].rate(p.i, p.j) < p.rate) return false;
    }
  }
  return true;
}

}  // namespace aldous_lab
