#include "mixsn/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mixsn/error.hpp"

namespace mixsn {

MonotoneGrid grid_for(const WeightFunction& weight) {
  MonotoneGrid g;
  g.dim = weight.dim();
  g.log_value = [&weight](std::span<const std::int64_t> k) { return weight.log_sigma(k); };
  if (weight.exact())
    g.exact_key = [&weight](std::span<const std::int64_t> k) { return weight.exact_reciprocal(k); };
  g.sign_symmetric = true;
  return g;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

struct Node {
  double logv;
  std::uint64_t key;
  std::uint32_t slot;
};

}  // namespace

struct FrontierEnumerator::Impl {
  MonotoneGrid grid;
  EnumerateOptions options;
  bool exact = false;
  std::vector<std::int64_t> pool;
  std::vector<std::uint32_t> free_slots;
  std::vector<Node> heap;
  std::vector<std::int64_t> scratch;
  std::size_t peak = 0;
  bool started = false;

  std::span<const std::int64_t> coords(const Node& n) const {
    return {pool.data() + std::size_t(n.slot) * grid.dim, grid.dim};
  }

  // True when a is emitted after b.
  bool after(const Node& a, const Node& b) const {
    if (exact && (a.key != kSaturated || b.key != kSaturated)) {
      if (a.key != b.key) return a.key > b.key;
    } else if (a.logv != b.logv) {
      return a.logv < b.logv;
    }
    auto ka = coords(a);
    auto kb = coords(b);
    return std::lexicographical_compare(kb.begin(), kb.end(), ka.begin(), ka.end());
  }

  void push(std::span<const std::int64_t> k) {
    const double lv = grid.log_value(k);
    if (lv == -std::numeric_limits<double>::infinity()) return;
    if (heap.size() >= options.node_cap)
      throw Error(Errc::BudgetExceeded,
                  "frontier reached " + std::to_string(options.node_cap) + " nodes");
    std::uint64_t key = 0;
    if (exact) key = grid.exact_key(k).value_or(kSaturated);
    std::uint32_t slot;
    if (!free_slots.empty()) {
      slot = free_slots.back();
      free_slots.pop_back();
    } else {
      slot = static_cast<std::uint32_t>(pool.size() / grid.dim);
      pool.resize(pool.size() + grid.dim);
    }
    std::copy(k.begin(), k.end(), pool.begin() + std::size_t(slot) * grid.dim);
    heap.push_back({lv, key, slot});
    std::push_heap(heap.begin(), heap.end(), [this](const Node& a, const Node& b) { return after(a, b); });
    peak = std::max(peak, heap.size());
  }

  // Pops the best node into scratch and pushes its children.
  Node pop() {
    std::pop_heap(heap.begin(), heap.end(), [this](const Node& a, const Node& b) { return after(a, b); });
    Node top = heap.back();
    heap.pop_back();
    auto k = coords(top);
    scratch.assign(k.begin(), k.end());
    free_slots.push_back(top.slot);

    std::size_t first_nz = grid.dim - 1;
    for (std::size_t j = 0; j < grid.dim; ++j)
      if (scratch[j] != 0) {
        first_nz = j;
        break;
      }
    for (std::size_t j = 0; j <= first_nz; ++j) {
      ++scratch[j];
      push(scratch);
      --scratch[j];
    }
    return top;
  }

  bool same_plateau(const Node& first, const Node& other) const {
    if (exact && first.key != kSaturated && other.key != kSaturated) return first.key == other.key;
    return first.logv - other.logv <= kPlateauLogTol;
  }
};

FrontierEnumerator::FrontierEnumerator(MonotoneGrid grid, EnumerateOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (grid.dim == 0) throw Error(Errc::InvalidArgument, "grid dimension must be positive");
  impl_->grid = std::move(grid);
  impl_->options = options;
  impl_->exact = static_cast<bool>(impl_->grid.exact_key);
}

FrontierEnumerator::~FrontierEnumerator() = default;
FrontierEnumerator::FrontierEnumerator(FrontierEnumerator&&) noexcept = default;
FrontierEnumerator& FrontierEnumerator::operator=(FrontierEnumerator&&) noexcept = default;

std::size_t FrontierEnumerator::peak_frontier() const noexcept { return impl_->peak; }

bool FrontierEnumerator::next_plateau(PlateauBlock& out, bool keep_points, std::uint64_t max_count) {
  Impl& s = *impl_;
  if (!s.started) {
    s.started = true;
    std::vector<std::int64_t> origin(s.grid.dim, 0);
    s.push(origin);
  }
  out.points.clear();
  out.count = 0;
  out.merged_by_tolerance = false;
  out.complete = true;
  if (s.heap.empty()) return false;

  auto take = [&](const Node& node) {
    const std::uint64_t mult = s.grid.sign_symmetric ? sign_multiplicity(s.scratch) : 1;
    out.count += mult;
    if (keep_points) out.points.push_back({s.scratch, mult});
    out.log_sigma = node.logv;
  };

  const Node first = s.pop();
  out.log_sigma_max = first.logv;
  out.exact_reciprocal =
      s.exact && first.key != kSaturated ? std::optional<std::uint64_t>(first.key) : std::nullopt;
  take(first);
  while (!s.heap.empty() && s.same_plateau(first, s.heap.front())) {
    if (out.count >= max_count) {
      out.complete = false;
      break;
    }
    const Node node = s.pop();
    if (node.logv != first.logv) out.merged_by_tolerance = true;
    take(node);
  }
  if (keep_points)
    std::sort(out.points.begin(), out.points.end(),
              [](const LatticePoint& a, const LatticePoint& b) { return a.k < b.k; });
  return true;
}

SingularSequence rearrange(const MonotoneGrid& grid, std::uint64_t n_max,
                           const EnumerateOptions& options) {
  if (n_max == 0) throw Error(Errc::InvalidArgument, "n_max must be at least 1");
  FrontierEnumerator frontier(grid, options);
  SingularSequence seq;
  seq.values.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n_max, 1u << 24)));
  const bool exact = static_cast<bool>(grid.exact_key);
  PlateauBlock block;
  std::uint64_t total = 0;
  double prev_log = std::numeric_limits<double>::quiet_NaN();
  while (total < n_max) {
    const std::uint64_t cap = options.complete_last_plateau ? UINT64_MAX : n_max - total;
    if (!frontier.next_plateau(block, false, cap)) break;
    double theta;
    double value;
    if (exact && block.exact_reciprocal) {
      theta = static_cast<double>(*block.exact_reciprocal);
      value = 1.0 / theta;
    } else {
      theta = std::exp(-block.log_sigma);
      value = std::exp(block.log_sigma);
      if (block.merged_by_tolerance) seq.tie_sensitive = true;
      if (!std::isnan(prev_log) && prev_log - block.log_sigma_max <= 100.0 * kPlateauLogTol)
        seq.tie_sensitive = true;
      prev_log = block.log_sigma;
    }
    total += block.count;
    if (block.complete) seq.plateaus.push_back({theta, total});
    const std::uint64_t fill = std::min(total, n_max) - seq.values.size();
    seq.values.insert(seq.values.end(), static_cast<std::size_t>(fill), value);
  }
  return seq;
}

SingularSequence singular_values(const WeightFunction& weight, std::uint64_t n_max,
                                 const EnumerateOptions& options) {
  return rearrange(grid_for(weight), n_max, options);
}

double nth_singular_value(const WeightFunction& weight, std::uint64_t n,
                          const EnumerateOptions& options) {
  EnumerateOptions opts = options;
  opts.complete_last_plateau = false;
  const auto seq = singular_values(weight, n, opts);
  return seq.values.size() >= n ? seq.values[n - 1] : 0.0;
}

std::vector<Plateau> jump_sequence(const WeightFunction& weight, std::size_t m_max,
                                   const EnumerateOptions& options) {
  FrontierEnumerator frontier(grid_for(weight), options);
  std::vector<Plateau> out;
  PlateauBlock block;
  std::uint64_t total = 0;
  while (out.size() < m_max && frontier.next_plateau(block, false)) {
    total += block.count;
    const double theta = block.exact_reciprocal ? static_cast<double>(*block.exact_reciprocal)
                                                : std::exp(-block.log_sigma);
    out.push_back({theta, total});
  }
  return out;
}

std::vector<std::vector<std::int64_t>> expand_signs(std::span<const std::int64_t> k) {
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < k.size(); ++j)
    if (k[j] != 0) nz.push_back(j);
  const std::size_t variants = std::size_t{1} << nz.size();
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(variants);
  for (std::size_t mask = 0; mask < variants; ++mask) {
    std::vector<std::int64_t> v(k.begin(), k.end());
    for (std::size_t i = 0; i < nz.size(); ++i)
      if (mask >> (nz.size() - 1 - i) & 1u) v[nz[i]] = -std::abs(v[nz[i]]);
      else v[nz[i]] = std::abs(v[nz[i]]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<std::int64_t>> optimal_index_set(const ProblemSpec& spec, std::uint64_t n,
                                                         const EnumerateOptions& options) {
  if (n == 0) throw Error(Errc::InvalidArgument, "n must be at least 1");
  const auto weight = WeightFunction::tensor(spec);
  std::vector<std::vector<std::int64_t>> out;
  const std::uint64_t need = n - 1;
  if (need == 0) return out;
  FrontierEnumerator frontier(grid_for(weight), options);
  PlateauBlock block;
  while (out.size() < need && frontier.next_plateau(block, true)) {
    for (const auto& p : block.points) {
      for (auto& v : expand_signs(p.k)) {
        out.push_back(to_user_order(spec, v));
        if (out.size() == need) return out;
      }
    }
  }
  return out;
}

}  // namespace mixsn
