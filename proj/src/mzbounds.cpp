#include "mzroots/mzbounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "mzroots/errors.hpp"

namespace mzroots {

std::string_view to_string(MzMethod method) {
  return method == MzMethod::svd ? "svd" : "probe";
}

Eigen::MatrixXcd sampling_matrix(const NodeSet& nodes) {
  const int size = nodes.n() + 1;
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  Eigen::MatrixXcd a(size, size);
  for (int j = 0; j < size; ++j) {
    // z^k via polar with an exact k*angle argument, not repeated products
    for (int k = 0; k < size; ++k) a(j, k) = std::polar(scale, k * nodes.angle(j));
  }
  return a;
}

MZReport mz_constant_p2(const NodeSet& nodes, int max_degree) {
  if (nodes.n() > max_degree)
    throw std::invalid_argument("mz_constant_p2: degree " + std::to_string(nodes.n()) +
                                " above dense cap " + std::to_string(max_degree));
  const Eigen::MatrixXcd a = sampling_matrix(nodes);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin < kSingularThreshold)
    throw SingularError("mz_constant_p2: sigma_min below threshold, not an MZ set at n = " +
                        std::to_string(nodes.n()));
  MZReport r;
  r.n = nodes.n();
  r.p = 2.0;
  r.lower_frame = smin * smin;
  r.upper_frame = smax * smax;
  r.c_p = std::max(r.upper_frame, 1.0 / r.lower_frame);
  r.sigma_min = smin;
  r.sigma_max = smax;
  r.method = MzMethod::svd;
  return r;
}

namespace {

double power_abs(cplx v, double p) {
  const double sq = std::norm(v);
  if (p == 2.0) return sq;
  if (p == 4.0) return sq * sq;
  return std::pow(sq, 0.5 * p);
}

bool is_even_integer(double p) { return p == std::round(p) && static_cast<long>(p) % 2 == 0; }

// Incrementally maintained sample and grid values of one probe polynomial.
// Moving a single coefficient c_k by d changes every value by d z^k, so a
// trial costs O(n + M) instead of a full re-evaluation.
class ProbeEvaluator {
 public:
  ProbeEvaluator(const NodeSet& nodes, double p, int oversampling)
      : size_(nodes.n() + 1), p_(p), parseval_(p == 2.0) {
    powers_.resize(static_cast<std::size_t>(size_) * size_);
    for (int j = 0; j < size_; ++j)
      for (int k = 0; k < size_; ++k) powers_[j * size_ + k] = std::polar(1.0, k * nodes.angle(j));
    if (!parseval_) {
      // |P|^p is a trigonometric polynomial of degree p n for even integer p
      grid_ = is_even_integer(p) ? static_cast<int>(p) * size_ : oversampling * size_;
      grid_ = std::max(grid_, 2 * size_);
      roots_.resize(grid_);
      for (int t = 0; t < grid_; ++t) roots_[t] = std::polar(1.0, kTwoPi * t / grid_);
    }
  }

  struct State {
    std::vector<cplx> coeffs;
    std::vector<cplx> samples;
    std::vector<cplx> grid;
    double mean_sum = 0.0;
    double norm_sum = 0.0;
  };

  State load(std::vector<cplx> coeffs) const {
    State s;
    s.coeffs = std::move(coeffs);
    s.samples.assign(size_, cplx{});
    for (int j = 0; j < size_; ++j) {
      cplx acc{};
      for (int k = 0; k < size_; ++k) acc += s.coeffs[k] * powers_[j * size_ + k];
      s.samples[j] = acc;
      s.mean_sum += power_abs(acc, p_);
    }
    if (parseval_) {
      for (const auto& c : s.coeffs) s.norm_sum += std::norm(c);
    } else {
      s.grid = eval_on_grid(Polynomial(s.coeffs), CircleGrid(grid_));
      for (const auto& g : s.grid) s.norm_sum += power_abs(g, p_);
    }
    return s;
  }

  // mean/norm with the normalizations 1/(n+1) and 1/M.
  double ratio(double mean_sum, double norm_sum) const {
    const double norm = parseval_ ? norm_sum : norm_sum / grid_;
    if (!(norm > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return (mean_sum / size_) / norm;
  }
  double ratio(const State& s) const { return ratio(s.mean_sum, s.norm_sum); }

  // Sums after c_k += d, without committing.
  std::pair<double, double> trial(const State& s, int k, cplx d) const {
    double mean = 0.0;
    for (int j = 0; j < size_; ++j) mean += power_abs(s.samples[j] + d * powers_[j * size_ + k], p_);
    double norm = 0.0;
    if (parseval_) {
      norm = s.norm_sum - std::norm(s.coeffs[k]) + std::norm(s.coeffs[k] + d);
    } else {
      for (int m = 0; m < grid_; ++m)
        norm += power_abs(s.grid[m] + d * roots_[(static_cast<long>(k) * m) % grid_], p_);
    }
    return {mean, norm};
  }

  void commit(State& s, int k, cplx d, std::pair<double, double> sums) const {
    s.coeffs[k] += d;
    for (int j = 0; j < size_; ++j) s.samples[j] += d * powers_[j * size_ + k];
    if (!parseval_)
      for (int m = 0; m < grid_; ++m) s.grid[m] += d * roots_[(static_cast<long>(k) * m) % grid_];
    s.mean_sum = sums.first;
    s.norm_sum = sums.second;
  }

  int size() const { return size_; }

 private:
  int size_;
  double p_;
  bool parseval_;
  int grid_ = 0;
  std::vector<cplx> powers_;
  std::vector<cplx> roots_;
};

std::vector<cplx> normalized(std::vector<cplx> c) {
  double s = 0.0;
  for (const auto& v : c) s += std::norm(v);
  if (s > 0.0) {
    const double inv = 1.0 / std::sqrt(s);
    for (auto& v : c) v *= inv;
  }
  return c;
}

// Seeded single-coefficient ascent; `sign` = +1 maximizes mean/norm,
// -1 minimizes it. Returns the best ratio seen.
double refine(const ProbeEvaluator& ev, std::vector<cplx> start, int sign, int rounds,
              std::uint64_t seed) {
  auto state = ev.load(normalized(std::move(start)));
  double best = ev.ratio(state);
  if (!std::isfinite(best)) return best;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, ev.size() - 1);
  double step = 0.25;
  const cplx dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int round = 0; round < rounds; ++round) {
    const int k = pick(rng);
    double round_best = best;
    cplx best_d{};
    std::pair<double, double> best_sums{};
    for (const auto& dir : dirs) {
      const cplx d = step * dir;
      const auto sums = ev.trial(state, k, d);
      const double r = ev.ratio(sums.first, sums.second);
      if (std::isfinite(r) && sign * (r - round_best) > 0.0) {
        round_best = r;
        best_d = d;
        best_sums = sums;
      }
    }
    if (best_d != cplx{}) {
      ev.commit(state, k, best_d, best_sums);
      // recompute from the committed sums; drift stays at rounding level
      best = ev.ratio(state);
    } else {
      step *= 0.5;
    }
  }
  return best;
}

std::vector<cplx> monomial(int size, int k) {
  std::vector<cplx> c(size, cplx{});
  c[k] = 1.0;
  return c;
}

std::vector<cplx> binomial(int size, int power) {
  std::vector<cplx> c(size, cplx{});
  c[0] = 1.0;
  for (int e = 1; e <= power; ++e)
    for (int k = e; k > 0; --k) c[k] += c[k - 1];
  return c;
}

// prod_{m != skip} (z - z_m): vanishes at every node except `skip`.
std::vector<cplx> node_polynomial(const NodeSet& nodes, std::size_t skip) {
  const int size = nodes.n() + 1;
  std::vector<cplx> c(size, cplx{});
  c[0] = 1.0;
  int deg = 0;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (m == skip) continue;
    const cplx root = nodes.point(m);
    ++deg;
    for (int k = deg; k > 0; --k) c[k] = c[k - 1] - root * c[k];
    c[0] = -root * c[0];
  }
  return c;
}

std::pair<std::size_t, std::size_t> closest_pair(const NodeSet& nodes) {
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return nodes.angle(a) < nodes.angle(b); });
  std::pair<std::size_t, std::size_t> best{order.back(), order.front()};
  double gap = nodes.angle(order.front()) + kTwoPi - nodes.angle(order.back());
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double g = nodes.angle(order[k]) - nodes.angle(order[k - 1]);
    if (g < gap) {
      gap = g;
      best = {order[k - 1], order[k]};
    }
  }
  return best;
}

}  // namespace

MZReport mz_constant_probe(const NodeSet& nodes, double p, const ProbeOptions& options) {
  require_exponent(p);
  if (options.budget < 1) throw std::invalid_argument("mz_constant_probe: budget must be >= 1");
  const int size = nodes.n() + 1;
  // The constants are invariant under a common rotation; probing the set
  // rotated so node 0 sits at angle 0 makes the bound invariant too.
  std::vector<double> rotated = nodes.angles();
  for (double& a : rotated) a -= nodes.angle(0);
  const NodeSet canonical(nodes.n(), std::move(rotated));
  const ProbeEvaluator ev(canonical, p, options.oversampling);

  std::vector<std::vector<cplx>> structured;
  // Every monomial has ratio exactly 1, so a few starting points suffice;
  // powers of 1 + z are taken at dyadic exponents and the full degree.
  for (int k : std::set<int>{0, (size - 1) / 2, size - 1}) structured.push_back(monomial(size, k));
  std::set<int> exponents{size - 1};
  for (int e = 1; e < size; e *= 2) exponents.insert(e);
  for (int e : exponents)
    if (e > 0) structured.push_back(binomial(size, e));
  if (size > 1) {
    const auto [a, b] = closest_pair(canonical);
    structured.push_back(node_polynomial(canonical, a));
    structured.push_back(node_polynomial(canonical, b));
  }
  if (p == 2.0 && options.singular_vector_probes) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(sampling_matrix(canonical), Eigen::ComputeFullV);
    const auto& v = svd.matrixV();
    for (int col : {0, size - 1}) {
      std::vector<cplx> c(size);
      for (int k = 0; k < size; ++k) c[k] = v(k, col);
      structured.push_back(std::move(c));
    }
  }

  double upper = 0.0;
  double lower = std::numeric_limits<double>::infinity();
  auto consider = [&](const std::vector<cplx>& start, std::uint64_t refine_seed) {
    const double hi = refine(ev, start, +1, options.refine_rounds, refine_seed);
    const double lo = refine(ev, start, -1, options.refine_rounds, refine_seed ^ 0x9e3779b97f4a7c15ull);
    if (std::isfinite(hi)) upper = std::max(upper, hi);
    if (std::isfinite(lo)) lower = std::min(lower, lo);
  };

  std::uint64_t index = 0;
  for (const auto& start : structured) consider(start, options.seed * 0x100000001b3ull + index++);
  for (int b = 0; b < options.budget; ++b) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32), static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    const auto poly = random_poly(canonical.n(), rng());
    consider(poly.coeffs(), rng());
  }

  MZReport r;
  r.n = nodes.n();
  r.p = p;
  r.lower_frame = lower;
  r.upper_frame = upper;
  r.c_p = std::max(upper, lower > 0.0 ? 1.0 / lower : std::numeric_limits<double>::infinity());
  r.method = MzMethod::probe;
  return r;
}

MZReport mz_constant_probe(const NodeSet& nodes, double p, int budget, std::uint64_t seed) {
  ProbeOptions options;
  options.budget = budget;
  options.seed = seed;
  return mz_constant_probe(nodes, p, options);
}

Polynomial reconstruct_ls(std::span<const cplx> samples, const NodeSet& nodes) {
  const int size = nodes.n() + 1;
  if (samples.size() != static_cast<std::size_t>(size))
    throw std::invalid_argument("reconstruct_ls: expected n+1 samples");
  const Eigen::MatrixXcd a = sampling_matrix(nodes);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(size - 1) < kSingularThreshold)
    throw SingularError("reconstruct_ls: sampling matrix is singular");
  // A c = samples / sqrt(n+1) because A carries the 1/sqrt(n+1) normalization
  Eigen::VectorXcd rhs(size);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (int j = 0; j < size; ++j) rhs(j) = samples[j] * scale;
  const Eigen::VectorXcd c = svd.solve(rhs);
  return Polynomial(std::vector<cplx>(c.data(), c.data() + size));
}

}  // namespace mzroots
