#include "bellrobust/analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "bellrobust/quantum.hpp"

namespace bellrobust {

namespace {

// Runs body(i) for i in [0, n) on up to `workers` threads. Results land by
// index, so output order never depends on scheduling.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t threads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

RobustnessRecord measure(const Behavior& p, const ScanOptions& opt) {
  MeasureSelection which;
  which.white_noise = opt.white_noise;
  return robustness_record(p, which, opt.robustness);
}

void check_d_eff(int d_eff) {
  if (d_eff != 2 && d_eff != 3) throw RangeError("d_eff must be 2 or 3");
}

}  // namespace

bool inequivalent(const RobustnessRecord& a, const RobustnessRecord& b,
                  Measure q1, Measure q2, double tol) {
  const auto a1 = a.get(q1), b1 = b.get(q1), a2 = a.get(q2), b2 = b.get(q2);
  if (!a1 || !b1 || !a2 || !b2)
    throw InputError(std::string("records lack ") + measure_name(q1) +
                     " or " + measure_name(q2));
  const double d1 = *a1 - *b1, d2 = *a2 - *b2;
  return (d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol);
}

std::vector<ScanRecord> scan_dimensions(int d_min, int d_max,
                                        const ScanOptions& opt) {
  if (d_min < 2 || d_min > d_max)
    throw RangeError("need 2 <= d_min <= d_max");
  if (d_max > opt.dimension_ceiling)
    throw SizeError("dimension " + std::to_string(d_max) +
                        " exceeds the configured ceiling of " +
                        std::to_string(opt.dimension_ceiling),
                    static_cast<std::size_t>(opt.dimension_ceiling));
  std::vector<ScanRecord> out(static_cast<std::size_t>(d_max - d_min + 1));
  // Largest dimensions first so the long solves start early.
  parallel_for(out.size(), opt.workers, [&](std::size_t i) {
    const std::size_t slot = out.size() - 1 - i;
    const int d = d_min + static_cast<int>(slot);
    const Behavior p = cglmp_behavior(max_entangled(d), d);
    out[slot] = {"D=" + std::to_string(d), {static_cast<double>(d)},
                 measure(p, opt)};
  });
  return out;
}

std::vector<ScanRecord> scan_simplex(int d_eff, int resolution,
                                     const ScanOptions& opt) {
  check_d_eff(d_eff);
  if (resolution < 2) throw RangeError("resolution must be >= 2");
  std::vector<std::array<int, 2>> grid;
  for (int i = 0; i <= resolution; ++i)
    for (int j = 0; i + j <= resolution; ++j) grid.push_back({i, j});
  std::vector<ScanRecord> out(grid.size());
  const double n = resolution;
  parallel_for(grid.size(), opt.workers, [&](std::size_t idx) {
    const auto [i, j] = grid[idx];
    const int k = resolution - i - j;
    const std::vector<double> q{i / n, j / n, k / n};
    const Behavior p = cglmp_behavior(schmidt_state(SchmidtSpec(q)), d_eff);
    out[idx] = {"simplex d_eff=" + std::to_string(d_eff), q, measure(p, opt)};
  });
  return out;
}

std::vector<ScanRecord> scan_path(int d_eff, int path, int steps,
                                  const ScanOptions& opt) {
  check_d_eff(d_eff);
  if (steps < 2) throw RangeError("steps must be >= 2");
  std::vector<ScanRecord> out(static_cast<std::size_t>(steps));
  parallel_for(out.size(), opt.workers, [&](std::size_t i) {
    const double p = static_cast<double>(i) / (steps - 1);
    const Behavior b =
        cglmp_behavior(schmidt_state(path_state(d_eff, path, p)), d_eff);
    out[i] = {"path " + std::to_string(path) + " d_eff=" + std::to_string(d_eff),
              {static_cast<double>(path), p},
              measure(b, opt)};
  });
  return out;
}

double fit_ratio(const std::vector<ScanRecord>& records) {
  double num = 0.0, den = 0.0;
  int used = 0;
  for (const auto& r : records) {
    if (!r.record.r_s || !r.record.r_g) continue;
    const double g = *r.record.r_g;
    if (g <= 1e-6) continue;
    num += g * *r.record.r_s;
    den += g * g;
    ++used;
  }
  if (used < 2)
    throw InputError("fit_ratio needs at least two records with r_g > 1e-6");
  return num / den;
}

}  // namespace bellrobust
