#include "hecke/limit_set.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "hecke/moebius.hpp"

namespace hecke {

double hull_endpoint(double w) {
  if (w <= 2.0) throw param_error("hull_endpoint: w must exceed 2");
  return 2.0 / (w + std::sqrt(w * w - 4.0));
}

double Cover::total_length() const {
  double s = 0.0;
  for (const auto& iv : intervals) s += iv.length();
  return s;
}

namespace {

struct Cylinder {
  MoebiusMap map;  // increasing on [-a, a]
  int depth = 0;
};

void sort_and_merge(std::vector<CoverInterval>& ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const CoverInterval& x, const CoverInterval& y) {
    return x.left < y.left || (x.left == y.left && x.right < y.right);
  });
  std::vector<CoverInterval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty() && iv.left <= merged.back().right) {
      merged.back().right = std::max(merged.back().right, iv.right);
      merged.back().is_tail = merged.back().is_tail || iv.is_tail;
      merged.back().depth = std::min(merged.back().depth, iv.depth);
    } else {
      merged.push_back(iv);
    }
  }
  ivs = std::move(merged);
}

}  // namespace

Cover refine_cover(double w, double h, const CoverOptions& opts) {
  const double a = hull_endpoint(w);
  if (!(h > 0.0) || h >= a / 4.0)
    throw param_error("refine_cover: target scale must satisfy 0 < h < a/4");

  Cover cover;
  cover.w = w;
  cover.scale = h;

  std::deque<Cylinder> queue;
  queue.push_back({MoebiusMap(), 0});
  std::size_t produced = 0;

  while (!queue.empty()) {
    const Cylinder cyl = queue.front();
    queue.pop_front();
    const double left = cyl.map(-a), right = cyl.map(a);

    if (right - left <= h) {
      cover.intervals.push_back({left, right, cyl.depth, false});
      continue;
    }
    if (produced + queue.size() > opts.max_intervals || cyl.depth >= opts.max_depth) {
      cover.partial = true;
      cover.intervals.push_back({left, right, cyl.depth, false});
      continue;
    }

    // Children n = +/-1, +/-2, ... while the branch image still exceeds the
    // target scale; the remaining branches fall into the tail interval
    // [-1/((N+1) w - a), 1/((N+1) w - a)], whose image has length between
    // h and ~sqrt(h) (the stretched cusp component).
    long long n = 1;
    for (;; ++n) {
      const MoebiusMap pos = compose(cyl.map, branch_map(n, w));
      const MoebiusMap neg = compose(cyl.map, branch_map(-n, w));
      const double lp = pos(a) - pos(-a);
      const double ln = neg(a) - neg(-a);
      if (std::max(lp, ln) <= h && n > 1) break;
      for (const MoebiusMap& child : {pos, neg}) {
        const double cl = child(-a), cr = child(a);
        if (cr - cl <= h) {
          cover.intervals.push_back({cl, cr, cyl.depth + 1, false});
          ++produced;
        } else {
          queue.push_back({child, cyl.depth + 1});
        }
      }
      if (produced + queue.size() > opts.max_intervals) {
        cover.partial = true;
        ++n;
        break;
      }
    }
    const long long cutoff = n;  // tail absorbs the branches |m| >= cutoff
    if (cyl.depth == 0) cover.root_branch_cutoff = cutoff - 1;
    const double t = 1.0 / (static_cast<double>(cutoff) * w - a);
    cover.intervals.push_back({cyl.map(-t), cyl.map(t), cyl.depth + 1, true});
    ++produced;
  }

  sort_and_merge(cover.intervals);
  for (const auto& iv : cover.intervals) cover.max_depth = std::max(cover.max_depth, iv.depth);
  return cover;
}

double omega_area(const Cover& cover, double h) {
  if (cover.scale > h * (1.0 + 1e-12))
    throw param_error("omega_area: cover is coarser than the fattening scale");
  // Merge the h-fattened intervals, then sum stadium areas.
  std::vector<std::pair<double, double>> fat;
  fat.reserve(cover.intervals.size());
  for (const auto& iv : cover.intervals) fat.emplace_back(iv.left - h, iv.right + h);
  std::sort(fat.begin(), fat.end());
  double area = 0.0;
  double cl = 0.0, cr = 0.0;
  bool open = false;
  auto flush = [&]() {
    if (!open) return;
    const double len = (cr - cl) - 2.0 * h;  // underlying length of the component
    area += 2.0 * h * len + M_PI * h * h;
  };
  for (const auto& [l, r] : fat) {
    if (!open) {
      cl = l;
      cr = r;
      open = true;
    } else if (l <= cr) {
      cr = std::max(cr, r);
    } else {
      flush();
      cl = l;
      cr = r;
    }
  }
  flush();
  return area;
}

long long box_count(const Cover& cover, double h) {
  if (!(h > 0.0)) throw param_error("box_count: h must be positive");
  long long total = 0;
  long long cur_lo = 0, cur_hi = -1;
  bool open = false;
  for (const auto& iv : cover.intervals) {  // already sorted and disjoint
    const long long lo = static_cast<long long>(std::floor(iv.left / h));
    const long long hi = static_cast<long long>(std::floor(iv.right / h));
    if (open && lo <= cur_hi) {
      cur_hi = std::max(cur_hi, hi);
    } else {
      if (open) total += cur_hi - cur_lo + 1;
      cur_lo = lo;
      cur_hi = hi;
      open = true;
    }
  }
  if (open) total += cur_hi - cur_lo + 1;
  return total;
}

BoxDimensionReport boxcount_dimension(double w, const std::vector<double>& scales,
                                      const CoverOptions& opts) {
  if (scales.size() < 4)
    throw param_error("boxcount_dimension: need at least 4 scales");
  const auto [mn, mx] = std::minmax_element(scales.begin(), scales.end());
  if (*mx / *mn < 100.0)
    throw param_error("boxcount_dimension: scales must span at least 2 decades");

  BoxDimensionReport report;
  std::vector<double> xs, ys;
  for (double h : scales) {
    const Cover cover = refine_cover(w, h, opts);
    if (cover.partial) continue;  // under-resolved scales are unusable
    const long long count = box_count(cover, h);
    report.scales.push_back(h);
    report.counts.push_back(count);
    xs.push_back(std::log(1.0 / h));
    ys.push_back(std::log(static_cast<double>(count)));
  }
  if (xs.size() < 3)
    throw numeric_error("boxcount_dimension: fewer than 3 usable scales");
  report.fit = fit_line(xs, ys);
  report.dimension = report.fit.slope;
  return report;
}

}  // namespace hecke
