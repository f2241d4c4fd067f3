#include "radig/eval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace radig {

std::vector<double> uniform_thresholds(int count) {
  if (count < 2) throw ValidationError("uniform_thresholds: need at least 2 points");
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) t[i] = static_cast<double>(i) / (count - 1);
  return t;
}

namespace {

struct Overlap {
  std::int32_t pred = 0;
  std::int32_t gt = 0;
  std::int64_t count = 0;
};

// Sparse contingency table between two partitions of the same raster.
std::vector<Overlap> overlap_table(const LabelMap& pred, const LabelMap& gt,
                                   std::vector<std::int64_t>& pred_area,
                                   std::vector<std::int64_t>& gt_area) {
  if (pred.width != gt.width || pred.height != gt.height) {
    throw ValidationError("eval: prediction and ground truth dimensions differ");
  }
  pred_area.assign(pred.region_count, 0);
  gt_area.assign(gt.region_count, 0);
  std::unordered_map<std::uint64_t, std::int64_t> cells;
  cells.reserve(static_cast<std::size_t>(pred.region_count) * 2);
  for (std::int64_t p = 0; p < pred.pixel_count(); ++p) {
    const std::int32_t rp = pred.labels[p];
    const std::int32_t rg = gt.labels[p];
    ++pred_area[rp];
    ++gt_area[rg];
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(rp)) << 32) |
                              static_cast<std::uint32_t>(rg);
    ++cells[key];
  }
  std::vector<Overlap> out;
  out.reserve(cells.size());
  for (const auto& [key, count] : cells) {
    out.push_back(Overlap{static_cast<std::int32_t>(key >> 32),
                          static_cast<std::int32_t>(key & 0xffffffffu), count});
  }
  return out;
}

// Object-and-parts credits for one annotator; returns (precision, recall).
std::pair<double, double> fop_single(const LabelMap& pred, const LabelMap& gt,
                                     const FopParams& params) {
  std::vector<std::int64_t> pred_area;
  std::vector<std::int64_t> gt_area;
  const std::vector<Overlap> table = overlap_table(pred, gt, pred_area, gt_area);

  std::vector<double> pred_credit(pred.region_count, 0.0);
  std::vector<double> gt_credit(gt.region_count, 0.0);
  std::vector<char> pred_object(pred.region_count, 0);
  std::vector<char> gt_object(gt.region_count, 0);

  for (const Overlap& o : table) {
    const double o_r = static_cast<double>(o.count) / static_cast<double>(pred_area[o.pred]);
    const double o_g = static_cast<double>(o.count) / static_cast<double>(gt_area[o.gt]);
    if (o_r >= params.gamma_object && o_g >= params.gamma_object) {
      pred_object[o.pred] = 1;
      gt_object[o.gt] = 1;
    } else if (o_r >= params.gamma_object && o_g >= params.gamma_part) {
      // Candidate fragment inside a ground-truth region.
      pred_credit[o.pred] += o_g;
      gt_credit[o.gt] += o_g;
    } else if (o_g >= params.gamma_object && o_r >= params.gamma_part) {
      // Ground-truth region swallowed by a larger candidate.
      pred_credit[o.pred] += o_r;
      gt_credit[o.gt] += o_r;
    }
  }

  double tp_pred = 0.0;
  for (std::int32_t r = 0; r < pred.region_count; ++r) {
    tp_pred += pred_object[r] ? 1.0 : std::min(1.0, pred_credit[r]);
  }
  double tp_gt = 0.0;
  for (std::int32_t g = 0; g < gt.region_count; ++g) {
    tp_gt += gt_object[g] ? 1.0 : std::min(1.0, gt_credit[g]);
  }
  return {tp_pred / pred.region_count, tp_gt / gt.region_count};
}

}  // namespace

std::vector<PRPoint> fop_curve(const Hierarchy& h, const UcmLevels& levels, const GroundTruth& gt,
                               const FopParams& params) {
  if (gt.annotators.empty()) throw ValidationError("fop_curve: no annotator partitions");
  std::vector<PRPoint> curve;
  curve.reserve(params.thresholds.size());
  for (double t : params.thresholds) {
    const LabelMap pred = cut(h, levels, t);
    double p_sum = 0.0;
    double r_sum = 0.0;
    for (const LabelMap& ann : gt.annotators) {
      const auto [p, r] = fop_single(pred, ann, params);
      p_sum += p;
      r_sum += r;
    }
    const double p = p_sum / gt.annotators.size();
    const double r = r_sum / gt.annotators.size();
    curve.push_back(PRPoint{t, p, r, f_measure(p, r)});
  }
  return curve;
}

namespace {

struct CrackPos {
  // Doubled coordinates keep crack midpoints integral: a vertical crack at
  // (x,y) sits at (2x+1, 2y), a horizontal one at (2x, 2y+1).
  std::int32_t x2 = 0;
  std::int32_t y2 = 0;

  bool operator<(const CrackPos& o) const {
    return y2 != o.y2 ? y2 < o.y2 : x2 < o.x2;
  }
  bool operator==(const CrackPos& o) const { return x2 == o.x2 && y2 == o.y2; }
};

std::vector<CrackPos> boundary_cracks(const LabelMap& map) {
  std::vector<CrackPos> out;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x + 1 < map.width; ++x) {
      if (map.at(x, y) != map.at(x + 1, y)) out.push_back(CrackPos{2 * x + 1, 2 * y});
    }
  }
  for (int y = 0; y + 1 < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      if (map.at(x, y) != map.at(x, y + 1)) out.push_back(CrackPos{2 * x, 2 * y + 1});
    }
  }
  return out;
}

// One-to-one greedy nearest matching within `radius` (in pixel units).
// The tie-break key is symmetric in the two sides, so swapping the sets
// swaps matched roles exactly.
std::int64_t match_cracks(const std::vector<CrackPos>& a, const std::vector<CrackPos>& b,
                          double radius) {
  if (a.empty() || b.empty()) return 0;
  const double r2_limit = (2.0 * radius) * (2.0 * radius);  // doubled coordinates

  // Bucket b by cell for the radius query.
  const std::int32_t cell = std::max<std::int32_t>(1, static_cast<std::int32_t>(2.0 * radius) + 1);
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> buckets;
  auto cell_key = [cell](std::int32_t x2, std::int32_t y2) {
    const std::uint64_t cx = static_cast<std::uint32_t>(x2 / cell);
    const std::uint64_t cy = static_cast<std::uint32_t>(y2 / cell);
    return (cx << 32) | cy;
  };
  for (std::size_t i = 0; i < b.size(); ++i) buckets[cell_key(b[i].x2, b[i].y2)].push_back(i);

  struct Pair {
    std::int64_t dist2;
    CrackPos lo;
    CrackPos hi;
    std::int32_t ia;
    std::int32_t ib;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int32_t cx = a[i].x2 / cell;
    const std::int32_t cy = a[i].y2 / cell;
    for (std::int32_t dx = -1; dx <= 1; ++dx) {
      for (std::int32_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find((static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx + dx)) << 32) |
                               static_cast<std::uint32_t>(cy + dy));
        if (it == buckets.end()) continue;
        for (std::int32_t j : it->second) {
          const double ddx = a[i].x2 - b[j].x2;
          const double ddy = a[i].y2 - b[j].y2;
          const double d2 = ddx * ddx + ddy * ddy;
          if (d2 <= r2_limit) {
            const CrackPos lo = std::min(a[i], b[j]);
            const CrackPos hi = std::max(a[i], b[j]);
            pairs.push_back(Pair{static_cast<std::int64_t>(d2), lo, hi,
                                 static_cast<std::int32_t>(i), j});
          }
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.dist2 != y.dist2) return x.dist2 < y.dist2;
    if (!(x.lo == y.lo)) return x.lo < y.lo;
    return x.hi < y.hi;
  });

  std::vector<char> used_a(a.size(), 0);
  std::vector<char> used_b(b.size(), 0);
  std::int64_t matched = 0;
  for (const Pair& p : pairs) {
    if (used_a[p.ia] || used_b[p.ib]) continue;
    used_a[p.ia] = 1;
    used_b[p.ib] = 1;
    ++matched;
  }
  return matched;
}

}  // namespace

std::vector<PRPoint> fb_curve(const CrackMap& ucm, const GroundTruth& gt, double tol_frac,
                              const std::vector<double>& thresholds) {
  if (gt.annotators.empty()) throw ValidationError("fb_curve: no annotator partitions");
  for (const LabelMap& ann : gt.annotators) {
    if (ann.width != ucm.width || ann.height != ucm.height) {
      throw ValidationError("fb_curve: annotator dimensions differ from contour map");
    }
  }

  // Union of the annotators' boundary cracks.
  std::vector<CrackPos> gt_cracks;
  for (const LabelMap& ann : gt.annotators) {
    std::vector<CrackPos> cracks = boundary_cracks(ann);
    gt_cracks.insert(gt_cracks.end(), cracks.begin(), cracks.end());
  }
  std::sort(gt_cracks.begin(), gt_cracks.end());
  gt_cracks.erase(std::unique(gt_cracks.begin(), gt_cracks.end()), gt_cracks.end());

  const double radius =
      tol_frac * std::sqrt(static_cast<double>(ucm.width) * ucm.width +
                           static_cast<double>(ucm.height) * ucm.height);

  std::vector<PRPoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    std::vector<CrackPos> pred;
    for (int y = 0; y < ucm.height; ++y) {
      for (int x = 0; x + 1 < ucm.width; ++x) {
        if (ucm.v(x, y) > t) pred.push_back(CrackPos{2 * x + 1, 2 * y});
      }
    }
    for (int y = 0; y + 1 < ucm.height; ++y) {
      for (int x = 0; x < ucm.width; ++x) {
        if (ucm.hz(x, y) > t) pred.push_back(CrackPos{2 * x, 2 * y + 1});
      }
    }
    const std::int64_t matched = match_cracks(pred, gt_cracks, radius);
    const double p = pred.empty() ? 0.0 : static_cast<double>(matched) / pred.size();
    const double r = gt_cracks.empty() ? 0.0 : static_cast<double>(matched) / gt_cracks.size();
    curve.push_back(PRPoint{t, p, r, f_measure(p, r)});
  }
  return curve;
}

OdsOis ods_ois(const std::vector<std::vector<PRPoint>>& per_image_curves) {
  if (per_image_curves.empty()) throw ValidationError("ods_ois: no curves");
  const std::size_t points = per_image_curves.front().size();
  for (const auto& curve : per_image_curves) {
    if (curve.size() != points) {
      throw ValidationError("ods_ois: curves must share one threshold grid");
    }
  }

  OdsOis out;
  for (std::size_t i = 0; i < points; ++i) {
    double p_sum = 0.0;
    double r_sum = 0.0;
    for (const auto& curve : per_image_curves) {
      p_sum += curve[i].precision;
      r_sum += curve[i].recall;
    }
    const double p = p_sum / per_image_curves.size();
    const double r = r_sum / per_image_curves.size();
    const double f = f_measure(p, r);
    if (f > out.ods.f || i == 0) {
      out.ods = PRPoint{per_image_curves.front()[i].threshold, p, r, f};
    }
  }
  double ois_sum = 0.0;
  for (const auto& curve : per_image_curves) {
    double best = 0.0;
    for (const PRPoint& pt : curve) best = std::max(best, pt.f);
    ois_sum += best;
  }
  out.ois = ois_sum / per_image_curves.size();
  return out;
}

LabelMap labels_to_instances(const LabelMap& category_map) {
  const int w = category_map.width;
  const int h = category_map.height;
  if (w < 1 || h < 1) throw ValidationError("labels_to_instances: empty map");
  LabelMap out(w, h);
  std::fill(out.labels.begin(), out.labels.end(), kNotConnected);
  std::int32_t next = 0;
  std::vector<std::int32_t> fifo;
  const int dx[4] = {0, -1, 1, 0};
  const int dy[4] = {-1, 0, 0, 1};
  for (std::int64_t p0 = 0; p0 < category_map.pixel_count(); ++p0) {
    if (out.labels[p0] != kNotConnected) continue;
    const std::int32_t category = category_map.labels[p0];
    const std::int32_t instance = next++;
    out.labels[p0] = instance;
    fifo.clear();
    fifo.push_back(static_cast<std::int32_t>(p0));
    for (std::size_t head = 0; head < fifo.size(); ++head) {
      const std::int32_t q = fifo[head];
      const int x = q % w;
      const int y = q / w;
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::int32_t n = ny * w + nx;
        if (out.labels[n] == kNotConnected && category_map.labels[n] == category) {
          out.labels[n] = instance;
          fifo.push_back(n);
        }
      }
    }
  }
  out.region_count = next;
  return out;
}

}  // namespace radig
