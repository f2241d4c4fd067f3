#include "radig/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <json.hpp>

namespace radig {

namespace {
constexpr double kLevelFloor = 1.0 / 255.0;

void require_atoms(const Hierarchy& h, const char* who) {
  if (h.atoms.pixel_count() <= 0 || h.atoms.region_count != h.graph.atom_count) {
    throw ValidationError(std::string(who) + ": hierarchy carries no atomic label map");
  }
}
}  // namespace

UcmLevels monotonize(const Hierarchy& h) {
  const std::int32_t atom_count = h.graph.atom_count;
  UcmLevels out;
  out.level.resize(h.events.size());
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < h.events.size(); ++t) {
    const MergeEvent& e = h.events[t];
    double lvl = e.distance;
    if (e.left >= atom_count) lvl = std::max(lvl, out.level[e.left - atom_count]);
    if (e.right >= atom_count) lvl = std::max(lvl, out.level[e.right - atom_count]);
    running = std::max(running, lvl);
    out.level[t] = running;
  }
  if (out.level.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(out.level.begin(), out.level.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  for (double& l : out.level) {
    l = hi > lo ? kLevelFloor + (1.0 - kLevelFloor) * (l - lo) / (hi - lo) : 1.0;
  }
  return out;
}

LabelMap cut(const Hierarchy& h, const UcmLevels& levels, double t) {
  require_atoms(h, "cut");
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("cut: threshold must be in [0,1]");
  if (levels.level.size() != h.events.size()) {
    throw ValidationError("cut: levels do not match the event list");
  }

  // Levels are non-decreasing, so the applied merges are a time prefix.
  const std::size_t applied =
      std::upper_bound(levels.level.begin(), levels.level.end(), t) - levels.level.begin();

  std::vector<std::int32_t> top(h.graph.clusters.size());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = static_cast<std::int32_t>(i);
  for (std::size_t e = 0; e < applied; ++e) {
    top[h.events[e].left] = h.events[e].parent;
    top[h.events[e].right] = h.events[e].parent;
  }
  auto resolve = [&top](std::int32_t c) {
    std::int32_t root = c;
    while (top[root] != root) root = top[root];
    while (top[c] != root) {
      const std::int32_t next = top[c];
      top[c] = root;
      c = next;
    }
    return root;
  };

  LabelMap out(h.atoms.width, h.atoms.height);
  std::vector<std::int32_t> compact(h.graph.clusters.size(), kNotConnected);
  std::int32_t next_label = 0;
  for (std::int64_t p = 0; p < h.atoms.pixel_count(); ++p) {
    const std::int32_t region = resolve(h.atoms.labels[p]);
    if (compact[region] == kNotConnected) compact[region] = next_label++;
    out.labels[p] = compact[region];
  }
  out.region_count = next_label;
  return out;
}

namespace {

// Lowest-common-ancestor lookup over the merge tree via binary lifting.
// Parent ids always exceed child ids, so depths fill in one descending pass.
class MergeTreeLca {
 public:
  explicit MergeTreeLca(const RegionGraph& graph) {
    const std::int32_t n = static_cast<std::int32_t>(graph.clusters.size());
    depth_.resize(n);
    levels_ = 1;
    for (std::int32_t v = n - 1; v >= 0; --v) {
      const std::int32_t p = graph.clusters[v].parent;
      depth_[v] = p == kNotConnected ? 0 : depth_[p] + 1;
      while ((1 << levels_) <= depth_[v]) ++levels_;
    }
    up_.assign(static_cast<std::size_t>(levels_) * n, 0);
    for (std::int32_t v = 0; v < n; ++v) {
      const std::int32_t p = graph.clusters[v].parent;
      up_[v] = p == kNotConnected ? v : p;
    }
    for (int k = 1; k < levels_; ++k) {
      for (std::int32_t v = 0; v < n; ++v) {
        up_[static_cast<std::size_t>(k) * n + v] =
            up_[static_cast<std::size_t>(k - 1) * n + up_[static_cast<std::size_t>(k - 1) * n + v]];
      }
    }
    n_ = n;
  }

  std::int32_t lca(std::int32_t a, std::int32_t b) const {
    if (depth_[a] < depth_[b]) std::swap(a, b);
    std::int32_t diff = depth_[a] - depth_[b];
    for (int k = 0; diff != 0; ++k, diff >>= 1) {
      if (diff & 1) a = up_[static_cast<std::size_t>(k) * n_ + a];
    }
    if (a == b) return a;
    for (int k = levels_ - 1; k >= 0; --k) {
      const std::int32_t ua = up_[static_cast<std::size_t>(k) * n_ + a];
      const std::int32_t ub = up_[static_cast<std::size_t>(k) * n_ + b];
      if (ua != ub) {
        a = ua;
        b = ub;
      }
    }
    return up_[a];
  }

 private:
  std::vector<std::int32_t> depth_;
  std::vector<std::int32_t> up_;
  std::int32_t n_ = 0;
  int levels_ = 1;
};

}  // namespace

CrackMap ucm(const Hierarchy& h, const UcmLevels& levels) {
  require_atoms(h, "ucm");
  if (levels.level.size() != h.events.size()) {
    throw ValidationError("ucm: levels do not match the event list");
  }
  const LabelMap& atoms = h.atoms;
  CrackMap cm(atoms.width, atoms.height);
  if (h.events.empty()) return cm;

  const MergeTreeLca lca(h.graph);
  const std::int32_t atom_count = h.graph.atom_count;
  std::unordered_map<std::uint64_t, float> memo;
  memo.reserve(static_cast<std::size_t>(atom_count) * 4);

  auto crack_level = [&](std::int32_t la, std::int32_t lb) -> float {
    if (la > lb) std::swap(la, lb);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(la)) << 32) |
        static_cast<std::uint32_t>(lb);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const std::int32_t anc = lca.lca(la, lb);
    const float value = static_cast<float>(levels.level[anc - atom_count]);
    memo.emplace(key, value);
    return value;
  };

  for (int y = 0; y < atoms.height; ++y) {
    for (int x = 0; x + 1 < atoms.width; ++x) {
      const std::int32_t la = atoms.at(x, y);
      const std::int32_t lb = atoms.at(x + 1, y);
      if (la != lb) cm.v(x, y) = crack_level(la, lb);
    }
  }
  for (int y = 0; y + 1 < atoms.height; ++y) {
    for (int x = 0; x < atoms.width; ++x) {
      const std::int32_t la = atoms.at(x, y);
      const std::int32_t lb = atoms.at(x, y + 1);
      if (la != lb) cm.hz(x, y) = crack_level(la, lb);
    }
  }
  return cm;
}

PlaneF render_ucm(const CrackMap& cm) {
  const int w = cm.width;
  const int h = cm.height;
  PlaneF out(2 * w + 1, 2 * h + 1, 0.0f);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) out.at(2 * x + 2, 2 * y + 1) = cm.v(x, y);
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x < w; ++x) out.at(2 * x + 1, 2 * y + 2) = cm.hz(x, y);
  }
  // Junctions: max over the (up to four) incident crack cells.
  for (int j = 0; j <= h; ++j) {
    for (int i = 0; i <= w; ++i) {
      const int x = 2 * i;
      const int y = 2 * j;
      float m = 0.0f;
      if (y - 1 >= 0) m = std::max(m, out.at(x, y - 1));
      if (y + 1 <= 2 * h) m = std::max(m, out.at(x, y + 1));
      if (x - 1 >= 0) m = std::max(m, out.at(x - 1, y));
      if (x + 1 <= 2 * w) m = std::max(m, out.at(x + 1, y));
      out.at(x, y) = m;
    }
  }
  return out;
}

std::string serialize(const Hierarchy& h, const UcmLevels& levels) {
  if (levels.level.size() != h.events.size()) {
    throw ValidationError("serialize: levels do not match the event list");
  }
  nlohmann::json doc;
  doc["format"] = "radig-hierarchy";
  doc["version"] = 1;
  doc["width"] = h.atoms.width;
  doc["height"] = h.atoms.height;
  doc["atom_count"] = h.graph.atom_count;

  nlohmann::json clusters = nlohmann::json::array();
  for (const Cluster& c : h.graph.clusters) {
    nlohmann::json jc;
    jc["id"] = c.id;
    jc["parent"] = c.parent;
    jc["left"] = c.left_child;
    jc["right"] = c.right_child;
    jc["area"] = c.area;
    jc["mean"] = c.stats.mean;
    jc["sigma"] = c.stats.sigma;
    clusters.push_back(std::move(jc));
  }
  doc["clusters"] = std::move(clusters);

  nlohmann::json events = nlohmann::json::array();
  for (std::size_t t = 0; t < h.events.size(); ++t) {
    const MergeEvent& e = h.events[t];
    nlohmann::json je;
    je["time"] = e.time;
    je["left"] = e.left;
    je["right"] = e.right;
    je["parent"] = e.parent;
    je["distance"] = e.distance;
    je["level"] = levels.level[t];
    events.push_back(std::move(je));
  }
  doc["events"] = std::move(events);
  return doc.dump(2);
}

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* name, const char* where) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ValidationError(std::string("hierarchy document: missing field '") + name + "' in " +
                          where);
  }
  return *it;
}

}  // namespace

HierarchyDocument parse_hierarchy(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min(text.size(), e.byte);
    const std::size_t line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ValidationError("hierarchy document: JSON error at line " + std::to_string(line) + ": " +
                          e.what());
  }

  HierarchyDocument out;
  try {
    if (field(doc, "format", "document") != "radig-hierarchy") {
      throw ValidationError("hierarchy document: unknown format");
    }
    Hierarchy& h = out.hierarchy;
    h.atoms.width = field(doc, "width", "document").get<int>();
    h.atoms.height = field(doc, "height", "document").get<int>();
    h.graph.atom_count = field(doc, "atom_count", "document").get<std::int32_t>();
    h.atoms.region_count = h.graph.atom_count;

    const auto& clusters = field(doc, "clusters", "document");
    h.graph.clusters.resize(clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const auto& jc = clusters[i];
      Cluster c;
      c.id = field(jc, "id", "cluster").get<std::int32_t>();
      if (c.id != static_cast<std::int32_t>(i)) {
        throw ValidationError("hierarchy document: cluster ids must be dense and ascending");
      }
      c.parent = field(jc, "parent", "cluster").get<std::int32_t>();
      c.left_child = field(jc, "left", "cluster").get<std::int32_t>();
      c.right_child = field(jc, "right", "cluster").get<std::int32_t>();
      c.area = field(jc, "area", "cluster").get<std::int64_t>();
      const auto& mean = field(jc, "mean", "cluster");
      const auto& sigma = field(jc, "sigma", "cluster");
      if (mean.size() != 3 || sigma.size() != 3) {
        throw ValidationError("hierarchy document: mean/sigma must have 3 channels");
      }
      for (int ch = 0; ch < 3; ++ch) {
        c.stats.mean[ch] = mean[ch].get<double>();
        c.stats.sigma[ch] = sigma[ch].get<double>();
      }
      c.alive = c.parent == kNotConnected;
      h.graph.clusters[i] = std::move(c);
    }

    const auto& events = field(doc, "events", "document");
    h.events.resize(events.size());
    out.levels.level.resize(events.size());
    for (std::size_t t = 0; t < events.size(); ++t) {
      const auto& je = events[t];
      MergeEvent e;
      e.time = field(je, "time", "event").get<std::int32_t>();
      e.left = field(je, "left", "event").get<std::int32_t>();
      e.right = field(je, "right", "event").get<std::int32_t>();
      e.parent = field(je, "parent", "event").get<std::int32_t>();
      e.distance = field(je, "distance", "event").get<double>();
      if (e.time != static_cast<std::int32_t>(t)) {
        throw ValidationError("hierarchy document: event times must be dense and ascending");
      }
      h.events[t] = e;
      out.levels.level[t] = field(je, "level", "event").get<double>();
    }
    h.root = h.graph.clusters.empty() ? 0 : static_cast<std::int32_t>(h.graph.clusters.size() - 1);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("hierarchy document: ") + e.what());
  }
  return out;
}

}  // namespace radig
