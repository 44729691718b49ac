#include "hpack/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hpack {

namespace {

// The standard distributions are not portable across standard libraries, so
// the mapping from raw engine output is done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return lo + static_cast<std::int64_t>(v % span);
  }

  // Uniform in [lo, hi).
  double real(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

class Builder {
 public:
  Builder(const GenConfig& config)
      : config_(config),
        rng_(config.seed),
        rect_max_(std::max(config.rect_count_range.first,
                           std::min(config.rect_count_range.second, rect_count_cap(config.levels)))) {}

  Instance build() {
    instance_.top = "B1";
    make_block(1, true, config_.area_range.first, config_.area_range.second);
    return std::move(instance_);
  }

 private:
  int child_count(int depth, bool forced) {
    const int l = config_.levels;
    if (depth >= l) return 0;
    if (depth == 1) return static_cast<int>(l == 2 ? rng_.integer(2, 5) : rng_.integer(2, 4));
    return static_cast<int>(forced ? rng_.integer(1, 2) : rng_.integer(0, 2));
  }

  Rectangle make_rect(const std::string& id, double a_lo, double a_hi) {
    Rectangle r{id, {}};
    const double area = rng_.real(a_lo, a_hi);
    const auto count = rng_.integer(1, config_.max_variants);
    for (std::int64_t t = 0; t < count; ++t) {
      const double rho = rng_.real(config_.aspect_range.first, config_.aspect_range.second);
      const bool wide = rng_.coin();
      const Length w = std::max<Length>(1, std::llround(std::sqrt(wide ? area * rho : area / rho)));
      const Length h = std::max<Length>(1, std::llround(area / static_cast<double>(w)));
      const Dim d{w, h};
      if (std::find(r.variants.begin(), r.variants.end(), d) == r.variants.end()) r.variants.push_back(d);
    }
    return r;
  }

  std::string make_block(int depth, bool forced, double a_lo, double a_hi) {
    const std::string id = "B" + std::to_string(++block_count_);
    Block block;
    block.id = id;
    const auto rects = rng_.integer(config_.rect_count_range.first, rect_max_);
    for (std::int64_t i = 1; i <= rects; ++i) block.rects.push_back(make_rect("r" + std::to_string(i), a_lo, a_hi));
    instance_.blocks[id] = block;

    const int children = child_count(depth, forced);
    int occ = 0;
    for (int c = 0; c < children; ++c) {
      const double m = rng_.real(config_.area_multiplier_range.first, config_.area_multiplier_range.second);
      const std::string child = make_block(depth + 1, forced && c == 0, a_lo * m, a_hi * m);
      const auto copies = config_.multi_occurrence ? rng_.integer(1, 3) : 1;
      for (std::int64_t k = 0; k < copies; ++k) {
        instance_.blocks[id].occs.push_back({"o" + std::to_string(++occ), child});
      }
    }
    return id;
  }

  const GenConfig& config_;
  Rng rng_;
  std::int64_t rect_max_;
  Instance instance_;
  int block_count_ = 0;
};

}  // namespace

void validate_gen_config(const GenConfig& c) {
  if (c.levels < 1) throw Error("levels must be at least 1");
  if (c.rect_count_range.first < 1 || c.rect_count_range.second < c.rect_count_range.first) {
    throw Error("invalid rectangle count range");
  }
  if (c.max_variants < 1) throw Error("max_variants must be at least 1");
  if (!(c.area_range.first >= 1.0) || c.area_range.second < c.area_range.first) throw Error("invalid area range");
  const auto [m_lo, m_hi] = c.area_multiplier_range;
  if (!(m_lo > 0.0) || m_hi < m_lo || m_hi > 1.0) throw Error("invalid area multiplier range");
  if (!(c.aspect_range.first >= 1.0) || c.aspect_range.second < c.aspect_range.first) {
    throw Error("invalid aspect range");
  }
}

int rect_count_cap(int levels) {
  const int l = std::clamp(levels, 1, 7);
  return static_cast<int>(std::lround(80.0 - (l - 1) * 40.0 / 6.0));
}

Instance generate(const GenConfig& config) {
  validate_gen_config(config);
  return Builder(config).build();
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    auto make = [](std::string name, int levels, double minutes) {
      Preset p;
      p.name = std::move(name);
      p.config.levels = levels;
      p.config.rect_count_range = {5, rect_count_cap(levels)};
      p.minutes = minutes;
      return p;
    };
    std::vector<Preset> v;
    v.push_back(make("L1-NV", 1, 10));
    v.back().config.max_variants = 1;
    v.push_back(make("L1", 1, 10));
    v.push_back(make("L2-L", 2, 10));
    v.back().config.area_multiplier_range = {0.7, 1.0};
    v.push_back(make("L2-I", 2, 10));
    v.back().config.area_multiplier_range = {0.3, 0.7};
    v.push_back(make("L2-S", 2, 10));
    v.back().config.area_multiplier_range = {0.1, 0.3};
    v.push_back(make("L3", 3, 30));
    v.push_back(make("L3-M", 3, 30));
    v.back().config.multi_occurrence = true;
    v.push_back(make("L4", 4, 120));
    v.push_back(make("L4-M", 4, 120));
    v.back().config.multi_occurrence = true;
    v.push_back(make("L5", 5, 120));
    v.push_back(make("L6", 6, 240));
    v.push_back(make("L7", 7, 240));
    return v;
  }();
  return all;
}

std::optional<Preset> find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

GenConfig gen_config_from_json(const Json& json) {
  GenConfig c;
  try {
    auto pair_of = [&](const char* key, auto& target) {
      if (!json.contains(key)) return;
      const auto& a = json.at(key);
      if (!a.is_array() || a.size() != 2) throw Error(std::string(key) + " must be a two-element array");
      target.first = a[0].get<std::remove_reference_t<decltype(target.first)>>();
      target.second = a[1].get<std::remove_reference_t<decltype(target.second)>>();
    };
    c.levels = json.value("levels", c.levels);
    pair_of("rect_count_range", c.rect_count_range);
    c.max_variants = json.value("max_variants", c.max_variants);
    pair_of("area_range", c.area_range);
    pair_of("area_multiplier_range", c.area_multiplier_range);
    pair_of("aspect_range", c.aspect_range);
    c.multi_occurrence = json.value("multi_occurrence", c.multi_occurrence);
    c.seed = json.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed generator config: ") + e.what());
  }
  validate_gen_config(c);
  return c;
}

Json gen_config_to_json(const GenConfig& c) {
  return Json{{"levels", c.levels},
              {"rect_count_range", {c.rect_count_range.first, c.rect_count_range.second}},
              {"max_variants", c.max_variants},
              {"area_range", {c.area_range.first, c.area_range.second}},
              {"area_multiplier_range", {c.area_multiplier_range.first, c.area_multiplier_range.second}},
              {"aspect_range", {c.aspect_range.first, c.aspect_range.second}},
              {"multi_occurrence", c.multi_occurrence},
              {"seed", c.seed}};
}

}  // namespace hpack
