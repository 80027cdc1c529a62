#include "cellscope/costmodel.hpp"

#include <algorithm>
#include <stdexcept>

namespace cellscope {

NetworkConfig NetworkConfig::cifar_eval() {
  return NetworkConfig{20, 36, 10, 32, 32, 3, false, StemKind::cifar};
}

NetworkConfig NetworkConfig::cifar_proxy() {
  return NetworkConfig{8, 32, 10, 32, 32, 3, false, StemKind::cifar};
}

NetworkConfig NetworkConfig::imagenet() {
  return NetworkConfig{14, 48, 1000, 224, 224, 1, false, StemKind::imagenet};
}

CostTable CostTable::darts_default() {
  CostTable t;
  t.op = [](Primitive p, int channels, int stride) -> OpCost {
    long long c = channels;
    auto stack = [&](long long k) -> OpCost {
      // depthwise C*k^2 + pointwise C^2 + norm 2C
      return {c * k * k + c * c + 2 * c, c * k * k + c * c};
    };
    switch (p) {
      case Primitive::sep_conv_3x3: {
        OpCost one = stack(3);
        return {2 * one.params, 2 * one.macs_per_position};
      }
      case Primitive::sep_conv_5x5: {
        OpCost one = stack(5);
        return {2 * one.params, 2 * one.macs_per_position};
      }
      case Primitive::dil_conv_3x3:
        return stack(3);
      case Primitive::dil_conv_5x5:
        return stack(5);
      case Primitive::skip_connect:
        if (stride == 1) return {0, 0};
        // factorized reduction: two half-width 1x1 convolutions + norm
        return {c * c + 2 * c, c * c};
      case Primitive::nor_conv_1x1:
        return {c * c + 2 * c, c * c};
      case Primitive::nor_conv_3x3:
        return {c * c * 9 + 2 * c, c * c * 9};
      case Primitive::max_pool_3x3:
      case Primitive::avg_pool_3x3:
      case Primitive::none:
      case Primitive::zero:
        return {0, 0};
    }
    return {0, 0};
  };
  return t;
}

std::vector<LayoutEntry> assemble_layout(const NetworkConfig& cfg) {
  if (cfg.layers < 3) {
    throw std::invalid_argument("assemble_layout: need at least 3 layers for both reductions");
  }
  std::vector<LayoutEntry> out;
  int c_stem = cfg.stem == StemKind::cifar ? cfg.stem_multiplier * cfg.init_channels
                                           : cfg.init_channels;
  int c_pp = c_stem, c_p = c_stem;
  int c_curr = cfg.init_channels;
  bool reduction_prev = cfg.stem == StemKind::imagenet;  // the ImageNet stem downsamples
  for (int i = 0; i < cfg.layers; ++i) {
    bool reduction = i == cfg.layers / 3 || i == 2 * cfg.layers / 3;
    if (reduction) c_curr *= 2;
    LayoutEntry e;
    e.kind = reduction ? CellKind::reduce : CellKind::normal;
    e.is_reduction = reduction;
    e.reduction_prev = reduction_prev;
    e.channels = c_curr;
    e.in_channels_prev_prev = c_pp;
    e.in_channels_prev = c_p;
    out.push_back(e);
    reduction_prev = reduction;
    c_pp = c_p;
    c_p = 4 * c_curr;  // output concatenates the four intermediate nodes
  }
  return out;
}

namespace {

struct AuxShape {
  long long params = 0;
  long long macs = 0;
};

// DARTS-style auxiliary tower: 1x1 conv to 128, 2x2 conv to 768,
// classifier. Applied at the 2/3-depth cell output.
AuxShape auxiliary_cost(int c_in, int classes, StemKind stem, int r_in) {
  AuxShape a;
  long long pool_stride = stem == StemKind::cifar ? 3 : 2;
  long long r_pool = (r_in - 5) / pool_stride + 1;
  if (r_pool < 1) r_pool = 1;
  long long r_conv2 = std::max<long long>(r_pool - 1, 1);
  a.params = static_cast<long long>(c_in) * 128 + 2 * 128;
  a.macs = static_cast<long long>(c_in) * 128 * r_pool * r_pool;
  a.params += 128LL * 768 * 2 * 2 + 2 * 768;
  a.macs += 128LL * 768 * 2 * 2 * r_conv2 * r_conv2;
  a.params += 768LL * classes + classes;
  a.macs += 768LL * classes;
  return a;
}

struct Totals {
  long long params = 0;
  long long macs = 0;
};

Totals accumulate(const Architecture& arch, const NetworkConfig& cfg, const CostTable& table) {
  if (!arch.reduce) {
    throw std::invalid_argument("cost accounting models stacked two-cell (DARTS) networks");
  }
  Totals t;
  long long r = 0;  // current cell input resolution (square feature maps)

  if (cfg.stem == StemKind::cifar) {
    long long c_stem = static_cast<long long>(cfg.stem_multiplier) * cfg.init_channels;
    t.params += 3 * 9 * c_stem + 2 * c_stem;
    t.macs += 3 * 9 * c_stem * static_cast<long long>(cfg.input_h) * cfg.input_w;
    r = cfg.input_h;
  } else {
    long long c = cfg.init_channels;
    long long h2 = cfg.input_h / 2, h4 = cfg.input_h / 4, h8 = cfg.input_h / 8;
    t.params += 3 * 9 * (c / 2) + c;               // conv 3 -> C/2 stride 2 + norm
    t.macs += 3 * 9 * (c / 2) * h2 * h2;
    t.params += (c / 2) * 9 * c + 2 * c;           // conv C/2 -> C stride 2 + norm
    t.macs += (c / 2) * 9 * c * h4 * h4;
    t.params += c * 9 * c + 2 * c;                 // stem1: conv C -> C stride 2 + norm
    t.macs += c * 9 * c * h8 * h8;
    r = h8;
  }

  std::vector<LayoutEntry> layout = assemble_layout(cfg);
  int aux_index = 2 * cfg.layers / 3;
  for (int i = 0; i < static_cast<int>(layout.size()); ++i) {
    const LayoutEntry& e = layout[static_cast<std::size_t>(i)];
    long long c = e.channels;
    long long r_out = e.is_reduction ? r / 2 : r;

    // two 1x1 conv + norm preprocessing blocks (a factorized reduction
    // when the previous cell downsampled; identical parameter count)
    t.params += static_cast<long long>(e.in_channels_prev_prev) * c + 2 * c;
    t.macs += static_cast<long long>(e.in_channels_prev_prev) * c * r * r;
    t.params += static_cast<long long>(e.in_channels_prev) * c + 2 * c;
    t.macs += static_cast<long long>(e.in_channels_prev) * c * r * r;

    const Cell& cell = e.kind == CellKind::normal ? arch.normal : *arch.reduce;
    for (const Edge& edge : cell.edges()) {
      int stride = e.is_reduction && edge.src < 2 ? 2 : 1;
      OpCost oc = table.op(edge.op, static_cast<int>(c), stride);
      t.params += oc.params;
      t.macs += oc.macs_per_position * r_out * r_out;
    }

    if (cfg.include_auxiliary && i == aux_index) {
      AuxShape a = auxiliary_cost(4 * static_cast<int>(c), cfg.num_classes, cfg.stem,
                                  static_cast<int>(r_out));
      t.params += a.params;
      t.macs += a.macs;
    }
    r = r_out;
  }

  long long c_last = static_cast<long long>(layout.back().channels) * 4;
  t.params += c_last * cfg.num_classes + cfg.num_classes;
  t.macs += c_last * cfg.num_classes;
  return t;
}

}  // namespace

long long count_params(const Architecture& arch, const NetworkConfig& cfg,
                       const CostTable& table) {
  return accumulate(arch, cfg, table).params;
}

long long count_flops(const Architecture& arch, const NetworkConfig& cfg,
                      const CostTable& table) {
  return accumulate(arch, cfg, table).macs;
}

std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points,
                                      CostObjective cost) {
  if (points.empty()) throw std::invalid_argument("pareto_front: no points");
  auto cost_of = [cost](const ParetoPoint& p) {
    return cost == CostObjective::params ? p.params : p.flops;
  };
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cost_of(points[a]) < cost_of(points[b]);
  });

  std::vector<ParetoPoint> front;
  std::size_t i = 0;
  double best_prev = -1.0;  // best accuracy among strictly cheaper points
  while (i < order.size()) {
    // cost tie group
    std::size_t j = i;
    double group_cost = cost_of(points[order[i]]);
    double group_best = points[order[i]].accuracy;
    while (j + 1 < order.size() && cost_of(points[order[j + 1]]) == group_cost) {
      ++j;
      group_best = std::max(group_best, points[order[j]].accuracy);
    }
    for (std::size_t k = i; k <= j; ++k) {
      const ParetoPoint& p = points[order[k]];
      if (p.accuracy == group_best && p.accuracy > best_prev) front.push_back(p);
    }
    best_prev = std::max(best_prev, group_best);
    i = j + 1;
  }
  return front;
}

}  // namespace cellscope
