#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cellscope/cell.hpp"

namespace cellscope {

enum class StemKind : std::uint8_t { cifar, imagenet };

/// Macro-network shape for the analytic cost accounting.
struct NetworkConfig {
  int layers = 20;
  int init_channels = 36;
  int num_classes = 10;
  int input_h = 32;
  int input_w = 32;
  int stem_multiplier = 3;
  bool include_auxiliary = false;
  StemKind stem = StemKind::cifar;

  static NetworkConfig cifar_eval();   // 20 layers, 36 channels, 32x32
  static NetworkConfig cifar_proxy();  // 8 layers, 32 channels, 32x32
  static NetworkConfig imagenet();     // 14 layers, 48 channels, 224x224
};

struct OpCost {
  long long params = 0;
  long long macs_per_position = 0;  // multiply-accumulates per output pixel
};

/// Closed-form per-operation costs. The default follows the standard
/// DARTS evaluation networks: separable convolutions are two
/// depthwise+pointwise+norm stacks, dilated convolutions one, pooling
/// is free, and a skip at a reduction position is a factorized
/// reduction. Override `op` for other conventions.
struct CostTable {
  std::function<OpCost(Primitive, int channels, int stride)> op;

  static CostTable darts_default();
};

struct LayoutEntry {
  CellKind kind = CellKind::normal;
  bool is_reduction = false;
  bool reduction_prev = false;  // previous cell (or stem stage) halved the resolution
  int channels = 0;             // operation width C of this cell
  int in_channels_prev_prev = 0;
  int in_channels_prev = 0;
};

/// Cell sequence with reduction cells at floor(L/3) and floor(2L/3) and
/// channel width doubling at each reduction.
std::vector<LayoutEntry> assemble_layout(const NetworkConfig& cfg);

/// Total parameter count: stem + per-cell preprocessing + per-edge
/// operation costs (edges sourced at cell inputs run at stride 2 inside
/// reduction cells) + classifier; auxiliary head only when configured.
long long count_params(const Architecture& arch, const NetworkConfig& cfg,
                       const CostTable& table = CostTable::darts_default());

/// Total multiply-accumulate count with spatial dimensions halved at
/// stem reductions and at each reduction cell.
long long count_flops(const Architecture& arch, const NetworkConfig& cfg,
                      const CostTable& table = CostTable::darts_default());

struct ParetoPoint {
  std::string id;
  double accuracy = 0.0;
  double params = 0.0;
  double flops = 0.0;
};

enum class CostObjective { params, flops };

/// Non-dominated subset under (maximize accuracy, minimize cost),
/// returned in cost-ascending order (stable).
std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points,
                                      CostObjective cost);

}  // namespace cellscope
