#include "cellscope/editor.hpp"

#include <stdexcept>

#include "cellscope/motifs.hpp"

namespace cellscope {

namespace {

// Lower ranks are cheaper to convert into the residual skip.
int loss_rank(Primitive p) {
  if (is_pool(p)) return 0;
  if (is_dil_conv(p)) return 1;
  if (is_sep_conv(p)) return 2;
  return 3;
}

Primitive replacement_for(Primitive p, const EditOptions& opts, Rng& rng) {
  if (!opts.kernel_match) {
    return rng.below(2) == 0 ? Primitive::sep_conv_3x3 : Primitive::sep_conv_5x5;
  }
  return p == Primitive::dil_conv_5x5 ? Primitive::sep_conv_5x5 : Primitive::sep_conv_3x3;
}

bool compliant_op(Primitive p) {
  return is_sep_conv(p) || p == Primitive::skip_connect;
}

}  // namespace

EditReport edit_to_compliance(const Architecture& arch, Rng& rng, const EditOptions& opts) {
  if (!arch.reduce) {
    throw std::invalid_argument("edit_to_compliance expects a DARTS architecture");
  }
  Cell normal = arch.normal;
  EditReport report;

  auto apply = [&](int dst, int slot, Primitive new_op, const std::string& reason) {
    Primitive old_op = normal.edge_at(dst, slot).op;
    normal = normal.with_op(dst, slot, new_op);
    report.edits.push_back({{CellKind::normal, dst, slot}, old_op, new_op, reason});
    ++report.distance;
  };

  if (!has_residual_link(normal).present) {
    // Convert the input-origin edge whose primitive is cheapest to lose.
    int best_dst = -1, best_slot = -1, best_rank = 4;
    for (int t = 0; t < 4; ++t) {
      auto in = normal.in_edges(t);
      for (int s = 0; s < static_cast<int>(in.size()); ++s) {
        if (in[static_cast<std::size_t>(s)].src >= 2) continue;
        int r = loss_rank(in[static_cast<std::size_t>(s)].op);
        if (r < best_rank) {
          best_rank = r;
          best_dst = t;
          best_slot = s;
        }
      }
    }
    apply(best_dst, best_slot, Primitive::skip_connect, "create residual link");
  }

  for (int t = 0; t < 4; ++t) {
    int slots = static_cast<int>(normal.in_edges(t).size());
    for (int s = 0; s < slots; ++s) {
      const Edge e = normal.edge_at(t, s);  // re-read: the residual edit may have landed here
      if (e.op == Primitive::skip_connect) {
        if (e.src >= 2) {
          // non-residual skip
          Primitive target =
              rng.below(2) == 0 ? Primitive::sep_conv_3x3 : Primitive::sep_conv_5x5;
          apply(t, s, target, "replace non-residual skip");
        }
      } else if (!compliant_op(e.op)) {
        apply(t, s, replacement_for(e.op, opts, rng), "primitive outside pool");
      }
    }
  }

  report.edited = Architecture{normal, normal};
  return report;
}

int edit_distance(const Architecture& a, const Architecture& b) {
  const auto& ea = a.normal.edges();
  const auto& eb = b.normal.edges();
  if (ea.size() != eb.size()) {
    throw std::invalid_argument("edit_distance: wiring mismatch");
  }
  // Compare slot by slot after pairing edges per destination by source.
  int d = 0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (ea[i].src == eb[j].src && ea[i].dst == eb[j].dst) {
        matched = true;
        if (ea[i].op != eb[j].op) ++d;
        break;
      }
    }
    if (!matched) throw std::invalid_argument("edit_distance: wiring mismatch");
  }
  return d;
}

}  // namespace cellscope
