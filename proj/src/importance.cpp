#include "cellscope/importance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cellscope/errors.hpp"

namespace cellscope {

std::vector<Architecture> neighbors(const Architecture& arch, const EdgeAddress& addr,
                                    const SpaceSpec& spec) {
  const Cell& cell = arch.cell(addr.cell);
  int idx = cell.edge_index(addr.dst, addr.slot);
  if (idx < 0) throw std::out_of_range("invalid edge address");
  const Edge edge = cell.edges()[static_cast<std::size_t>(idx)];

  auto replace_cell = [&](Cell c) {
    Architecture a = arch;
    a.cell(addr.cell) = std::move(c);
    return a;
  };

  std::vector<Architecture> out;
  for (Primitive p : spec.primitives) {
    if (p == edge.op) continue;
    out.push_back(replace_cell(cell.with_op(addr.dst, addr.slot, p)));
  }
  if (spec.kind == SpaceKind::darts) {
    int sibling_src = cell.edge_at(addr.dst, 1 - addr.slot).src;
    for (int s = 0; s < addr.dst + 2; ++s) {
      if (s == edge.src || s == sibling_src) continue;
      out.push_back(replace_cell(cell.with_src(addr.dst, addr.slot, s)));
    }
  }
  return out;
}

OIRecord operation_importance(const Architecture& arch, const EdgeAddress& addr,
                              const Evaluator& ev, double threshold) {
  const SpaceSpec& spec = ev.space();
  std::vector<Architecture> ns = neighbors(arch, addr, spec);
  if (ns.empty()) {
    throw std::invalid_argument(
        "operation_importance: the addressed edge has no legal perturbations in this space");
  }
  double base = ev.evaluate(arch);
  // Mean of deltas rather than delta of means: identical algebraically,
  // and exactly zero under a constant evaluator.
  double sum = 0.0;
  for (const Architecture& n : ns) sum += ev.evaluate(n) - base;
  OIRecord rec;
  rec.arch_id = serialize_genotype(arch, spec);
  rec.address = addr;
  rec.primitive = arch.cell(addr.cell).edge_at(addr.dst, addr.slot).op;
  rec.neighbor_count = static_cast<int>(ns.size());
  rec.oi = sum / static_cast<double>(ns.size());
  rec.important = std::abs(rec.oi) >= threshold;
  return rec;
}

std::vector<EdgeAddress> all_addresses(const Architecture& arch, const SpaceSpec& spec) {
  std::vector<EdgeAddress> out;
  auto add_cell = [&](CellKind kind, const Cell& cell) {
    std::set<int> dsts;
    for (const Edge& e : cell.edges()) dsts.insert(e.dst);
    for (int d : dsts) {
      int n = static_cast<int>(cell.in_edges(d).size());
      for (int s = 0; s < n; ++s) out.push_back({kind, d, s});
    }
  };
  add_cell(CellKind::normal, arch.normal);
  if (spec.kind == SpaceKind::darts && arch.reduce) add_cell(CellKind::reduce, *arch.reduce);
  return out;
}

std::vector<OIRecord> compute_oi(const Architecture& arch, const Evaluator& ev,
                                 double threshold) {
  std::vector<OIRecord> out;
  for (const EdgeAddress& a : all_addresses(arch, ev.space())) {
    out.push_back(operation_importance(arch, a, ev, threshold));
  }
  return out;
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  double pos = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::vector<OIGroupSummary> aggregate_oi(const std::vector<OIRecord>& records,
                                         const SpaceSpec& spec) {
  if (records.empty()) throw std::invalid_argument("aggregate_oi: no records");
  std::vector<CellKind> kinds{CellKind::normal};
  if (spec.kind == SpaceKind::darts) kinds.push_back(CellKind::reduce);

  std::vector<OIGroupSummary> out;
  for (CellKind k : kinds) {
    for (Primitive p : spec.primitives) {
      OIGroupSummary s;
      s.primitive = p;
      s.cell = k;
      std::vector<double> values;
      long long important = 0;
      for (const OIRecord& r : records) {
        if (r.primitive != p || r.address.cell != k) continue;
        values.push_back(r.oi);
        if (r.important) ++important;
      }
      s.count = static_cast<long long>(values.size());
      if (!values.empty()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        s.mean = sum / static_cast<double>(values.size());
        std::sort(values.begin(), values.end());
        s.q25 = quantile(values, 0.25);
        s.median = quantile(values, 0.5);
        s.q75 = quantile(values, 0.75);
        s.fraction_important =
            static_cast<double>(important) / static_cast<double>(values.size());
      }
      out.push_back(s);
    }
  }
  return out;
}

DisableSchedule disable_schedule(const Architecture& arch, const std::vector<OIRecord>& records,
                                 DisableOrder order, const SpaceSpec& spec) {
  std::string arch_id = serialize_genotype(arch, spec);
  std::vector<EdgeAddress> wanted = all_addresses(arch, spec);

  std::vector<const OIRecord*> by_address;
  for (const EdgeAddress& a : wanted) {
    const OIRecord* found = nullptr;
    for (const OIRecord& r : records) {
      if (r.address == a && r.arch_id == arch_id) {
        found = &r;
        break;
      }
    }
    if (!found) {
      throw DataError("incomplete records: no OI record for (" +
                      std::string(to_string(a.cell)) + ", dst " + std::to_string(a.dst) +
                      ", slot " + std::to_string(a.slot) + ")");
    }
    by_address.push_back(found);
  }

  std::stable_sort(by_address.begin(), by_address.end(),
                   [order](const OIRecord* a, const OIRecord* b) {
                     if (a->oi != b->oi) {
                       return order == DisableOrder::descending ? a->oi > b->oi
                                                                : a->oi < b->oi;
                     }
                     return a->address < b->address;
                   });

  DisableSchedule sched;
  sched.order = order;
  std::size_t steps = wanted.size() / 2;  // stop once half the operations are disabled
  Architecture current = arch;
  for (std::size_t k = 0; k < steps; ++k) {
    const EdgeAddress& a = by_address[k]->address;
    Cell& cell = current.cell(a.cell);
    cell = cell.with_op(a.dst, a.slot, Primitive::zero);
    sched.genotypes.push_back(serialize_genotype(current, spec));
  }
  return sched;
}

std::vector<std::pair<std::string, Architecture>> derive_variants(const Architecture& arch) {
  if (!arch.reduce) {
    throw std::invalid_argument("derive_variants: reduce-cell transforms need a DARTS architecture");
  }
  auto skipify = [](const Cell& c) {
    std::vector<Edge> es = c.edges();
    for (Edge& e : es) e.op = Primitive::skip_connect;
    return Cell(std::move(es));
  };
  std::vector<std::pair<std::string, Architecture>> out;
  out.emplace_back("red<-nor", Architecture{arch.normal, arch.normal});
  out.emplace_back("red<-skip", Architecture{arch.normal, skipify(*arch.reduce)});
  out.emplace_back("nor<-red", Architecture{*arch.reduce, *arch.reduce});
  out.emplace_back("nor<-skip", Architecture{skipify(arch.normal), *arch.reduce});
  return out;
}

}  // namespace cellscope
