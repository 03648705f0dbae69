#include "graphwave/dcsc.hpp"

namespace graphwave {

Dcsc build_dcsc(const Block2D& block) {
  Dcsc d;
  d.nrows = block.rows.size();
  d.ncols = block.cols.size();
  d.ir.reserve(block.entries.size());
  // Entries arrive sorted by (col, row), so one pass closes each column
  // segment as the column id changes.
  for (const auto& [row, col] : block.entries) {
    if (d.jc.empty() || d.jc.back() != col) {
      d.jc.push_back(col);
      d.cp.push_back(d.ir.size());
    }
    d.ir.push_back(row);
  }
  d.cp.push_back(d.ir.size());
  if (d.jc.empty()) {
    d.cp.assign(1, 0);  // canonical empty block: cp = [0]
  }
  return d;
}

std::vector<Dcsc> split_rowwise(const Dcsc& d, u64 pieces) {
  if (pieces == 0 || pieces > std::max<u64>(d.nrows, 1)) {
    throw ConfigError("split_rowwise: cannot cut " + std::to_string(d.nrows) + " rows into " +
                      std::to_string(pieces) + " stripes");
  }
  std::vector<Dcsc> stripes(pieces);
  for (u64 k = 0; k < pieces; ++k) {
    stripes[k].nrows = d.nrows;
    stripes[k].ncols = d.ncols;
  }
  for (u64 c = 0; c < d.nzc(); ++c) {
    for (u64 k = 0; k < pieces; ++k) {
      const Range rows = chunk_range(d.nrows, pieces, k);
      Dcsc& s = stripes[k];
      bool opened = false;
      for (u64 idx = d.cp[c]; idx < d.cp[c + 1]; ++idx) {
        if (!rows.contains(d.ir[idx])) {
          continue;
        }
        if (!opened) {
          s.jc.push_back(d.jc[c]);
          s.cp.push_back(s.ir.size());
          opened = true;
        }
        s.ir.push_back(d.ir[idx]);
      }
    }
  }
  for (Dcsc& s : stripes) {
    s.cp.push_back(s.ir.size());
    if (s.jc.empty()) {
      s.cp.assign(1, 0);
    }
  }
  return stripes;
}

}  // namespace graphwave
