// svg.hpp — Minimal static plot emitter (convenience output, no acceptance weight)

#pragma once

#include <string>
#include <vector>

#include "lamsim/linalg.hpp"

namespace lamsim {

void write_line_plot(const std::string& path, const RealVector& x,
                     const std::vector<RealVector>& series,
                     const std::vector<std::string>& names,
                     const std::string& title, const std::string& xlabel,
                     const std::string& ylabel);

void write_heatmap(const std::string& path, const RealVector& x, const RealVector& y,
                   const RealMatrix& values /* rows pair with y */,
                   const std::string& title, const std::string& xlabel,
                   const std::string& ylabel);

}  // namespace lamsim
