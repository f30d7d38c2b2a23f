#pragma once

#include <optional>
#include <string>

#include "frontier_lab/annulus.hpp"
#include "frontier_lab/frontier.hpp"

namespace flab {

struct RenderOptions {
    bool draw_frontier = true;
    std::optional<AnnulusSpec> annulus;
    std::optional<Rect> box;
    double stroke_width = 0.15;
};

// One <line> element per unique walk edge, plus a <polyline> overlay for the
// frontier curve when requested.  Deterministic output for fixed inputs.
std::string render_svg(const Walk& walk, const FrontierCurve* frontier,
                       const RenderOptions& options = {});

}  // namespace flab
